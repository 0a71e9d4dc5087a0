use c4ex_core::bounds::ConditionalBound;
use c4ex_core::rational::{parse_decimal, to_exact_string};
use c4ex_core::{best_bounds, BoundReport, BoundsConfig};

use crate::{CliError, Outcome};

pub const HEADER: [&str; 15] = [
    "n",
    "q",
    "r",
    "class",
    "reiman",
    "erdos_conj",
    "thm3",
    "thm5",
    "eq8",
    "brown_lower",
    "deletion_lower",
    "best_upper",
    "best_lower",
    "n1_member",
    "n2_member",
];

#[derive(Debug, clap::Args)]
#[command(group(clap::ArgGroup::new("range").required(true).args(["n", "sweep"])))]
pub struct Args {
    /// A single order.
    #[arg(long)]
    n: Option<u64>,
    /// Every order from A to B inclusive.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    sweep: Option<Vec<u64>>,
    /// The epsilon defining the sets N1 and N2 (decimal or num/den).
    #[arg(long, default_value = "0.001")]
    eps: String,
    /// Smallest q at which the asymptotic bounds may set best_upper.
    #[arg(long, default_value_t = BoundsConfig::default().q_min)]
    q_min: u64,
}

/// Upper-bound formulas are printed wherever they are defined for the class of `n`, so
/// sweeps trace each line; lower bounds only when the construction exists.
fn upper_cell(b: &Option<ConditionalBound>) -> String {
    b.as_ref().map(|b| to_exact_string(&b.value)).unwrap_or_default()
}

fn lower_cell(b: &Option<ConditionalBound>) -> String {
    b.as_ref().filter(|b| b.applicable).map(|b| to_exact_string(&b.value)).unwrap_or_default()
}

pub fn row(rep: &BoundReport) -> [String; 15] {
    [
        rep.n.to_string(),
        rep.position.q.to_string(),
        rep.position.r.to_string(),
        rep.position.class.label().to_string(),
        rep.reiman.floor.to_string(),
        rep.erdos_conj.to_string(),
        upper_cell(&rep.thm3),
        upper_cell(&rep.thm5),
        upper_cell(&rep.eq8),
        lower_cell(&rep.brown_lower),
        lower_cell(&rep.deletion_lower),
        rep.best_upper.value.to_string(),
        rep.best_lower.map(|b| b.value.to_string()).unwrap_or_default(),
        rep.n1_member.to_string(),
        rep.n2_member.to_string(),
    ]
}

pub fn run(args: Args) -> Result<Outcome, CliError> {
    let eps = parse_decimal(&args.eps).map_err(|e| CliError::Usage(e.to_string()))?;
    let cfg = BoundsConfig { eps, q_min: args.q_min, ..BoundsConfig::default() };
    let (a, b) = match (&args.n, &args.sweep) {
        (Some(n), _) => (*n, *n),
        (None, Some(s)) => (s[0], s[1]),
        (None, None) => unreachable!("clap requires one of --n, --sweep"),
    };
    if a == 0 || a > b {
        return Err(CliError::Usage(format!("need 1 <= A <= B, got {a}..{b}")));
    }
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(HEADER)?;
    for n in a..=b {
        w.write_record(row(&best_bounds(n, &cfg)))?;
    }
    w.flush()?;
    Ok(Outcome::Success)
}
