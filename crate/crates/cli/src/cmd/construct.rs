use std::path::PathBuf;

use c4ex_core::graph::graph6;
use c4ex_core::{delete_low_degree, is_prime_power, polarity_graph_for, Graph};

use crate::io::write_text;
use crate::{CliError, Outcome};

/// Largest order accepted; the dense adjacency of PG(2, q) grows like `q^4`.
const MAX_Q: u64 = 128;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Prime power order of the plane.
    #[arg(long)]
    q: u64,
    /// Delete this many degree-q (absolute) vertices.
    #[arg(long, default_value_t = 0)]
    delete: usize,
    /// Write graph6 here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `n=13 e=24 degrees=3:4,4:9`.
pub fn summary(g: &Graph) -> String {
    let hist: Vec<String> = g.degree_histogram().into_iter().map(|(d, c)| format!("{d}:{c}")).collect();
    format!("n={} e={} degrees={}", g.order(), g.edge_count(), hist.join(","))
}

pub fn run(args: Args) -> Result<Outcome, CliError> {
    if is_prime_power(args.q).is_none() {
        return Err(CliError::Usage(format!("q = {} is not a prime power", args.q)));
    }
    if args.q > MAX_Q {
        return Err(CliError::Usage(format!("q = {} exceeds the supported maximum {MAX_Q}", args.q)));
    }
    let g = polarity_graph_for(args.q).map_err(|e| CliError::Usage(e.to_string()))?;
    let g = delete_low_degree(&g, args.q, args.delete).map_err(|e| CliError::Usage(e.to_string()))?;
    write_text(args.out.as_deref(), &format!("{}\n", graph6::encode(&g)))?;
    if args.out.is_some() {
        println!("{}", summary(&g));
    } else {
        eprintln!("{}", summary(&g));
    }
    Ok(Outcome::Success)
}
