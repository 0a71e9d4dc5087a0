use std::path::PathBuf;

use c4ex_core::lemmas::{
    check_2path_inequality, check_lemma_fn_all, check_neighborhood_splus, check_splus_bound, check_weight_chain,
    Regime, TwoPathReport,
};
use c4ex_core::{C4FreeGraph, DeficiencyProfile, LemmaVerdict, Rational};
use clap::ValueEnum;
use num_traits::Zero;
use serde::Serialize;

use crate::io::{print_json, read_graph};
use crate::{CliError, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemmas {
    All,
    #[value(name = "fN")]
    FN,
    #[value(name = "2path")]
    TwoPath,
    Weights,
}

/// How `C(x, 2)` is read at a rational `x` in the two-path inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Binomial {
    /// `x(x - 1)/2` everywhere.
    Literal,
    /// `x(x - 1)/2` for `x >= 1`, else `0`.
    Convex,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// graph6 file, or `-` for standard input.
    #[arg(long = "in")]
    input: PathBuf,
    /// Deficiencies are `f(v) = q + 1 - d(v)`.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    q: i64,
    #[arg(long, value_enum, default_value_t = Lemmas::All)]
    lemmas: Lemmas,
    #[arg(long, value_enum, default_value_t = Binomial::Literal)]
    binomial: Binomial,
}

#[derive(Serialize)]
struct Refusal {
    n: usize,
    e: usize,
    q: i64,
    c4_free: bool,
    refused: String,
}

#[derive(Serialize)]
struct TwoPathEntry {
    #[serde(flatten)]
    report: TwoPathReport,
    x_size_matches: bool,
    m_routes_agree: bool,
    m_within_upper: bool,
    jensen_holds: bool,
    convex_jensen_holds: bool,
    l_nonnegative: bool,
}

impl TwoPathEntry {
    fn new(report: TwoPathReport) -> Self {
        TwoPathEntry {
            x_size_matches: report.x_size_matches(),
            m_routes_agree: report.m_routes_agree(),
            m_within_upper: report.m_within_upper(),
            jensen_holds: report.jensen_holds(),
            convex_jensen_holds: report.convex_jensen_holds(),
            l_nonnegative: report.l_nonnegative(),
            report,
        }
    }

    fn violated(&self, binomial: Binomial) -> bool {
        let r = &self.report;
        match binomial {
            Binomial::Literal => r.verdict.is_violation() || !r.all_intermediate_hold(),
            Binomial::Convex => {
                r.convex_margin < Rational::zero()
                    || !(r.x_size_matches() && r.m_routes_agree() && r.m_within_upper() && r.convex_jensen_holds())
            }
        }
    }
}

#[derive(Serialize)]
struct Summary {
    checked: usize,
    /// Verdicts whose hypotheses were not met; reported but not counted.
    vacuous: usize,
    violations: usize,
    all_hold: bool,
    /// `vacuous` when no check had its hypotheses met, else `hold` or `violated`.
    status: &'static str,
}

#[derive(Serialize)]
struct Report {
    n: usize,
    e: usize,
    q: i64,
    c4_free: bool,
    deficiency: DeficiencyProfile,
    verdicts: Vec<LemmaVerdict>,
    two_path: Vec<TwoPathEntry>,
    summary: Summary,
}

/// The regime whose hypotheses could apply to a graph on `n` vertices.
fn regime_for(n: i64, q: i64) -> Regime {
    let r = q * q + q + 2 - n;
    if r >= 0 {
        Regime::Deficit { r }
    } else {
        Regime::Surplus
    }
}

pub fn run(args: Args) -> Result<Outcome, CliError> {
    let g = read_graph(&args.input)?;
    let q = args.q;
    let checked = match C4FreeGraph::new(&g) {
        Ok(c) => c,
        Err(e) => {
            print_json(&Refusal { n: g.order(), e: g.edge_count(), q, c4_free: false, refused: e.to_string() })?;
            return Err(CliError::Usage(format!("lemma checks refused: {e}")));
        }
    };
    let want = |l: Lemmas| args.lemmas == Lemmas::All || args.lemmas == l;

    let mut verdicts = Vec::new();
    if want(Lemmas::FN) {
        verdicts.extend(check_lemma_fn_all(&checked, q));
    }
    let mut two_path = Vec::new();
    if want(Lemmas::TwoPath) {
        for v in 0..g.order() {
            let nv: Vec<usize> = g.neighbors(v).collect();
            if nv.is_empty() {
                continue;
            }
            let mut sets = vec![nv.clone()];
            if nv.len() > 1 {
                sets.push(vec![nv[0]]);
            }
            for set in sets {
                let report = check_2path_inequality(&checked, v, &set).expect("I is a non-empty subset of N(v)");
                two_path.push(TwoPathEntry::new(report));
            }
        }
    }
    if want(Lemmas::Weights) {
        let regime = regime_for(g.order() as i64, q);
        if let Regime::Deficit { r } = regime {
            verdicts.extend(check_splus_bound(&checked, q, r));
        }
        verdicts.extend(check_neighborhood_splus(&checked, q, regime));
        verdicts.extend(check_weight_chain(&checked, q, regime));
    }

    let vacuous = verdicts.iter().filter(|v| !v.hypotheses_met).count();
    let violations = verdicts.iter().filter(|v| v.is_violation()).count()
        + two_path.iter().filter(|t| t.violated(args.binomial)).count();
    let total = verdicts.len() + two_path.len();
    let status = match (violations, total == vacuous) {
        (0, true) => "vacuous",
        (0, false) => "hold",
        _ => "violated",
    };
    let summary = Summary { checked: total, vacuous, violations, all_hold: violations == 0, status };
    let all_hold = summary.all_hold;
    print_json(&Report {
        n: g.order(),
        e: g.edge_count(),
        q,
        c4_free: true,
        deficiency: DeficiencyProfile::new(&g, q),
        verdicts,
        two_path,
        summary,
    })?;
    Ok(if all_hold { Outcome::Success } else { Outcome::VerdictFailed })
}
