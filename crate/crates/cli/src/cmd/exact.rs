use std::time::Duration;

use c4ex_core::exact::{Cache, CacheRecord};
use c4ex_core::graph::graph6;
use c4ex_core::{ex_c4, SearchOptions, SearchResult, SearchStatus};
use serde::Serialize;

use crate::io::print_json;
use crate::{CliError, Outcome};

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Branch and bound node budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// A known lower bound on ex(n, C4).
    #[arg(long)]
    lower: Option<u64>,
    /// A known upper bound on ex(n, C4).
    #[arg(long)]
    upper: Option<u64>,
    /// Ignore the cache named by C4EX_CACHE_DIR.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Serialize)]
struct Output {
    #[serde(flatten)]
    result: SearchResult,
    cached: bool,
}

fn from_record(rec: &CacheRecord) -> Option<SearchResult> {
    let witness = graph6::decode(&rec.witness_g6).ok()?;
    Some(SearchResult { n: rec.n, value: rec.value, witness, nodes_explored: 0, status: SearchStatus::Exact })
}

pub fn run(args: Args) -> Result<Outcome, CliError> {
    let n = args.n as usize;
    let time_limit = match args.time_limit {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            return Err(CliError::Usage(format!("--time-limit must be a non-negative number, got {t}")));
        }
        t => t.map(Duration::from_secs_f64),
    };
    let cache = if args.no_cache { None } else { Cache::from_env() };
    // Hints only narrow the search, so a cached exact value answers any consistent query.
    if let Some(rec) = cache.as_ref().and_then(|c| c.lookup(n).ok().flatten()) {
        let hints_ok = args.lower.is_none_or(|l| l <= rec.value) && args.upper.is_none_or(|u| u >= rec.value);
        if let Some(result) = from_record(&rec).filter(|_| hints_ok) {
            print_json(&Output { result, cached: true })?;
            return Ok(Outcome::Success);
        }
    }
    let opts = SearchOptions {
        lower_hint: args.lower,
        upper_hint: args.upper,
        node_budget: args.budget,
        time_limit,
        threads: args.threads,
    };
    let result = ex_c4(n, &opts).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(c) = cache.as_ref().filter(|_| result.is_exact()) {
        if let Err(e) = c.store(&result) {
            eprintln!("warning: could not write cache {}: {e}", c.path().display());
        }
    }
    print_json(&Output { result, cached: false })?;
    Ok(Outcome::Success)
}
