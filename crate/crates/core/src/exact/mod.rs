//! Exact values of `ex(n, C4)` with witnesses.
//!
//! [`ex_c4`] solves `ex(1), ..., ex(n)` in turn. Each step seeds its incumbent from the
//! constructions of [`seed_witness`] and from the previous witness plus an isolated
//! vertex, then asks the branch and bound for one more edge until that is refuted.
//! A known `ex(n - 1)` feeds two bounds: `e <= n ex(n-1) / (n-2)` (average over vertex
//! deletions) and, for any graph with `e` edges, minimum degree at least `e - ex(n-1)`.

mod brute;
mod cache;
mod search;

use std::sync::atomic::AtomicU64;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::reiman_upper;
use crate::gf::is_prime_power;
use crate::graph::{graph6, Graph};
use crate::polarity::{delete_low_degree, polarity_graph_for};

pub use brute::{brute_force_ex, MAX_BRUTE_FORCE_ORDER};
pub use cache::{Cache, CacheRecord, CACHE_DIR_ENV};
pub use search::MAX_SEARCH_ORDER;
use search::{search_branch, Limits, Outcome, Shared};

pub const SOLVER_VERSION: &str = "c4ex-bb-1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("n must be at least 1")]
    Empty,
    #[error("n = {n} exceeds the limit {max} for this method")]
    TooLarge { n: usize, max: usize },
    #[error("lower hint {lo} exceeds upper hint {hi}")]
    InconsistentHints { lo: u64, hi: u64 },
    #[error("no C4-free graph on {n} vertices has {lo} edges, so the lower hint is wrong")]
    InvalidLowerHint { n: usize, lo: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchStatus {
    Exact,
    InterruptedWithBounds { lo: u64, hi: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    /// `ex(n, C4)` when exact, otherwise the edge count of the best witness.
    pub value: u64,
    #[serde(serialize_with = "serialize_g6")]
    pub witness: Graph,
    pub nodes_explored: u64,
    pub status: SearchStatus,
}

fn serialize_g6<S: serde::Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&graph6::encode(g))
}

impl SearchResult {
    pub fn is_exact(&self) -> bool {
        self.status == SearchStatus::Exact
    }

    /// `[lo, hi]` bracketing `ex(n, C4)`.
    pub fn bounds(&self) -> (u64, u64) {
        match self.status {
            SearchStatus::Exact => (self.value, self.value),
            SearchStatus::InterruptedWithBounds { lo, hi } => (lo, hi),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub lower_hint: Option<u64>,
    pub upper_hint: Option<u64>,
    /// Branch and bound nodes, summed over all steps.
    pub node_budget: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Worker threads; `0` or `1` searches on the calling thread.
    pub threads: usize,
}

/// The best construction on exactly `n` vertices: the polarity graph when
/// `n = q^2 + q + 1`, or the polarity graph with `r <= q + 1` degree-`q` vertices
/// deleted when `n = q^2 + q + 1 - r`.
pub fn seed_witness(n: usize) -> Option<Graph> {
    let n = n as u64;
    let q = (1u64..).find(|&q| q * q + q + 1 >= n)?;
    let q = (q..).find(|&q| is_prime_power(q).is_some())?;
    let r = q * q + q + 1 - n;
    if r > q + 1 {
        return None;
    }
    let g = polarity_graph_for(q).ok()?;
    delete_low_degree(&g, q, r as usize).ok()
}

fn with_isolated_vertex(g: &Graph) -> Graph {
    Graph::from_edges(g.order() + 1, g.edges()).expect("edges of a smaller graph")
}

fn from_rows(n: usize, rows: &[u64]) -> Graph {
    let mut g = Graph::new(n);
    for (i, &row) in rows.iter().enumerate() {
        for j in i + 1..n {
            if row >> j & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

enum Decision {
    Found(Graph),
    Infeasible,
    Interrupted,
}

/// Is there a C4-free graph on `n` vertices with exactly `target` edges and minimum
/// degree at least `min_deg`?
fn decide(n: usize, target: usize, min_deg: usize, limits: &Limits, nodes: &AtomicU64, threads: usize) -> Decision {
    if target == 0 {
        return Decision::Found(Graph::new(n));
    }
    let lo_delta = (2 * target).div_ceil(n).max(min_deg).max(1);
    let branches: Vec<(usize, usize)> =
        (lo_delta..n).flat_map(|d| (0..=d / 2).map(move |t| (d, t))).collect();
    let shared = Shared {
        limits,
        nodes,
        stop: Default::default(),
        out_of_budget: Default::default(),
    };
    let run = |&(d, t): &(usize, usize)| match search_branch(n, target, d, t, min_deg, &shared) {
        Outcome::Found(rows) => {
            shared.stop.store(true, std::sync::atomic::Ordering::Relaxed);
            Some(Some(rows))
        }
        Outcome::Interrupted => Some(None),
        Outcome::Infeasible => None,
    };
    let hit = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| branches.par_iter().filter_map(run).collect::<Vec<_>>())
    } else {
        branches.iter().filter_map(run).take(1).collect()
    };
    if let Some(rows) = hit.iter().flatten().next() {
        return Decision::Found(from_rows(n, rows));
    }
    if hit.is_empty() {
        Decision::Infeasible
    } else {
        Decision::Interrupted
    }
}

/// What is known about one order.
struct Step {
    witness: Graph,
    hi: u64,
    exact: bool,
}

fn solve_step(
    n: usize,
    prev: Option<&Step>,
    hints: (Option<u64>, Option<u64>),
    limits: &Limits,
    nodes: &AtomicU64,
    threads: usize,
) -> Result<Step, ExactError> {
    let mut witness = Graph::new(n);
    let mut candidates: Vec<Graph> = seed_witness(n).into_iter().collect();
    if let Some(p) = prev {
        candidates.push(with_isolated_vertex(&p.witness));
    }
    for c in candidates {
        if c.edge_count() > witness.edge_count() {
            witness = c;
        }
    }

    let mut hi = reiman_upper(n as u64).floor;
    if let Some(p) = prev.filter(|_| n >= 3) {
        hi = hi.min(n as u64 * p.hi / (n as u64 - 2));
    }
    if let Some(u) = hints.1 {
        hi = hi.min(u);
    }
    let prev_hi = prev.map_or(0, |p| p.hi);
    let mut lo = witness.edge_count() as u64;
    let mut target = match hints.0 {
        Some(l) if l > lo => l,
        _ => lo + 1,
    };
    while target <= hi {
        let min_deg = target.saturating_sub(prev_hi) as usize;
        match decide(n, target as usize, min_deg, limits, nodes, threads) {
            Decision::Found(g) => {
                debug_assert!(g.is_c4_free() && g.edge_count() as u64 == target);
                witness = g;
                lo = target;
                target += 1;
            }
            Decision::Infeasible if hints.0 == Some(target) && target > lo => {
                return Err(ExactError::InvalidLowerHint { n, lo: target });
            }
            Decision::Infeasible => {
                return Ok(Step { witness, hi: lo, exact: true });
            }
            Decision::Interrupted => return Ok(Step { witness, hi, exact: false }),
        }
    }
    Ok(Step { witness, hi: lo, exact: true })
}

/// `ex(n, C4)` with a witness, or bounds when the budget runs out first.
pub fn ex_c4(n: usize, opts: &SearchOptions) -> Result<SearchResult, ExactError> {
    if n == 0 {
        return Err(ExactError::Empty);
    }
    if n > MAX_SEARCH_ORDER {
        return Err(ExactError::TooLarge { n, max: MAX_SEARCH_ORDER });
    }
    if let (Some(lo), Some(hi)) = (opts.lower_hint, opts.upper_hint) {
        if lo > hi {
            return Err(ExactError::InconsistentHints { lo, hi });
        }
    }
    let limits = Limits {
        node_budget: opts.node_budget,
        deadline: opts.time_limit.map(|t| Instant::now() + t),
    };
    let nodes = AtomicU64::new(0);
    let mut prev: Option<Step> = None;
    for m in 1..=n {
        let hints = if m == n { (opts.lower_hint, opts.upper_hint) } else { (None, None) };
        let step = solve_step(m, prev.as_ref(), hints, &limits, &nodes, opts.threads)?;
        prev = Some(step);
    }
    let step = prev.expect("n >= 1");
    let value = step.witness.edge_count() as u64;
    let status = if step.exact {
        SearchStatus::Exact
    } else {
        SearchStatus::InterruptedWithBounds { lo: value, hi: step.hi }
    };
    Ok(SearchResult {
        n,
        value,
        witness: step.witness,
        nodes_explored: nodes.into_inner(),
        status,
    })
}
