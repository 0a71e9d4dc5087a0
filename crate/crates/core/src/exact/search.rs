//! Branch and bound over edge slots for "is there a C4-free graph on `n` vertices with
//! `target` edges?".
//!
//! Vertex 0 is taken to have the maximum degree `delta`, with `N(0) = {1, ..., delta}`,
//! and the edges inside `N(0)` (a matching, since 0 and any vertex share at most one
//! neighbour) are fixed to `{1,2}, {3,4}, ...`. Every other slot is decided in
//! lexicographic order.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

pub const MAX_SEARCH_ORDER: usize = 64;

pub(crate) struct Limits {
    pub node_budget: Option<u64>,
    pub deadline: Option<Instant>,
}

/// Shared across the workers of one decision.
pub(crate) struct Shared<'a> {
    pub limits: &'a Limits,
    pub nodes: &'a AtomicU64,
    pub stop: AtomicBool,
    pub out_of_budget: AtomicBool,
}

impl Shared<'_> {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(b) = self.limits.node_budget {
            if n > b {
                self.nodes.fetch_sub(1, Ordering::Relaxed);
                self.out_of_budget.store(true, Ordering::Relaxed);
                self.stop.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if n & 0x3ff == 0 {
            if let Some(d) = self.limits.deadline {
                if Instant::now() >= d {
                    self.out_of_budget.store(true, Ordering::Relaxed);
                    self.stop.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

pub(crate) enum Outcome {
    Found(Vec<u64>),
    Infeasible,
    Interrupted,
}

/// One fixed `(delta, matching size)` branch.
struct Branch<'a> {
    n: usize,
    target: usize,
    delta: usize,
    min_deg: usize,
    slots: Vec<(u8, u8)>,
    adj: Vec<u64>,
    deg: Vec<usize>,
    edges: usize,
    pair_budget: i64,
    shared: &'a Shared<'a>,
}

fn binom2(d: usize) -> i64 {
    (d * d.saturating_sub(1) / 2) as i64
}

impl Branch<'_> {
    /// `N(N(v))`.
    fn second_neighbourhood(&self, v: usize) -> u64 {
        let mut m = 0;
        let mut a = self.adj[v];
        while a != 0 {
            m |= self.adj[a.trailing_zeros() as usize];
            a &= a - 1;
        }
        m
    }

    fn addable(&self, i: usize, j: usize, nn_i: u64) -> bool {
        self.deg[i] < self.delta && self.deg[j] < self.delta && nn_i & self.adj[j] == 0
    }

    fn set(&mut self, i: usize, j: usize, on: bool) {
        let (bi, bj) = (1u64 << i, 1u64 << j);
        let cost = if on { self.deg[i] + self.deg[j] } else { self.deg[i] + self.deg[j] - 2 };
        if on {
            self.adj[i] |= bj;
            self.adj[j] |= bi;
            self.deg[i] += 1;
            self.deg[j] += 1;
            self.edges += 1;
            self.pair_budget -= cost as i64;
        } else {
            self.adj[i] &= !bj;
            self.adj[j] &= !bi;
            self.deg[i] -= 1;
            self.deg[j] -= 1;
            self.edges -= 1;
            self.pair_budget += cost as i64;
        }
    }

    /// Whether the remaining slots from `idx` could still lift the graph to `target`
    /// edges with every degree at least `min_deg`.
    fn may_reach(&self, idx: usize) -> bool {
        let need = self.target - self.edges;
        let n = self.n;
        let mut cap = [0usize; MAX_SEARCH_ORDER];
        cap[..n].copy_from_slice(&self.deg[..n]);
        let nn: Vec<u64> = (0..n).map(|v| self.second_neighbourhood(v)).collect();
        let mut addable = 0usize;
        for &(i, j) in &self.slots[idx..] {
            let (i, j) = (i as usize, j as usize);
            if self.addable(i, j, nn[i]) {
                addable += 1;
                cap[i] += 1;
                cap[j] += 1;
            }
        }
        if addable < need {
            return false;
        }
        // Increment d -> d + 1 of a degree costs d pairs of the budget
        // C(n, 2) - sum C(d_v, 2).
        let mut forced_cost = 0i64;
        let mut forced_inc = 0usize;
        let mut by_level = [0usize; MAX_SEARCH_ORDER];
        let mut free_inc = 0usize;
        for v in 0..n {
            let c = cap[v].min(self.delta);
            if c < self.min_deg {
                return false;
            }
            let start = self.deg[v].max(self.min_deg);
            if self.deg[v] < self.min_deg {
                forced_inc += self.min_deg - self.deg[v];
                forced_cost += binom2(self.min_deg) - binom2(self.deg[v]);
            }
            for level in by_level.iter_mut().take(c).skip(start) {
                *level += 1;
            }
            free_inc += c - start;
        }
        let want = 2 * need;
        if forced_inc + free_inc < want {
            return false;
        }
        let mut cost = forced_cost;
        let mut rest = want.saturating_sub(forced_inc);
        for (level, &count) in by_level.iter().enumerate() {
            if rest == 0 || cost > self.pair_budget {
                break;
            }
            let take = rest.min(count);
            cost += (take * level) as i64;
            rest -= take;
        }
        cost <= self.pair_budget
    }

    fn dfs(&mut self, idx: usize) -> Option<bool> {
        if self.edges == self.target {
            return Some(self.deg.iter().all(|&d| d >= self.min_deg));
        }
        if !self.shared.tick() {
            return None;
        }
        if idx == self.slots.len() || !self.may_reach(idx) {
            return Some(false);
        }
        let (i, j) = self.slots[idx];
        let (i, j) = (i as usize, j as usize);
        if self.addable(i, j, self.second_neighbourhood(i)) {
            self.set(i, j, true);
            let r = self.dfs(idx + 1);
            if r != Some(false) {
                return r;
            }
            self.set(i, j, false);
        }
        self.dfs(idx + 1)
    }
}

/// Searches the branch where vertex 0 has degree `delta` and `N(0)` spans a matching of
/// `matched` edges.
pub(crate) fn search_branch(n: usize, target: usize, delta: usize, matched: usize, min_deg: usize, shared: &Shared) -> Outcome {
    let mut br = Branch {
        n,
        target,
        delta,
        min_deg,
        slots: Vec::new(),
        adj: vec![0; n],
        deg: vec![0; n],
        edges: 0,
        pair_budget: binom2(n),
        shared,
    };
    for u in 1..=delta {
        br.set(0, u, true);
    }
    for t in 0..matched {
        br.set(2 * t + 1, 2 * t + 2, true);
    }
    for i in 1..n {
        for j in i + 1..n {
            if j > delta || i > delta {
                br.slots.push((i as u8, j as u8));
            }
        }
    }
    if br.edges > target {
        return Outcome::Infeasible;
    }
    match br.dfs(0) {
        Some(true) => Outcome::Found(br.adj),
        Some(false) => Outcome::Infeasible,
        None if shared.out_of_budget.load(Ordering::Relaxed) => Outcome::Interrupted,
        // Another worker found a witness.
        None => Outcome::Infeasible,
    }
}
