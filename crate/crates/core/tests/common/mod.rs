#![allow(dead_code)]

use c4ex_core::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Whether the freshly added edge `uv` closed a 4-cycle, i.e. pushed some codegree
/// through `u` or `v` above one.
pub fn closes_c4(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(v).any(|w| w != u && g.codegree(u, w) > 1) || g.neighbors(u).any(|w| w != v && g.codegree(v, w) > 1)
}

/// Random maximal-ish C4-free graph: vertex pairs in random order, each kept unless
/// it closes a 4-cycle, stopping after `max_edges` edges.
pub fn random_c4_free<R: Rng>(rng: &mut R, n: usize, max_edges: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        if g.edge_count() >= max_edges {
            break;
        }
        g.add_edge(u, v);
        if closes_c4(&g, u, v) {
            g.remove_edge(u, v);
        }
    }
    g
}

/// A uniformly random non-empty subset of `items`.
pub fn random_subset<R: Rng>(rng: &mut R, items: &[usize]) -> Vec<usize> {
    loop {
        let pick: Vec<usize> = items.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if !pick.is_empty() {
            return pick;
        }
    }
}

pub const PRIME_POWERS_TO_32: [u64; 15] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 19, 23, 25, 27, 32];
