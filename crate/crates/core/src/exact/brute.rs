//! Exhaustive maximisation over every edge subset, for small `n`.

use super::{ExactError, SearchResult, SearchStatus};
use crate::graph::Graph;

pub const MAX_BRUTE_FORCE_ORDER: usize = 7;

fn c4_free(rows: &[u8]) -> bool {
    for u in 0..rows.len() {
        for v in u + 1..rows.len() {
            if (rows[u] & rows[v]).count_ones() > 1 {
                return false;
            }
        }
    }
    true
}

/// Tries all `2^C(n, 2)` graphs on `n <= 7` vertices.
pub fn brute_force_ex(n: usize) -> Result<SearchResult, ExactError> {
    if n == 0 {
        return Err(ExactError::Empty);
    }
    if n > MAX_BRUTE_FORCE_ORDER {
        return Err(ExactError::TooLarge { n, max: MAX_BRUTE_FORCE_ORDER });
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut best = (0u32, 0u64);
    let mut rows = vec![0u8; n];
    for mask in 0u64..1 << slots.len() {
        let e = mask.count_ones();
        if e <= best.0 {
            continue;
        }
        rows.iter_mut().for_each(|r| *r = 0);
        for (b, &(i, j)) in slots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        if c4_free(&rows) {
            best = (e, mask);
        }
    }
    let edges = slots.iter().enumerate().filter(|(b, _)| best.1 >> b & 1 == 1).map(|(_, &e)| e);
    let witness = Graph::from_edges(n, edges).expect("valid slots");
    Ok(SearchResult {
        n,
        value: best.0 as u64,
        witness,
        nodes_explored: 1 << slots.len(),
        status: SearchStatus::Exact,
    })
}
