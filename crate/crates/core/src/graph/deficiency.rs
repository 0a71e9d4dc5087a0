use serde::Serialize;

use super::{Graph, GraphError, VertexSet};

/// Signed deficiency `f(v) = q + 1 - d(v)` and the induced partition of the vertices
/// into low-degree (`S`, `f > 0`), exact-degree (`q + 1`) and high-degree (`S+`, `f < 0`)
/// classes.
#[derive(Debug, Clone, Serialize)]
pub struct DeficiencyProfile {
    pub q: i64,
    pub f: Vec<i64>,
    #[serde(serialize_with = "ser_set")]
    pub s: VertexSet,
    #[serde(serialize_with = "ser_set")]
    pub s_q1: VertexSet,
    #[serde(serialize_with = "ser_set")]
    pub s_plus: VertexSet,
    pub f_s: i64,
    pub f_splus: i64,
}

fn ser_set<S: serde::Serializer>(set: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(set.iter())
}

impl DeficiencyProfile {
    pub fn new(g: &Graph, q: i64) -> Self {
        let n = g.order();
        let f: Vec<i64> = (0..n).map(|v| q + 1 - g.degree(v) as i64).collect();
        let mut s = VertexSet::new(n);
        let mut s_q1 = VertexSet::new(n);
        let mut s_plus = VertexSet::new(n);
        let (mut f_s, mut f_splus) = (0, 0);
        for (v, &fv) in f.iter().enumerate() {
            match fv.signum() {
                1 => {
                    s.insert(v);
                    f_s += fv;
                }
                0 => {
                    s_q1.insert(v);
                }
                _ => {
                    s_plus.insert(v);
                    f_splus += fv;
                }
            }
        }
        DeficiencyProfile { q, f, s, s_q1, s_plus, f_s, f_splus }
    }

    /// `f(V) = f(S) + f(S+)`.
    pub fn total(&self) -> i64 {
        self.f_s + self.f_splus
    }

    /// `f(A)`.
    pub fn sum_over<'a, I: IntoIterator<Item = usize>>(&'a self, set: I) -> i64 {
        set.into_iter().map(|v| self.f[v]).sum()
    }

    /// `f(N(v))`.
    pub fn neighborhood_sum(&self, g: &Graph, v: usize) -> i64 {
        g.neighbors(v).map(|u| self.f[u]).sum()
    }
}

/// Total weight of the edges `uv` with `u in a`, `v in b`, where edge `uv` weighs `f(v)`.
pub fn weight_between(g: &Graph, profile: &DeficiencyProfile, a: &VertexSet, b: &VertexSet) -> Result<i64, GraphError> {
    if let Some(v) = a.first_common(b) {
        return Err(GraphError::Overlap(v));
    }
    let mut w = 0;
    for u in a.iter() {
        for v in g.neighbors(u) {
            if b.contains(v) {
                w += profile.f[v];
            }
        }
    }
    Ok(w)
}
