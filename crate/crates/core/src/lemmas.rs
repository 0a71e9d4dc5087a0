//! Counting inequalities for C4-free graphs, evaluated on concrete graphs.
//!
//! Each check returns a [`LemmaVerdict`] whose `margin` is `lhs - rhs` in the
//! inequality's canonical orientation, as an exact rational, so `holds` is exactly
//! `margin >= 0`. The inequalities that only make sense inside a proof by
//! contradiction (the `S+` bounds and the weight chains) also report whether their
//! hypotheses are met; a verdict with `hypotheses_met == false` is informational.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{weight_between, DeficiencyProfile, Graph, VertexSet};
use crate::rational::{self, binom2, int, ratio, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LemmaError {
    #[error("graph contains the 4-cycle {0:?}")]
    HasC4([usize; 4]),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {member} of I is not a neighbour of {center}")]
    NotANeighbor { center: usize, member: usize },
    #[error("I must be non-empty")]
    EmptySet,
}

/// A graph that has been checked to contain no 4-cycle.
#[derive(Debug, Clone, Copy)]
pub struct C4FreeGraph<'g>(&'g Graph);

impl<'g> C4FreeGraph<'g> {
    pub fn new(g: &'g Graph) -> Result<Self, LemmaError> {
        match g.find_c4() {
            Some(c) => Err(LemmaError::HasC4(c)),
            None => Ok(C4FreeGraph(g)),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.0
    }

    fn check_vertex(&self, v: usize) -> Result<(), LemmaError> {
        if v >= self.0.order() {
            return Err(LemmaError::VertexOutOfRange { vertex: v, n: self.0.order() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Context {
    pub n: usize,
    pub e: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
}

impl Context {
    fn of(g: &Graph) -> Self {
        Context { n: g.order(), e: g.edge_count(), ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub name: &'static str,
    pub holds: bool,
    #[serde(serialize_with = "rational::serialize")]
    pub margin: Rational,
    pub hypotheses_met: bool,
    pub context: Context,
}

impl LemmaVerdict {
    fn new(name: &'static str, margin: Rational, hypotheses_met: bool, context: Context) -> Self {
        LemmaVerdict { name, holds: margin >= Rational::zero(), margin, hypotheses_met, context }
    }

    /// A failure that counts: hypotheses met and the inequality violated.
    pub fn is_violation(&self) -> bool {
        self.hypotheses_met && !self.holds
    }
}

/// `f(N(v)) >= q d(v) - n + 1`.
pub fn check_lemma_fn(g: &C4FreeGraph, q: i64, v: usize) -> Result<LemmaVerdict, LemmaError> {
    g.check_vertex(v)?;
    let graph = g.graph();
    let profile = DeficiencyProfile::new(graph, q);
    Ok(lemma_fn_with(graph, &profile, v))
}

fn lemma_fn_with(graph: &Graph, profile: &DeficiencyProfile, v: usize) -> LemmaVerdict {
    let q = profile.q;
    let lhs = profile.neighborhood_sum(graph, v);
    let rhs = q * graph.degree(v) as i64 - graph.order() as i64 + 1;
    let ctx = Context { q: Some(q), vertex: Some(v), ..Context::of(graph) };
    LemmaVerdict::new("f_neighborhood", int(lhs - rhs), true, ctx)
}

/// Lemma check at every vertex, sharing one deficiency profile.
pub fn check_lemma_fn_all(g: &C4FreeGraph, q: i64) -> Vec<LemmaVerdict> {
    let graph = g.graph();
    let profile = DeficiencyProfile::new(graph, q);
    (0..graph.order()).map(|v| lemma_fn_with(graph, &profile, v)).collect()
}

/// The sets `N(u) \ {v}` for `u` in `N(v)` are pairwise disjoint.
pub fn punctured_neighborhoods_disjoint(g: &Graph, v: usize) -> bool {
    let mut seen = VertexSet::new(g.order());
    for u in g.neighbors(v) {
        for w in g.neighbors(u).filter(|&w| w != v) {
            if !seen.insert(w) {
                return false;
            }
        }
    }
    true
}

/// Every quantity in the 2-path counting argument for one `(v, I)`.
#[derive(Debug, Clone, Serialize)]
pub struct TwoPathReport {
    /// `C(n - |X|, 2) - (n - k) B(L / (n - k))`.
    pub verdict: LemmaVerdict,
    pub k: usize,
    pub x_size: usize,
    /// `sum_{i in I} d_i - k + 1`.
    pub x_size_formula: i64,
    /// `M` counted over pairs of end points outside `X`.
    pub m_by_endpoints: u64,
    /// `M` counted as `sum_{j not in I} C(|N(v_j) \ X|, 2)`.
    pub m_by_middle: u64,
    /// `C(n - |X|, 2)`.
    pub m_upper: u64,
    /// `sum_{v_j in N(v) \ I} B(d_j - 1) + sum_{v_j not in N(v)} B(d_j - k)`.
    #[serde(serialize_with = "rational::serialize")]
    pub termwise_lower: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub l: Rational,
    /// `(n - k) B(L / (n - k))`.
    #[serde(serialize_with = "rational::serialize")]
    pub jensen_lower: Rational,
    /// `(n - k) B+(L / (n - k))` with `B+(x) = B(x)` for `x >= 1` and `0` below.
    #[serde(serialize_with = "rational::serialize")]
    pub convex_lower: Rational,
    /// `C(n - |X|, 2) - convex_lower`.
    #[serde(serialize_with = "rational::serialize")]
    pub convex_margin: Rational,
}

impl TwoPathReport {
    pub fn x_size_matches(&self) -> bool {
        self.x_size as i64 == self.x_size_formula
    }

    pub fn m_routes_agree(&self) -> bool {
        self.m_by_endpoints == self.m_by_middle
    }

    pub fn m_within_upper(&self) -> bool {
        self.m_by_endpoints <= self.m_upper
    }

    /// `M >= (n - k) B(L / (n - k))`.
    pub fn jensen_holds(&self) -> bool {
        Rational::from_integer(BigInt::from(self.m_by_endpoints)) >= self.jensen_lower
    }

    /// `L >= 0`: the regime where the termwise bound `C(t, 2) >= B(d_j - k)` is valid
    /// for every `j`.
    pub fn l_nonnegative(&self) -> bool {
        self.l >= Rational::zero()
    }

    /// `M >= (n - k) B+(L / (n - k))`.
    pub fn convex_jensen_holds(&self) -> bool {
        Rational::from_integer(BigInt::from(self.m_by_endpoints)) >= self.convex_lower
    }

    pub fn all_intermediate_hold(&self) -> bool {
        self.x_size_matches() && self.m_routes_agree() && self.m_within_upper() && self.jensen_holds()
    }
}

/// `C(n - sum d_i + k - 1, 2) >= (n - k) B((2m - sum d_i + (k - 1) d(v) - nk + k) / (n - k))`
/// for `I ⊆ N(v)`, `|I| = k >= 1`, with `B(x) = x(x - 1)/2`.
pub fn check_2path_inequality(g: &C4FreeGraph, v: usize, set: &[usize]) -> Result<TwoPathReport, LemmaError> {
    let graph = g.graph();
    let n = graph.order();
    g.check_vertex(v)?;
    if set.is_empty() {
        return Err(LemmaError::EmptySet);
    }
    for &u in set {
        g.check_vertex(u)?;
        if !graph.has_edge(v, u) {
            return Err(LemmaError::NotANeighbor { center: v, member: u });
        }
    }
    let in_i = VertexSet::from_vertices(n, set.iter().copied());
    let k = in_i.len();
    let m = graph.edge_count() as i64;
    let dv = graph.degree(v) as i64;
    let sum_d: i64 = in_i.iter().map(|u| graph.degree(u) as i64).sum();

    let mut x = VertexSet::new(n);
    for u in in_i.iter() {
        x.union_with_words(graph.row(u));
    }
    let x_size = x.len();
    let m_by_endpoints = graph.count_2paths_outside(&x);
    let mut m_by_middle = 0u64;
    let mut termwise_lower = Rational::zero();
    let nv = graph.neighborhood(v);
    let ki = k as i64;
    for j in (0..n).filter(|&j| !in_i.contains(j)) {
        let outside = graph.degree(j) - x.intersection_len(graph.row(j));
        m_by_middle += (outside * outside.saturating_sub(1) / 2) as u64;
        let dj = graph.degree(j) as i64;
        let arg = if nv.contains(j) { dj - 1 } else { dj - ki };
        termwise_lower += binom2(&int(arg));
    }

    let nk = (n - k) as i64;
    let l = int(2 * m - sum_d + (ki - 1) * dv - n as i64 * ki + ki);
    let (jensen_lower, convex_lower) = if nk > 0 {
        let mean = &l / int(nk);
        (int(nk) * binom2(&mean), int(nk) * binom2_plus(&mean))
    } else {
        (Rational::zero(), Rational::zero())
    };
    let top = n as i64 - sum_d + ki - 1;
    let lhs = binom2(&int(top));
    let convex_margin = &lhs - &convex_lower;
    let m_upper = if top >= 2 { (top * (top - 1) / 2) as u64 } else { 0 };

    let ctx = Context { vertex: Some(v), set: Some(in_i.iter().collect()), ..Context::of(graph) };
    let verdict = LemmaVerdict::new("two_path", lhs - &jensen_lower, true, ctx);
    Ok(TwoPathReport {
        verdict,
        k,
        x_size,
        x_size_formula: sum_d - ki + 1,
        m_by_endpoints,
        m_by_middle,
        m_upper,
        termwise_lower,
        l,
        jensen_lower,
        convex_lower,
        convex_margin,
    })
}

/// `B(x)` for `x >= 1`, else `0`: convex, non-decreasing, and below `C(t, 2)` for every
/// integer `t >= x`.
pub fn binom2_plus(x: &Rational) -> Rational {
    if *x >= int(1) {
        binom2(x)
    } else {
        Rational::zero()
    }
}

/// Which contradiction argument a check belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `n = q^2 + q + 2 - r`, `0 <= r <= 0.033 q`, at least `q(q+1)^2/2 - rq` edges,
    /// minimum degree at least `0.2 q`.
    Deficit { r: i64 },
    /// `n = q^2 + q + 1 + r`, `1 <= r <= 0.3 q`, more than `n(q+1)/2` edges.
    Surplus,
}

fn deficit_hypotheses(graph: &Graph, q: i64, r: i64) -> bool {
    let n = graph.order() as i64;
    let e = int(graph.edge_count() as i64);
    let qr = int(q);
    let m0 = &qr * (&qr + int(1)) * (&qr + int(1)) / int(2) - int(r * q);
    let min_deg = graph.min_degree().unwrap_or(0) as i64;
    n == q * q + q + 2 - r
        && e >= m0
        && int(min_deg) >= ratio(1, 5) * &qr
        && r >= 0
        && int(r) <= ratio(33, 1000) * &qr
}

/// `r = n - (q^2 + q + 1)` when the surplus hypotheses hold.
fn surplus_hypotheses(graph: &Graph, q: i64) -> (bool, i64) {
    let n = graph.order() as i64;
    let r = n - (q * q + q + 1);
    let e2 = 2 * graph.edge_count() as i64;
    let ok = r >= 1 && int(r) <= ratio(3, 10) * int(q) && e2 > n * (q + 1);
    (ok, r)
}

/// `|S+| <= -f(S+) <= 4r^2 + 16r + 18` on `q^2 + q + 2 - r` vertices.
///
/// Returns the size comparison (`splus_size`) and the bound itself (`splus_bound`).
pub fn check_splus_bound(g: &C4FreeGraph, q: i64, r: i64) -> Vec<LemmaVerdict> {
    let graph = g.graph();
    let profile = DeficiencyProfile::new(graph, q);
    let hyp = deficit_hypotheses(graph, q, r);
    let neg = -profile.f_splus;
    let ctx = Context { q: Some(q), r: Some(r), ..Context::of(graph) };
    vec![
        LemmaVerdict::new("splus_size", int(neg - profile.s_plus.len() as i64), hyp, ctx.clone()),
        LemmaVerdict::new("splus_bound", int(4 * r * r + 16 * r + 18 - neg), hyp, ctx),
    ]
}

/// Per-vertex bound on `|N(v) ∩ S+|`.
///
/// `Deficit { r }`: `|N(v) ∩ S+| <= 3r + 8` for every vertex.
/// `Surplus`: `|N(v) ∩ S+| < 0.55 q` for every vertex of degree at least `0.7 q`
/// (margin reported as `ceil(0.55 q) - 1 - count`).
pub fn check_neighborhood_splus(g: &C4FreeGraph, q: i64, regime: Regime) -> Vec<LemmaVerdict> {
    let graph = g.graph();
    let profile = DeficiencyProfile::new(graph, q);
    let qr = int(q);
    let (hyp, r) = match regime {
        Regime::Deficit { r } => (deficit_hypotheses(graph, q, r), r),
        Regime::Surplus => surplus_hypotheses(graph, q),
    };
    let strict_cap = -rational::floor(&-(ratio(11, 20) * &qr)) - BigInt::from(1);
    let mut out = Vec::new();
    for v in 0..graph.order() {
        let count = profile.s_plus.intersection_len(graph.row(v)) as i64;
        let ctx = Context { q: Some(q), r: Some(r), vertex: Some(v), ..Context::of(graph) };
        match regime {
            Regime::Deficit { .. } => {
                out.push(LemmaVerdict::new("neighborhood_splus", int(3 * r + 8 - count), hyp, ctx));
            }
            Regime::Surplus => {
                if int(graph.degree(v) as i64) >= ratio(7, 10) * &qr {
                    let margin = Rational::from_integer(&strict_cap - BigInt::from(count));
                    out.push(LemmaVerdict::new("neighborhood_splus", margin, hyp, ctx));
                }
            }
        }
    }
    out
}

/// The double count of `W = sum f(v)` over edges `uv`, `u in S+`, `v in S`:
///
/// - `Deficit { r }`: `(q - 1)(-f(S+)) <= W <= (3r + 8) f(S)`,
/// - `Surplus`: `(q - r)(-f(S+)) <= W <= (0.7q - 1) f(S)`.
///
/// Returns `weight_chain_lower` and `weight_chain_upper`.
pub fn check_weight_chain(g: &C4FreeGraph, q: i64, regime: Regime) -> Vec<LemmaVerdict> {
    let graph = g.graph();
    let profile = DeficiencyProfile::new(graph, q);
    let w = int(weight_between(graph, &profile, &profile.s_plus, &profile.s).expect("S and S+ are disjoint"));
    let neg = int(-profile.f_splus);
    let fs = int(profile.f_s);
    let (hyp, r, lower, upper) = match regime {
        Regime::Deficit { r } => (deficit_hypotheses(graph, q, r), r, int(q - 1) * &neg, int(3 * r + 8) * &fs),
        Regime::Surplus => {
            let (hyp, r) = surplus_hypotheses(graph, q);
            (hyp, r, int(q - r) * &neg, (ratio(7, 10) * int(q) - int(1)) * &fs)
        }
    };
    let ctx = Context { q: Some(q), r: Some(r), ..Context::of(graph) };
    vec![
        LemmaVerdict::new("weight_chain_lower", &w - lower, hyp, ctx.clone()),
        LemmaVerdict::new("weight_chain_upper", upper - &w, hyp, ctx),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarity::polarity_graph_for;

    fn checked(g: &Graph) -> C4FreeGraph<'_> {
        C4FreeGraph::new(g).unwrap()
    }

    #[test]
    fn c4_is_refused() {
        let g = Graph::complete_bipartite(2, 2);
        assert!(matches!(C4FreeGraph::new(&g), Err(LemmaError::HasC4(_))));
    }

    #[test]
    fn lemma_fn_examples() {
        let c5 = Graph::cycle(5);
        let v = check_lemma_fn(&checked(&c5), 2, 0).unwrap();
        assert_eq!(v.margin, int(2));
        assert!(v.holds);

        let p3 = polarity_graph_for(3).unwrap();
        let g = checked(&p3);
        let profile = DeficiencyProfile::new(&p3, 3);
        for v in (0..13).filter(|&v| p3.degree(v) == 4) {
            let verdict = check_lemma_fn(&g, 3, v).unwrap();
            // RHS is 12 - 13 + 1 = 0, so the margin is the number of absolute neighbours.
            let absolute = p3.neighbors(v).filter(|&u| profile.f[u] == 1).count() as i64;
            assert_eq!(verdict.margin, int(absolute));
        }

        let single = Graph::new(1);
        let v = check_lemma_fn(&checked(&single), 1, 0).unwrap();
        assert_eq!(v.margin, int(0));
        assert!(v.holds);

        assert!(matches!(check_lemma_fn(&checked(&single), 1, 3), Err(LemmaError::VertexOutOfRange { .. })));
    }

    #[test]
    fn two_path_star() {
        let star = Graph::complete_bipartite(1, 4);
        let rep = check_2path_inequality(&checked(&star), 0, &[1, 2, 3, 4]).unwrap();
        // X = {0}; every pair of leaves is joined through the centre.
        assert_eq!(rep.x_size, 1);
        assert!(rep.x_size_matches());
        assert_eq!(rep.m_by_endpoints, 6);
        assert!(rep.m_routes_agree());
        // L = 8 - 4 + 12 - 20 + 4 = 0; C(4, 2) - 1 * B(0) = 6.
        assert_eq!(rep.l, int(0));
        assert_eq!(rep.verdict.margin, int(6));
        assert!(rep.all_intermediate_hold());
    }

    #[test]
    fn two_path_polarity() {
        let p4 = polarity_graph_for(4).unwrap();
        let g = checked(&p4);
        for v in (0..p4.order()).filter(|&v| p4.degree(v) == 5) {
            let nbrs: Vec<usize> = p4.neighbors(v).collect();
            let rep = check_2path_inequality(&g, v, &nbrs).unwrap();
            assert!(rep.x_size_matches() && rep.m_routes_agree() && rep.m_within_upper());
            assert!(rep.convex_jensen_holds() && rep.convex_margin >= int(0));
            if nbrs.iter().all(|&u| p4.degree(u) == 4) {
                // The nucleus: sum d_i = 20, L = 0, C(5, 2) - 16 B(0) = 10.
                assert_eq!((rep.l.clone(), rep.verdict.margin.clone()), (int(0), int(10)));
            } else {
                // sum d_i = 24, L = -4: C(1, 2) - 16 B(-1/4) = -5/2, while M = 0.
                assert_eq!((rep.l.clone(), rep.verdict.margin.clone()), (int(-4), ratio(-5, 2)));
                assert!(!rep.jensen_holds());
                assert_eq!(rep.convex_margin, int(0));
            }
        }
        let nbrs: Vec<usize> = p4.neighbors(0).take(2).collect();
        let rep = check_2path_inequality(&g, 0, &nbrs).unwrap();
        assert!(rep.l_nonnegative() && rep.verdict.holds && rep.all_intermediate_hold());
    }

    #[test]
    fn convex_binomial() {
        assert_eq!(binom2_plus(&ratio(-1, 4)), int(0));
        assert_eq!(binom2_plus(&ratio(1, 2)), int(0));
        assert_eq!(binom2_plus(&ratio(5, 2)), ratio(15, 8));
    }

    #[test]
    fn two_path_rejects_bad_sets() {
        let c5 = Graph::cycle(5);
        let g = checked(&c5);
        assert_eq!(check_2path_inequality(&g, 0, &[]).unwrap_err(), LemmaError::EmptySet);
        assert_eq!(
            check_2path_inequality(&g, 0, &[2]).unwrap_err(),
            LemmaError::NotANeighbor { center: 0, member: 2 }
        );
    }

    #[test]
    fn punctured_neighbourhoods() {
        let p5 = polarity_graph_for(5).unwrap();
        assert!((0..p5.order()).all(|v| punctured_neighborhoods_disjoint(&p5, v)));
        assert!(!punctured_neighborhoods_disjoint(&Graph::complete_bipartite(2, 2), 0));
    }

    /// PG(2, 7) plus a vertex joined to an absolute point `a` and one neighbour `b` of `a`.
    /// `a` and `b` have no common neighbour, so the result is C4-free on `q^2 + q + 2`
    /// vertices with `q(q+1)^2/2 + 2` edges and minimum degree 2 >= 0.2 q.
    fn polarity_plus_one(q: u64) -> Graph {
        let p = polarity_graph_for(q).unwrap();
        let n = p.order();
        let a = (0..n).find(|&v| p.degree(v) as u64 == q).unwrap();
        let b = p.neighbors(a).next().unwrap();
        let mut g = Graph::new(n + 1);
        for (u, v) in p.edges() {
            g.add_edge(u, v);
        }
        g.add_edge(n, a);
        g.add_edge(n, b);
        g
    }

    #[test]
    fn splus_bound_on_extended_polarity_graph() {
        let g = polarity_plus_one(7);
        let cg = checked(&g);
        let verdicts = check_splus_bound(&cg, 7, 0);
        assert!(verdicts.iter().all(|v| v.hypotheses_met && v.holds));
        // S+ = {b} with f(b) = -1.
        assert_eq!(verdicts[1].margin, int(17));

        for v in check_neighborhood_splus(&cg, 7, Regime::Deficit { r: 0 }) {
            assert!(v.hypotheses_met && v.holds);
        }
        let chain = check_weight_chain(&cg, 7, Regime::Deficit { r: 0 });
        assert!(chain.iter().all(|v| v.hypotheses_met && v.holds), "{chain:?}");
    }

    #[test]
    fn unmet_hypotheses_are_reported() {
        // An isolated extra vertex breaks the minimum-degree hypothesis.
        let p = polarity_graph_for(7).unwrap();
        let mut g = Graph::new(p.order() + 1);
        for (u, v) in p.edges() {
            g.add_edge(u, v);
        }
        let verdicts = check_splus_bound(&checked(&g), 7, 0);
        assert!(verdicts.iter().all(|v| !v.hypotheses_met));
        assert!(verdicts.iter().all(|v| !v.is_violation()));
    }

    #[test]
    fn polarity_graphs_have_empty_splus() {
        let p = polarity_graph_for(5).unwrap();
        let cg = checked(&p);
        for v in check_neighborhood_splus(&cg, 5, Regime::Surplus) {
            assert!(v.holds);
            assert!(!v.hypotheses_met);
        }
        let chain = check_weight_chain(&cg, 5, Regime::Surplus);
        assert!(chain.iter().all(|v| v.holds));
        let profile = DeficiencyProfile::new(&p, 5);
        assert!(profile.s_plus.is_empty());
        assert_eq!(weight_between(&p, &profile, &profile.s_plus, &profile.s).unwrap(), 0);
    }

    #[test]
    fn c5_weight_chain() {
        let c5 = Graph::cycle(5);
        let pos = crate::bounds::interval_of(5);
        assert_eq!(pos.q, 2);
        let chain = check_weight_chain(&checked(&c5), 2, Regime::Surplus);
        assert!(chain.iter().all(|v| v.holds));
        assert_eq!(chain[0].margin, int(0));
    }
}
