//! Exact certification of the two quadratic-in-`s` inequalities behind the `S+`
//! neighbourhood bounds.
//!
//! Both `F` and `G` have the shape
//!
//! ```text
//! (n - s + k - 1)(n - s + k - 2)(n - k) - x (x - n + k),
//! x = 2 m0 - s + (k - 1) d - n k + k,
//! ```
//!
//! with parameters
//!
//! | | `n` | `k` | `m0` | `d` |
//! |---|---|---|---|---|
//! | `F` | `q^2 + q + 2 - r` | `3r + 9` | `q(q+1)^2/2 - rq` | `q/5` |
//! | `G` | `q^2 + q + 1 + r` | `11q/20` | `n(q+1)/2` | `7q/10` |
//!
//! For fixed `(q, r)` each is a quadratic in `s`. A [`Certificate`] records a positive
//! `s^2` coefficient and negative values at `s = k(q+2)` and `s = q^2 + 2q`, which
//! together force negativity on the whole real interval between them.

pub mod mpoly;

use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use mpoly::MPoly;
use mpoly::{Cleared, Q, R, S};

use crate::rational::{self, int, ratio, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("the s^2 coefficient of {which} vanishes at q = {q}, r = {r}")]
    ZeroLeadingCoefficient { which: Which, q: i64, r: i64 },
    #[error("unknown inequality {0:?}, expected F or G")]
    UnknownWhich(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    F,
    G,
}

impl Which {
    pub fn label(self) -> &'static str {
        match self {
            Which::F => "F",
            Which::G => "G",
        }
    }
}

impl std::fmt::Display for Which {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Which {
    type Err = CertifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" | "f" => Ok(Which::F),
            "G" | "g" => Ok(Which::G),
            _ => Err(CertifyError::UnknownWhich(s.to_string())),
        }
    }
}

/// `n`, `k`, `m0` and the degree floor `d` as polynomials in `q` and `r`.
#[derive(Debug, Clone)]
pub struct Parameters {
    pub n: MPoly,
    pub k: MPoly,
    pub m0: MPoly,
    pub d: MPoly,
}

pub fn parameters(which: Which) -> Parameters {
    let q = MPoly::q();
    let r = MPoly::r();
    let c = |v: Rational| MPoly::constant(v);
    let q2 = &q * &q;
    match which {
        Which::F => {
            let n = &(&(&q2 + &q) + &c(int(2))) - &r;
            let k = &r.scale(&int(3)) + &c(int(9));
            let q1 = &q + &c(int(1));
            let m0 = &(&(&q * &q1) * &q1).scale(&ratio(1, 2)) - &(&r * &q);
            let d = q.scale(&ratio(1, 5));
            Parameters { n, k, m0, d }
        }
        Which::G => {
            let n = &(&(&q2 + &q) + &c(int(1))) + &r;
            let k = q.scale(&ratio(11, 20));
            let m0 = (&n * &(&q + &c(int(1)))).scale(&ratio(1, 2));
            let d = q.scale(&ratio(7, 10));
            Parameters { n, k, m0, d }
        }
    }
}

fn expand(which: Which) -> MPoly {
    let Parameters { n, k, m0, d } = parameters(which);
    let one = MPoly::constant(Rational::one());
    let s = MPoly::s();
    let nk = &n - &k;
    let a = &(&(&n - &s) + &k) - &one;
    let a1 = &a - &one;
    let x = &(&(&(&m0.scale(&int(2)) - &s) + &(&(&k - &one) * &d)) - &(&n * &k)) + &k;
    let first = &(&a * &a1) * &nk;
    let second = &x * &(&x - &nk);
    &first - &second
}

/// `F(q, r, s)`, fully expanded.
pub fn build_f() -> MPoly {
    expand(Which::F)
}

/// `G(q, r, s)`, fully expanded.
pub fn build_g() -> MPoly {
    expand(Which::G)
}

pub fn eval_poly(p: &MPoly, q: &Rational, r: &Rational, s: &Rational) -> Rational {
    p.eval(q, r, s)
}

/// The expansion and its `s`-coefficients, built once per inequality.
#[derive(Debug)]
pub struct Expanded {
    pub which: Which,
    pub params: Parameters,
    pub poly: MPoly,
    /// Coefficient of `s^2`, a polynomial in `q` and `r`.
    pub s2: MPoly,
    /// Coefficient of `s`.
    pub s1: MPoly,
    /// `poly` with `s = k(q + 2)` substituted.
    pub at_lower_end: MPoly,
    /// `[s^0, s^1, s^2]` coefficients and `k`, cleared for fast integer evaluation.
    fast: [Cleared; 4],
}

impl Expanded {
    fn new(which: Which) -> Self {
        let params = parameters(which);
        let poly = expand(which);
        let s2 = poly.coefficient_of(S, 2);
        let s1 = poly.coefficient_of(S, 1);
        let s_lo = &params.k * &(&MPoly::q() + &MPoly::constant(int(2)));
        let at_lower_end = poly.substitute(S, &s_lo);
        let fast = [poly.coefficient_of(S, 0).cleared(), s1.cleared(), s2.cleared(), params.k.cleared()];
        Expanded { which, params, poly, s2, s1, at_lower_end, fast }
    }
}

pub fn expanded(which: Which) -> &'static Expanded {
    static F: OnceLock<Expanded> = OnceLock::new();
    static G: OnceLock<Expanded> = OnceLock::new();
    match which {
        Which::F => F.get_or_init(|| Expanded::new(Which::F)),
        Which::G => G.get_or_init(|| Expanded::new(Which::G)),
    }
}

/// The range of `r` an inequality is claimed for: `0 <= r <= 0.033q` for `F`,
/// `1 <= r <= 0.3q` for `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RRule {
    pub min: i64,
    pub max_num: i64,
    pub max_den: i64,
}

impl RRule {
    pub fn of(which: Which) -> Self {
        match which {
            Which::F => RRule { min: 0, max_num: 33, max_den: 1000 },
            Which::G => RRule { min: 1, max_num: 3, max_den: 10 },
        }
    }

    pub fn range(&self, q: i64) -> RangeInclusive<i64> {
        self.min..=(q * self.max_num).div_euclid(self.max_den)
    }

    pub fn contains(&self, q: i64, r: i64) -> bool {
        r >= self.min && r * self.max_den <= q * self.max_num
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedNegative,
    FailedLeadingCoefficient,
    FailedEmptyInterval,
    FailedLowEndpoint,
    FailedHighEndpoint,
    Inapplicable,
}

impl Verdict {
    pub fn is_certified(self) -> bool {
        self == Verdict::CertifiedNegative
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::CertifiedNegative => "certified-negative",
            Verdict::FailedLeadingCoefficient => "failed-leading-coefficient",
            Verdict::FailedEmptyInterval => "failed-empty-interval",
            Verdict::FailedLowEndpoint => "failed-low-endpoint",
            Verdict::FailedHighEndpoint => "failed-high-endpoint",
            Verdict::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub which: Which,
    pub q: i64,
    pub r: i64,
    #[serde(serialize_with = "rational::serialize")]
    pub k: Rational,
    #[serde(skip)]
    pub n: Rational,
    #[serde(skip)]
    pub m0: Rational,
    #[serde(skip)]
    pub d_floor: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub s_lo: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub s_hi: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub lead_coeff: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub value_lo: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub value_hi: Rational,
    pub verdict: Verdict,
}

/// Decides negativity of `a s^2 + b s + c` on `[s_lo, s_hi]` from its leading
/// coefficient and its two end values.
pub fn certify_quadratic(lead: &Rational, s_lo: &Rational, s_hi: &Rational, value_lo: &Rational, value_hi: &Rational) -> Verdict {
    if !lead.is_positive() {
        Verdict::FailedLeadingCoefficient
    } else if s_lo > s_hi {
        Verdict::FailedEmptyInterval
    } else if !value_lo.is_negative() {
        Verdict::FailedLowEndpoint
    } else if !value_hi.is_negative() {
        Verdict::FailedHighEndpoint
    } else {
        Verdict::CertifiedNegative
    }
}

/// Evaluates the `s^2` coefficient and both end values exactly.
///
/// `(q, r)` outside the claimed range yields [`Verdict::Inapplicable`], with every
/// value still filled in.
pub fn certify_point(which: Which, q: i64, r: i64) -> Certificate {
    let ex = expanded(which);
    let (qr, rr) = (int(q), int(r));
    let z = Rational::zero();
    let at = |p: &MPoly| p.eval(&qr, &rr, &z);
    let [c0, c1, c2, k] = &ex.fast;
    let k = k.eval_integer(q, r, 0);
    let (c0, c1, lead_coeff) = (c0.eval_integer(q, r, 0), c1.eval_integer(q, r, 0), c2.eval_integer(q, r, 0));
    let quadratic = |s: &Rational| (&lead_coeff * s + &c1) * s + &c0;
    let s_lo = &k * int(q + 2);
    let s_hi = int(q * q + 2 * q);
    let value_lo = quadratic(&s_lo);
    let value_hi = quadratic(&s_hi);
    let verdict = if RRule::of(which).contains(q, r) {
        certify_quadratic(&lead_coeff, &s_lo, &s_hi, &value_lo, &value_hi)
    } else {
        Verdict::Inapplicable
    };
    Certificate {
        which,
        q,
        r,
        n: at(&ex.params.n),
        m0: at(&ex.params.m0),
        d_floor: at(&ex.params.d),
        k,
        s_lo,
        s_hi,
        lead_coeff,
        value_lo,
        value_hi,
        verdict,
    }
}

/// `-(s coefficient) / (2 * s^2 coefficient)` and its ratio to `q^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Axis {
    #[serde(serialize_with = "rational::serialize")]
    pub value: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub ratio_to_q2: Rational,
}

pub fn axis_of_symmetry(which: Which, q: i64, r: i64) -> Result<Axis, CertifyError> {
    let ex = expanded(which);
    let z = Rational::zero();
    let a = ex.s2.eval(&int(q), &int(r), &z);
    if a.is_zero() {
        return Err(CertifyError::ZeroLeadingCoefficient { which, q, r });
    }
    let b = ex.s1.eval(&int(q), &int(r), &z);
    let value = -b / (int(2) * a);
    let ratio_to_q2 = &value / int(q * q);
    Ok(Axis { value, ratio_to_q2 })
}

/// The closed forms printed for the `s^2` and `s` coefficients.
pub fn displayed_s_coefficients(which: Which) -> (MPoly, MPoly) {
    match which {
        Which::F => (
            MPoly::from_decimal_terms(&[("1", 2, 0), ("1", 1, 0), ("-4", 0, 1), ("-8", 0, 0)]),
            MPoly::from_decimal_terms(&[
                ("-2", 4, 0),
                ("-2", 3, 0),
                ("-2", 2, 1),
                ("-22", 2, 0),
                ("-4.8", 1, 1),
                ("-18.8", 1, 0),
                ("22", 0, 2),
                ("120", 0, 1),
                ("122", 0, 0),
            ]),
        ),
        Which::G => (
            MPoly::from_decimal_terms(&[("1", 2, 0), ("0.45", 1, 0), ("1", 0, 1)]),
            MPoly::from_decimal_terms(&[
                ("-2", 4, 0),
                ("-3.1", 3, 0),
                ("-4", 2, 1),
                ("0.275", 2, 0),
                ("-3.1", 1, 1),
                ("-0.5", 1, 0),
                ("-2", 0, 2),
                ("2", 0, 0),
            ]),
        ),
    }
}

/// The closed forms printed for the value at `s = k(q + 2)`.
pub fn displayed_lower_end_value(which: Which) -> MPoly {
    match which {
        Which::F => MPoly::from_decimal_terms(&[
            ("-0.2", 4, 1),
            ("-0.2", 4, 0),
            ("6.6", 3, 2),
            ("50.6", 3, 1),
            ("104", 3, 0),
            ("-18", 2, 3),
            ("-180.76", 2, 2),
            ("-633.32", 2, 1),
            ("-729.56", 2, 0),
            ("-51.6", 1, 3),
            ("-487", 1, 2),
            ("-1567.2", 1, 1),
            ("-1630.8", 1, 0),
            ("-9", 0, 4),
            ("-76", 0, 3),
            ("-243", 0, 2),
            ("-656", 0, 1),
            ("-1044", 0, 0),
        ]),
        Which::G => MPoly::from_decimal_terms(&[
            ("-0.210375", 5, 0),
            ("0.6975", 4, 1),
            ("-0.206475", 4, 0),
            ("0.5535", 3, 1),
            ("-0.342125", 3, 0),
            ("1.6975", 2, 2),
            ("-0.205", 2, 1),
            ("-0.685", 2, 0),
            ("0.9", 1, 2),
            ("-0.2", 1, 1),
            ("-0.2", 1, 0),
            ("1", 0, 3),
            ("-1", 0, 1),
        ]),
    }
}

/// One coefficient where the expansion and the printed form disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Exponents of `(q, r)`.
    pub monomial: (u32, u32),
    #[serde(serialize_with = "rational::serialize")]
    pub ours: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub displayed: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionCheck {
    pub name: &'static str,
    pub which: Which,
    pub mismatches: Vec<Mismatch>,
    pub grid_points: usize,
    pub grid_agrees: bool,
}

impl ExpansionCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.grid_agrees
    }
}

fn compare(name: &'static str, which: Which, ours: &MPoly, displayed: &MPoly, grid: impl Fn(&Rational, &Rational) -> Rational) -> ExpansionCheck {
    let mut monos: Vec<(u32, u32)> = ours.terms().chain(displayed.terms()).map(|(m, _)| (m[Q], m[R])).collect();
    monos.sort_unstable();
    monos.dedup();
    let mismatches = monos
        .into_iter()
        .filter_map(|(i, j)| {
            let a = ours.coefficient([i, j, 0]);
            let b = displayed.coefficient([i, j, 0]);
            (a != b).then_some(Mismatch { monomial: (i, j), ours: a, displayed: b })
        })
        .collect();
    let qs = [ratio(9, 1), ratio(25, 2), int(40), int(101), int(997), int(10_000)];
    let rs = [int(0), ratio(1, 3), int(1), int(7), ratio(61, 2), int(300)];
    let z = Rational::zero();
    let mut grid_agrees = true;
    for q in &qs {
        for r in &rs {
            grid_agrees &= grid(q, r) == displayed.eval(q, r, &z);
        }
    }
    ExpansionCheck { name, which, mismatches, grid_points: qs.len() * rs.len(), grid_agrees }
}

/// The `s^2` and `s` coefficients against their printed closed forms.
pub fn s_coefficient_checks(which: Which) -> [ExpansionCheck; 2] {
    let ex = expanded(which);
    let (d2, d1) = displayed_s_coefficients(which);
    let z = Rational::zero();
    [
        compare("s2_coefficient", which, &ex.s2, &d2, |q, r| ex.s2.eval(q, r, &z)),
        compare("s_coefficient", which, &ex.s1, &d1, |q, r| ex.s1.eval(q, r, &z)),
    ]
}

fn lower_end_check(which: Which, name: &'static str) -> ExpansionCheck {
    let ex = expanded(which);
    let grid = |q: &Rational, r: &Rational| {
        let k = ex.params.k.eval(q, r, &Rational::zero());
        ex.poly.eval(q, r, &(k * (q + int(2))))
    };
    compare(name, which, &ex.at_lower_end, &displayed_lower_end_value(which), grid)
}

/// `F(q, r, k(q+2))` expanded symbolically against its printed form, plus a grid
/// evaluation of the unexpanded substitution.
pub fn fmax_expansion_check() -> ExpansionCheck {
    lower_end_check(Which::F, "f_max_expansion")
}

pub fn gmax_expansion_check() -> ExpansionCheck {
    lower_end_check(Which::G, "g_max_expansion")
}

/// The dominant part of the lower-end value and the bound claimed for it:
/// `-0.2q^4 + 6.6q^3 r - 18q^2 r^2 <= -0.01q^4` over `0 <= r <= 0.03q`, and
/// `-0.21q^5 + 0.698 r q^4 <= -0.0006q^5` over `1 <= r <= 0.3q`.
pub struct LeadingTerm {
    pub poly: MPoly,
    pub bound: MPoly,
    /// Degree of homogeneity, used to normalise margins.
    pub degree: u32,
    pub r_min: Rational,
    /// Upper end of the `r` range as a multiple of `q`.
    pub r_max_per_q: Rational,
}

pub fn leading_term(which: Which) -> LeadingTerm {
    match which {
        Which::F => LeadingTerm {
            poly: MPoly::from_decimal_terms(&[("-0.2", 4, 0), ("6.6", 3, 1), ("-18", 2, 2)]),
            bound: MPoly::from_decimal_terms(&[("-0.01", 4, 0)]),
            degree: 4,
            r_min: int(0),
            r_max_per_q: ratio(3, 100),
        },
        Which::G => LeadingTerm {
            poly: MPoly::from_decimal_terms(&[("-0.21", 5, 0), ("0.698", 4, 1)]),
            bound: MPoly::from_decimal_terms(&[("-0.0006", 5, 0)]),
            degree: 5,
            r_min: int(1),
            r_max_per_q: ratio(3, 10),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingTermCheck {
    pub which: Which,
    pub q_lo: i64,
    pub q_hi: i64,
    /// Smallest `(bound - max_r poly) / q^degree` over the scanned `q`.
    #[serde(serialize_with = "rational::serialize")]
    pub worst_margin: Rational,
    pub worst_q: i64,
    #[serde(serialize_with = "rational::serialize")]
    pub worst_r: Rational,
    pub holds: bool,
    /// Some `q` attains the bound with equality.
    pub tight: bool,
}

/// Maximum of the leading part over real `r` in its range, for one `q`.
pub fn leading_term_max(which: Which, q: &Rational) -> (Rational, Rational) {
    let lt = leading_term(which);
    let z = Rational::zero();
    let lo = lt.r_min.clone();
    let hi = &lt.r_max_per_q * q;
    let c2 = lt.poly.coefficient_of(R, 2).eval(q, &z, &z);
    let c1 = lt.poly.coefficient_of(R, 1).eval(q, &z, &z);
    let mut candidates = vec![lo.clone(), hi.clone()];
    if c2.is_negative() {
        let vertex = -c1 / (int(2) * c2);
        if vertex > lo && vertex < hi {
            candidates.push(vertex);
        }
    }
    candidates
        .into_iter()
        .map(|r| (lt.poly.eval(q, &r, &z), r))
        .max_by(|a, b| a.0.cmp(&b.0))
        .unwrap()
}

/// Checks the leading-part bound for every integer `q` in `[q_lo, q_hi]` whose `r` range
/// is non-empty, maximising exactly over real `r`.
pub fn leading_term_bound_check(which: Which, q_lo: i64, q_hi: i64) -> LeadingTermCheck {
    let lt = leading_term(which);
    let z = Rational::zero();
    let mut worst: Option<(Rational, i64, Rational)> = None;
    for q in q_lo..=q_hi {
        let qr = int(q);
        if lt.r_min > &lt.r_max_per_q * &qr {
            continue;
        }
        let (max, r) = leading_term_max(which, &qr);
        let bound = lt.bound.eval(&qr, &z, &z);
        let margin = (bound - max) / num_traits::pow(qr, lt.degree as usize);
        if worst.as_ref().is_none_or(|w| margin < w.0) {
            worst = Some((margin, q, r));
        }
    }
    let (worst_margin, worst_q, worst_r) = worst.unwrap_or((Rational::zero(), q_lo, Rational::zero()));
    LeadingTermCheck {
        which,
        q_lo,
        q_hi,
        holds: !worst_margin.is_negative(),
        tight: worst_margin.is_zero(),
        worst_margin,
        worst_q,
        worst_r,
    }
}

/// Result of scanning `q` upward for the start of a run of fully certified values.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdScan {
    pub which: Which,
    pub rule: RRule,
    pub q_lo: i64,
    pub q_hi: i64,
    pub window: i64,
    /// Smallest `q0` such that every `q` in `[q0, q0 + window]` has admissible `r` and
    /// every one of them certifies; `None` when the scan range is exhausted.
    pub q0: Option<i64>,
    /// The first failing certificate found for each `q` that did not certify.
    pub failures: Vec<Certificate>,
    /// Every certificate for `q` in `[q0, q0 + window]`.
    pub confirming: Vec<Certificate>,
}

/// First `r` (largest first) at which `q` fails to certify.
fn first_failure(which: Which, q: i64, rule: &RRule) -> Option<Certificate> {
    rule.range(q).rev().map(|r| certify_point(which, q, r)).find(|c| !c.verdict.is_certified())
}

pub fn find_threshold_q0(which: Which, rule: RRule, q_lo: i64, q_hi: i64, window: i64) -> ThresholdScan {
    let mut failures = Vec::new();
    let mut run_start = q_lo;
    let mut q0 = None;
    for q in q_lo..=q_hi {
        // A q without admissible r certifies nothing, so it cannot extend a run.
        if rule.range(q).is_empty() {
            run_start = q + 1;
            continue;
        }
        match first_failure(which, q, &rule) {
            Some(c) => {
                failures.push(c);
                run_start = q + 1;
            }
            None if q - run_start >= window => {
                q0 = Some(run_start);
                break;
            }
            None => {}
        }
    }
    let confirming = match q0 {
        Some(q0) => (q0..=q0 + window)
            .flat_map(|q| rule.range(q).map(move |r| certify_point(which, q, r)))
            .collect(),
        None => Vec::new(),
    };
    ThresholdScan { which, rule, q_lo, q_hi, window, q0, failures, confirming }
}
