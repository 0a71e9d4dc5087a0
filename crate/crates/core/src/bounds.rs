//! Closed-form bounds on `ex(n, C4)` and the classification of `n` relative to the
//! nearest `q^2 + q + 1`.
//!
//! Every positive integer lies in exactly one block `I_q = {q^2 + 1, ..., (q + 1)^2}`,
//! written `n = q^2 + q + 1 + r` with `-q <= r <= q`. The bounds below are all
//! rational except the Kővári–Sós–Turán/Reiman bound, whose floor is computed with an
//! integer square root so the edge bound is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::gf::is_prime_power;
use crate::rational::{self, int, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalClass {
    /// `q^2 + 1 <= n <= q^2 + q` (`r < 0`).
    Below,
    /// `n = q^2 + q + 1`.
    Center,
    /// `q^2 + q + 2 <= n <= (q + 1)^2` (`r > 0`).
    Above,
}

impl IntervalClass {
    pub fn label(self) -> &'static str {
        match self {
            IntervalClass::Below => "minus",
            IntervalClass::Center => "center",
            IntervalClass::Above => "plus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntervalPosition {
    pub n: u64,
    pub q: u64,
    /// `n - (q^2 + q + 1)`.
    pub r: i64,
    pub class: IntervalClass,
}

pub fn interval_of(n: u64) -> IntervalPosition {
    assert!(n >= 1, "n must be positive");
    let q = (n - 1).isqrt();
    let center = q * q + q + 1;
    let r = n as i64 - center as i64;
    let class = match r.signum() {
        -1 => IntervalClass::Below,
        0 => IntervalClass::Center,
        _ => IntervalClass::Above,
    };
    IntervalPosition { n, q, r, class }
}

/// `q(q+1)^2 / 2`, the edge count of the polarity graph of order `q`.
pub fn polarity_edges(q: u64) -> Rational {
    let q = int(q as i64);
    &q * (&q + int(1)) * (&q + int(1)) / int(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReimanBound {
    pub value: f64,
    pub floor: u64,
}

/// `n (1 + sqrt(4n - 3)) / 4`.
pub fn reiman_upper(n: u64) -> ReimanBound {
    assert!(n >= 1);
    let value = n as f64 * (1.0 + ((4 * n - 3) as f64).sqrt()) / 4.0;
    // floor((n + n sqrt(4n-3)) / 4) = floor((n + floor(sqrt(n^2 (4n-3)))) / 4).
    let nb = BigInt::from(n);
    let root = rational::isqrt(&(&nb * &nb * BigInt::from(4 * n - 3)));
    let floor = ((nb + root) / BigInt::from(4)).to_u64().expect("fits");
    ReimanBound { value, floor }
}

/// `n^{3/2}/2 + n/4`.
pub fn erdos_value(n: u64) -> f64 {
    let n = n as f64;
    0.5 * n * n.sqrt() + 0.25 * n
}

/// A formula value together with whether its precondition holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionalBound {
    pub applicable: bool,
    #[serde(serialize_with = "rational::serialize")]
    pub value: Rational,
}

/// `q(q+1)^2/2 - 0.92 r q`, applicable for `1 <= r <= 0.01 q` (the `n = q^2 + q + 1 - r` side).
pub fn thm3_upper(q: u64, r: u64) -> ConditionalBound {
    let qr = int(q as i64);
    let rr = int(r as i64);
    let value = polarity_edges(q) - ratio(23, 25) * &rr * &qr;
    let applicable = r >= 1 && rr <= ratio(1, 100) * qr;
    ConditionalBound { applicable, value }
}

/// `(q^2 + q + 1 + max{r, 2r - 0.3q})(q + 1)/2`, applicable for `1 <= r <= 0.6 q`
/// (the `n = q^2 + q + 1 + r` side).
pub fn thm5_upper(q: u64, r: u64) -> ConditionalBound {
    let qr = int(q as i64);
    let rr = int(r as i64);
    let alt = int(2) * &rr - ratio(3, 10) * &qr;
    let excess = if alt > rr { alt } else { rr.clone() };
    let value = (&qr * &qr + &qr + int(1) + excess) * (&qr + int(1)) / int(2);
    let applicable = r >= 1 && rr <= ratio(3, 5) * qr;
    ConditionalBound { applicable, value }
}

/// `q(q+1)^2/2 - (1 - eps) r q`, applicable for `c_lo/eps <= r <= c_hi eps q` with `0 < eps < 1`.
pub fn eq8_upper(q: u64, r: u64, eps: &Rational, c_lo: &Rational, c_hi: &Rational) -> ConditionalBound {
    let qr = int(q as i64);
    let rr = int(r as i64);
    let value = polarity_edges(q) - (int(1) - eps) * &rr * &qr;
    let eps_ok = eps.is_positive() && *eps < int(1);
    let applicable = eps_ok && c_lo / eps <= rr && rr <= c_hi * eps * qr;
    ConditionalBound { applicable, value }
}

/// Füredi: `ex(q^2+q+1) <= q(q+1)^2/2` for every integer `q >= 14`.
pub fn furedi_upper(q: u64) -> ConditionalBound {
    ConditionalBound { applicable: q >= 14, value: polarity_edges(q) }
}

/// `q(q+1)^2/2` at `n = q^2 + q + 1`, for prime powers `q`.
pub fn brown_lower(q: u64) -> ConditionalBound {
    ConditionalBound { applicable: is_prime_power(q).is_some(), value: polarity_edges(q) }
}

/// `q(q+1)^2/2 - rq` at `n = q^2 + q + 1 - r`, for prime powers `q` and `0 <= r <= q + 1`.
pub fn deletion_lower(q: u64, r: u64) -> ConditionalBound {
    let value = polarity_edges(q) - int((r * q) as i64);
    ConditionalBound { applicable: is_prime_power(q).is_some() && r <= q + 1, value }
}

/// `(n^{3/2}/2 + n/4) - (q(q+1)^2/2 + 3rq/4)` at `n = q^2 + q + 1 + r`.
pub fn eq5_residual(q: u64, r: i64) -> f64 {
    assert!(r.unsigned_abs() <= q, "|r| must not exceed q");
    let n = (q * q + q + 1) as i64 + r;
    let qf = q as f64;
    erdos_value(n as u64) - (0.5 * qf * (qf + 1.0) * (qf + 1.0) + 0.75 * r as f64 * qf)
}

/// `h(n+1) - h(n) - (3/4) sqrt(n)` with `h(x) = x(1 + sqrt(4x-3))/4`.
pub fn h_gap_check(n: u64) -> f64 {
    let h = |x: f64| x * (1.0 + (4.0 * x - 3.0).sqrt()) / 4.0;
    let x = n as f64;
    h(x + 1.0) - h(x) - 0.75 * x.sqrt()
}

fn ceil(r: &Rational) -> BigInt {
    -rational::floor(&-r)
}

fn in_n1_range(q: u64, r: i64, eps: &Rational) -> bool {
    if q == 0 || r <= 0 {
        return false;
    }
    let t = ratio(r, q as i64);
    int(6) * eps <= t && t <= ratio(1, 100)
}

fn in_n2_range(q: u64, r: i64, eps: &Rational) -> bool {
    if q == 0 || r <= 0 {
        return false;
    }
    let t = ratio(r, q as i64);
    int(5) * eps <= t && t <= ratio(3, 10)
}

/// `n = q^2 + q + 1 - r` with `6 eps <= r/q <= 0.01`.
pub fn n1_member(n: u64, eps: &Rational) -> bool {
    let pos = interval_of(n);
    in_n1_range(pos.q, -pos.r, eps)
}

/// `n = q^2 + q + 1 + r` with `5 eps <= r/q <= 0.3`.
pub fn n2_member(n: u64, eps: &Rational) -> bool {
    let pos = interval_of(n);
    in_n2_range(pos.q, pos.r, eps)
}

/// `(|N1 ∩ [1, limit]| / limit, |N2 ∩ [1, limit]| / limit)`.
pub fn density_scan(limit: u64, eps: &Rational) -> (Rational, Rational) {
    let (mut c1, mut c2) = (BigInt::zero(), BigInt::zero());
    let mut q = 1u64;
    while q * q < limit {
        let qr = int(q as i64);
        let center = (q * q + q + 1) as i64;
        let lim = limit as i64;
        // N1: r in [ceil(6 eps q), floor(q/100)] with center - r <= limit.
        let lo = ceil(&(int(6) * eps * &qr)).max(BigInt::one()).max(BigInt::from(center - lim));
        let hi = rational::floor(&(ratio(1, 100) * &qr));
        if hi >= lo {
            c1 += &hi - &lo + 1;
        }
        // N2: r in [ceil(5 eps q), floor(0.3 q)] with center + r <= limit.
        let lo = ceil(&(int(5) * eps * &qr)).max(BigInt::one());
        let hi = rational::floor(&(ratio(3, 10) * &qr)).min(BigInt::from(lim - center));
        if hi >= lo {
            c2 += &hi - &lo + 1;
        }
        q += 1;
    }
    let denom = BigInt::from(limit);
    (Rational::new(c1, denom.clone()), Rational::new(c2, denom))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsConfig {
    /// Below this `q` the asymptotic bounds (`thm3`, `thm5` and `eq8`) are
    /// reported but not used for `best_upper`.
    pub q_min: u64,
    #[serde(serialize_with = "rational::serialize")]
    pub eps: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub eq8_eps: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub c_lo: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub c_hi: Rational,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            q_min: 10_000,
            eps: ratio(1, 1000),
            eq8_eps: ratio(1, 10),
            c_lo: int(1),
            c_hi: int(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    Reiman,
    Furedi,
    Thm3,
    Thm5,
    Eq8,
    Brown,
    Deletion,
}

impl BoundSource {
    pub fn label(self) -> &'static str {
        match self {
            BoundSource::Reiman => "reiman",
            BoundSource::Furedi => "furedi",
            BoundSource::Thm3 => "thm3",
            BoundSource::Thm5 => "thm5",
            BoundSource::Eq8 => "eq8",
            BoundSource::Brown => "brown",
            BoundSource::Deletion => "deletion",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BestBound {
    pub value: u64,
    pub source: BoundSource,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub position: IntervalPosition,
    pub reiman: ReimanBound,
    pub erdos_conj: f64,
    pub furedi: Option<ConditionalBound>,
    pub thm3: Option<ConditionalBound>,
    pub thm5: Option<ConditionalBound>,
    pub eq8: Option<ConditionalBound>,
    pub brown_lower: Option<ConditionalBound>,
    pub deletion_lower: Option<ConditionalBound>,
    pub best_upper: BestBound,
    pub best_lower: Option<BestBound>,
    pub n1_member: bool,
    pub n2_member: bool,
}

fn floor_u64(r: &Rational) -> u64 {
    rational::floor(r).to_u64().unwrap_or(0)
}

/// Every bound that applies at `n`, with the best upper and lower bound picked out.
pub fn best_bounds(n: u64, cfg: &BoundsConfig) -> BoundReport {
    let position = interval_of(n);
    let IntervalPosition { q, r, class, .. } = position;
    let reiman = reiman_upper(n);
    let trusted = q >= cfg.q_min;

    let mut upper = BestBound { value: reiman.floor, source: BoundSource::Reiman };
    let mut offer_upper = |b: &ConditionalBound, source: BoundSource, gate: bool| {
        if b.applicable && gate {
            let v = floor_u64(&b.value);
            if v < upper.value {
                upper = BestBound { value: v, source };
            }
        }
    };

    let furedi = (class == IntervalClass::Center).then(|| furedi_upper(q));
    let (thm3, eq8) = if class == IntervalClass::Below {
        let s = (-r) as u64;
        (Some(thm3_upper(q, s)), Some(eq8_upper(q, s, &cfg.eq8_eps, &cfg.c_lo, &cfg.c_hi)))
    } else {
        (None, None)
    };
    let thm5 = (class == IntervalClass::Above).then(|| thm5_upper(q, r as u64));
    if let Some(b) = &furedi {
        offer_upper(b, BoundSource::Furedi, true);
    }
    if let Some(b) = &thm3 {
        offer_upper(b, BoundSource::Thm3, trusted);
    }
    if let Some(b) = &eq8 {
        offer_upper(b, BoundSource::Eq8, trusted);
    }
    if let Some(b) = &thm5 {
        offer_upper(b, BoundSource::Thm5, trusted);
    }

    let brown = (class == IntervalClass::Center).then(|| brown_lower(q));
    // Deleting up to q + 1 absolute points reaches n = q'^2 + q' + 1 - r' for the block's
    // own q' = q (r' = -r) or, at the top of a block, q' = q + 1 with r' = q' + 1.
    let deletion = match class {
        IntervalClass::Below => Some(deletion_lower(q, (-r) as u64)),
        IntervalClass::Above if n == (q + 1) * (q + 1) => Some(deletion_lower(q + 1, q + 2)),
        _ => None,
    };
    let mut lower: Option<BestBound> = None;
    for (b, source) in [(&brown, BoundSource::Brown), (&deletion, BoundSource::Deletion)] {
        if let Some(b) = b.as_ref().filter(|b| b.applicable) {
            let v = floor_u64(&b.value);
            if lower.is_none_or(|l| v > l.value) {
                lower = Some(BestBound { value: v, source });
            }
        }
    }

    BoundReport {
        n,
        position,
        reiman,
        erdos_conj: erdos_value(n),
        furedi,
        thm3,
        thm5,
        eq8,
        brown_lower: brown,
        deletion_lower: deletion,
        best_upper: upper,
        best_lower: lower,
        n1_member: n1_member(n, &cfg.eps),
        n2_member: n2_member(n, &cfg.eps),
    }
}

/// Outcome of checking `bound <= n^{3/2}/2 + (1/4 - eps) n` for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thm2Check {
    pub n: u64,
    pub source: BoundSource,
    #[serde(serialize_with = "rational::serialize")]
    pub bound: Rational,
    pub holds: bool,
}

/// For `n` in `N1` (resp. `N2`), compares the `thm3` (resp. `thm5`) bound with
/// `n^{3/2}/2 + (1/4 - eps) n` exactly. `None` when `n` is in neither set or the
/// relevant bound's precondition fails.
pub fn theorem2_check(n: u64, eps: &Rational) -> Option<Thm2Check> {
    let pos = interval_of(n);
    let (source, bound) = if n1_member(n, eps) {
        (BoundSource::Thm3, thm3_upper(pos.q, (-pos.r) as u64))
    } else if n2_member(n, eps) {
        (BoundSource::Thm5, thm5_upper(pos.q, pos.r as u64))
    } else {
        return None;
    };
    if !bound.applicable {
        return None;
    }
    let nr = int(n as i64);
    // bound <= sqrt(n)^3 / 2 + (1/4 - eps) n  <=>  2 (bound - (1/4 - eps) n) / n <= sqrt(n).
    let t = (&bound.value - (ratio(1, 4) - eps) * &nr) * int(2) / &nr;
    let holds = rational::le_sqrt(&t, &BigInt::from(n));
    Some(Thm2Check { n, source, bound: bound.value, holds })
}
