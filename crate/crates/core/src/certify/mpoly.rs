//! Sparse polynomials in `q`, `r`, `s` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{int, parse_decimal, to_exact_string, Rational};

/// Exponents of `(q, r, s)`.
pub type Monomial = [u32; 3];

pub const Q: usize = 0;
pub const R: usize = 1;
pub const S: usize = 2;

const NAMES: [&str; 3] = ["q", "r", "s"];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::term(c, [0, 0, 0])
    }

    pub fn term(c: Rational, mono: Monomial) -> Self {
        let mut p = MPoly::zero();
        p.add_term(mono, c);
        p
    }

    pub fn var(index: usize) -> Self {
        let mut mono = [0; 3];
        mono[index] = 1;
        MPoly::term(Rational::one(), mono)
    }

    pub fn q() -> Self {
        MPoly::var(Q)
    }

    pub fn r() -> Self {
        MPoly::var(R)
    }

    pub fn s() -> Self {
        MPoly::var(S)
    }

    /// Builds a polynomial from `(coefficient, q exponent, r exponent)` triples with
    /// decimal coefficients such as `"-4.8"`.
    ///
    /// Panics on a malformed coefficient; intended for literal tables.
    pub fn from_decimal_terms(terms: &[(&str, u32, u32)]) -> Self {
        let mut p = MPoly::zero();
        for &(c, i, j) in terms {
            let c = parse_decimal(c).unwrap_or_else(|e| panic!("{e}"));
            p.add_term([i, j, 0], c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: Monomial) -> Rational {
        self.terms.get(&mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m[index]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        let mut out = MPoly::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::constant(Rational::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The coefficient of `var^e`, as a polynomial in the other variables.
    pub fn coefficient_of(&self, index: usize, e: u32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if m[index] == e {
                let mut m = *m;
                m[index] = 0;
                out.add_term(m, c.clone());
            }
        }
        out
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, index: usize, value: &MPoly) -> MPoly {
        let mut powers = vec![MPoly::constant(Rational::one())];
        for _ in 0..self.degree_in(index) {
            let next = powers.last().unwrap() * value;
            powers.push(next);
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest[index] = 0;
            let t = MPoly::term(c.clone(), rest);
            out = out + &t * &powers[m[index] as usize];
        }
        out
    }

    pub fn eval(&self, q: &Rational, r: &Rational, s: &Rational) -> Rational {
        let pts = [q, r, s];
        let powers: Vec<Vec<Rational>> = (0..3)
            .map(|i| {
                let mut p = vec![Rational::one()];
                for _ in 0..self.degree_in(i) {
                    let next = p.last().unwrap() * pts[i];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * &powers[Q][m[Q] as usize] * &powers[R][m[R] as usize] * &powers[S][m[S] as usize];
        }
        acc
    }

    pub fn eval_int(&self, q: i64, r: i64, s: i64) -> Rational {
        self.eval(&int(q), &int(r), &int(s))
    }

    /// The same polynomial as integer coefficients over one common denominator.
    pub fn cleared(&self) -> Cleared {
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = self.terms.iter().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))).collect();
        let degree = [self.degree_in(Q), self.degree_in(R), self.degree_in(S)];
        Cleared { terms, den, degree }
    }
}

/// `P / den` with integer `P`; evaluates at integer points with one final reduction.
#[derive(Debug, Clone)]
pub struct Cleared {
    terms: Vec<(Monomial, BigInt)>,
    den: BigInt,
    degree: [u32; 3],
}

impl Cleared {
    pub fn eval_integer(&self, q: i64, r: i64, s: i64) -> Rational {
        let pts = [q, r, s];
        let powers: Vec<Vec<BigInt>> = (0..3)
            .map(|i| {
                let mut p = vec![BigInt::one()];
                for _ in 0..self.degree[i] {
                    let next = p.last().unwrap() * pts[i];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            acc += c * &powers[Q][m[Q] as usize] * &powers[R][m[R] as usize] * &powers[S][m[S] as usize];
        }
        Rational::new(acc, self.den.clone())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", to_exact_string(c))?;
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", NAMES[v])?,
                    _ => write!(f, "*{}^{e}", NAMES[v])?,
                }
            }
        }
        Ok(())
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &-rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|ts| {
            let mut p = MPoly::zero();
            for (c, i, j, k) in ts {
                p = p + MPoly::term(int(c), [i, j, k]);
            }
            p
        })
    }

    fn point() -> impl Strategy<Value = (Rational, Rational, Rational)> {
        (-7i64..=7, 1i64..=4, -7i64..=7, 1i64..=4, -7i64..=7, 1i64..=4)
            .prop_map(|(a, b, c, d, e, f)| (ratio(a, b), ratio(c, d), ratio(e, f)))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_homomorphism(a in small_poly(), b in small_poly(), (q, r, s) in point()) {
            prop_assert_eq!((&a * &b).eval(&q, &r, &s), a.eval(&q, &r, &s) * b.eval(&q, &r, &s));
            prop_assert_eq!((&a + &b).eval(&q, &r, &s), a.eval(&q, &r, &s) + b.eval(&q, &r, &s));
        }

        #[test]
        fn substitution_commutes_with_eval(a in small_poly(), b in small_poly(), (q, r, s) in point()) {
            let composed = a.substitute(S, &b.substitute(S, &MPoly::zero()));
            let inner = b.eval(&q, &r, &Rational::zero());
            prop_assert_eq!(composed.eval(&q, &r, &s), a.eval(&q, &r, &inner));
        }
    }

    #[test]
    fn product_of_linear_forms() {
        // (q + r - 2s)(3q - s + 1/2)(r + 1)
        let l1 = &(&MPoly::q() + &MPoly::r()) - &MPoly::s().scale(&int(2));
        let l2 = &(&MPoly::q().scale(&int(3)) - &MPoly::s()) + &MPoly::constant(ratio(1, 2));
        let l3 = &MPoly::r() + &MPoly::constant(int(1));
        let p = &(&l1 * &l2) * &l3;
        assert_eq!(p.total_degree(), 3);
        for q in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    let direct = int(q + r - 2 * s) * (int(3 * q - s) + ratio(1, 2)) * int(r + 1);
                    assert_eq!(p.eval_int(q, r, s), direct);
                }
            }
        }
    }

    #[test]
    fn cleared_form_agrees() {
        let p = MPoly::from_decimal_terms(&[("-0.210375", 5, 0), ("0.6975", 4, 1), ("1.5", 0, 0)]);
        let p = &p * &(&MPoly::s() + &MPoly::constant(ratio(1, 3)));
        let c = p.cleared();
        for (q, r, s) in [(0, 0, 0), (7, -3, 2), (1000, 30, -9)] {
            assert_eq!(c.eval_integer(q, r, s), p.eval_int(q, r, s));
        }
    }

    #[test]
    fn coefficients_and_display() {
        let p = MPoly::from_decimal_terms(&[("-4.8", 1, 1), ("122", 0, 0)]);
        assert_eq!(p.coefficient([1, 1, 0]), ratio(-24, 5));
        assert_eq!(p.to_string(), "(-24/5)*q*r + (122)");
        let sq = (&MPoly::s() + &MPoly::q()).pow(2);
        assert_eq!(sq.coefficient_of(S, 1), MPoly::q().scale(&int(2)));
        assert_eq!(MPoly::zero().to_string(), "0");
    }
}
