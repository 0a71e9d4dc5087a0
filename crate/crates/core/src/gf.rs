//! Table-driven arithmetic in GF(p^k).
//!
//! Elements are dense indices `0..q`. An index `a = a_0 + a_1 p + ... + a_{k-1} p^{k-1}`
//! stands for the residue class of `a_0 + a_1 x + ... + a_{k-1} x^{k-1}` modulo the
//! field's defining polynomial, so `0` and `1` are the additive and multiplicative
//! identities. Multiplication goes through discrete log / antilog tables built from
//! the smallest primitive element.

use serde::Serialize;
use thiserror::Error;

/// Largest field order for which [`make_field`] will build tables.
pub const MAX_FIELD_ORDER: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("field order {q} exceeds the table cap of {cap}")]
    TooLarge { q: u64, cap: u64 },
}

/// `q = p^k` with `p` prime and `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    p: u64,
    k: u32,
    q: u64,
}

impl PrimePower {
    /// Returns `None` unless `p` is prime, `k >= 1` and `p^k` fits in a `u64`.
    pub fn new(p: u64, k: u32) -> Option<Self> {
        if k == 0 || !is_prime(p) {
            return None;
        }
        let q = p.checked_pow(k)?;
        Some(PrimePower { p, k, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_factor(n) == n
}

fn smallest_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Decomposes `n` as `p^k`, or returns `None` if `n` is not a prime power
/// (including `n < 2`).
pub fn is_prime_power(n: u64) -> Option<PrimePower> {
    if n < 2 {
        return None;
    }
    let p = smallest_factor(n);
    let mut rest = n;
    let mut k = 0u32;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Some(PrimePower { p, k, q: n })
    } else {
        None
    }
}

/// Complete arithmetic for one finite field. Immutable once built.
#[derive(Debug, Clone)]
pub struct FieldTable {
    pp: PrimePower,
    /// Coefficients `c_0..=c_k` of the monic defining polynomial.
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Builds GF(q) from the lexicographically smallest monic irreducible polynomial
/// of degree `k` over GF(p).
pub fn make_field(pp: PrimePower) -> Result<FieldTable, GfError> {
    FieldTable::new(pp)
}

impl FieldTable {
    pub fn new(pp: PrimePower) -> Result<Self, GfError> {
        if pp.q > MAX_FIELD_ORDER {
            return Err(GfError::TooLarge { q: pp.q, cap: MAX_FIELD_ORDER });
        }
        let p = pp.p as u32;
        let k = pp.k as usize;
        let q = pp.q as u32;
        let modulus = lowest_irreducible(p, k);

        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let mut generator = 0;
        for g in 1..q {
            if fill_powers(g, p, &modulus, &mut exp[..q as usize - 1]) {
                generator = g;
                break;
            }
        }
        debug_assert!(q == 2 || generator > 1);
        let order = q as usize - 1;
        for i in 0..order {
            log[exp[i] as usize] = i as u32;
            exp[i + order] = exp[i];
        }
        Ok(FieldTable { pp, modulus, generator, exp, log })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn order(&self) -> u32 {
        self.pp.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.pp.p as u32
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.pp.p as u32;
        if p == 2 {
            return a ^ b;
        }
        if self.pp.k == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.pp.p as u32;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.order() - 1;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.order() - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.pp.p)
    }
}

fn digits(mut a: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiplies two residues given as digit vectors of length `k`, reducing modulo the
/// monic `modulus` of degree `k`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let t = prod[deg - k + i] + (p as u64 - c) * m as u64;
            prod[deg - k + i] = t % p as u64;
        }
    }
    prod[..k].iter().map(|&c| c as u32).collect()
}

/// Writes successive powers of `g` into `out` and reports whether `g` has
/// multiplicative order exactly `out.len()`.
fn fill_powers(g: u32, p: u32, modulus: &[u32], out: &mut [u32]) -> bool {
    let k = modulus.len() - 1;
    let gd = digits(g, p, k);
    let mut cur = digits(1, p, k);
    for (i, slot) in out.iter_mut().enumerate() {
        let v = undigits(&cur, p);
        if i > 0 && v == 1 {
            return false;
        }
        *slot = v;
        cur = poly_mulmod(&cur, &gd, modulus, p);
    }
    undigits(&cur, p) == 1
}

/// Remainder of `f` modulo the monic `g` (both little-endian coefficient vectors).
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &c) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p as u64 - lead) * c as u64) % p as u64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn monic(lower: u32, p: u32, degree: usize) -> Vec<u32> {
    let mut c = digits(lower, p, degree);
    c.push(1);
    c
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        for lower in 0..p.pow(d as u32) {
            let g = monic(lower, p, d);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn lowest_irreducible(p: u32, k: usize) -> Vec<u32> {
    (0..p.pow(k as u32))
        .map(|lower| monic(lower, p, k))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldTable {
        make_field(is_prime_power(q).unwrap()).unwrap()
    }

    #[test]
    fn prime_power_detection() {
        let pp = is_prime_power(9).unwrap();
        assert_eq!((pp.p(), pp.k()), (3, 2));
        assert_eq!(is_prime_power(12), None);
        let pp = is_prime_power(8).unwrap();
        assert_eq!((pp.p(), pp.k()), (2, 3));
        assert_eq!(is_prime_power(1), None);
        assert_eq!(is_prime_power(6), None);
        assert_eq!(is_prime_power(7919).map(|pp| pp.k()), Some(1));
        assert_eq!(PrimePower::new(4, 1), None);
    }

    #[test]
    fn gf2_is_xor_and() {
        let f = field(2);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f.add(a, b), a ^ b);
                assert_eq!(f.mul(a, b), a & b);
            }
        }
    }

    #[test]
    fn gf4_multiplicative_group_is_cyclic_of_order_3() {
        let f = field(4);
        let g = f.generator();
        let powers: Vec<u32> = (0..3).map(|e| f.pow(g, e)).collect();
        let mut sorted = powers.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(f.pow(g, 3), 1);
    }

    #[test]
    fn gf9_units_satisfy_x8() {
        let f = field(9);
        for x in 1..9 {
            let mut acc = 1;
            for _ in 0..8 {
                acc = f.mul(acc, x);
            }
            assert_eq!(acc, 1, "x = {x}");
        }
    }

    #[test]
    fn modulus_is_lexicographically_first() {
        // x^2 + 1 is irreducible over GF(3); x^2 and x^2 + 2 = (x+1)(x+2) are not.
        assert_eq!(field(9).modulus(), &[1, 0, 1]);
        // x^2 + x + 1 over GF(2).
        assert_eq!(field(4).modulus(), &[1, 1, 1]);
        // x^3 + x + 1 over GF(2).
        assert_eq!(field(8).modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn cap_is_enforced() {
        let pp = PrimePower::new(2, 15).unwrap();
        assert!(matches!(make_field(pp), Err(GfError::TooLarge { .. })));
        assert!(make_field(PrimePower::new(2, 14).unwrap()).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive_up_to_64() {
        for q in 2..=64u64 {
            if is_prime_power(q).is_none() {
                continue;
            }
            let f = field(q);
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // Frobenius is injective, hence an automorphism of a finite field.
            let mut images: Vec<u32> = (0..q).map(|a| f.frobenius(a)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), q as usize);
        }
    }
}
