//! Coefficient rings: the rationals and the integers modulo `m`.
//!
//! Scalars never carry their ring; every operation goes through a [`RingSpec`],
//! which keeps residues canonical in `[0, m)` and rationals in lowest terms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ring every computation of an instance runs in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rationals,
    IntegersMod {
        modulus: u64,
        /// Distinct primes of `modulus` with their multiplicities, ascending.
        prime_factors: Vec<(u64, u32)>,
    },
}

/// A ring element. Which variant is valid is decided by the owning [`RingSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl RingSpec {
    pub fn rationals() -> Self {
        RingSpec::Rationals
    }

    pub fn integers_mod(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::invalid(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(RingSpec::IntegersMod {
            modulus,
            prime_factors: factorize(modulus),
        })
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Rationals => None,
            RingSpec::IntegersMod { modulus, .. } => Some(*modulus),
        }
    }

    pub fn prime_factors(&self) -> &[(u64, u32)] {
        match self {
            RingSpec::Rationals => &[],
            RingSpec::IntegersMod { prime_factors, .. } => prime_factors,
        }
    }

    /// Number of distinct prime divisors of the modulus (0 for the rationals).
    pub fn distinct_primes(&self) -> usize {
        self.prime_factors().len()
    }

    pub fn is_field(&self) -> bool {
        match self {
            RingSpec::Rationals => true,
            RingSpec::IntegersMod { prime_factors, .. } => {
                prime_factors.len() == 1 && prime_factors[0].1 == 1
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            RingSpec::Rationals => Scalar::Rational(BigRational::zero()),
            RingSpec::IntegersMod { .. } => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_i128(v as i128)
    }

    pub fn from_i128(&self, v: i128) -> Scalar {
        match self {
            RingSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            RingSpec::IntegersMod { modulus, .. } => {
                Scalar::Residue(v.rem_euclid(*modulus as i128) as u64)
            }
        }
    }

    /// Maps an integer (or a fraction, for the rationals) into the ring.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            RingSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            RingSpec::IntegersMod { modulus, .. } => {
                let r = v.mod_floor(&BigInt::from(*modulus));
                Scalar::Residue(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    pub fn residue(&self, v: u64) -> Scalar {
        match self {
            RingSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            RingSpec::IntegersMod { modulus, .. } => Scalar::Residue(v % modulus),
        }
    }

    /// Whether `s` is a canonical element of this ring.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (RingSpec::Rationals, Scalar::Rational(q)) => q.denom().is_positive(),
            (RingSpec::IntegersMod { modulus, .. }, Scalar::Residue(v)) => v < modulus,
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(v) => *v == 0,
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (RingSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (RingSpec::IntegersMod { modulus, .. }, Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 + *y as u128) % *modulus as u128) as u64)
            }
            _ => panic!("scalar kind does not match ring {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (RingSpec::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (RingSpec::IntegersMod { modulus, .. }, Scalar::Residue(x)) => {
                Scalar::Residue(if *x == 0 { 0 } else { modulus - x })
            }
            _ => panic!("scalar kind does not match ring {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (RingSpec::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (RingSpec::IntegersMod { modulus, .. }, Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(mul_mod(*x, *y, *modulus))
            }
            _ => panic!("scalar kind does not match ring {self}"),
        }
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (RingSpec::Rationals, Scalar::Rational(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(x.recip()))
                }
            }
            (RingSpec::IntegersMod { modulus, .. }, Scalar::Residue(x)) => {
                inv_mod(*x, *modulus).map(Scalar::Residue)
            }
            _ => panic!("scalar kind does not match ring {self}"),
        }
    }

    /// Every ring element, when the ring is finite.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.modulus().map(|m| (0..m).map(Scalar::Residue).collect())
    }

    pub(crate) fn ensure_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::IntegersMod { modulus, .. } => write!(f, "Zmod {modulus}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue(v) => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue(v) => Some(*v),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = xgcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Extended Euclid on signed integers: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Trial-division factorization; fine for the moduli this crate targets.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_detection() {
        assert!(RingSpec::rationals().is_field());
        assert!(RingSpec::integers_mod(7).unwrap().is_field());
        assert!(!RingSpec::integers_mod(6).unwrap().is_field());
        assert!(!RingSpec::integers_mod(9).unwrap().is_field());
        assert!(RingSpec::integers_mod(1).is_err());
    }

    #[test]
    fn factors_multiply_back() {
        for m in 2..500u64 {
            let f = factorize(m);
            let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, m);
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn residues_are_canonical() {
        let r = RingSpec::integers_mod(3).unwrap();
        assert_eq!(r.add(&r.residue(2), &r.residue(2)), Scalar::Residue(1));
        assert_eq!(r.from_i64(-1), Scalar::Residue(2));
        assert_eq!(r.neg(&Scalar::Residue(0)), Scalar::Residue(0));
        assert_eq!(r.inv(&Scalar::Residue(2)), Some(Scalar::Residue(2)));
        let r6 = RingSpec::integers_mod(6).unwrap();
        assert_eq!(r6.inv(&Scalar::Residue(2)), None);
    }

    #[test]
    fn rationals_lowest_terms() {
        let q = RingSpec::rationals();
        let half = Scalar::Rational(BigRational::new(BigInt::from(2), BigInt::from(4)));
        assert!(q.contains(&half));
        assert_eq!(half.to_string(), "1/2");
        let x = q.add(&half, &half);
        assert!(q.is_one(&x));
    }

    #[test]
    fn xgcd_identity() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                let (g, x, y) = xgcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g as u64, (a.unsigned_abs() as u64).gcd(&(b.unsigned_abs() as u64)));
            }
        }
    }
}
