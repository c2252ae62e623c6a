//! Sparse multilinear polynomials over a [`RingSpec`], plus the univariate
//! polynomials used to impose root sets.
//!
//! Variables only ever take 0/1 values, so `x^c` is identified with `x` for
//! `c >= 1`: every product is reduced back to multilinear form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{RingSpec, Scalar};

/// Default cap on the number of terms a single product may produce.
pub const DEFAULT_TERM_LIMIT: usize = 2_000_000;

/// A multilinear monomial: strictly increasing variable indices.
/// The empty monomial is the constant `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![i])
    }

    /// Builds a monomial from any variable list; repeats collapse (`x*x = x`).
    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Monomial(v)
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    /// Multilinear product: the sorted union of both variable sets.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Value on a 0/1 assignment: 1 iff every variable is set.
    pub fn eval(&self, bits: &[bool]) -> bool {
        self.0.iter().all(|&v| bits[v])
    }
}

// Graded lexicographic: lower degree first, then lexicographic on indices.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        Ok(())
    }
}

/// All monomials of degree at most `d` over `n` variables, in graded-lex order.
pub fn monomials_up_to(n: usize, d: usize) -> Vec<Monomial> {
    fn extend(n: usize, deg: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if cur.len() == deg {
            out.push(Monomial(cur.clone()));
            return;
        }
        let start = cur.last().map_or(0, |&v| v + 1);
        for v in start..n {
            cur.push(v);
            extend(n, deg, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 0..=d.min(n) {
        extend(n, deg, &mut Vec::with_capacity(deg), &mut out);
    }
    out
}

/// `sum_{i=0}^{d} C(n, i)`, the number of multilinear monomials of degree at most `d`.
pub fn monomial_count(n: usize, d: usize) -> usize {
    let mut total = 1usize;
    let mut c = 1usize;
    for i in 1..=d.min(n) {
        c = c * (n - i + 1) / i;
        total += c;
    }
    total
}

/// A sparse multilinear polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPoly {
    ring: RingSpec,
    n_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultilinearPoly {
    pub fn zero(ring: RingSpec, n_vars: usize) -> Self {
        MultilinearPoly {
            ring,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: RingSpec, n_vars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(ring, n_vars);
        p.add_term(Monomial::one(), c);
        p
    }

    /// The polynomial `x_i` (0-indexed).
    pub fn var(ring: RingSpec, n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "variable index {i} out of range for {n_vars} variables");
        let one = ring.one();
        let mut p = Self::zero(ring, n_vars);
        p.add_term(Monomial::var(i), one);
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs; repeated
    /// monomials are summed and zero results dropped.
    pub fn from_terms(
        ring: RingSpec,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring, n_vars);
        for (m, c) in terms {
            if let Some(&v) = m.vars().last() {
                if v >= n_vars {
                    return Err(Error::invalid(format!(
                        "variable index {v} out of range for {n_vars} variables"
                    )));
                }
            }
            if !p.ring.contains(&c) {
                return Err(Error::invalid(format!("coefficient {c} is not an element of {}", p.ring)));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.ring.add(existing, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum monomial degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        if self.n_vars != other.n_vars {
            return Err(Error::ArityMismatch {
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.ring.neg(c)))
            .collect();
        MultilinearPoly {
            ring: self.ring.clone(),
            n_vars: self.n_vars,
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.n_vars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(a, c));
        }
        out
    }

    /// Multilinear product with the default term guard.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul_limited(other, DEFAULT_TERM_LIMIT)
    }

    /// Multilinear product; fails once more than `limit` distinct terms appear.
    pub fn mul_limited(&self, other: &Self, limit: usize) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.ring.clone(), self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), self.ring.mul(ca, cb));
                if out.terms.len() > limit {
                    return Err(Error::TermLimit { limit });
                }
            }
        }
        Ok(out)
    }

    /// Evaluates on a 0/1 assignment.
    pub fn eval(&self, bits: &[bool]) -> Result<Scalar> {
        if bits.len() != self.n_vars {
            return Err(Error::ArityMismatch {
                expected: self.n_vars,
                found: bits.len(),
            });
        }
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            if m.eval(bits) {
                acc = self.ring.add(&acc, c);
            }
        }
        Ok(acc)
    }

    /// Same polynomial viewed over more variables.
    pub fn widen(&self, n_vars: usize) -> Self {
        assert!(n_vars >= self.n_vars);
        MultilinearPoly {
            ring: self.ring.clone(),
            n_vars,
            terms: self.terms.clone(),
        }
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_constant() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePoly {
    ring: RingSpec,
    coeffs: Vec<Scalar>,
}

impl UnivariatePoly {
    pub fn new(ring: RingSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UnivariatePoly { ring, coeffs }
    }

    /// The identity polynomial `x`.
    pub fn x(ring: RingSpec) -> Self {
        let coeffs = vec![ring.zero(), ring.one()];
        UnivariatePoly { ring, coeffs }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    /// Multiplies by the linear factor `(x - s)`.
    fn mul_linear(&self, s: &Scalar) -> Self {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = r.add(&out[i + 1], c);
            out[i] = r.sub(&out[i], &r.mul(c, s));
        }
        UnivariatePoly::new(r.clone(), out)
    }
}

/// `prod_{s in S} (x - s)`: vanishes exactly on `S` when the ring is a field.
pub fn root_set_polynomial(roots: &[Scalar], ring: &RingSpec) -> Result<UnivariatePoly> {
    if !ring.is_field() {
        return Err(Error::UnsupportedRing(format!(
            "root-set polynomials need a field, got {ring}"
        )));
    }
    let mut distinct: Vec<Scalar> = Vec::with_capacity(roots.len());
    for s in roots {
        if !ring.contains(s) {
            return Err(Error::invalid(format!("{s} is not an element of {ring}")));
        }
        if !distinct.contains(s) {
            distinct.push(s.clone());
        }
    }
    let mut p = UnivariatePoly::new(ring.clone(), vec![ring.one()]);
    for s in &distinct {
        p = p.mul_linear(s);
    }
    Ok(p)
}

/// Multilinear polynomial agreeing with `F(f(x))` on every 0/1 assignment.
pub fn compose_univariate(
    outer: &UnivariatePoly,
    inner: &MultilinearPoly,
    limit: usize,
) -> Result<MultilinearPoly> {
    outer.ring.ensure_same(inner.ring())?;
    let ring = inner.ring().clone();
    let n = inner.n_vars();
    // Horner: ((c_k f + c_{k-1}) f + ...) + c_0
    let mut acc = MultilinearPoly::zero(ring.clone(), n);
    for c in outer.coeffs.iter().rev() {
        acc = acc.mul_limited(inner, limit)?;
        acc = acc.try_add(&MultilinearPoly::constant(ring.clone(), n, c.clone()))?;
    }
    Ok(acc)
}
