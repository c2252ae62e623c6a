//! CSP instances over 0/1 variables, their monomial coefficient matrix, and
//! the exhaustive satisfiability oracle.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::RingMatrix;
use crate::poly::{monomials_up_to, Monomial, MultilinearPoly};
use crate::ring::{RingSpec, Scalar};

/// Default number of variables the oracle will enumerate over.
pub const DEFAULT_ORACLE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `f(x) = 0`
    RootEq0,
    /// `f(x) != 0`
    NonRootNe0,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub poly: MultilinearPoly,
    pub relation: Relation,
}

impl Constraint {
    pub fn root(poly: MultilinearPoly) -> Self {
        Constraint {
            poly,
            relation: Relation::RootEq0,
        }
    }

    pub fn nonroot(poly: MultilinearPoly) -> Self {
        Constraint {
            poly,
            relation: Relation::NonRootNe0,
        }
    }

    pub fn is_satisfied(&self, bits: &[bool]) -> Result<bool> {
        let v = self.poly.eval(bits)?;
        let zero = self.poly.ring().is_zero(&v);
        Ok(match self.relation {
            Relation::RootEq0 => zero,
            Relation::NonRootNe0 => !zero,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    AllRoot,
    AllNonRoot,
    Mixed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::AllRoot => "root",
            Mode::AllNonRoot => "nonroot",
            Mode::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    ring: RingSpec,
    n_vars: usize,
    degree_bound: usize,
    constraints: Vec<Constraint>,
    mode: Mode,
}

impl CspInstance {
    /// Validates ring, arity, degree and mode of every constraint.
    pub fn new(
        ring: RingSpec,
        n_vars: usize,
        degree_bound: usize,
        constraints: Vec<Constraint>,
        mode: Mode,
    ) -> Result<Self> {
        for (i, c) in constraints.iter().enumerate() {
            ring.ensure_same(c.poly.ring())?;
            if c.poly.n_vars() != n_vars {
                return Err(Error::ArityMismatch {
                    expected: n_vars,
                    found: c.poly.n_vars(),
                });
            }
            if c.poly.degree() > degree_bound {
                return Err(Error::invalid(format!(
                    "constraint {} has degree {} above the bound {degree_bound}",
                    i + 1,
                    c.poly.degree()
                )));
            }
            let ok = match (mode, c.relation) {
                (Mode::Mixed, _) => true,
                (Mode::AllRoot, r) => r == Relation::RootEq0,
                (Mode::AllNonRoot, r) => r == Relation::NonRootNe0,
            };
            if !ok {
                return Err(Error::Mode(format!(
                    "constraint {} is {:?} in a {mode} instance",
                    i + 1,
                    c.relation
                )));
            }
        }
        Ok(CspInstance {
            ring,
            n_vars,
            degree_bound,
            constraints,
            mode,
        })
    }

    /// Same ring, arity, bound and mode with another constraint list.
    pub fn with_constraints(&self, constraints: Vec<Constraint>) -> Result<Self> {
        Self::new(self.ring.clone(), self.n_vars, self.degree_bound, constraints, self.mode)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Largest degree actually present.
    pub fn max_degree(&self) -> usize {
        self.constraints.iter().map(|c| c.poly.degree()).max().unwrap_or(0)
    }

    pub fn satisfies(&self, a: &Assignment) -> Result<bool> {
        if a.bits.len() != self.n_vars {
            return Err(Error::ArityMismatch {
                expected: self.n_vars,
                found: a.bits.len(),
            });
        }
        for c in &self.constraints {
            if !c.is_satisfied(&a.bits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A 0/1 assignment; `bits[i]` is the value of variable `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    /// `x_1` is the most significant bit, so numeric order is lexicographic order.
    fn from_index(index: u64, n: usize) -> Self {
        Assignment {
            bits: (0..n).map(|i| index >> (n - 1 - i) & 1 == 1).collect(),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One row per constraint, one column per monomial of degree at most the
/// instance's bound (graded-lex, constant first).
pub fn coefficient_matrix(inst: &CspInstance) -> Result<(RingMatrix, Vec<Monomial>)> {
    if inst.mode != Mode::AllRoot {
        return Err(Error::Mode(format!(
            "the coefficient matrix needs a root instance, got {}",
            inst.mode
        )));
    }
    let columns = monomials_up_to(inst.n_vars, inst.degree_bound);
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(j, m)| (m, j)).collect();
    let ring = inst.ring.clone();
    let rows = inst
        .constraints
        .iter()
        .map(|c| {
            let mut row = vec![ring.zero(); columns.len()];
            for (m, s) in c.poly.terms() {
                row[index[m]] = s.clone();
            }
            row
        })
        .collect();
    let a = RingMatrix::from_rows(ring, columns.len(), rows)?;
    Ok((a, columns))
}

/// Inverse of one row of [`coefficient_matrix`].
pub fn poly_from_row(ring: &RingSpec, n_vars: usize, columns: &[Monomial], row: &[Scalar]) -> Result<MultilinearPoly> {
    MultilinearPoly::from_terms(
        ring.clone(),
        n_vars,
        columns.iter().cloned().zip(row.iter().cloned()),
    )
}

enum Coeffs {
    Residues { m: u64, c: Vec<u64> },
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

/// A constraint flattened to bitmask monomials and machine-sized coefficients.
/// Rational coefficients are cleared of denominators, which keeps the zero set.
struct Compiled {
    masks: Vec<u64>,
    coeffs: Coeffs,
    want_zero: bool,
}

impl Compiled {
    fn new(c: &Constraint) -> Compiled {
        let masks = c
            .poly
            .terms()
            .keys()
            .map(|m| m.vars().iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect();
        let coeffs = match c.poly.ring() {
            RingSpec::IntegersMod { modulus, .. } => Coeffs::Residues {
                m: *modulus,
                c: c.poly.terms().values().map(|s| s.as_residue().expect("residue")).collect(),
            },
            RingSpec::Rationals => {
                let qs: Vec<_> = c.poly.terms().values().map(|s| s.as_rational().expect("rational")).collect();
                let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                let ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
                let mut bound = BigInt::zero();
                for v in &ints {
                    bound += v.abs();
                }
                if bound.to_i128().is_some() {
                    Coeffs::Small(ints.iter().map(|v| v.to_i128().expect("bounded")).collect())
                } else {
                    Coeffs::Big(ints)
                }
            }
        };
        Compiled {
            masks,
            coeffs,
            want_zero: c.relation == Relation::RootEq0,
        }
    }

    fn holds(&self, x: u64) -> bool {
        let zero = match &self.coeffs {
            Coeffs::Residues { m, c } => {
                let mut acc: u128 = 0;
                for (mask, &v) in self.masks.iter().zip(c) {
                    if x & mask == *mask {
                        acc += v as u128;
                    }
                }
                acc.is_multiple_of(*m as u128)
            }
            Coeffs::Small(c) => {
                let mut acc: i128 = 0;
                for (mask, &v) in self.masks.iter().zip(c) {
                    if x & mask == *mask {
                        acc += v;
                    }
                }
                acc == 0
            }
            Coeffs::Big(c) => {
                let mut acc = BigInt::zero();
                for (mask, v) in self.masks.iter().zip(c) {
                    if x & mask == *mask {
                        acc += v;
                    }
                }
                acc.is_zero()
            }
        };
        zero == self.want_zero
    }
}

/// Every satisfying assignment, in lexicographic order.
pub fn satisfying_set(inst: &CspInstance) -> Result<Vec<Assignment>> {
    satisfying_set_with_limit(inst, DEFAULT_ORACLE_LIMIT)
}

pub fn satisfying_set_with_limit(inst: &CspInstance, limit: usize) -> Result<Vec<Assignment>> {
    let n = inst.n_vars;
    if n > limit || n > 40 {
        return Err(Error::OracleLimit {
            what: "variables",
            value: n,
            limit: limit.min(40),
        });
    }
    let compiled: Vec<Compiled> = inst.constraints.iter().map(Compiled::new).collect();
    // masks use bit i for x_{i+1}; enumeration index uses x_1 as the top bit
    let to_mask = |idx: u64| -> u64 {
        let mut x = 0u64;
        for i in 0..n {
            if idx >> (n - 1 - i) & 1 == 1 {
                x |= 1 << i;
            }
        }
        x
    };
    let total: u64 = 1 << n;
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get()).min(16) as u64;
    let chunks = if total < 4096 { 1 } else { threads };
    let per = total.div_ceil(chunks);
    let found: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..chunks)
            .map(|k| {
                let compiled = &compiled;
                scope.spawn(move || {
                    let lo = k * per;
                    let hi = ((k + 1) * per).min(total);
                    (lo..hi)
                        .filter(|&idx| {
                            let x = to_mask(idx);
                            compiled.iter().all(|c| c.holds(x))
                        })
                        .collect::<Vec<u64>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("oracle worker")).collect()
    });
    Ok(found
        .into_iter()
        .flatten()
        .map(|idx| Assignment::from_index(idx, n))
        .collect())
}

/// Whether both instances have exactly the same satisfying assignments.
pub fn equivalent(a: &CspInstance, b: &CspInstance) -> Result<bool> {
    equivalent_with_limit(a, b, DEFAULT_ORACLE_LIMIT)
}

pub fn equivalent_with_limit(a: &CspInstance, b: &CspInstance, limit: usize) -> Result<bool> {
    if a.n_vars != b.n_vars {
        return Err(Error::ArityMismatch {
            expected: a.n_vars,
            found: b.n_vars,
        });
    }
    Ok(satisfying_set_with_limit(a, limit)? == satisfying_set_with_limit(b, limit)?)
}
