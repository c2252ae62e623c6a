//! Clause problems turned into polynomial constraints over 0/1 variables.

use std::fmt;

use log::warn;

use crate::error::{Error, Result};
use crate::model::{Constraint, CspInstance, Mode};
use crate::poly::{compose_univariate, root_set_polynomial, Monomial, MultilinearPoly, DEFAULT_TERM_LIMIT};
use crate::ring::RingSpec;

/// A possibly negated variable; `var` is 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// From DIMACS notation: `3` is `x3`, `-3` is its negation.
    pub fn from_dimacs(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::invalid("literal 0"));
        }
        Ok(Literal {
            var: v.unsigned_abs() as usize - 1,
            positive: v > 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            positive: !self.positive,
            ..self
        }
    }

    pub fn is_true(self, bits: &[bool]) -> bool {
        bits[self.var] == self.positive
    }

    /// `x` or `1 - x`.
    pub fn poly(self, ring: &RingSpec, n_vars: usize) -> MultilinearPoly {
        let coeff = if self.positive { ring.one() } else { ring.from_i64(-1) };
        let mut terms = vec![(Monomial::var(self.var), coeff)];
        if !self.positive {
            terms.push((Monomial::one(), ring.one()));
        }
        MultilinearPoly::from_terms(ring.clone(), n_vars, terms).expect("literal in range")
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "!x{}", self.var + 1)
        }
    }
}

fn check_clause(lits: &[Literal], n_vars: usize) -> Result<()> {
    for (i, l) in lits.iter().enumerate() {
        if l.var >= n_vars {
            return Err(Error::invalid(format!("literal {l} out of range for {n_vars} variables")));
        }
        if lits[..i].iter().any(|o| o.var == l.var) {
            return Err(Error::invalid(format!("variable x{} repeated in a clause", l.var + 1)));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(n_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for c in &clauses {
            check_clause(c, n_vars)?;
        }
        Ok(CnfFormula { n_vars, clauses })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of true literals in each clause.
    pub fn true_counts(&self, bits: &[bool]) -> Vec<usize> {
        self.clauses
            .iter()
            .map(|c| c.iter().filter(|l| l.is_true(bits)).count())
            .collect()
    }
}

/// A clause satisfied when its number of true literals lies in `allowed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedClause {
    pub literals: Vec<Literal>,
    pub allowed: Vec<u64>,
}

fn literal_sum(ring: &RingSpec, n_vars: usize, lits: &[Literal]) -> MultilinearPoly {
    lits.iter().fold(MultilinearPoly::zero(ring.clone(), n_vars), |acc, l| {
        acc.try_add(&l.poly(ring, n_vars)).expect("same ring")
    })
}

/// One linear equation per clause: exactly one literal is true. Only over the
/// rationals, where the literal sum cannot wrap around.
pub fn encode_exact_sat(f: &CnfFormula, ring: &RingSpec) -> Result<CspInstance> {
    if *ring != RingSpec::Rationals {
        return Err(Error::UnsupportedRing(format!(
            "exactly-one clauses are encoded over Q only, got {ring}"
        )));
    }
    let n = f.n_vars;
    let one = MultilinearPoly::constant(ring.clone(), n, ring.one());
    let constraints = f
        .clauses
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.is_empty() {
                warn!("clause {} is empty; encoding it as -1 = 0", i + 1);
            }
            Constraint::root(literal_sum(ring, n, c).try_sub(&one).expect("same ring"))
        })
        .collect();
    CspInstance::new(ring.clone(), n, 1, constraints, Mode::AllRoot)
}

fn require_field(ring: &RingSpec) -> Result<()> {
    if !ring.is_field() {
        return Err(Error::UnsupportedRing(format!(
            "root-set constraints need a field, got {ring}"
        )));
    }
    Ok(())
}

/// Per clause, `F(Σ t_j) = 0` where `F` vanishes exactly on the allowed
/// counts. With `modulus = Some(p)` counts are taken mod `p` and the ring must
/// be `Z/pZ`; without it counts are exact, so a modular ring needs `p` above
/// every clause length.
pub fn encode_generalized_sat(
    n_vars: usize,
    clauses: &[GeneralizedClause],
    modulus: Option<u64>,
    ring: &RingSpec,
) -> Result<CspInstance> {
    require_field(ring)?;
    let max_len = clauses.iter().map(|c| c.literals.len()).max().unwrap_or(0);
    match (modulus, ring.modulus()) {
        (Some(p), Some(q)) if p == q => {}
        (Some(p), _) => {
            return Err(Error::invalid(format!("counting mod {p} needs the ring Zmod {p}, got {ring}")));
        }
        (None, Some(q)) if q as usize <= max_len => {
            return Err(Error::invalid(format!(
                "a clause of length {max_len} can wrap around mod {q}; pass the modulus explicitly or use Q"
            )));
        }
        (None, _) => {}
    }
    let mut constraints = Vec::with_capacity(clauses.len());
    let mut degree = 0;
    for (i, c) in clauses.iter().enumerate() {
        check_clause(&c.literals, n_vars)?;
        let mut allowed: Vec<u64> = Vec::new();
        for &s in &c.allowed {
            let reachable = match modulus {
                Some(p) => s < p,
                None => s as usize <= c.literals.len(),
            };
            if !reachable {
                warn!("clause {}: allowed count {s} can never occur; dropped", i + 1);
            } else if !allowed.contains(&s) {
                allowed.push(s);
            }
        }
        if allowed.is_empty() {
            warn!("clause {} allows no count and is unsatisfiable", i + 1);
        }
        let roots: Vec<_> = allowed.iter().map(|&s| ring.residue(s)).collect();
        let outer = root_set_polynomial(&roots, ring)?;
        let inner = literal_sum(ring, n_vars, &c.literals);
        let poly = compose_univariate(&outer, &inner, DEFAULT_TERM_LIMIT)?;
        degree = degree.max(allowed.len());
        constraints.push(Constraint::root(poly));
    }
    CspInstance::new(ring.clone(), n_vars, degree, constraints, Mode::AllRoot)
}

/// Not-all-equal: a clause of length `k` needs between 1 and `k - 1` true literals.
pub fn encode_nae(f: &CnfFormula, ring: &RingSpec) -> Result<CspInstance> {
    require_field(ring)?;
    if let Some(p) = ring.modulus() {
        if p as usize <= f.max_clause_len() {
            return Err(Error::invalid(format!(
                "clauses of length {} need a modulus above that length, got {p}",
                f.max_clause_len()
            )));
        }
    }
    let clauses: Vec<GeneralizedClause> = f
        .clauses
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.len() <= 1 {
                warn!("clause {} has {} literal(s) and can never be not-all-equal", i + 1, c.len());
            }
            GeneralizedClause {
                literals: c.clone(),
                allowed: (1..c.len() as u64).collect(),
            }
        })
        .collect();
    encode_generalized_sat(f.n_vars, &clauses, None, ring)
}

/// One inequality `Σ t_j != 0` per clause. Over `Z/mZ` the modulus must
/// exceed every clause length so a satisfied clause never sums to zero.
pub fn encode_cnf_nonroot(f: &CnfFormula, ring: &RingSpec) -> Result<CspInstance> {
    if let Some(m) = ring.modulus() {
        if m as usize <= f.max_clause_len() {
            return Err(Error::invalid(format!(
                "clauses of length {} can sum to 0 mod {m}",
                f.max_clause_len()
            )));
        }
    }
    let n = f.n_vars;
    let constraints = f
        .clauses
        .iter()
        .map(|c| Constraint::nonroot(literal_sum(ring, n, c)))
        .collect();
    CspInstance::new(ring.clone(), n, 1, constraints, Mode::AllNonRoot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::satisfying_set;

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    fn cnf(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::new(n, clauses.iter().map(|c| c.iter().map(|&v| lit(v)).collect()).collect()).unwrap()
    }

    fn sat_strings(inst: &CspInstance) -> Vec<String> {
        satisfying_set(inst).unwrap().iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn literal_round_trip() {
        assert_eq!(lit(-5), Literal::neg(4));
        assert_eq!(lit(-5).to_dimacs(), -5);
        assert!(Literal::from_dimacs(0).is_err());
        assert!(CnfFormula::new(2, vec![vec![lit(1), lit(-1)]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![lit(3)]]).is_err());
    }

    #[test]
    fn exact_sat_examples() {
        let q = RingSpec::rationals();
        let inst = encode_exact_sat(&cnf(5, &[&[1, 3, -5]]), &q).unwrap();
        assert_eq!(inst.constraints()[0].poly.to_string(), "1*x1 + 1*x3 + -1*x5");
        let unit = encode_exact_sat(&cnf(1, &[&[1]]), &q).unwrap();
        assert_eq!(sat_strings(&unit), vec!["1"]);
        let two = encode_exact_sat(&cnf(2, &[&[1, 2], &[-1, -2]]), &q).unwrap();
        assert_eq!(sat_strings(&two), vec!["01", "10"]);
        let empty = encode_exact_sat(&cnf(1, &[&[]]), &q).unwrap();
        assert!(sat_strings(&empty).is_empty());
        assert!(encode_exact_sat(&cnf(1, &[&[1]]), &RingSpec::integers_mod(5).unwrap()).is_err());
    }

    #[test]
    fn generalized_examples() {
        let q = RingSpec::rationals();
        let c = GeneralizedClause {
            literals: vec![lit(1), lit(2), lit(3)],
            allowed: vec![0, 3],
        };
        let inst = encode_generalized_sat(3, &[c], None, &q).unwrap();
        assert_eq!(inst.max_degree(), 2);
        assert_eq!(sat_strings(&inst), vec!["000", "111"]);

        let none = GeneralizedClause {
            literals: vec![lit(1)],
            allowed: vec![],
        };
        assert!(sat_strings(&encode_generalized_sat(1, &[none], None, &q).unwrap()).is_empty());

        let one = GeneralizedClause {
            literals: vec![lit(1), lit(2)],
            allowed: vec![1],
        };
        let inst = encode_generalized_sat(2, &[one], None, &q).unwrap();
        assert_eq!(inst.constraints()[0].poly.to_string(), "-1 + 1*x1 + 1*x2");
        assert_eq!(sat_strings(&inst), vec!["01", "10"]);
    }

    #[test]
    fn generalized_modular_counts() {
        let z2 = RingSpec::integers_mod(2).unwrap();
        let parity = GeneralizedClause {
            literals: vec![lit(1), lit(2), lit(3)],
            allowed: vec![1],
        };
        let inst = encode_generalized_sat(3, std::slice::from_ref(&parity), Some(2), &z2).unwrap();
        assert_eq!(sat_strings(&inst), vec!["001", "010", "100", "111"]);
        assert!(encode_generalized_sat(3, std::slice::from_ref(&parity), None, &z2).is_err());
        assert!(encode_generalized_sat(3, std::slice::from_ref(&parity), Some(3), &z2).is_err());
        let z4 = RingSpec::integers_mod(4).unwrap();
        assert!(matches!(
            encode_generalized_sat(3, &[parity], None, &z4),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn nae_examples() {
        let q = RingSpec::rationals();
        let three = encode_nae(&cnf(3, &[&[1, 2, 3]]), &q).unwrap();
        assert_eq!(three.max_degree(), 2);
        assert_eq!(sat_strings(&three), vec!["001", "010", "011", "100", "101", "110"]);
        let two = encode_nae(&cnf(2, &[&[1, -2]]), &q).unwrap();
        assert_eq!(sat_strings(&two), vec!["00", "11"]);
        let single = encode_nae(&cnf(1, &[&[1]]), &q).unwrap();
        assert!(sat_strings(&single).is_empty());
        assert!(encode_nae(&cnf(3, &[&[1, 2, 3]]), &RingSpec::integers_mod(3).unwrap()).is_err());
    }

    #[test]
    fn cnf_nonroot_examples() {
        let q = RingSpec::rationals();
        let inst = encode_cnf_nonroot(&cnf(4, &[&[1, -3, 4]]), &q).unwrap();
        assert_eq!(inst.constraints()[0].poly.to_string(), "1 + 1*x1 + -1*x3 + 1*x4");
        let empty = encode_cnf_nonroot(&cnf(1, &[&[]]), &q).unwrap();
        assert!(sat_strings(&empty).is_empty());
        let z5 = RingSpec::integers_mod(5).unwrap();
        let or = encode_cnf_nonroot(&cnf(2, &[&[1, 2]]), &z5).unwrap();
        assert_eq!(sat_strings(&or), vec!["01", "10", "11"]);
        assert!(encode_cnf_nonroot(&cnf(2, &[&[1, 2]]), &RingSpec::integers_mod(2).unwrap()).is_err());
    }
}
