//! Reduction from d-CNF-SAT to Prime-SAT, where a clause holds when its
//! number of true literals is prime.

use crate::encode::{CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::ring::is_prime;

/// Longest progression length `find_prime_ap` will search for.
pub const MAX_AP_LENGTH: usize = 10;
const MAX_STEP: u64 = 1 << 16;
const MAX_START: u64 = 1 << 16;

/// Prime-SAT clauses over `n_vars` variables plus the progression they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSatInstance {
    pub n_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
    pub a: u64,
    pub b: u64,
    pub d: usize,
    /// Variable count of the source formula.
    pub source_vars: usize,
}

impl PrimeSatInstance {
    /// Index of copy `c` (0-based) of source variable `x`.
    pub fn copy_var(&self, x: usize, c: usize) -> usize {
        x * self.b as usize + c
    }

    /// Index of the `i`-th forced-true variable (0-based).
    pub fn t_var(&self, i: usize) -> usize {
        self.source_vars * self.b as usize + i
    }

    pub fn t_count(&self) -> usize {
        self.n_vars - self.source_vars * self.b as usize
    }

    /// The assignment induced by a source assignment: copies agree, T's are true.
    pub fn lift(&self, source: &[bool]) -> Vec<bool> {
        let mut bits = vec![true; self.n_vars];
        for (x, &v) in source.iter().enumerate() {
            for c in 0..self.b as usize {
                bits[self.copy_var(x, c)] = v;
            }
        }
        bits
    }
}

fn slow_is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Smallest `(a, b)`, ordered by `b` then `a`, with `a, a+b, …, a+(d-1)b`
/// prime and `a + d·b` composite.
pub fn find_prime_ap(d: usize) -> Result<(u64, u64)> {
    if d == 0 || d > MAX_AP_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "progression length must be in 1..={MAX_AP_LENGTH}, got {d}"
        )));
    }
    let d64 = d as u64;
    for b in 1..=MAX_STEP {
        for a in 2..=MAX_START {
            if (0..d64).all(|i| is_prime(a + i * b)) && !is_prime(a + d64 * b) {
                debug_assert!((0..d64).all(|i| slow_is_prime(a + i * b)));
                return Ok((a, b));
            }
        }
    }
    Err(Error::SearchExhausted(format!("no prime progression of length {d} found")))
}

/// Builds the Prime-SAT instance for a CNF formula whose clauses all have
/// exactly `d` literals.
pub fn gen_primesat_from_cnf(f: &CnfFormula) -> Result<PrimeSatInstance> {
    let Some(first) = f.clauses().first() else {
        return Err(Error::invalid("formula has no clauses"));
    };
    let d = first.len();
    if d == 0 || f.clauses().iter().any(|c| c.len() != d) {
        return Err(Error::invalid("clauses must all have the same positive length"));
    }
    let (a, b) = find_prime_ap(d)?;
    let n = f.n_vars();
    // copy clauses read T_1..T_3, so keep at least three forced variables
    let t_count = if b >= 2 { (a as usize).max(3) } else { a as usize };
    let mut inst = PrimeSatInstance {
        n_vars: n * b as usize + t_count,
        clauses: Vec::new(),
        a,
        b,
        d,
        source_vars: n,
    };
    let t: Vec<usize> = (0..t_count).map(|i| inst.t_var(i)).collect();
    let mut clauses = Vec::new();
    for clause in f.clauses() {
        let mut lits: Vec<Literal> = t[..a as usize].iter().map(|&v| Literal::pos(v)).collect();
        for lit in clause {
            for c in 0..b as usize {
                lits.push(Literal { var: inst.copy_var(lit.var, c), positive: !lit.positive });
            }
        }
        clauses.push(lits);
    }
    for w in t.windows(2) {
        clauses.push(vec![Literal::pos(w[0]), Literal::pos(w[1])]);
    }
    for x in 0..n {
        for c in 0..b as usize - 1 {
            let mut lits: Vec<Literal> = t[..3].iter().map(|&v| Literal::pos(v)).collect();
            lits.push(Literal::pos(inst.copy_var(x, c)));
            lits.push(Literal::pos(inst.copy_var(x, c + 1)));
            clauses.push(lits);
        }
    }
    inst.clauses = clauses;
    Ok(inst)
}

/// True iff every clause has a prime number of true literals.
pub fn prime_count_satisfies(inst: &PrimeSatInstance, bits: &[bool]) -> Result<bool> {
    if bits.len() != inst.n_vars {
        return Err(Error::ArityMismatch { expected: inst.n_vars, found: bits.len() });
    }
    Ok(inst
        .clauses
        .iter()
        .all(|c| is_prime(c.iter().filter(|l| l.is_true(bits)).count() as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bits_of(mask: u64, n: usize) -> Vec<bool> {
        (0..n).map(|i| mask >> i & 1 == 1).collect()
    }

    fn cnf_sat(f: &CnfFormula) -> bool {
        (0..1u64 << f.n_vars()).any(|m| f.true_counts(&bits_of(m, f.n_vars())).iter().all(|&c| c > 0))
    }

    fn prime_sat(inst: &PrimeSatInstance) -> bool {
        (0..1u64 << inst.n_vars).any(|m| prime_count_satisfies(inst, &bits_of(m, inst.n_vars)).unwrap())
    }

    #[test]
    fn progressions() {
        assert_eq!(find_prime_ap(1).unwrap(), (3, 1));
        assert_eq!(find_prime_ap(2).unwrap(), (2, 1));
        assert_eq!(find_prime_ap(3).unwrap(), (3, 2));
        assert_eq!(find_prime_ap(4).unwrap(), (11, 6));
        assert_eq!(find_prime_ap(10).unwrap(), (199, 210));
        for d in 1..=MAX_AP_LENGTH {
            let (a, b) = find_prime_ap(d).unwrap();
            let d = d as u64;
            assert!((0..d).all(|i| slow_is_prime(a + i * b)));
            assert!(!slow_is_prime(a + d * b));
        }
        assert!(find_prime_ap(0).is_err());
        assert!(find_prime_ap(11).is_err());
    }

    #[test]
    fn forcing_pair() {
        let inst = PrimeSatInstance {
            n_vars: 2,
            clauses: vec![vec![Literal::pos(0), Literal::pos(1)]],
            a: 2,
            b: 1,
            d: 2,
            source_vars: 0,
        };
        let good: Vec<u64> = (0..4).filter(|&m| prime_count_satisfies(&inst, &bits_of(m, 2)).unwrap()).collect();
        assert_eq!(good, vec![3]);
        assert!(prime_count_satisfies(&inst, &[true]).is_err());
    }

    #[test]
    fn layout_for_three_cnf() {
        let f = CnfFormula::new(2, vec![vec![Literal::pos(0), Literal::neg(1), Literal::pos(1)]]);
        assert!(f.is_err(), "repeated variables are rejected upstream");
        let f = CnfFormula::new(3, vec![vec![Literal::pos(0), Literal::neg(1), Literal::pos(2)]]).unwrap();
        let inst = gen_primesat_from_cnf(&f).unwrap();
        assert_eq!((inst.a, inst.b, inst.d), (3, 2, 3));
        assert_eq!(inst.n_vars, 3 * 2 + 3);
        // one main clause, two forcing clauses, one copy clause per variable
        assert_eq!(inst.clauses.len(), 1 + 2 + 3);
        assert_eq!(inst.clauses[0].len(), 3 + 3 * 2);
        assert!(prime_count_satisfies(&inst, &inst.lift(&[true, true, false])).unwrap());
        assert!(!prime_count_satisfies(&inst, &inst.lift(&[false, true, false])).unwrap());
    }

    #[test]
    fn rejects_ragged_and_empty() {
        let f = CnfFormula::new(3, vec![vec![Literal::pos(0)], vec![Literal::pos(1), Literal::pos(2)]]).unwrap();
        assert!(gen_primesat_from_cnf(&f).is_err());
        let f = CnfFormula::new(3, vec![]).unwrap();
        assert!(gen_primesat_from_cnf(&f).is_err());
    }

    #[test]
    fn equisatisfiable_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..=3 {
            for _ in 0..15 {
                let n = rng.gen_range(d..=4);
                let m = rng.gen_range(1..=6);
                let clauses = (0..m)
                    .map(|_| {
                        let mut vars: Vec<usize> = (0..n).collect();
                        for i in 0..d {
                            let j = rng.gen_range(i..n);
                            vars.swap(i, j);
                        }
                        vars[..d].iter().map(|&v| Literal { var: v, positive: rng.gen() }).collect()
                    })
                    .collect();
                let f = CnfFormula::new(n, clauses).unwrap();
                let inst = gen_primesat_from_cnf(&f).unwrap();
                assert_eq!(cnf_sat(&f), prime_sat(&inst), "{f:?}");
                for mask in 0..1u64 << n {
                    let src = bits_of(mask, n);
                    let ok = f.true_counts(&src).iter().all(|&c| c > 0);
                    assert_eq!(prime_count_satisfies(&inst, &inst.lift(&src)).unwrap(), ok);
                }
            }
        }
    }
}
