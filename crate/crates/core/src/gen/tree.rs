//! Exactly-one over `Z/mZ` with linear equations: a binary tree of dummy
//! variables whose every internal node equals the sum of its two children.

use crate::error::{Error, Result};
use crate::model::{Constraint, CspInstance, Mode};
use crate::poly::{Monomial, MultilinearPoly};
use crate::ring::RingSpec;

/// Linear root instance over `x_1..x_N` followed by the dummy variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModLinearSystem {
    pub instance: CspInstance,
    pub n_original: usize,
    pub n_dummy: usize,
}

/// `Σ x_i ≡ 1 (mod m)` plus one equation `left + right ≡ parent` per internal
/// node of a complete binary tree whose first `N` leaves are the `x_i`. Its
/// 0/1 solutions are exactly the weight-one `x` vectors, each extended by the
/// subtree counts. Needs `m >= 3`: mod 2 a node with two set children reads 0.
pub fn gen_tree_gadget(n: usize, m: u64) -> Result<ModLinearSystem> {
    if m == 2 {
        return Err(Error::UnsupportedRing(
            "the tree gadget needs a modulus of at least 3".to_string(),
        ));
    }
    if n == 0 {
        return Err(Error::invalid("the tree gadget needs at least one variable"));
    }
    let ring = RingSpec::integers_mod(m)?;
    let leaves = n.next_power_of_two();
    // heap numbering: node h has children 2h and 2h+1, leaves are leaves..2*leaves
    let mut var_of = vec![0usize; 2 * leaves];
    let mut next = n;
    for (h, slot) in var_of.iter_mut().enumerate().skip(1) {
        if h >= leaves && h - leaves < n {
            *slot = h - leaves;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let total = next;
    let lin = |terms: Vec<(usize, i64)>, c: i64| -> Result<Constraint> {
        let mut ts: Vec<(Monomial, _)> = terms.into_iter().map(|(v, a)| (Monomial::var(v), ring.from_i64(a))).collect();
        ts.push((Monomial::one(), ring.from_i64(c)));
        MultilinearPoly::from_terms(ring.clone(), total, ts).map(Constraint::root)
    };
    let mut constraints = vec![lin((0..n).map(|v| (v, 1)).collect(), -1)?];
    for h in 1..leaves {
        constraints.push(lin(vec![(var_of[2 * h], 1), (var_of[2 * h + 1], 1), (var_of[h], -1)], 0)?);
    }
    let instance = CspInstance::new(ring, total, 1, constraints, Mode::AllRoot)?;
    Ok(ModLinearSystem {
        instance,
        n_original: n,
        n_dummy: total - n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::satisfying_set;
    use std::collections::BTreeSet;

    fn projections(sys: &ModLinearSystem) -> BTreeSet<Vec<bool>> {
        satisfying_set(&sys.instance)
            .unwrap()
            .into_iter()
            .map(|a| a.bits[..sys.n_original].to_vec())
            .collect()
    }

    fn weight_one(n: usize) -> BTreeSet<Vec<bool>> {
        (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
    }

    #[test]
    fn single_variable() {
        let sys = gen_tree_gadget(1, 5).unwrap();
        assert_eq!(sys.n_dummy, 0);
        assert_eq!(projections(&sys), weight_one(1));
    }

    #[test]
    fn small_trees() {
        for (n, m) in [(3, 3), (4, 6), (5, 4), (2, 3)] {
            let sys = gen_tree_gadget(n, m).unwrap();
            assert!(sys.n_dummy <= 4 * n);
            assert_eq!(projections(&sys), weight_one(n), "N={n} m={m}");
        }
        assert!(gen_tree_gadget(4, 6).unwrap().n_dummy <= 16);
    }

    #[test]
    fn modulus_two_rejected() {
        assert!(matches!(gen_tree_gadget(3, 2), Err(Error::UnsupportedRing(_))));
        assert!(gen_tree_gadget(0, 3).is_err());
    }
}
