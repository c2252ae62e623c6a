//! Several composed graphs folded into one degree-`d` root instance, with
//! selector variables choosing which graph has to be dominated.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Constraint, CspInstance, Mode};
use crate::poly::{Monomial, MultilinearPoly};
use crate::ring::RingSpec;

use super::erbds::ErbdsGraph;

/// Groups are indexed by `(i_1, …, i_{d-1}) ∈ [r]^{d-1}`, `i_1` most
/// significant, so there must be exactly `r^{d-1}` of them.
///
/// Variables: one per red label (shared by all groups), then `y^z_j` at
/// `N + (z-1)·r + (j-1)`. Constraints, in order:
///
/// * `Σ_j y^z_j - 1` for every `z`
/// * `(Σ_{x ∈ N(b)} v_x)·Π_z y^z_{i_z} - Π_z y^z_{i_z}` for every blue `b` of
///   every group
/// * `v_x·v_x'` for every pair of neighbours of every non-exempt blue
///
/// Satisfiable when some group has an exact dominating set; a solution gives a
/// semi-exact one in the group its selectors point to.
pub fn gen_degree_d_composition(groups: &[ErbdsGraph], ring: &RingSpec, d: usize) -> Result<CspInstance> {
    if d < 2 {
        return Err(Error::invalid(format!("degree must be at least 2, got {d}")));
    }
    let first = groups.first().ok_or_else(|| Error::invalid("no groups"))?;
    let dims = d - 1;
    let mut r = 1usize;
    while r.pow(dims as u32) < groups.len() {
        r += 1;
    }
    if r.pow(dims as u32) != groups.len() {
        return Err(Error::invalid(format!(
            "{} groups is not a power r^{dims}",
            groups.len()
        )));
    }
    let fixed = first.fixed_neighbourhoods();
    for (gi, g) in groups.iter().enumerate() {
        if g.graph.red_labels() != first.graph.red_labels()
            || g.graph.blue_labels() != first.graph.blue_labels()
            || g.exempt != first.exempt
        {
            return Err(Error::invalid(format!("group {} is labelled differently from group 1", gi + 1)));
        }
        if g.fixed_neighbourhoods() != fixed {
            return Err(Error::invalid(format!(
                "group {} has a different neighbourhood outside the exempt set",
                gi + 1
            )));
        }
    }

    let n_red = first.graph.red_count();
    let n = n_red + dims * r;
    let y = |z: usize, j: usize| n_red + z * r + j;
    let poly = |terms: Vec<(Monomial, i64)>| -> Result<MultilinearPoly> {
        MultilinearPoly::from_terms(ring.clone(), n, terms.into_iter().map(|(m, c)| (m, ring.from_i64(c))))
    };
    let mut constraints = Vec::new();
    for z in 0..dims {
        let mut terms: Vec<(Monomial, i64)> = (0..r).map(|j| (Monomial::var(y(z, j)), 1)).collect();
        terms.push((Monomial::one(), -1));
        constraints.push(Constraint::root(poly(terms)?));
    }
    for (gi, g) in groups.iter().enumerate() {
        // mixed-radix digits of gi, most significant first
        let mut digits = vec![0usize; dims];
        let mut rest = gi;
        for z in (0..dims).rev() {
            digits[z] = rest % r;
            rest /= r;
        }
        let selector = Monomial::from_vars((0..dims).map(|z| y(z, digits[z])));
        for b in 0..g.graph.blue_count() {
            let mut terms: Vec<(Monomial, i64)> = g
                .graph
                .blue_neighbors(b)
                .iter()
                .map(|&x| (Monomial::var(x).mul(&selector), 1))
                .collect();
            terms.push((selector.clone(), -1));
            constraints.push(Constraint::root(poly(terms)?));
        }
    }
    let mut pairs = BTreeSet::new();
    for b in (0..first.graph.blue_count()).filter(|&b| !first.is_exempt(b)) {
        let nb = first.graph.blue_neighbors(b);
        for (i, &x) in nb.iter().enumerate() {
            for &xp in &nb[i + 1..] {
                pairs.insert((x, xp));
            }
        }
    }
    for (x, xp) in pairs {
        constraints.push(Constraint::root(poly(vec![(Monomial::from_vars([x, xp]), 1)])?));
    }
    CspInstance::new(ring.clone(), n, d, constraints, Mode::AllRoot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::erbds::gen_erbds_cross;
    use crate::gen::rbds::RbdsInstance;
    use crate::model::satisfying_set;

    fn group(edges: &[(usize, usize)]) -> ErbdsGraph {
        gen_erbds_cross(&[RbdsInstance::new(2, 2, 1, edges.to_vec()).unwrap()]).unwrap()
    }

    #[test]
    fn one_group_with_solution() {
        let q = RingSpec::rationals();
        let inst = gen_degree_d_composition(&[group(&[(0, 0), (0, 1)])], &q, 2).unwrap();
        assert!(inst.max_degree() <= 2);
        assert!(!satisfying_set(&inst).unwrap().is_empty());
    }

    #[test]
    fn two_groups_without_solution() {
        let z5 = RingSpec::integers_mod(5).unwrap();
        let gs = [group(&[(0, 0), (1, 1)]), group(&[(1, 0)])];
        let inst = gen_degree_d_composition(&gs, &z5, 2).unwrap();
        assert!(inst.max_degree() <= 2);
        assert!(satisfying_set(&inst).unwrap().is_empty());
    }

    #[test]
    fn two_groups_one_yes() {
        let z4 = RingSpec::integers_mod(4).unwrap();
        let gs = [group(&[(0, 0), (1, 1)]), group(&[(1, 0), (1, 1)])];
        let inst = gen_degree_d_composition(&gs, &z4, 2).unwrap();
        let sols = satisfying_set(&inst).unwrap();
        assert!(!sols.is_empty());
        // every solution selects the second group
        let n_red = gs[0].graph.red_count();
        assert!(sols.iter().all(|a| !a.bits[n_red] && a.bits[n_red + 1]));
    }

    #[test]
    fn shape_checks() {
        let q = RingSpec::rationals();
        let g = group(&[]);
        assert!(gen_degree_d_composition(&[g.clone(), g.clone(), g.clone()], &q, 3).is_err());
        assert!(gen_degree_d_composition(std::slice::from_ref(&g), &q, 1).is_err());
        let other = gen_erbds_cross(&[RbdsInstance::new(3, 2, 1, vec![]).unwrap()]).unwrap();
        assert!(gen_degree_d_composition(&[g, other], &q, 2).is_err());
    }
}
