//! Constraint-count reduction for root and non-root instances.
//!
//! Every routine keeps the satisfying set unchanged. The field, subset and
//! non-root variants return a sublist of the input constraints in input order;
//! the Howell variant rebuilds constraints from the rows of the normal form.

use crate::error::{Error, Result};
use crate::linalg::{howell_form, row_basis_subset_field, row_spanning_subset_modm};
use crate::model::{coefficient_matrix, poly_from_row, Constraint, CspInstance, Mode};
use crate::poly::{compose_univariate, monomial_count, root_set_polynomial, DEFAULT_TERM_LIMIT};
use crate::ring::Scalar;

fn require_mode(inst: &CspInstance, mode: Mode) -> Result<()> {
    if inst.mode() != mode {
        return Err(Error::Mode(format!("expected a {mode} instance, got {}", inst.mode())));
    }
    Ok(())
}

fn keep(inst: &CspInstance, indices: &[usize]) -> Result<CspInstance> {
    let kept = indices.iter().map(|&i| inst.constraints()[i].clone()).collect();
    inst.with_constraints(kept)
}

fn check_count(kept: usize, bound: usize, what: &str) -> Result<()> {
    if kept > bound {
        return Err(Error::Internal(format!("{what} kept {kept} constraints, bound is {bound}")));
    }
    Ok(())
}

/// Indices of a greedy row basis of the coefficient matrix.
pub fn field_kept_indices(inst: &CspInstance) -> Result<Vec<usize>> {
    require_mode(inst, Mode::AllRoot)?;
    if !inst.ring().is_field() {
        return Err(Error::UnsupportedRing(format!("{} is not a field", inst.ring())));
    }
    let (a, _) = coefficient_matrix(inst)?;
    let kept = row_basis_subset_field(&a);
    check_count(kept.len(), monomial_count(inst.n_vars(), inst.degree_bound()), "field sparsifier")?;
    Ok(kept)
}

/// Keeps a constraint iff its coefficient row is independent of the rows kept
/// before it. Needs a root instance over a field.
pub fn sparsify_field(inst: &CspInstance) -> Result<CspInstance> {
    let kept = field_kept_indices(inst)?;
    keep(inst, &kept)
}

/// Replaces the constraints by the nonzero rows of the Howell form of the
/// coefficient matrix. Needs a root instance over `Z/mZ`.
pub fn sparsify_howell(inst: &CspInstance) -> Result<CspInstance> {
    require_mode(inst, Mode::AllRoot)?;
    if inst.ring().modulus().is_none() {
        return Err(Error::UnsupportedRing(format!("Howell form needs Z/mZ, got {}", inst.ring())));
    }
    let (a, columns) = coefficient_matrix(inst)?;
    let h = howell_form(&a);
    check_count(h.row_count, monomial_count(inst.n_vars(), inst.degree_bound()), "Howell sparsifier")?;
    let constraints = (0..h.row_count)
        .map(|i| poly_from_row(inst.ring(), inst.n_vars(), &columns, h.h.row(i)).map(Constraint::root))
        .collect::<Result<Vec<_>>>()?;
    inst.with_constraints(constraints)
}

/// Keeps at most `r` constraints per monomial column, `r` being the number of
/// distinct primes of `m`. Needs a root instance over `Z/mZ`.
pub fn sparsify_subset_modm(inst: &CspInstance) -> Result<CspInstance> {
    require_mode(inst, Mode::AllRoot)?;
    if inst.ring().modulus().is_none() {
        return Err(Error::UnsupportedRing(format!("subset sparsification needs Z/mZ, got {}", inst.ring())));
    }
    let (a, _) = coefficient_matrix(inst)?;
    let cert = row_spanning_subset_modm(&a);
    let r = inst.ring().distinct_primes();
    check_count(
        cert.chosen.len(),
        r * monomial_count(inst.n_vars(), inst.degree_bound()),
        "subset sparsifier",
    )?;
    keep(inst, &cert.chosen)
}

/// Rewrites each `f != 0` over `Z/pZ` as `F(f) = 0`, with `F` vanishing
/// exactly on the nonzero residues. Constraint `i` of the output comes from
/// constraint `i` of the input.
pub fn nonroot_to_root(inst: &CspInstance) -> Result<CspInstance> {
    nonroot_to_root_with_limit(inst, DEFAULT_TERM_LIMIT)
}

pub fn nonroot_to_root_with_limit(inst: &CspInstance, term_limit: usize) -> Result<CspInstance> {
    require_mode(inst, Mode::AllNonRoot)?;
    let ring = inst.ring();
    let p = match ring.modulus() {
        Some(p) if ring.is_field() => p,
        _ => {
            return Err(Error::UnsupportedRing(format!(
                "non-root constraints can only be lifted over a prime modulus, got {ring}"
            )))
        }
    };
    let nonzero: Vec<Scalar> = (1..p).map(|s| ring.residue(s)).collect();
    let f = root_set_polynomial(&nonzero, ring)?;
    let constraints = inst
        .constraints()
        .iter()
        .map(|c| compose_univariate(&f, &c.poly, term_limit).map(Constraint::root))
        .collect::<Result<Vec<_>>>()?;
    let bound = inst.degree_bound() * (p as usize - 1);
    CspInstance::new(ring.clone(), inst.n_vars(), bound, constraints, Mode::AllRoot)
}

/// Lifts to root form, selects a row basis there, and returns the matching
/// original inequalities.
pub fn sparsify_nonroot(inst: &CspInstance) -> Result<CspInstance> {
    sparsify_nonroot_with_limit(inst, DEFAULT_TERM_LIMIT)
}

pub fn sparsify_nonroot_with_limit(inst: &CspInstance, term_limit: usize) -> Result<CspInstance> {
    let lifted = nonroot_to_root_with_limit(inst, term_limit)?;
    let kept = field_kept_indices(&lifted)?;
    keep(inst, &kept)
}
