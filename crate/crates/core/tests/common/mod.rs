#![allow(dead_code)]

use num_rational::BigRational;
use polysparse::encode::{CnfFormula, Literal};
use polysparse::model::{Constraint, CspInstance, Mode};
use polysparse::poly::{monomials_up_to, MultilinearPoly};
use polysparse::ring::{RingSpec, Scalar};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut ChaCha8Rng, ring: &RingSpec) -> Scalar {
    match ring.modulus() {
        Some(m) => ring.residue(rng.gen_range(0..m)),
        None if rng.gen_bool(0.2) => {
            Scalar::Rational(BigRational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into()))
        }
        None => ring.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_poly(rng: &mut ChaCha8Rng, ring: &RingSpec, n: usize, d: usize) -> MultilinearPoly {
    let mut terms = Vec::new();
    for m in monomials_up_to(n, d) {
        if rng.gen_bool(0.5) {
            terms.push((m, random_scalar(rng, ring)));
        }
    }
    MultilinearPoly::from_terms(ring.clone(), n, terms).unwrap()
}

pub fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen()).collect()
}

/// `count` root constraints, each a random combination of a few base
/// polynomials that vanish on a planted point; now and then a free random one.
pub fn planted_root_instance(rng: &mut ChaCha8Rng, ring: &RingSpec, n: usize, d: usize, count: usize) -> CspInstance {
    let point = random_bits(rng, n);
    let bases: Vec<MultilinearPoly> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let p = random_poly(rng, ring, n, d);
            let v = p.eval(&point).unwrap();
            p.try_sub(&MultilinearPoly::constant(ring.clone(), n, v)).unwrap()
        })
        .collect();
    let constraints = (0..count)
        .map(|_| {
            let poly = if rng.gen_bool(0.03) {
                random_poly(rng, ring, n, d)
            } else {
                bases.iter().fold(MultilinearPoly::zero(ring.clone(), n), |acc, b| {
                    acc.try_add(&b.scale(&random_scalar(rng, ring))).unwrap()
                })
            };
            Constraint::root(poly)
        })
        .collect();
    CspInstance::new(ring.clone(), n, d, constraints, Mode::AllRoot).unwrap()
}

/// Degree-1 inequalities over `Z/pZ`, all nonzero on a planted point.
pub fn planted_nonroot_instance(rng: &mut ChaCha8Rng, p: u64, n: usize, count: usize) -> CspInstance {
    let ring = RingSpec::integers_mod(p).unwrap();
    let point = random_bits(rng, n);
    let constraints = (0..count)
        .map(|_| {
            let f = random_poly(rng, &ring, n, 1);
            let v = f.eval(&point).unwrap().as_residue().unwrap();
            let want = rng.gen_range(1..p);
            let shift = ring.residue((want + p - v) % p);
            Constraint::nonroot(f.try_add(&MultilinearPoly::constant(ring.clone(), n, shift)).unwrap())
        })
        .collect();
    CspInstance::new(ring, n, 1, constraints, Mode::AllNonRoot).unwrap()
}

pub fn random_cnf(rng: &mut ChaCha8Rng, n: usize, clauses: usize, min_len: usize, max_len: usize) -> CnfFormula {
    let vars: Vec<usize> = (0..n).collect();
    let clauses = (0..clauses)
        .map(|_| {
            let len = rng.gen_range(min_len..=max_len.min(n));
            vars.choose_multiple(rng, len)
                .map(|&v| Literal { var: v, positive: rng.gen() })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

/// True when `sub` lists constraints of `full` in their original order.
pub fn is_sublist(sub: &CspInstance, full: &CspInstance) -> bool {
    let mut it = full.constraints().iter();
    sub.constraints().iter().all(|c| it.any(|o| o == c))
}

pub fn bits_of(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}
