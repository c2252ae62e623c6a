//! Small spanning subsets over `Z/mZ`: at most one element per prime divisor
//! of `m`, and for matrices at most that many rows per nonzero column.

use super::RingMatrix;
use crate::error::{Error, Result};
use crate::ring::{is_prime, mul_mod, xgcd, RingSpec, Scalar};

/// Selected indices plus, for every input element (or row) `i`,
/// `combinations[i]`: coefficients over `chosen`, in the same order, that
/// reproduce element `i` modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningCertificate {
    pub chosen: Vec<usize>,
    pub combinations: Vec<Vec<Scalar>>,
}

/// Largest `k` with `p^k` dividing both `a` and `m`. For `a = 0` this is the
/// exponent of `p` in `m`.
pub fn valuation_nu(a: u64, p: u64, m: u64) -> Result<u32> {
    if p < 2 || !is_prime(p) || !m.is_multiple_of(p) {
        return Err(Error::invalid(format!("{p} is not a prime divisor of {m}")));
    }
    let mut k = 0;
    let mut pk = p;
    while m.is_multiple_of(pk) && a.is_multiple_of(pk) {
        k += 1;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    Ok(k)
}

/// Greatest common divisor of `values` with integer coefficients `c` such
/// that `Σ c_i·values_i = g`. Extended Euclid folded left to right.
pub fn bezout(values: &[u64]) -> (u64, Vec<i128>) {
    let mut g: i128 = 0;
    let mut coeffs: Vec<i128> = Vec::with_capacity(values.len());
    for &v in values {
        let (ng, s, t) = xgcd(g, v as i128);
        for c in coeffs.iter_mut() {
            *c *= s;
        }
        coeffs.push(t);
        g = ng;
        // Shift each (c_0, c_i) by a multiple of (v_i/g, -v_0/g) to keep the
        // coefficients from growing with every fold.
        let v0 = values[0] as i128;
        if g > 0 && v0 > 0 {
            let step = v0 / g;
            for i in 1..coeffs.len() {
                let q = coeffs[i].div_euclid(step);
                coeffs[i] -= q * step;
                coeffs[0] += q * (values[i] as i128 / g);
            }
        }
    }
    (g as u64, coeffs)
}

fn residue_scalars(values: &[i128], m: u64) -> Vec<Scalar> {
    values.iter().map(|&v| Scalar::Residue(v.rem_euclid(m as i128) as u64)).collect()
}

/// For each prime divisor `p` of `m`, keep an element of `s` minimizing
/// `ν_p` (ties: smallest residue, then lowest index). Every element is then a
/// combination of the kept ones: with `g = gcd(m, kept)` and Bézout
/// coefficients `α`, `b = Σ (b/g · α_i) · kept_i (mod m)`.
pub fn spanning_subset_modm(s: &[u64], m: u64) -> Result<SpanningCertificate> {
    let ring = RingSpec::integers_mod(m)?;
    if s.is_empty() {
        return Err(Error::invalid("spanning subset of an empty set"));
    }
    if let Some(&b) = s.iter().find(|&&b| b >= m) {
        return Err(Error::invalid(format!("{b} is not a residue mod {m}")));
    }
    let mut chosen = Vec::new();
    for &(p, _) in ring.prime_factors() {
        let best = (0..s.len())
            .min_by_key(|&i| (valuation_nu(s[i], p, m).expect("p divides m"), s[i], i))
            .expect("nonempty");
        chosen.push(best);
    }
    chosen.sort_unstable();
    chosen.dedup();

    let mut gens = vec![m];
    gens.extend(chosen.iter().map(|&i| s[i]));
    let (g, alpha) = bezout(&gens);
    let mut combinations = Vec::with_capacity(s.len());
    for &b in s {
        if b % g != 0 {
            return Err(Error::Internal(format!("gcd {g} of the chosen elements does not divide {b}")));
        }
        let scale = (b / g) % m;
        let coeffs = residue_scalars(&alpha[1..], m);
        combinations.push(
            coeffs
                .into_iter()
                .map(|c| Scalar::Residue(mul_mod(c.as_residue().expect("residue"), scale, m)))
                .collect(),
        );
    }
    Ok(SpanningCertificate { chosen, combinations })
}

/// Rows of `a` spanning its row space over `Z/mZ`, at most `r` per nonzero
/// column where `r` counts the prime divisors of `m`.
///
/// Works column by column on residual rows: the nonzero residual entries of
/// the first live column are spanned by [`spanning_subset_modm`], and every
/// residual row subtracts the matching combination of the chosen residuals.
/// Chosen residuals are zero before that column, so earlier columns stay
/// clear. Panics over the rationals.
pub fn row_spanning_subset_modm(a: &RingMatrix) -> SpanningCertificate {
    let m = a.ring().modulus().expect("row_spanning_subset_modm needs Z/mZ");
    let n = a.rows();
    let mut residual: Vec<Vec<u64>> = (0..n)
        .map(|i| a.row(i).iter().map(|s| s.as_residue().expect("residue")).collect())
        .collect();
    // row_i = residual_i + taken_i · A
    let mut taken: Vec<Vec<u64>> = vec![vec![0; n]; n];
    let mut chosen: Vec<usize> = Vec::new();

    for j in 0..a.cols() {
        let live: Vec<usize> = (0..n).filter(|&i| residual[i][j] != 0).collect();
        if live.is_empty() {
            continue;
        }
        let values: Vec<u64> = live.iter().map(|&i| residual[i][j]).collect();
        let cert = spanning_subset_modm(&values, m).expect("valid residues");
        let picked: Vec<usize> = cert.chosen.iter().map(|&k| live[k]).collect();
        let picked_res: Vec<Vec<u64>> = picked.iter().map(|&c| residual[c].clone()).collect();
        let picked_taken: Vec<Vec<u64>> = picked.iter().map(|&c| taken[c].clone()).collect();

        for (k, &i) in live.iter().enumerate() {
            if picked.contains(&i) {
                continue;
            }
            for (ci, coef) in cert.combinations[k].iter().enumerate() {
                let q = coef.as_residue().expect("residue");
                if q == 0 {
                    continue;
                }
                let neg = (m - q) % m;
                for (x, &y) in residual[i].iter_mut().zip(&picked_res[ci]) {
                    *x = (*x + mul_mod(neg, y, m)) % m;
                }
                // residual_c = row_c - taken_c·A, so taken_i += q·(e_c - taken_c)
                let c = picked[ci];
                for (x, &y) in taken[i].iter_mut().zip(&picked_taken[ci]) {
                    *x = (*x + mul_mod(neg, y, m)) % m;
                }
                taken[i][c] = (taken[i][c] + q) % m;
            }
            debug_assert_eq!(residual[i][j], 0);
        }
        for &c in &picked {
            residual[c].iter_mut().for_each(|x| *x = 0);
            taken[c].iter_mut().for_each(|x| *x = 0);
            taken[c][c] = 1 % m;
        }
        chosen.extend(picked);
    }
    chosen.sort_unstable();

    let combinations = taken
        .iter()
        .map(|t| {
            debug_assert!((0..n).all(|i| t[i] == 0 || chosen.binary_search(&i).is_ok()));
            chosen.iter().map(|&c| Scalar::Residue(t[c])).collect()
        })
        .collect();
    SpanningCertificate { chosen, combinations }
}
