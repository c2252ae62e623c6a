//! Low-degree polynomials mod a prime `p` that are nonzero exactly when some
//! input bit is set.

use log::debug;

use crate::error::{Error, Result};
use crate::poly::{monomials_up_to, Monomial, MultilinearPoly};
use crate::ring::{inv_mod, is_prime, mul_mod, RingSpec};

/// Largest input count the construction is checked exhaustively on.
pub const OR_VARIABLE_LIMIT: usize = 20;

fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    // exact value first; n stays tiny here
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    (c % p as u128) as u64
}

/// Coefficients `c` with `Σ c_i·C(w, i) ≢ 0 (mod p)` for every weight `1..=n`.
fn symmetric_search(p: u64, d: usize, n: usize) -> Option<Vec<u64>> {
    let table: Vec<Vec<u64>> = (0..=n as u64)
        .map(|w| (1..=d as u64).map(|i| binomial_mod(w, i, p)).collect())
        .collect();
    let mut c = vec![0u64; d];
    loop {
        let ok = (1..=n).all(|w| {
            let v = c.iter().zip(&table[w]).fold(0, |acc, (&a, &b)| (acc + a * b) % p);
            v != 0
        });
        if ok {
            return Some(c);
        }
        // next vector, first coordinate fastest
        let mut i = 0;
        loop {
            if i == d {
                return None;
            }
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// Monic irreducible polynomial of degree `d` over `F_p`, lowest coefficient first.
fn irreducible(p: u64, d: usize) -> Vec<u64> {
    fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p).expect("nonzero lead");
        while r.len() > db {
            let top = *r.last().expect("nonempty");
            let q = mul_mod(top, lead_inv, p);
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul_mod(q, bi, p)) % p;
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        r
    }
    fn monic(p: u64, deg: usize, code: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(deg + 1);
        let mut c = code;
        for _ in 0..deg {
            v.push(c % p);
            c /= p;
        }
        v.push(1);
        v
    }
    let count = p.pow(d as u32);
    (0..count)
        .map(|code| monic(p, d, code))
        .find(|f| {
            (1..=d / 2).all(|e| (0..p.pow(e as u32)).all(|code| !rem(f, &monic(p, e, code), p).is_empty()))
        })
        .expect("irreducible polynomials exist in every degree")
}

fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[col][col], p);
        let inv = inv_mod(a[col][col], p).expect("field");
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = mul_mod(row[col], inv, p);
            if f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
    }
    det
}

/// Norm of `Σ_k s_k θ^k` from `F_{p^d}` down to `F_p`, where `s_k` is the sum
/// of the `k`-th block of `p - 1` inputs: zero iff every block sum is zero,
/// i.e. iff every input is zero. Returns the value on every input mask.
fn norm_values(p: u64, d: usize, n: usize) -> Vec<u64> {
    let f = irreducible(p, d);
    let mut comp = vec![vec![0u64; d]; d];
    for i in 1..d {
        comp[i][i - 1] = 1;
    }
    for (i, row) in comp.iter_mut().enumerate() {
        row[d - 1] = (p - f[i]) % p;
    }
    let mut powers = vec![identity(d)];
    for _ in 1..d {
        let last = powers.last().expect("nonempty");
        powers.push(matmul(last, &comp, p));
    }
    let block = (p - 1) as usize;
    (0..1u64 << n)
        .map(|mask| {
            let mut m = vec![vec![0u64; d]; d];
            for (k, pk) in powers.iter().enumerate() {
                let s = (0..block).filter(|i| mask >> (k * block + i) & 1 == 1).count() as u64 % p;
                for r in 0..d {
                    for c in 0..d {
                        m[r][c] = (m[r][c] + s * pk[r][c]) % p;
                    }
                }
            }
            det_mod(m, p)
        })
        .collect()
}

fn identity(d: usize) -> Vec<Vec<u64>> {
    (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect()
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).fold(0, |acc, k| (acc + mul_mod(a[i][k], b[k][j], p)) % p)).collect())
        .collect()
}

/// Multilinear coefficients from values on all masks (Möbius inversion mod p).
fn mobius(mut values: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..values.len() {
            if mask & bit != 0 {
                values[mask] = (values[mask] + p - values[mask ^ bit]) % p;
            }
        }
    }
    values
}

/// A polynomial over `Z/pZ` of degree at most `d` in `d·(p-1)` variables that
/// is nonzero exactly when some variable is 1.
///
/// First tries `Σ c_i·e_i` over elementary symmetric polynomials. When no
/// coefficient vector works (for instance `p = 3, d = 2`, where `C(3, i) ≡ 0`
/// kills every weight-3 value) it falls back to the field norm of the block
/// sums, expanded by Möbius inversion. The result is checked on every input.
pub fn or_polynomial_mod_p(p: u64, d: usize) -> Result<MultilinearPoly> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let n = d * (p as usize - 1);
    if n > OR_VARIABLE_LIMIT {
        return Err(Error::OracleLimit {
            what: "variables",
            value: n,
            limit: OR_VARIABLE_LIMIT,
        });
    }
    let ring = RingSpec::integers_mod(p)?;
    let poly = match symmetric_search(p, d, n) {
        Some(c) => {
            debug!("symmetric OR polynomial mod {p}, degree {d}: coefficients {c:?}");
            let terms = monomials_up_to(n, d)
                .into_iter()
                .filter(|m| m.degree() >= 1)
                .map(|m| {
                    let coeff = ring.residue(c[m.degree() - 1]);
                    (m, coeff)
                });
            MultilinearPoly::from_terms(ring.clone(), n, terms)?
        }
        None => {
            debug!("no symmetric OR polynomial mod {p}, degree {d}; using the norm form");
            let coeffs = mobius(norm_values(p, d, n), n, p);
            let terms = coeffs.into_iter().enumerate().filter(|&(_, c)| c != 0).map(|(mask, c)| {
                (Monomial::from_vars((0..n).filter(|i| mask >> i & 1 == 1)), ring.residue(c))
            });
            MultilinearPoly::from_terms(ring.clone(), n, terms)?
        }
    };
    if poly.degree() > d {
        return Err(Error::Internal(format!(
            "OR polynomial mod {p} came out with degree {} > {d}",
            poly.degree()
        )));
    }
    for mask in 0..1u64 << n {
        let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let nonzero = !ring.is_zero(&poly.eval(&bits)?);
        if nonzero != (mask != 0) {
            return Err(Error::Internal(format!("OR polynomial mod {p}, degree {d} fails on input {mask:b}")));
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(p: u64, d: usize) -> MultilinearPoly {
        let f = or_polynomial_mod_p(p, d).unwrap();
        let n = d * (p as usize - 1);
        assert_eq!(f.n_vars(), n);
        assert!(f.degree() <= d);
        for mask in 0..1u64 << n {
            let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            assert_eq!(f.eval(&bits).unwrap().as_residue().unwrap() != 0, bits.iter().any(|&b| b));
        }
        f
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(3, 1).to_string(), "1*x1 + 1*x2");
        assert_eq!(check(2, 2).to_string(), "1*x1 + 1*x2 + 1*x1*x2");
        check(3, 2);
        check(2, 1);
        check(5, 1);
        check(3, 3);
        check(5, 2);
        check(7, 2);
    }

    #[test]
    fn symmetric_search_fails_below_p() {
        assert!(symmetric_search(3, 2, 4).is_none());
        assert!(symmetric_search(2, 3, 3).is_some());
    }

    #[test]
    fn irreducible_has_no_roots() {
        for (p, d) in [(2, 2), (3, 2), (5, 3), (2, 4)] {
            let f = irreducible(p, d);
            assert_eq!(f.len(), d + 1);
            for x in 0..p {
                let v = f.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p);
                assert_ne!(v, 0);
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(or_polynomial_mod_p(4, 1).is_err());
        assert!(or_polynomial_mod_p(3, 0).is_err());
        assert!(matches!(or_polynomial_mod_p(11, 3), Err(Error::OracleLimit { .. })));
    }
}
