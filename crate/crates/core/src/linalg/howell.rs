//! Howell normal form over `Z/mZ`.
//!
//! Column-by-column elimination: all rows with a nonzero entry in the current
//! column are folded into one pivot row by extended-gcd row operations, the
//! pivot is scaled by a unit to a divisor of `m`, and the annihilator multiple
//! `(m / pivot) · row` is pushed back into the working set so that the rows
//! below each pivot generate every row-space vector that is zero up to that
//! column. Entries above pivots are finally reduced into `[0, pivot)`.

use super::RingMatrix;
use crate::ring::{gcd_u64, inv_mod, mul_mod, xgcd, RingSpec, Scalar};

/// Howell form with zero rows removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellResult {
    pub h: RingMatrix,
    pub row_count: usize,
    /// Pivot column of each row of `h`, strictly increasing.
    pub pivots: Vec<usize>,
}

#[derive(Clone)]
struct WorkRow {
    v: Vec<u64>,
    /// The row as a combination of the input rows, when tracked.
    combo: Option<Vec<u64>>,
}

impl WorkRow {
    fn is_zero(&self) -> bool {
        self.v.iter().all(|&x| x == 0)
    }

    /// `s·a + t·b` (mod m), coefficients given as residues.
    fn lin(a: &WorkRow, s: u64, b: &WorkRow, t: u64, m: u64) -> WorkRow {
        let mix = |x: &[u64], y: &[u64]| -> Vec<u64> {
            x.iter()
                .zip(y)
                .map(|(&p, &q)| (mul_mod(p, s, m) + mul_mod(q, t, m)) % m)
                .collect()
        };
        WorkRow {
            v: mix(&a.v, &b.v),
            combo: match (&a.combo, &b.combo) {
                (Some(x), Some(y)) => Some(mix(x, y)),
                _ => None,
            },
        }
    }

    fn scaled(&self, c: u64, m: u64) -> WorkRow {
        WorkRow {
            v: self.v.iter().map(|&x| mul_mod(x, c, m)).collect(),
            combo: self.combo.as_ref().map(|cs| cs.iter().map(|&x| mul_mod(x, c, m)).collect()),
        }
    }

    /// `self -= q · other`.
    fn sub_assign_scaled(&mut self, q: u64, other: &WorkRow, m: u64) {
        let neg = (m - q % m) % m;
        for (x, &y) in self.v.iter_mut().zip(&other.v) {
            *x = (*x + mul_mod(y, neg, m)) % m;
        }
        if let (Some(cs), Some(os)) = (self.combo.as_mut(), other.combo.as_ref()) {
            for (x, &y) in cs.iter_mut().zip(os) {
                *x = (*x + mul_mod(y, neg, m)) % m;
            }
        }
    }
}

fn to_residue(m: u64, v: i128) -> u64 {
    v.rem_euclid(m as i128) as u64
}

/// A unit `u` with `u·a ≡ gcd(a, m) (mod m)`.
fn normalizing_unit(a: u64, m: u64) -> u64 {
    let g = gcd_u64(a, m);
    let m_red = m / g;
    let a_red = (a / g) % m_red;
    let u0 = if m_red == 1 { 0 } else { inv_mod(a_red, m_red).expect("a/g is a unit mod m/g") };
    (0..g)
        .map(|k| u0 + k * m_red)
        .find(|&u| gcd_u64(u, m) == 1)
        .expect("a unit lift always exists")
}

fn howell_rows(a: &RingMatrix, track: bool) -> Vec<(usize, WorkRow)> {
    let m = a.ring().modulus().expect("Howell form needs Z/mZ");
    let n_rows = a.rows();
    let mut remaining: Vec<WorkRow> = (0..n_rows)
        .map(|i| WorkRow {
            v: a.row(i).iter().map(|s| s.as_residue().expect("residue entry")).collect(),
            combo: track.then(|| {
                let mut e = vec![0u64; n_rows];
                e[i] = 1 % m;
                e
            }),
        })
        .filter(|r| !r.is_zero())
        .collect();
    let mut pivots: Vec<(usize, WorkRow)> = Vec::new();

    for j in 0..a.cols() {
        let (with, without): (Vec<WorkRow>, Vec<WorkRow>) =
            remaining.into_iter().partition(|r| r.v[j] != 0);
        remaining = without;
        let mut iter = with.into_iter();
        let Some(mut pivot) = iter.next() else {
            continue;
        };
        for other in iter {
            let (x, y) = (pivot.v[j] as i128, other.v[j] as i128);
            let (g, s, t) = xgcd(x, y);
            let new_pivot = WorkRow::lin(&pivot, to_residue(m, s), &other, to_residue(m, t), m);
            let rest = WorkRow::lin(&pivot, to_residue(m, -(y / g)), &other, to_residue(m, x / g), m);
            debug_assert_eq!(rest.v[j], 0);
            pivot = new_pivot;
            if !rest.is_zero() {
                remaining.push(rest);
            }
        }
        if pivot.v[j] == 0 {
            // the gcd vanished mod m; what is left starts later
            if !pivot.is_zero() {
                remaining.push(pivot);
            }
            continue;
        }
        let u = normalizing_unit(pivot.v[j], m);
        pivot = pivot.scaled(u, m);
        let ann = m / pivot.v[j];
        let saturated = pivot.scaled(ann, m);
        if !saturated.is_zero() {
            remaining.push(saturated);
        }
        pivots.push((j, pivot));
    }

    for idx in 0..pivots.len() {
        let (j, p) = (pivots[idx].0, pivots[idx].1.clone());
        let pv = p.v[j];
        for (_, row) in pivots[..idx].iter_mut() {
            let q = row.v[j] / pv;
            if q != 0 {
                row.sub_assign_scaled(q, &p, m);
            }
        }
    }
    pivots
}

/// Howell form of a matrix over `Z/mZ`: same row space, at most `cols` rows,
/// strictly increasing pivot columns, pivots dividing `m`, and entries above
/// each pivot reduced modulo it.
///
/// Panics if the ring is the rationals.
pub fn howell_form(a: &RingMatrix) -> HowellResult {
    let rows = howell_rows(a, false);
    let ring = a.ring().clone();
    let pivots: Vec<usize> = rows.iter().map(|(j, _)| *j).collect();
    let data: Vec<Vec<Scalar>> = rows
        .into_iter()
        .map(|(_, r)| r.v.into_iter().map(Scalar::Residue).collect())
        .collect();
    let row_count = data.len();
    HowellResult {
        h: RingMatrix::from_rows(ring, a.cols(), data).expect("canonical residues"),
        row_count,
        pivots,
    }
}

pub(super) fn member(a: &RingMatrix, v: &[Scalar]) -> Option<Vec<Scalar>> {
    let ring: &RingSpec = a.ring();
    let m = ring.modulus().expect("Z/mZ");
    let rows = howell_rows(a, true);
    let mut w = WorkRow {
        v: v.iter().map(|s| s.as_residue().expect("residue")).collect(),
        combo: Some(vec![0; a.rows()]),
    };
    let mut taken = vec![0u64; a.rows()];
    for (j, row) in &rows {
        let pv = row.v[*j];
        if !w.v[*j].is_multiple_of(pv) {
            return None;
        }
        let q = w.v[*j] / pv;
        if q == 0 {
            continue;
        }
        w.sub_assign_scaled(q, row, m);
        for (t, &c) in taken.iter_mut().zip(row.combo.as_ref().expect("tracked")) {
            *t = (*t + mul_mod(q, c, m)) % m;
        }
    }
    w.is_zero().then(|| taken.into_iter().map(Scalar::Residue).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::row_space_member;
    use std::collections::BTreeSet;

    fn z(m: u64) -> RingSpec {
        RingSpec::integers_mod(m).unwrap()
    }

    fn span(a: &RingMatrix) -> BTreeSet<Vec<u64>> {
        let m = a.ring().modulus().unwrap();
        let mut out = BTreeSet::new();
        let total = (m as usize).pow(a.rows() as u32);
        for code in 0..total {
            let mut c = code;
            let coeffs: Vec<Scalar> = (0..a.rows())
                .map(|_| {
                    let d = (c % m as usize) as u64;
                    c /= m as usize;
                    Scalar::Residue(d)
                })
                .collect();
            out.insert(a.combine(&coeffs).iter().map(|s| s.as_residue().unwrap()).collect());
        }
        out
    }

    #[test]
    fn single_entry() {
        let a = RingMatrix::from_i64_rows(z(4), 1, &[vec![2]]).unwrap();
        let h = howell_form(&a);
        assert_eq!(h.h, a);
        assert_eq!(h.pivots, vec![0]);
    }

    #[test]
    fn two_by_two_mod_four() {
        let a = RingMatrix::from_i64_rows(z(4), 2, &[vec![2, 2], vec![0, 2]]).unwrap();
        let h = howell_form(&a);
        assert_eq!(h.row_count, 2);
        let expected: BTreeSet<Vec<u64>> = [vec![0, 0], vec![2, 2], vec![0, 2], vec![2, 0]].into_iter().collect();
        assert_eq!(span(&a), expected);
        assert_eq!(span(&h.h), expected);
    }

    #[test]
    fn zero_rows_ignored() {
        let a = RingMatrix::from_i64_rows(z(6), 3, &[vec![2, 3, 1], vec![4, 0, 5]]).unwrap();
        let b = RingMatrix::from_i64_rows(z(6), 3, &[vec![2, 3, 1], vec![4, 0, 5], vec![0, 0, 0]]).unwrap();
        assert_eq!(howell_form(&a).h, howell_form(&b).h);
    }

    #[test]
    fn saturation_needed() {
        // [2 1] over Z/4: 2·[2 1] = [0 2] must show up as its own row.
        let a = RingMatrix::from_i64_rows(z(4), 2, &[vec![2, 1]]).unwrap();
        let h = howell_form(&a);
        assert_eq!(h.row_count, 2);
        assert_eq!(h.pivots, vec![0, 1]);
        assert_eq!(span(&a), span(&h.h));
        let v = [Scalar::Residue(0), Scalar::Residue(2)];
        assert!(row_space_member(&a, &v).unwrap().is_some());
    }

    #[test]
    fn unit_normalization() {
        for m in 2..40u64 {
            for a in 1..m {
                let u = normalizing_unit(a, m);
                assert_eq!(gcd_u64(u, m), 1);
                assert_eq!(mul_mod(u, a, m), gcd_u64(a, m));
            }
        }
    }

    fn random_matrix(m: u64, rows: usize, cols: usize, rng: &mut impl rand::Rng) -> RingMatrix {
        let data: Vec<Vec<i64>> =
            (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..m) as i64).collect()).collect();
        RingMatrix::from_i64_rows(z(m), cols, &data).unwrap()
    }

    /// Row swaps, row additions and appended combinations leave the row space alone.
    fn scramble(a: &RingMatrix, rng: &mut impl rand::Rng) -> RingMatrix {
        let ring = a.ring().clone();
        let m = ring.modulus().unwrap();
        let mut rows = a.row_vecs();
        for _ in 0..6 {
            if rows.len() < 2 {
                break;
            }
            let i = rng.gen_range(0..rows.len());
            let j = rng.gen_range(0..rows.len());
            if i == j {
                continue;
            }
            if rng.gen_bool(0.5) {
                rows.swap(i, j);
            } else {
                let c = ring.residue(rng.gen_range(0..m));
                let src = rows[j].clone();
                crate::linalg::axpy(&ring, &mut rows[i], &c, &src);
            }
        }
        for _ in 0..rng.gen_range(0..3) {
            let coeffs: Vec<Scalar> = (0..a.rows()).map(|_| ring.residue(rng.gen_range(0..m))).collect();
            rows.push(a.combine(&coeffs));
        }
        RingMatrix::from_rows(ring, a.cols(), rows).unwrap()
    }

    proptest::proptest! {
        #[test]
        fn canonical_under_row_operations(m in proptest::sample::select(vec![4u64, 6, 8, 12]),
                                          rows in 1usize..=5, cols in 1usize..=5, seed in proptest::prelude::any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(m, rows, cols, &mut rng);
            let b = scramble(&a, &mut rng);
            let ha = howell_form(&a);
            let hb = howell_form(&b);
            proptest::prop_assert_eq!(&ha, &hb);
            proptest::prop_assert!(ha.row_count <= cols);
            proptest::prop_assert!(ha.pivots.windows(2).all(|w| w[0] < w[1]));
            for (i, &j) in ha.pivots.iter().enumerate() {
                let pv = ha.h.get(i, j).as_residue().unwrap();
                proptest::prop_assert!(pv != 0 && m % pv == 0);
                proptest::prop_assert!((0..j).all(|c| ha.h.get(i, c).as_residue() == Some(0)));
                for k in 0..i {
                    proptest::prop_assert!(ha.h.get(k, j).as_residue().unwrap() < pv);
                }
            }
        }

        #[test]
        fn mutual_membership(m in proptest::sample::select(vec![4u64, 6, 8, 9, 12]),
                             rows in 1usize..=5, cols in 1usize..=4, seed in proptest::prelude::any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(m, rows, cols, &mut rng);
            let h = howell_form(&a).h;
            for i in 0..a.rows() {
                proptest::prop_assert!(row_space_member(&h, a.row(i)).unwrap().is_some());
            }
            for i in 0..h.rows() {
                let c = row_space_member(&a, h.row(i)).unwrap();
                proptest::prop_assert!(c.is_some());
                proptest::prop_assert_eq!(a.combine(&c.unwrap()), h.row(i).to_vec());
            }
        }
    }

    #[test]
    fn membership_matches_enumeration() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in [4u64, 6, 8] {
            for _ in 0..10 {
                let a = random_matrix(m, 3, 2, &mut rng);
                let space = span(&a);
                for x in 0..m {
                    for y in 0..m {
                        let v = [Scalar::Residue(x), Scalar::Residue(y)];
                        let got = row_space_member(&a, &v).unwrap();
                        assert_eq!(got.is_some(), space.contains(&vec![x, y]));
                        if let Some(c) = got {
                            assert_eq!(a.combine(&c), v.to_vec());
                        }
                    }
                }
            }
        }
    }
}
