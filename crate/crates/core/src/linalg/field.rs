use super::{axpy, RingMatrix};
use crate::ring::{RingSpec, Scalar};

/// Incrementally built echelon basis over a field. Each stored row has a
/// unit pivot and zeros at the pivots of the rows inserted before it.
struct EchelonBasis<'r> {
    ring: &'r RingSpec,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    /// Each stored row as a combination of the source matrix rows.
    combos: Option<Vec<Vec<Scalar>>>,
    n_source: usize,
}

impl<'r> EchelonBasis<'r> {
    fn new(ring: &'r RingSpec, n_source: usize, track: bool) -> Self {
        EchelonBasis {
            ring,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: track.then(Vec::new),
            n_source,
        }
    }

    /// Reduces `v` in place; `taken` accumulates `t` with `v_in = v_out + t · A`.
    fn reduce(&self, v: &mut [Scalar], mut taken: Option<&mut Vec<Scalar>>) {
        let r = self.ring;
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if r.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            axpy(r, v, &r.neg(&c), row);
            if let (Some(t), Some(combos)) = (taken.as_deref_mut(), self.combos.as_ref()) {
                axpy(r, t, &c, &combos[k]);
            }
        }
    }

    /// Inserts source row `i`; returns whether it was independent.
    fn insert(&mut self, i: usize, row: &[Scalar]) -> bool {
        let r = self.ring;
        let mut v = row.to_vec();
        let mut taken = self.combos.as_ref().map(|_| vec![r.zero(); self.n_source]);
        self.reduce(&mut v, taken.as_mut());
        let Some(p) = v.iter().position(|s| !r.is_zero(s)) else {
            return false;
        };
        let inv = r.inv(&v[p]).expect("nonzero element of a field is a unit");
        for s in v.iter_mut() {
            *s = r.mul(s, &inv);
        }
        if let (Some(combos), Some(t)) = (self.combos.as_mut(), taken) {
            // stored row = (e_i - t) · A, scaled by inv
            let mut c: Vec<Scalar> = t.iter().map(|s| r.neg(s)).collect();
            c[i] = r.add(&c[i], &r.one());
            for s in c.iter_mut() {
                *s = r.mul(s, &inv);
            }
            combos.push(c);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Greedy row selection over a field: row `i` is kept iff it is not in the
/// span of the rows kept before it. Indices come back strictly increasing.
///
/// Panics if the ring is not a field.
pub fn row_basis_subset_field(a: &RingMatrix) -> Vec<usize> {
    assert!(a.ring().is_field(), "row_basis_subset_field needs a field, got {}", a.ring());
    let mut basis = EchelonBasis::new(a.ring(), a.rows(), false);
    let mut chosen = Vec::new();
    for i in 0..a.rows() {
        if basis.rows.len() == a.cols() {
            break;
        }
        if basis.insert(i, a.row(i)) {
            chosen.push(i);
        }
    }
    chosen
}

pub(super) fn member(a: &RingMatrix, v: &[Scalar]) -> Option<Vec<Scalar>> {
    let r = a.ring();
    let mut basis = EchelonBasis::new(r, a.rows(), true);
    for i in 0..a.rows() {
        basis.insert(i, a.row(i));
    }
    let mut w = v.to_vec();
    let mut taken = vec![r.zero(); a.rows()];
    basis.reduce(&mut w, Some(&mut taken));
    w.iter().all(|s| r.is_zero(s)).then_some(taken)
}
