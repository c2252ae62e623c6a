//! Exact row-space computations over the rationals and over `Z/mZ`.

mod field;
mod howell;
mod spanning;

pub use field::row_basis_subset_field;
pub use howell::{howell_form, HowellResult};
pub use spanning::{
    bezout, row_spanning_subset_modm, spanning_subset_modm, valuation_nu, SpanningCertificate,
};

use crate::error::{Error, Result};
use crate::ring::{RingSpec, Scalar};

/// Dense row-major matrix over a [`RingSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RingMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        RingMatrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ring: RingSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::ArityMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for s in row {
                if !ring.contains(&s) {
                    return Err(Error::invalid(format!("{s} is not an element of {ring}")));
                }
                data.push(s);
            }
        }
        Ok(RingMatrix {
            ring,
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer entries, reduced into `ring`.
    pub fn from_i64_rows(ring: RingSpec, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Self::from_rows(ring, cols, rows)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn select_rows(&self, indices: &[usize]) -> RingMatrix {
        let rows = indices.iter().map(|&i| self.row(i).to_vec()).collect();
        RingMatrix::from_rows(self.ring.clone(), self.cols, rows).expect("rows taken from a valid matrix")
    }

    /// `coeffs · A`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.rows);
        let r = &self.ring;
        let mut out = vec![r.zero(); self.cols];
        for (i, c) in coeffs.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o = r.add(o, &r.mul(c, a));
            }
        }
        out
    }

    /// Columns that contain at least one nonzero entry.
    pub fn nonzero_columns(&self) -> usize {
        (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self.ring.is_zero(self.get(i, j))))
            .count()
    }
}

/// Coefficients `c` with `c · A = v`, or `None` when `v` is outside the row space.
///
/// Fields use Gauss–Jordan elimination; `Z/mZ` reduces `v` against the Howell form.
pub fn row_space_member(a: &RingMatrix, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if v.len() != a.cols() {
        return Err(Error::ArityMismatch {
            expected: a.cols(),
            found: v.len(),
        });
    }
    if let Some(s) = v.iter().find(|s| !a.ring().contains(s)) {
        return Err(Error::invalid(format!("{s} is not an element of {}", a.ring())));
    }
    match a.ring() {
        RingSpec::Rationals => Ok(field::member(a, v)),
        RingSpec::IntegersMod { .. } => Ok(howell::member(a, v)),
    }
}

pub(crate) fn axpy(ring: &RingSpec, dst: &mut [Scalar], c: &Scalar, src: &[Scalar]) {
    if ring.is_zero(c) {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !ring.is_zero(s) {
            *d = ring.add(d, &ring.mul(c, s));
        }
    }
}
