//! Exact row reduction over a field.

use crate::algebra::Field;

/// A subspace of `F^dim`, kept in reduced row echelon form with rows sorted
/// by pivot column.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSpace<F> {
    dim: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(Field::is_zero)
}

/// `acc -= c * row`, skipping zero entries of `row`.
fn axpy<F: Field>(acc: &mut [F], c: &F, row: &[F]) {
    for (a, r) in acc.iter_mut().zip(row) {
        if !r.is_zero() {
            *a = a.sub(&c.mul(r));
        }
    }
}

impl<F: Field> RowSpace<F> {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(dim: usize, rows: impl IntoIterator<Item = &'a Vec<F>>) -> Self {
        let mut s = RowSpace::new(dim);
        for r in rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after clearing all pivot columns.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_space(&self, other: &RowSpace<F>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Add `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = c.mul(&inv);
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                axpy(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Coefficients expressing `v` in the echelon rows, if it lies in the
    /// space.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

/// Basis of `{c : sum_i c_i rows_i = 0}`.
pub fn left_kernel<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let m = rows.len();
    let mut space = RowSpace::new(ncols + m);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.len(), ncols);
        let mut v = r.clone();
        v.extend((0..m).map(|k| if k == i { F::one() } else { F::zero() }));
        space.insert(v);
    }
    space
        .rows
        .iter()
        .zip(&space.pivots)
        .filter(|(_, &p)| p >= ncols)
        .map(|(r, _)| r[ncols..].to_vec())
        .collect()
}
