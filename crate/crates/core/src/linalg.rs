//! Dense exact linear algebra over the rationals.
//!
//! Everything here is plain Gauss-Jordan elimination with rational pivots.
//! The matrices met in practice are pairing matrices and relation families
//! restricted to a single bidegree, so they stay small enough that dense
//! storage is the simplest correct choice.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::QScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<QScalar>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![QScalar::zero(); rows * cols],
        }
    }

    pub fn new(rows: usize, cols: usize, entries: Vec<QScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Usage(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from equal-length rows. `cols` is needed for the 0-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<QScalar>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Usage(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(QMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &QScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[QScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[QScalar]) -> Vec<QScalar> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(QScalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rank: usize,
    /// Pivot column of each nonzero row of the reduced echelon form.
    pub pivots: Vec<usize>,
    /// Basis of the right null space, one vector per free column.
    pub kernel_basis: Vec<Vec<QScalar>>,
}

/// Reduced row echelon form, rank and right kernel of `m`.
pub fn row_reduce(m: &QMatrix) -> RowReduction {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<QScalar>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        let Some(p) = (prow..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(prow, p);
        let inv = a[prow][c].recip();
        for x in a[prow][c..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[prow].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == prow || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        prow += 1;
    }

    let mut kernel_basis = Vec::with_capacity(cols - pivots.len());
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![QScalar::zero(); cols];
        v[free] = QScalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][free].clone();
        }
        kernel_basis.push(v);
    }

    RowReduction {
        rank: pivots.len(),
        pivots,
        kernel_basis,
    }
}

pub fn rank(m: &QMatrix) -> usize {
    row_reduce(m).rank
}

/// A subspace of `Q^n` kept as a fully reduced echelon basis, grown one vector
/// at a time.
#[derive(Clone, Debug)]
pub struct Span {
    ambient: usize,
    rows: Vec<(usize, Vec<QScalar>)>,
}

impl Span {
    pub fn new(ambient: usize) -> Self {
        Span {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &[QScalar]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    fn reduce(&self, v: &mut [QScalar]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    pub fn contains(&self, v: &[QScalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[QScalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}
