//! Dense exact linear algebra over the rationals.
//!
//! Everything is deterministic: elimination always picks the leftmost column
//! that still needs a pivot and the topmost unused row with a nonzero entry,
//! so canonical outputs (reduced echelon forms, kernel bases, homology bases)
//! depend only on the input matrices, never on iteration order or hashing.

mod complex;

pub use complex::{induced_map, ChainMapError, FiniteComplex, Homology};

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rat::{format_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    NotAComplex {
        position: usize,
    },
    Singular,
    NotInColumnSpan {
        column: usize,
    },
}

impl core::fmt::Display for LinalgError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LinalgError::ShapeMismatch { expected, got } => write!(
                f,
                "shape mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            LinalgError::NotAComplex { position } => write!(
                f,
                "differentials do not compose to zero at position {position}"
            ),
            LinalgError::Singular => write!(f, "matrix is singular"),
            LinalgError::NotInColumnSpan { column } => {
                write!(f, "column {column} is not in the span of the given basis")
            }
        }
    }
}

/// Dense row-major matrix over `Rat`. Rows and columns may be zero; a
/// `rows x 0` or `0 x cols` matrix is a valid (empty) linear map.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl core::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rat(self.get(r, c)))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn scalar(n: usize, value: &Rat) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, value.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builder from integer literals, mostly for tests and small fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rat::rat_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `self` left of `other` (same row count).
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = RatMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn submatrix_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    /// Pivot choice: leftmost column, topmost unused row with a nonzero entry.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero());
            let Some(r0) = found else { continue };
            self.swap_rows(pivot_row, r0);
            let inv = {
                let p = self.get(pivot_row, col).clone();
                Rat::one() / p
            };
            for c in col..self.cols {
                let v = self.get(pivot_row, c) * &inv;
                self.set(pivot_row, c, v);
            }
            for r in 0..self.rows {
                if r == pivot_row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &f * self.get(pivot_row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the kernel, returned as the columns of a matrix.
    ///
    /// The basis is the unique one whose transpose is in reduced row echelon
    /// form, so it is independent of how the kernel was found. For `[[1, 1]]`
    /// this yields the single column `(1, -1)`.
    pub fn kernel_basis(&self) -> RatMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut vectors: Vec<Vec<Rat>> = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            vectors.push(v);
        }
        canonicalize_span(vectors, self.cols)
    }

    /// Canonical basis of the column space, as columns (transpose is in RREF).
    pub fn column_space_basis(&self) -> RatMatrix {
        let vectors: Vec<Vec<Rat>> = (0..self.cols).map(|c| self.column(c)).collect();
        canonicalize_span(vectors, self.rows)
    }

    /// Solves `self * X = rhs` where `self` has full column rank, i.e. writes
    /// each column of `rhs` in the basis given by the columns of `self`.
    pub fn solve_in_basis(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (red, pivots) = aug.rref();
        if pivots.len() != self.cols || pivots.iter().any(|&p| p >= self.cols) {
            let bad = pivots
                .iter()
                .find(|&&p| p >= self.cols)
                .map(|&p| p - self.cols)
                .unwrap_or(0);
            return Err(LinalgError::NotInColumnSpan { column: bad });
        }
        let mut out = RatMatrix::zeros(self.cols, rhs.cols);
        for (row, _) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                out.set(row, c, red.get(row, self.cols + c).clone());
            }
        }
        // Any nonzero row beyond the pivots means rhs left the span.
        for r in pivots.len()..red.rows {
            for c in 0..rhs.cols {
                if !red.get(r, self.cols + c).is_zero() {
                    return Err(LinalgError::NotInColumnSpan { column: c });
                }
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<RatMatrix, LinalgError> {
        assert_eq!(self.rows, self.cols);
        let aug = self.hstack(&RatMatrix::identity(self.rows));
        let (red, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(LinalgError::Singular);
        }
        let mut out = RatMatrix::zeros(self.rows, self.rows);
        for r in 0..self.rows {
            for c in 0..self.rows {
                out.set(r, c, red.get(r, self.rows + c).clone());
            }
        }
        Ok(out)
    }

    /// Matrix power by repeated multiplication (square matrices, small n).
    pub fn pow(&self, n: usize) -> RatMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = RatMatrix::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Canonical matrix whose columns span the same space as `vectors`:
/// the row space of the transpose in RREF, transposed back, zero rows dropped.
fn canonicalize_span(vectors: Vec<Vec<Rat>>, ambient_dim: usize) -> RatMatrix {
    let stacked = RatMatrix::from_rows(vectors);
    if stacked.rows() == 0 {
        return RatMatrix::zeros(ambient_dim, 0);
    }
    let (red, pivots) = stacked.rref();
    let rank = pivots.len();
    let mut out = RatMatrix::zeros(ambient_dim, rank);
    for r in 0..rank {
        for c in 0..ambient_dim {
            out.set(c, r, red.get(r, c).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn rref_and_rank() {
        let m = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.get(0, 0), &rat_int(1));
        assert_eq!(r.get(0, 1), &rat_int(0));
        assert_eq!(r.get(0, 2), &rat_int(-1));
        assert_eq!(r.get(1, 2), &rat_int(2));
    }

    #[test]
    fn kernel_of_sum_functional_is_canonical() {
        let m = RatMatrix::from_i64(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!((k.rows(), k.cols()), (2, 1));
        assert_eq!(k.get(0, 0), &rat_int(1));
        assert_eq!(k.get(1, 0), &rat_int(-1));
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let z = RatMatrix::zeros(3, 3);
        assert_eq!(z.kernel_basis(), RatMatrix::identity(3));
        let id = RatMatrix::identity(2);
        assert_eq!(id.kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_members_are_killed() {
        let m = RatMatrix::from_i64(&[&[2, -1, 3], &[4, -2, 6]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn column_space_basis_is_canonical() {
        let m = RatMatrix::from_i64(&[&[2, 4], &[2, 4], &[0, 0]]);
        let b = m.column_space_basis();
        assert_eq!((b.rows(), b.cols()), (3, 1));
        assert_eq!(b.get(0, 0), &rat_int(1));
        assert_eq!(b.get(1, 0), &rat_int(1));
        assert_eq!(b.get(2, 0), &rat_int(0));
    }

    #[test]
    fn solve_in_basis_round_trip() {
        let basis = RatMatrix::from_i64(&[&[1, 0], &[1, 1], &[0, 2]]);
        let coeffs = RatMatrix::from_i64(&[&[3], &[-2]]);
        let rhs = basis.mul(&coeffs);
        let solved = basis.solve_in_basis(&rhs).unwrap();
        assert_eq!(solved, coeffs);

        let outside = RatMatrix::from_i64(&[&[1], &[0], &[0]]);
        assert!(basis.solve_in_basis(&outside).is_err());
    }

    #[test]
    fn inverse_small() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        let sing = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn empty_shapes_behave() {
        let a = RatMatrix::zeros(0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel_basis().cols(), 3);
        let b = RatMatrix::zeros(3, 0);
        assert_eq!(b.kernel_basis().cols(), 0);
        assert_eq!(b.mul(&RatMatrix::zeros(0, 2)), RatMatrix::zeros(3, 2));
        let e = RatMatrix::zeros(0, 0);
        assert_eq!(e.inverse().unwrap(), e);
    }
}
