//! Finite cochain complexes and homology with canonical bases.
//!
//! Convention is cohomological: `diffs[j]` maps space `j` to space `j + 1`
//! and has shape `dims[j+1] x dims[j]`. Homology at `j` is
//! `ker(diffs[j]) / im(diffs[j-1])`, with the missing differentials at the
//! ends taken to be zero.

use alloc::vec::Vec;

use super::{LinalgError, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    dims: Vec<usize>,
    diffs: Vec<RatMatrix>,
}

/// Homology at one position.
///
/// `cycle_reps` is a `dims[j] x dim` matrix whose columns are cycles forming a
/// basis of a complement of the boundaries inside the cycles. `projection` is
/// a `dim x dims[j]` matrix with `projection * cycle_reps = I` and
/// `projection * b = 0` for every boundary `b`, so it computes homology
/// coordinates of arbitrary cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub dim: usize,
    pub cycle_reps: RatMatrix,
    pub projection: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainMapError {
    LengthMismatch,
    ShapeMismatch { position: usize },
    FailingSquare { position: usize },
}

impl core::fmt::Display for ChainMapError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ChainMapError::LengthMismatch => write!(f, "chain map has wrong number of levels"),
            ChainMapError::ShapeMismatch { position } => {
                write!(f, "chain map level {position} has wrong shape")
            }
            ChainMapError::FailingSquare { position } => write!(
                f,
                "chain map does not commute with differentials at square {position}"
            ),
        }
    }
}

impl FiniteComplex {
    /// Validates shapes and `d . d = 0`.
    pub fn new(dims: Vec<usize>, diffs: Vec<RatMatrix>) -> Result<Self, LinalgError> {
        assert!(!dims.is_empty(), "complex needs at least one space");
        assert_eq!(diffs.len() + 1, dims.len(), "need one differential per gap");
        for (j, d) in diffs.iter().enumerate() {
            if d.rows() != dims[j + 1] || d.cols() != dims[j] {
                return Err(LinalgError::ShapeMismatch {
                    expected: (dims[j + 1], dims[j]),
                    got: (d.rows(), d.cols()),
                });
            }
        }
        for j in 0..diffs.len().saturating_sub(1) {
            if !diffs[j + 1].mul(&diffs[j]).is_zero() {
                return Err(LinalgError::NotAComplex { position: j });
            }
        }
        Ok(FiniteComplex { dims, diffs })
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn diff(&self, j: usize) -> &RatMatrix {
        &self.diffs[j]
    }

    /// Euler characteristic, equal to the alternating sum of homology
    /// dimensions by exactness bookkeeping.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(j, &d)| if j % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Homology at position `j` with canonical representatives.
    ///
    /// The kernel basis of `diffs[j]` is canonical; representatives are the
    /// kernel columns that extend a canonical boundary basis, selected left to
    /// right. The projection is read off from the inverse of a completed
    /// basis, which kills boundaries and is the identity on the chosen
    /// representatives.
    pub fn homology(&self, j: usize) -> Homology {
        assert!(j < self.dims.len());
        let n = self.dims[j];
        let cycles = if j + 1 < self.dims.len() {
            self.diffs[j].kernel_basis()
        } else {
            RatMatrix::identity(n)
        };
        let boundaries = if j > 0 {
            self.diffs[j - 1].column_space_basis()
        } else {
            RatMatrix::zeros(n, 0)
        };
        let b = boundaries.cols();

        // Greedily pick cycle columns independent of the boundaries.
        let mut span = boundaries.clone();
        let mut chosen: Vec<usize> = Vec::new();
        for c in 0..cycles.cols() {
            let candidate = cycles.submatrix_columns(&[c]);
            let trial = span.hstack(&candidate);
            if trial.rank() > span.rank() {
                chosen.push(c);
                span = trial;
            }
        }
        let reps = cycles.submatrix_columns(&chosen);
        let h = reps.cols();
        debug_assert_eq!(h, cycles.cols() - b);

        // Complete [boundaries | reps] to a basis with standard vectors.
        let mut full = boundaries.hstack(&reps);
        let mut rank = full.rank();
        let mut k = 0usize;
        while rank < n {
            let mut e = RatMatrix::zeros(n, 1);
            e.set(k, 0, crate::rat::rat_int(1));
            let trial = full.hstack(&e);
            let r = trial.rank();
            if r > rank {
                full = trial;
                rank = r;
            }
            k += 1;
        }
        let inv = full
            .inverse()
            .expect("completed basis is invertible by construction");
        let mut projection = RatMatrix::zeros(h, n);
        for r in 0..h {
            for c in 0..n {
                projection.set(r, c, inv.get(b + r, c).clone());
            }
        }
        Homology {
            dim: h,
            cycle_reps: reps,
            projection,
        }
    }
}

/// The map induced on homology at position `j` by a chain map `maps` from `c`
/// to `d` (one matrix per level, `maps[l]: c_l -> d_l`). All commuting squares
/// are checked first; the error reports the first failing square.
pub fn induced_map(
    c: &FiniteComplex,
    d: &FiniteComplex,
    maps: &[RatMatrix],
    j: usize,
) -> Result<RatMatrix, ChainMapError> {
    if maps.len() != c.len() || c.len() != d.len() {
        return Err(ChainMapError::LengthMismatch);
    }
    for (l, m) in maps.iter().enumerate() {
        if m.rows() != d.dim(l) || m.cols() != c.dim(l) {
            return Err(ChainMapError::ShapeMismatch { position: l });
        }
    }
    for l in 0..c.len() - 1 {
        let lhs = maps[l + 1].mul(c.diff(l));
        let rhs = d.diff(l).mul(&maps[l]);
        if lhs != rhs {
            return Err(ChainMapError::FailingSquare { position: l });
        }
    }
    let hc = c.homology(j);
    let hd = d.homology(j);
    Ok(hd.projection.mul(&maps[j]).mul(&hc.cycle_reps))
}
