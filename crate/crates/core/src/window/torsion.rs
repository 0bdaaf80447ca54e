//! Torsion subfunctors over a window, plus divisibility reports.
//!
//! `torsion(M, words)` computes, degree by degree, the increasing union of
//! kernels of all length-`t` products of the generator words. Layer `t` is
//! the fixpoint iteration `W_t(n) = { u : g u in W_(t-1)(target) for every
//! generator g }`, which is monotone from `W_0 = 0`, so the layers form an
//! increasing chain and the loop stops at the first repeated layer.
//!
//! Everything is conservative with respect to missing data: a degree whose
//! generator image leaves the window on an incompletely known side drops to
//! zero and is flagged inexact ("lower bound only"); ghost rows of tracked
//! actions become extra vanishing constraints, which keeps computed layers
//! inside the true ones. A computed-full component is therefore exact by
//! soundness alone, and a certified chain of in-window (or known-zero)
//! targets makes the computed value exact even when it is partial.

use alloc::vec;
use alloc::vec::Vec;

use super::{MapView, ModuleError, Overflow, WindowBuilder, WindowModule};
use crate::linalg::RatMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSide {
    X,
    D,
}

/// A monomial word in the generators of one side, e.g. exponents `[2, 0, 1]`
/// on side `X` is `x1^2 x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    pub side: GeneratorSide,
    pub exponents: Vec<u32>,
}

impl OperatorWord {
    /// The single generator of `axis` (1-based) among `m` variables.
    pub fn generator(side: GeneratorSide, axis: usize, m: usize) -> Self {
        assert!(axis >= 1 && axis <= m);
        let mut exponents = vec![0; m];
        exponents[axis - 1] = 1;
        OperatorWord { side, exponents }
    }

    fn total(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

struct Path {
    /// Composite matrix into the stored target component (zero rows when the
    /// target lies outside the window and is known to vanish).
    matrix: RatMatrix,
    /// Ghost rows of intermediate steps composed with their prefixes; these
    /// must kill a vector before it can be called torsion.
    constraints: Vec<RatMatrix>,
    target: i64,
    ghost_free: bool,
}

fn word_path(module: &WindowModule, word: &OperatorWord, n: i64) -> Option<Path> {
    let dir: i64 = match word.side {
        GeneratorSide::X => 1,
        GeneratorSide::D => -1,
    };
    let base = module.component(n).expect("in-window degree").dim;
    let mut cur = RatMatrix::identity(base);
    let mut deg = n;
    let mut constraints = Vec::new();
    let mut ghost_free = true;
    for axis in 1..=module.m() {
        for _ in 0..word.exponents[axis - 1] {
            let view = match word.side {
                GeneratorSide::X => module.x_view(axis, deg),
                GeneratorSide::D => module.d_view(axis, deg),
            };
            match view {
                MapView::Missing => return None,
                MapView::Zero { rows, .. } => {
                    cur = RatMatrix::zeros(rows, base);
                }
                MapView::Present(a) => {
                    if let Overflow::Tracked(ghosts) = &a.overflow {
                        ghost_free = false;
                        for g in ghosts {
                            constraints.push(g.rows.mul(&cur));
                        }
                    }
                    cur = a.matrix.mul(&cur);
                }
            }
            deg += dir;
        }
    }
    Some(Path {
        matrix: cur,
        constraints,
        target: deg,
        ghost_free,
    })
}

/// Rows whose kernel is exactly the column span of `basis`.
fn complement_rows(basis: &RatMatrix) -> RatMatrix {
    basis.transpose().kernel_basis().transpose()
}

pub fn torsion(module: &WindowModule, words: &[OperatorWord]) -> Result<WindowModule, ModuleError> {
    if words.is_empty() {
        return Err(ModuleError::EmptyGenerators);
    }
    let side = words[0].side;
    for w in words {
        if w.side != side {
            return Err(ModuleError::MixedGenerators);
        }
        if w.exponents.len() != module.m() {
            return Err(ModuleError::Structure(alloc::format!(
                "generator word has {} exponents for m={}",
                w.exponents.len(),
                module.m()
            )));
        }
        if w.total() == 0 {
            return Err(ModuleError::Structure(alloc::string::String::from(
                "generator word is the empty product",
            )));
        }
    }

    let lo = module.lo();
    let len = (module.hi() - lo + 1) as usize;
    let dims: Vec<usize> = module
        .degrees()
        .map(|n| module.component(n).unwrap().dim)
        .collect();

    // Paths do not depend on the layer; compute them once. `None` means at
    // least one word's image is unknowable from this degree.
    let paths: Vec<Option<Vec<Path>>> = (0..len)
        .map(|k| {
            let n = lo + k as i64;
            words.iter().map(|w| word_path(module, w, n)).collect()
        })
        .collect();

    let mut w_basis: Vec<RatMatrix> = dims.iter().map(|&d| RatMatrix::zeros(d, 0)).collect();
    let mut cert: Vec<bool> = vec![true; len];
    let max_iter = dims.iter().sum::<usize>() + len + 4;
    for iter in 0.. {
        assert!(iter < max_iter, "torsion layers failed to stabilize");
        let comp: Vec<RatMatrix> = w_basis.iter().map(complement_rows).collect();
        let mut next_w = Vec::with_capacity(len);
        let mut next_cert = Vec::with_capacity(len);
        for k in 0..len {
            let d = dims[k];
            match &paths[k] {
                None => {
                    next_w.push(RatMatrix::zeros(d, 0));
                    next_cert.push(false);
                }
                Some(ps) => {
                    let mut rows = RatMatrix::zeros(0, d);
                    let mut c = true;
                    for p in ps {
                        if p.target >= lo && p.target <= module.hi() {
                            let ti = (p.target - lo) as usize;
                            rows = rows.vstack(&comp[ti].mul(&p.matrix));
                            c = c && cert[ti];
                        }
                        // Targets outside the window are known zero here
                        // (the path would be unknowable otherwise), so the
                        // membership condition is the rows of the matrix
                        // itself: none, since the stored target is empty.
                        for g in &p.constraints {
                            rows = rows.vstack(g);
                        }
                        c = c && p.ghost_free;
                    }
                    next_w.push(rows.kernel_basis());
                    next_cert.push(c);
                }
            }
        }
        let stable = next_cert == cert
            && next_w
                .iter()
                .zip(&w_basis)
                .all(|(a, b)| a.cols() == b.cols());
        w_basis = next_w;
        cert = next_cert;
        if stable {
            break;
        }
    }

    let mut b = WindowBuilder::new(module.m(), lo, w_basis.iter().map(|w| w.cols()).collect());
    b.complete_below = module.complete_below();
    b.complete_above = module.complete_above();
    let full: Vec<bool> = (0..len).map(|k| w_basis[k].cols() == dims[k]).collect();
    for k in 0..len {
        let n = lo + k as i64;
        let m_comp = module.component(n).unwrap();
        let value_exact = dims[k] == 0 || full[k] || cert[k];
        b.components[k].exact = m_comp.exact && value_exact;
        if full[k] {
            b.components[k].labels = m_comp.labels.clone();
            if let Some(e) = module.euler_stored(n) {
                b.set_euler(n, e.clone());
            }
        }
    }
    // The torsion submodule is closed under every generator, so where it
    // fills whole components the stored actions restrict unchanged.
    for k in 0..len.saturating_sub(1) {
        if !(full[k] && full[k + 1]) {
            continue;
        }
        let n = lo + k as i64;
        for axis in 1..=module.m() {
            if let Some(a) = module.x_stored(axis, n) {
                b.set_x_action(axis, n, a.clone());
            }
            if let Some(a) = module.d_stored(axis, n + 1) {
                b.set_d_action(axis, n + 1, a.clone());
            }
        }
    }
    b.build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurjectivityStatus {
    Surjective,
    NotSurjective,
    /// The incoming map is not stored, so the window cannot decide.
    Boundary,
}

#[derive(Clone, Debug)]
pub struct DivisibilityReport {
    pub axis: usize,
    pub side: GeneratorSide,
    pub per_degree: Vec<(i64, SurjectivityStatus)>,
    /// No stored incoming map failed to surject.
    pub interior_surjective: bool,
}

/// Reports whether the chosen generator maps onto each component: the
/// window-level content of `N = d N` (resp. `N = x N`). Only stored
/// matrices are consulted; components whose incoming map would come from
/// outside the window are flagged [`SurjectivityStatus::Boundary`].
pub fn check_divisibility(
    module: &WindowModule,
    axis: usize,
    side: GeneratorSide,
) -> Result<DivisibilityReport, ModuleError> {
    module.check_axis(axis)?;
    let mut per_degree = Vec::new();
    let mut interior_surjective = true;
    for n in module.degrees() {
        let dim = module.component(n).unwrap().dim;
        let status = if dim == 0 {
            SurjectivityStatus::Surjective
        } else {
            let stored = match side {
                GeneratorSide::X => module.x_stored(axis, n - 1),
                GeneratorSide::D => module.d_stored(axis, n + 1),
            };
            match stored {
                None => SurjectivityStatus::Boundary,
                Some(a) => {
                    if a.matrix.rank() == dim {
                        SurjectivityStatus::Surjective
                    } else {
                        SurjectivityStatus::NotSurjective
                    }
                }
            }
        };
        if status == SurjectivityStatus::NotSurjective {
            interior_surjective = false;
        }
        per_degree.push((n, status));
    }
    Ok(DivisibilityReport {
        axis,
        side,
        per_degree,
        interior_surjective,
    })
}
