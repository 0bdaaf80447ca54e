//! Window assembly: the graded pieces of `H_I^i(R)` over a degree window,
//! with the induced `X_i` and `∂_i` actions.
//!
//! The component at degree `n` is the direct sum of slice homologies over
//! in-box multidegrees with `|a| = n`, blocks ordered descending
//! lexicographically and labeled by multidegree. `X_i` is induced by the
//! subset-indicator chain map `slice(a) -> slice(a+e_i)`; `∂_i` by `a_i`
//! times the indicator into `slice(a-e_i)` (the coefficient vanishes exactly
//! when the move would change the sign pattern, so nonzero blocks always
//! connect equal patterns). When a target multidegree leaves the box but its
//! pattern has nonzero homology, the rows are recorded as ghost overflow
//! instead of being dropped.
//!
//! Slices with equal sign patterns are the same complex by construction, so
//! homologies and induced blocks are cached per pattern; the Weyl identity
//! `∂_i X_i - X_i ∂_i = 1` and the Euler eigenvalue `n` are re-verified
//! blockwise on the cached data for every block in the window, including
//! moves that exit the box.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::scan::{for_each_in_box_desc, out_of_box_representative, validate_box, BoxBounds};
use super::{sign_pattern, slice_for_pattern, CechError, MonomialIdeal, MultidegreeSlice};
use crate::linalg::{induced_map, Homology, RatMatrix};
use crate::rat::rat_int;
use crate::window::{Action, GhostBlock, Overflow, WindowBuilder, WindowModule};

#[derive(Clone, Debug)]
pub struct LCQuery {
    pub ideal: MonomialIdeal,
    pub index: usize,
    pub lo: i64,
    pub hi: i64,
    pub bounds: BoxBounds,
}

impl LCQuery {
    /// Query with the default box for the window.
    pub fn new(ideal: MonomialIdeal, index: usize, lo: i64, hi: i64) -> Self {
        let bounds = BoxBounds::default_for(&ideal, lo, hi);
        LCQuery {
            ideal,
            index,
            lo,
            hi,
            bounds,
        }
    }

    pub fn with_box(mut self, bounds: BoxBounds) -> Self {
        self.bounds = bounds;
        self
    }
}

struct PatternData {
    slice: MultidegreeSlice,
    hom: Homology,
}

struct PatternCache<'a> {
    ideal: &'a MonomialIdeal,
    index: usize,
    data: BTreeMap<Vec<bool>, Rc<PatternData>>,
    induced: BTreeMap<(Vec<bool>, Vec<bool>), Rc<RatMatrix>>,
}

impl PatternCache<'_> {
    fn new(ideal: &MonomialIdeal, index: usize) -> PatternCache<'_> {
        PatternCache {
            ideal,
            index,
            data: BTreeMap::new(),
            induced: BTreeMap::new(),
        }
    }

    fn pattern(&mut self, p: &[bool]) -> Rc<PatternData> {
        if let Some(d) = self.data.get(p) {
            return d.clone();
        }
        let canonical: Vec<i64> = p.iter().map(|&neg| if neg { -1 } else { 0 }).collect();
        let slice = slice_for_pattern(self.ideal, p, canonical);
        let hom = slice.complex.homology(self.index);
        let rc = Rc::new(PatternData { slice, hom });
        self.data.insert(p.to_vec(), rc.clone());
        rc
    }

    /// Homology map induced by the subset-indicator chain map from the
    /// `src`-pattern slice to the `tgt`-pattern slice. This is a chain map
    /// whenever every subset present at `src` is present at `tgt`, which
    /// holds for every `X_i` move (turning a coordinate nonnegative only
    /// loosens the presence condition) and trivially when the patterns are
    /// equal; `induced_map` re-checks the squares either way.
    fn indicator_induced(
        &mut self,
        src: &[bool],
        tgt: &[bool],
    ) -> Result<Rc<RatMatrix>, CechError> {
        let key = (src.to_vec(), tgt.to_vec());
        if let Some(m) = self.induced.get(&key) {
            return Ok(m.clone());
        }
        let s = self.pattern(src);
        let t = self.pattern(tgt);
        let spots = s.slice.complex.len();
        let mut maps = Vec::with_capacity(spots);
        for j in 0..spots {
            let mut m = RatMatrix::zeros(t.slice.present[j].len(), s.slice.present[j].len());
            for (col, mask) in s.slice.present[j].iter().enumerate() {
                if let Some(row) = t.slice.present[j].iter().position(|u| u == mask) {
                    m.set(row, col, rat_int(1));
                }
            }
            maps.push(m);
        }
        let induced = induced_map(&s.slice.complex, &t.slice.complex, &maps, self.index)
            .map_err(|e| {
                CechError::Assembly(format!(
                    "indicator chain map {src:?} -> {tgt:?} rejected: {e:?}"
                ))
            })?;
        let rc = Rc::new(induced);
        self.induced.insert(key, rc.clone());
        Ok(rc)
    }
}

fn paste(dst: &mut RatMatrix, r0: usize, c0: usize, block: &RatMatrix) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            dst.set(r0 + r, c0 + c, block.get(r, c).clone());
        }
    }
}

struct Block {
    a: Vec<i64>,
    offset: usize,
    dim: usize,
}

pub fn assemble_window_module(q: &LCQuery) -> Result<WindowModule, CechError> {
    let ideal = &q.ideal;
    let m = ideal.m();
    if q.index > ideal.generator_count() {
        return Err(CechError::IndexOutOfRange {
            index: q.index,
            generators: ideal.generator_count(),
        });
    }
    validate_box(ideal, &q.bounds, q.lo, q.hi)?;
    let mut cache = PatternCache::new(ideal, q.index);

    let len = (q.hi - q.lo + 1) as usize;
    let mut blocks: Vec<Vec<Block>> = Vec::with_capacity(len);
    let mut lookup: Vec<BTreeMap<Vec<i64>, usize>> = Vec::with_capacity(len);
    for k in 0..len {
        let n = q.lo + k as i64;
        let mut level: Vec<Block> = Vec::new();
        let mut offset = 0usize;
        for_each_in_box_desc(q.bounds.per_axis(), n, &mut |a| {
            let dim = cache.pattern(&sign_pattern(a)).hom.dim;
            if dim > 0 {
                level.push(Block {
                    a: a.to_vec(),
                    offset,
                    dim,
                });
                offset += dim;
            }
            ControlFlow::Continue(())
        });
        let mut map = BTreeMap::new();
        for (bi, b) in level.iter().enumerate() {
            map.insert(b.a.clone(), bi);
        }
        blocks.push(level);
        lookup.push(map);
    }
    let dims: Vec<usize> = blocks
        .iter()
        .map(|level| level.iter().map(|b| b.dim).sum())
        .collect();

    let mut builder = WindowBuilder::new(m, q.lo, dims.clone());

    for (k, level) in blocks.iter().enumerate() {
        let n = q.lo + k as i64;
        let mut labels = Vec::with_capacity(dims[k]);
        for b in level {
            for _ in 0..b.dim {
                labels.push(b.a.clone());
            }
        }
        builder.set_labels(n, labels);
        builder.set_euler(n, RatMatrix::scalar(dims[k], &rat_int(n)));
    }

    // Exactness and completeness come from pattern-level support: a window
    // component is the true graded piece exactly when no pattern with
    // nonzero homology realizes its degree outside the box.
    let squarefree = ideal.is_squarefree();
    let mut nonzero_patterns: Vec<Vec<bool>> = Vec::new();
    for bits in 0..(1usize << m) {
        let p: Vec<bool> = (0..m).map(|i| bits & (1 << i) != 0).collect();
        if cache.pattern(&p).hom.dim > 0 {
            nonzero_patterns.push(p);
        }
    }
    for k in 0..len {
        let n = q.lo + k as i64;
        let exact = squarefree
            && nonzero_patterns
                .iter()
                .all(|p| !out_of_box_representative(p, q.bounds.per_axis(), n));
        builder.set_exact(n, exact);
    }
    if nonzero_patterns.is_empty() {
        builder.complete_below = squarefree;
        builder.complete_above = squarefree;
    } else {
        let only_nonneg = nonzero_patterns
            .iter()
            .all(|p| p.iter().all(|&neg| !neg));
        let only_neg = nonzero_patterns.iter().all(|p| p.iter().all(|&neg| neg));
        builder.complete_below = squarefree && only_nonneg && q.lo <= 0;
        builder.complete_above = squarefree && only_neg && q.hi >= -(m as i64);
    }

    for axis0 in 0..m {
        // X_axis: degree n -> n+1 for n in [lo, hi-1].
        for k in 0..len.saturating_sub(1) {
            let n = q.lo + k as i64;
            let mut mat = RatMatrix::zeros(dims[k + 1], dims[k]);
            let mut ghosts: Vec<GhostBlock> = Vec::new();
            for b in &blocks[k] {
                let mut target = b.a.clone();
                target[axis0] += 1;
                let tp = sign_pattern(&target);
                let tdim = cache.pattern(&tp).hom.dim;
                if tdim == 0 {
                    continue;
                }
                let block = cache.indicator_induced(&sign_pattern(&b.a), &tp)?;
                if q.bounds.contains(&target) {
                    let ti = lookup[k + 1][&target];
                    paste(&mut mat, blocks[k + 1][ti].offset, b.offset, &block);
                } else {
                    let mut rows = RatMatrix::zeros(tdim, dims[k]);
                    paste(&mut rows, 0, b.offset, &block);
                    ghosts.push(GhostBlock { target, rows });
                }
            }
            let overflow = if ghosts.is_empty() {
                Overflow::None
            } else {
                Overflow::Tracked(ghosts)
            };
            builder.set_x_action(axis0 + 1, n, Action { matrix: mat, overflow });
        }
        // ∂_axis: degree n -> n-1 for n in [lo+1, hi]; the block scalar is
        // the source coordinate, which never changes the sign pattern when
        // nonzero.
        for k in 0..len.saturating_sub(1) {
            let n = q.lo + k as i64 + 1;
            let mut mat = RatMatrix::zeros(dims[k], dims[k + 1]);
            let mut ghosts: Vec<GhostBlock> = Vec::new();
            for b in &blocks[k + 1] {
                let coeff = b.a[axis0];
                if coeff == 0 {
                    continue;
                }
                let mut target = b.a.clone();
                target[axis0] -= 1;
                let tp = sign_pattern(&target);
                let tdim = cache.pattern(&tp).hom.dim;
                if tdim == 0 {
                    continue;
                }
                let block = cache
                    .indicator_induced(&sign_pattern(&b.a), &tp)?
                    .scale(&rat_int(coeff));
                if q.bounds.contains(&target) {
                    let ti = lookup[k][&target];
                    paste(&mut mat, blocks[k][ti].offset, b.offset, &block);
                } else {
                    let mut rows = RatMatrix::zeros(tdim, dims[k + 1]);
                    paste(&mut rows, 0, b.offset, &block);
                    ghosts.push(GhostBlock { target, rows });
                }
            }
            let overflow = if ghosts.is_empty() {
                Overflow::None
            } else {
                Overflow::Tracked(ghosts)
            };
            builder.set_d_action(axis0 + 1, n, Action { matrix: mat, overflow });
        }
    }

    // Blockwise verification on the cached pattern data. This covers moves
    // that exit the box, which the window-level checks cannot see.
    for (k, level) in blocks.iter().enumerate() {
        let n = q.lo + k as i64;
        for b in level {
            let pa = sign_pattern(&b.a);
            let mut euler = RatMatrix::zeros(b.dim, b.dim);
            for axis0 in 0..m {
                let up_coeff = b.a[axis0] + 1;
                let term_up = if up_coeff == 0 {
                    RatMatrix::zeros(b.dim, b.dim)
                } else {
                    let mut up = b.a.clone();
                    up[axis0] += 1;
                    let pb = sign_pattern(&up);
                    let raise = cache.indicator_induced(&pa, &pb)?;
                    let lower = cache.indicator_induced(&pb, &pa)?;
                    lower.scale(&rat_int(up_coeff)).mul(&raise)
                };
                let down_coeff = b.a[axis0];
                let term_down = if down_coeff == 0 {
                    RatMatrix::zeros(b.dim, b.dim)
                } else {
                    let mut down = b.a.clone();
                    down[axis0] -= 1;
                    let pc = sign_pattern(&down);
                    let lower = cache.indicator_induced(&pa, &pc)?;
                    let raise = cache.indicator_induced(&pc, &pa)?;
                    raise.mul(&lower.scale(&rat_int(down_coeff)))
                };
                if term_up.sub(&term_down) != RatMatrix::identity(b.dim) {
                    return Err(CechError::Assembly(format!(
                        "Weyl identity fails at {:?} on axis {}",
                        b.a,
                        axis0 + 1
                    )));
                }
                euler = euler.add(&term_down);
            }
            if euler != RatMatrix::scalar(b.dim, &rat_int(n)) {
                return Err(CechError::Assembly(format!(
                    "Euler eigenvalue at {:?} is not {n}",
                    b.a
                )));
            }
        }
    }

    Ok(builder.build()?)
}
