//! Graded modules presented on a finite degree window.
//!
//! A [`WindowModule`] stores, for each degree `n` in `[lo, hi]`, an exact
//! finite-dimensional component over the rationals together with the action
//! matrices of the generators: `x_i` raises degree by one, `d_i` lowers it by
//! one. The constructor verifies the defining identities wherever the stored
//! data determines them:
//!
//! * mixed generators commute: `x_i x_j = x_j x_i`, `d_i d_j = d_j d_i`,
//!   `d_i x_j = x_j d_i` for `i != j`;
//! * same-axis pairs satisfy `d_i x_i - x_i d_i = 1` on each component.
//!
//! Windows are truncations of modules that are usually infinite in at least
//! one direction, so the representation is explicit about what it knows:
//!
//! * `complete_below` / `complete_above` assert the module vanishes outside
//!   the window on that side, turning boundary maps into known zero maps;
//! * a stored action may carry [`Overflow::Tracked`] ghost rows: rows of the
//!   true matrix whose targets fall outside the enumerated basis (this
//!   happens when a multigraded module is cut to a finite coordinate box).
//!   The in-window matrix is then the compression of the true map, and the
//!   ghost rows keep kernel and injectivity computations honest;
//! * each component records whether its dimension is exact or a truncation
//!   (`Component::exact`); checks quantify over exact components only.
//!
//! Same-axis identities fail on compressed matrices exactly when a ghost
//! path leaves and re-enters the window box, so the constructor checks the
//! relation only where the two maps leaving the component are ghost-free;
//! producers of tracked actions verify the remaining degrees themselves
//! (see the assembly code) and store the Euler matrices they computed.

mod eulerian;
mod koszul;
mod torsion;

pub use eulerian::{
    check_generalized_eulerian, check_generalized_eulerian_offset, DegreeNilpotency,
    EulerianReport, EulerianVerdict,
};
pub use koszul::{koszul_d, koszul_x, KoszulPair};
pub use torsion::{
    check_divisibility, torsion, DivisibilityReport, GeneratorSide, OperatorWord,
    SurjectivityStatus,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::RatMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleError {
    /// Structural problem in supplied data (shape, length, label sizes).
    Structure(String),
    /// A commutation identity failed. `kind` is `"xx"`, `"dd"` or `"dx"`;
    /// `degree` is the source degree of the composites.
    Commutation {
        kind: &'static str,
        i: usize,
        j: usize,
        degree: i64,
    },
    /// `d_i x_i - x_i d_i = 1` failed on the component at `degree`.
    WeylRelation { axis: usize, degree: i64 },
    /// A stored Euler matrix disagrees with the action composites.
    EulerStore { degree: i64 },
    /// The requested computation needs data outside the window.
    BoundaryIncomplete { degree: i64 },
    /// The requested computation would silently use a compressed matrix.
    TruncatedAction { axis: usize, degree: i64 },
    InvalidAxis { axis: usize, m: usize },
    /// Torsion generators must be all-x or all-d words.
    MixedGenerators,
    EmptyGenerators,
    /// A supplied three-term sequence is not degreewise short exact.
    SesMismatch { reason: &'static str, degree: i64 },
}

impl core::fmt::Display for ModuleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ModuleError::Structure(s) => write!(f, "malformed window data: {s}"),
            ModuleError::Commutation { kind, i, j, degree } => {
                write!(f, "commutation {kind} failed for axes ({i},{j}) at degree {degree}")
            }
            ModuleError::WeylRelation { axis, degree } => {
                write!(f, "d{axis}*x{axis} - x{axis}*d{axis} != 1 on the component at degree {degree}")
            }
            ModuleError::EulerStore { degree } => {
                write!(f, "stored Euler matrix at degree {degree} disagrees with the actions")
            }
            ModuleError::BoundaryIncomplete { degree } => {
                write!(f, "computation at degree {degree} needs data outside the window")
            }
            ModuleError::TruncatedAction { axis, degree } => {
                write!(f, "action of axis {axis} at degree {degree} is truncated; composite would be inexact")
            }
            ModuleError::InvalidAxis { axis, m } => {
                write!(f, "axis {axis} out of range for m={m}")
            }
            ModuleError::MixedGenerators => {
                write!(f, "torsion generators must all be x-words or all d-words")
            }
            ModuleError::EmptyGenerators => write!(f, "torsion generator list is empty"),
            ModuleError::SesMismatch { reason, degree } => {
                write!(f, "short exact sequence check failed at degree {degree}: {reason}")
            }
        }
    }
}

/// One graded component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub dim: usize,
    /// Multidegree of each basis vector, when the basis is multigraded.
    pub labels: Option<Vec<Vec<i64>>>,
    /// Whether `dim` is the true dimension (false for truncations).
    pub exact: bool,
}

impl Component {
    pub fn new(dim: usize) -> Self {
        Component {
            dim,
            labels: None,
            exact: true,
        }
    }
}

/// Rows of a true action matrix whose target basis vectors fall outside the
/// enumerated window box. `rows` has the full source dimension as width;
/// `target` is the multidegree the rows map into (informational).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostBlock {
    pub target: Vec<i64>,
    pub rows: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overflow {
    /// The stored matrix is the whole map.
    None,
    /// The stored matrix misses exactly these rows.
    Tracked(Vec<GhostBlock>),
}

impl Overflow {
    pub fn is_total(&self) -> bool {
        matches!(self, Overflow::None)
    }
}

/// A stored action between adjacent components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub matrix: RatMatrix,
    pub overflow: Overflow,
}

impl Action {
    pub fn total(matrix: RatMatrix) -> Self {
        Action {
            matrix,
            overflow: Overflow::None,
        }
    }

    /// The matrix with ghost rows stacked below: the full map into
    /// window-plus-ghost coordinates. Kernel and injectivity computations
    /// must use this, not `matrix`.
    pub fn stacked(&self) -> RatMatrix {
        match &self.overflow {
            Overflow::None => self.matrix.clone(),
            Overflow::Tracked(ghosts) => {
                let mut out = self.matrix.clone();
                for g in ghosts {
                    out = out.vstack(&g.rows);
                }
                out
            }
        }
    }
}

/// What the module knows about one action map.
#[derive(Clone, Debug)]
pub enum MapView<'a> {
    Present(&'a Action),
    /// The map is known to be zero because a completeness flag forces one
    /// side to vanish.
    Zero { rows: usize, cols: usize },
    Missing,
}

impl<'a> MapView<'a> {
    /// The stored matrix, materializing known-zero boundary maps.
    pub fn known_matrix(&self) -> Option<RatMatrix> {
        match self {
            MapView::Present(a) => Some(a.matrix.clone()),
            MapView::Zero { rows, cols } => Some(RatMatrix::zeros(*rows, *cols)),
            MapView::Missing => None,
        }
    }

    /// True unless this is a stored action with tracked ghost rows.
    pub fn ghost_free(&self) -> bool {
        match self {
            MapView::Present(a) => a.overflow.is_total(),
            _ => true,
        }
    }

    pub fn is_known(&self) -> bool {
        !matches!(self, MapView::Missing)
    }
}

/// Mutable construction data for a [`WindowModule`]. Fill the fields (or use
/// the setters, which index by degree and 1-based axis) and call [`build`].
///
/// `x_action[i][k]` maps the component at `lo + k` to `lo + k + 1`;
/// `d_action[i][k]` maps the component at `lo + k + 1` to `lo + k`.
/// `None` entries mean the map is unknown, except that maps with an exact
/// zero-dimensional endpoint are filled in automatically (they are forced).
///
/// [`build`]: WindowBuilder::build
#[derive(Clone, Debug)]
pub struct WindowBuilder {
    pub m: usize,
    pub lo: i64,
    pub components: Vec<Component>,
    pub x_action: Vec<Vec<Option<Action>>>,
    pub d_action: Vec<Vec<Option<Action>>>,
    pub euler: Vec<Option<RatMatrix>>,
    pub complete_below: bool,
    pub complete_above: bool,
}

impl WindowBuilder {
    pub fn new(m: usize, lo: i64, dims: Vec<usize>) -> Self {
        let len = dims.len();
        assert!(len > 0, "window needs at least one component");
        WindowBuilder {
            m,
            lo,
            components: dims.into_iter().map(Component::new).collect(),
            x_action: vec![vec![None; len - 1]; m],
            d_action: vec![vec![None; len - 1]; m],
            euler: vec![None; len],
            complete_below: false,
            complete_above: false,
        }
    }

    fn slot(&self, source_degree: i64, needs_up: bool) -> usize {
        let hi = self.lo + self.components.len() as i64 - 1;
        let (min, max) = if needs_up {
            (self.lo, hi - 1)
        } else {
            (self.lo + 1, hi)
        };
        assert!(
            source_degree >= min && source_degree <= max,
            "no stored map with source degree {source_degree} in [{min}, {max}]"
        );
        if needs_up {
            (source_degree - self.lo) as usize
        } else {
            (source_degree - 1 - self.lo) as usize
        }
    }

    /// Sets `x_axis: M_n -> M_(n+1)`. Axis is 1-based.
    pub fn set_x(&mut self, axis: usize, n: i64, matrix: RatMatrix) -> &mut Self {
        assert!(axis >= 1 && axis <= self.m, "axis {axis} out of range");
        let k = self.slot(n, true);
        self.x_action[axis - 1][k] = Some(Action::total(matrix));
        self
    }

    /// Sets `d_axis: M_n -> M_(n-1)`. Axis is 1-based.
    pub fn set_d(&mut self, axis: usize, n: i64, matrix: RatMatrix) -> &mut Self {
        assert!(axis >= 1 && axis <= self.m, "axis {axis} out of range");
        let k = self.slot(n, false);
        self.d_action[axis - 1][k] = Some(Action::total(matrix));
        self
    }

    pub fn set_x_action(&mut self, axis: usize, n: i64, action: Action) -> &mut Self {
        let k = self.slot(n, true);
        self.x_action[axis - 1][k] = Some(action);
        self
    }

    pub fn set_d_action(&mut self, axis: usize, n: i64, action: Action) -> &mut Self {
        let k = self.slot(n, false);
        self.d_action[axis - 1][k] = Some(action);
        self
    }

    pub fn set_labels(&mut self, n: i64, labels: Vec<Vec<i64>>) -> &mut Self {
        let k = (n - self.lo) as usize;
        self.components[k].labels = Some(labels);
        self
    }

    pub fn set_exact(&mut self, n: i64, exact: bool) -> &mut Self {
        let k = (n - self.lo) as usize;
        self.components[k].exact = exact;
        self
    }

    pub fn set_euler(&mut self, n: i64, matrix: RatMatrix) -> &mut Self {
        let k = (n - self.lo) as usize;
        self.euler[k] = Some(matrix);
        self
    }

    pub fn build(mut self) -> Result<WindowModule, ModuleError> {
        let len = self.components.len();
        if len == 0 {
            return Err(ModuleError::Structure(String::from("no components")));
        }
        if self.x_action.len() != self.m || self.d_action.len() != self.m {
            return Err(ModuleError::Structure(format!(
                "need {} action rows per family, got {} and {}",
                self.m,
                self.x_action.len(),
                self.d_action.len()
            )));
        }
        if self.euler.len() != len {
            return Err(ModuleError::Structure(format!(
                "euler store length {} != component count {len}",
                self.euler.len()
            )));
        }
        for fam in [&self.x_action, &self.d_action] {
            for row in fam {
                if row.len() + 1 != len {
                    return Err(ModuleError::Structure(format!(
                        "action row length {} != {}",
                        row.len(),
                        len - 1
                    )));
                }
            }
        }

        // Forced maps: an exact zero-dimensional endpoint determines the
        // matrix (empty) and rules out ghost rows on the target side.
        for k in 0..len.saturating_sub(1) {
            let (src, tgt) = (&self.components[k], &self.components[k + 1]);
            let fill_up = (src.dim == 0 && src.exact) || (tgt.dim == 0 && tgt.exact);
            let fill_down = (tgt.dim == 0 && tgt.exact) || (src.dim == 0 && src.exact);
            for i in 0..self.m {
                if fill_up && self.x_action[i][k].is_none() {
                    self.x_action[i][k] = Some(Action::total(RatMatrix::zeros(tgt.dim, src.dim)));
                }
                if fill_down && self.d_action[i][k].is_none() {
                    self.d_action[i][k] = Some(Action::total(RatMatrix::zeros(src.dim, tgt.dim)));
                }
            }
        }

        let module = WindowModule {
            m: self.m,
            lo: self.lo,
            components: self.components,
            x_action: self.x_action,
            d_action: self.d_action,
            euler: self.euler,
            complete_below: self.complete_below,
            complete_above: self.complete_above,
        };
        module.validate()?;
        Ok(module)
    }
}

/// A graded module on the degree window `[lo, hi]`. See the module docs for
/// the data model. Construct through [`WindowBuilder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowModule {
    m: usize,
    lo: i64,
    components: Vec<Component>,
    x_action: Vec<Vec<Option<Action>>>,
    d_action: Vec<Vec<Option<Action>>>,
    euler: Vec<Option<RatMatrix>>,
    complete_below: bool,
    complete_above: bool,
}

impl WindowModule {
    /// The zero module on a window.
    pub fn zero(m: usize, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        let mut b = WindowBuilder::new(m, lo, vec![0; (hi - lo + 1) as usize]);
        b.complete_below = true;
        b.complete_above = true;
        b.build().expect("zero module is always valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.components.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn complete_below(&self) -> bool {
        self.complete_below
    }

    pub fn complete_above(&self) -> bool {
        self.complete_above
    }

    /// True when every component is exact: the window is a faithful cutout,
    /// not a truncation of infinite-dimensional graded pieces.
    pub fn box_complete(&self) -> bool {
        self.components.iter().all(|c| c.exact)
    }

    pub fn component(&self, n: i64) -> Option<&Component> {
        if n < self.lo || n > self.hi() {
            return None;
        }
        Some(&self.components[(n - self.lo) as usize])
    }

    /// Dimension at `n`: stored in-window, forced to zero outside by the
    /// completeness flags, unknown otherwise.
    pub fn dim_at(&self, n: i64) -> Option<usize> {
        if let Some(c) = self.component(n) {
            return Some(c.dim);
        }
        if n < self.lo && self.complete_below {
            return Some(0);
        }
        if n > self.hi() && self.complete_above {
            return Some(0);
        }
        None
    }

    pub fn is_zero_window(&self) -> bool {
        self.components.iter().all(|c| c.dim == 0)
    }

    pub fn x_stored(&self, axis: usize, n: i64) -> Option<&Action> {
        self.check_axis(axis).ok()?;
        if n < self.lo || n >= self.hi() {
            return None;
        }
        self.x_action[axis - 1][(n - self.lo) as usize].as_ref()
    }

    pub fn d_stored(&self, axis: usize, n: i64) -> Option<&Action> {
        self.check_axis(axis).ok()?;
        if n <= self.lo || n > self.hi() {
            return None;
        }
        self.d_action[axis - 1][(n - 1 - self.lo) as usize].as_ref()
    }

    pub fn euler_stored(&self, n: i64) -> Option<&RatMatrix> {
        if n < self.lo || n > self.hi() {
            return None;
        }
        self.euler[(n - self.lo) as usize].as_ref()
    }

    pub fn check_axis(&self, axis: usize) -> Result<(), ModuleError> {
        if axis == 0 || axis > self.m {
            return Err(ModuleError::InvalidAxis { axis, m: self.m });
        }
        Ok(())
    }

    /// View of `x_axis: M_n -> M_(n+1)` including boundary knowledge.
    pub fn x_view(&self, axis: usize, n: i64) -> MapView<'_> {
        if self.check_axis(axis).is_err() {
            return MapView::Missing;
        }
        if n >= self.lo && n < self.hi() {
            return match &self.x_action[axis - 1][(n - self.lo) as usize] {
                Some(a) => MapView::Present(a),
                None => MapView::Missing,
            };
        }
        match (self.dim_at(n), self.dim_at(n + 1)) {
            (Some(cols), Some(rows)) => MapView::Zero { rows, cols },
            _ => MapView::Missing,
        }
    }

    /// View of `d_axis: M_n -> M_(n-1)` including boundary knowledge.
    pub fn d_view(&self, axis: usize, n: i64) -> MapView<'_> {
        if self.check_axis(axis).is_err() {
            return MapView::Missing;
        }
        if n > self.lo && n <= self.hi() {
            return match &self.d_action[axis - 1][(n - 1 - self.lo) as usize] {
                Some(a) => MapView::Present(a),
                None => MapView::Missing,
            };
        }
        match (self.dim_at(n), self.dim_at(n - 1)) {
            (Some(cols), Some(rows)) => MapView::Zero { rows, cols },
            _ => MapView::Missing,
        }
    }

    /// The Euler matrix `sum_i x_i d_i` on the component at `n`: the stored
    /// matrix when a producer recorded one, otherwise the composite of the
    /// stored actions. Degrees whose composites need unknown boundary data
    /// give `BoundaryIncomplete`; composites through a truncated action give
    /// `TruncatedAction` rather than a silently wrong matrix.
    pub fn euler_matrix(&self, n: i64) -> Result<RatMatrix, ModuleError> {
        if let Some(e) = self.euler_stored(n) {
            return Ok(e.clone());
        }
        let dim = self
            .dim_at(n)
            .ok_or(ModuleError::BoundaryIncomplete { degree: n })?;
        let mut acc = RatMatrix::zeros(dim, dim);
        for axis in 1..=self.m {
            let down = self.d_view(axis, n);
            let up = self.x_view(axis, n - 1);
            if !down.ghost_free() {
                return Err(ModuleError::TruncatedAction { axis, degree: n });
            }
            let (down, up) = match (down.known_matrix(), up.known_matrix()) {
                (Some(d), Some(u)) => (d, u),
                _ => return Err(ModuleError::BoundaryIncomplete { degree: n }),
            };
            acc = acc.add(&up.mul(&down));
        }
        Ok(acc)
    }

    /// Degree shift: `shift(M, k)` has component `M_(n+k)` at degree `n`.
    /// All data is reindexed untouched; multidegree labels keep describing
    /// the underlying basis, so for `k != 0` their coordinate sums no longer
    /// equal the new degree.
    pub fn shift(&self, k: i64) -> WindowModule {
        let mut out = self.clone();
        out.lo -= k;
        out
    }

    fn validate(&self) -> Result<(), ModuleError> {
        let lo = self.lo;
        let hi = self.hi();

        // Shapes, labels, ghosts.
        for (k, c) in self.components.iter().enumerate() {
            let n = lo + k as i64;
            if let Some(labels) = &c.labels {
                if labels.len() != c.dim {
                    return Err(ModuleError::Structure(format!(
                        "component at {n}: {} labels for dimension {}",
                        labels.len(),
                        c.dim
                    )));
                }
                for l in labels {
                    if l.len() != self.m {
                        return Err(ModuleError::Structure(format!(
                            "component at {n}: label of length {} (m={})",
                            l.len(),
                            self.m
                        )));
                    }
                    if l.iter().sum::<i64>() != n {
                        return Err(ModuleError::Structure(format!(
                            "component at {n}: label sums to {}",
                            l.iter().sum::<i64>()
                        )));
                    }
                }
            }
        }
        for k in 0..self.components.len().saturating_sub(1) {
            let (dk, dk1) = (self.components[k].dim, self.components[k + 1].dim);
            let n = lo + k as i64;
            for i in 0..self.m {
                if let Some(a) = &self.x_action[i][k] {
                    self.check_action_shape(a, dk1, dk, "x", i + 1, n)?;
                }
                if let Some(a) = &self.d_action[i][k] {
                    self.check_action_shape(a, dk, dk1, "d", i + 1, n + 1)?;
                }
            }
        }
        for (k, e) in self.euler.iter().enumerate() {
            let n = lo + k as i64;
            let c = &self.components[k];
            if let Some(e) = e {
                if e.rows() != c.dim || e.cols() != c.dim {
                    return Err(ModuleError::Structure(format!(
                        "euler matrix at {n} is {}x{} on a {}-dim component",
                        e.rows(),
                        e.cols(),
                        c.dim
                    )));
                }
                if let Some(labels) = &c.labels {
                    // The Euler operator preserves multidegrees.
                    for r in 0..c.dim {
                        for col in 0..c.dim {
                            if labels[r] != labels[col] && !crate::rat::is_zero(e.get(r, col)) {
                                return Err(ModuleError::EulerStore { degree: n });
                            }
                        }
                    }
                }
            }
        }

        // Identities. The loops run one degree past each end so that
        // completeness-forced zero maps participate.
        for n in (lo - 1)..=(hi + 1) {
            for i in 1..=self.m {
                for j in (i + 1)..=self.m {
                    self.check_xx(i, j, n)?;
                    self.check_dd(i, j, n)?;
                }
                for j in 1..=self.m {
                    if i != j {
                        self.check_dx(i, j, n)?;
                    }
                }
                self.check_weyl(i, n)?;
            }
            self.check_euler_store(n)?;
        }
        Ok(())
    }

    fn check_action_shape(
        &self,
        a: &Action,
        rows: usize,
        cols: usize,
        fam: &str,
        axis: usize,
        source: i64,
    ) -> Result<(), ModuleError> {
        if a.matrix.rows() != rows || a.matrix.cols() != cols {
            return Err(ModuleError::Structure(format!(
                "{fam}{axis} at source degree {source}: {}x{} matrix, expected {rows}x{cols}",
                a.matrix.rows(),
                a.matrix.cols()
            )));
        }
        if let Overflow::Tracked(ghosts) = &a.overflow {
            for g in ghosts {
                if g.rows.cols() != cols || g.rows.rows() == 0 {
                    return Err(ModuleError::Structure(format!(
                        "{fam}{axis} at source degree {source}: ghost block is {}x{}, expected width {cols}",
                        g.rows.rows(),
                        g.rows.cols()
                    )));
                }
                if g.target.len() != self.m {
                    return Err(ModuleError::Structure(format!(
                        "{fam}{axis} at source degree {source}: ghost target has length {}",
                        g.target.len()
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_xx(&self, i: usize, j: usize, n: i64) -> Result<(), ModuleError> {
        let (a, b, c, d) = (
            self.x_view(i, n + 1).known_matrix(),
            self.x_view(j, n).known_matrix(),
            self.x_view(j, n + 1).known_matrix(),
            self.x_view(i, n).known_matrix(),
        );
        if let (Some(a), Some(b), Some(c), Some(d)) = (a, b, c, d) {
            if a.mul(&b) != c.mul(&d) {
                return Err(ModuleError::Commutation { kind: "xx", i, j, degree: n });
            }
        }
        Ok(())
    }

    fn check_dd(&self, i: usize, j: usize, n: i64) -> Result<(), ModuleError> {
        let (a, b, c, d) = (
            self.d_view(i, n - 1).known_matrix(),
            self.d_view(j, n).known_matrix(),
            self.d_view(j, n - 1).known_matrix(),
            self.d_view(i, n).known_matrix(),
        );
        if let (Some(a), Some(b), Some(c), Some(d)) = (a, b, c, d) {
            if a.mul(&b) != c.mul(&d) {
                return Err(ModuleError::Commutation { kind: "dd", i, j, degree: n });
            }
        }
        Ok(())
    }

    fn check_dx(&self, i: usize, j: usize, n: i64) -> Result<(), ModuleError> {
        let (a, b, c, d) = (
            self.d_view(i, n + 1).known_matrix(),
            self.x_view(j, n).known_matrix(),
            self.x_view(j, n - 1).known_matrix(),
            self.d_view(i, n).known_matrix(),
        );
        if let (Some(a), Some(b), Some(c), Some(d)) = (a, b, c, d) {
            if a.mul(&b) != c.mul(&d) {
                return Err(ModuleError::Commutation { kind: "dx", i, j, degree: n });
            }
        }
        Ok(())
    }

    /// `d_i x_i - x_i d_i = 1` on the component at `n`. Valid on stored
    /// matrices only when the two maps leaving degree `n` are ghost-free;
    /// otherwise a ghost path re-enters the window and the compressed
    /// composites genuinely differ from the true ones, so the degree is
    /// skipped here (tracked producers verify it with ghost data).
    fn check_weyl(&self, i: usize, n: i64) -> Result<(), ModuleError> {
        let up = self.x_view(i, n);
        let down = self.d_view(i, n);
        if !up.ghost_free() || !down.ghost_free() {
            return Ok(());
        }
        let parts = (
            self.d_view(i, n + 1).known_matrix(),
            up.known_matrix(),
            self.x_view(i, n - 1).known_matrix(),
            down.known_matrix(),
        );
        if let (Some(da), Some(xa), Some(xb), Some(db)) = parts {
            let dim = match self.dim_at(n) {
                Some(d) => d,
                None => return Ok(()),
            };
            let got = da.mul(&xa).sub(&xb.mul(&db));
            if got != RatMatrix::identity(dim) {
                return Err(ModuleError::WeylRelation { axis: i, degree: n });
            }
        }
        Ok(())
    }

    /// Cross-checks a stored Euler matrix against the action composites
    /// where those are exact.
    fn check_euler_store(&self, n: i64) -> Result<(), ModuleError> {
        let stored = match self.euler_stored(n) {
            Some(e) => e,
            None => return Ok(()),
        };
        let dim = stored.rows();
        let mut acc = RatMatrix::zeros(dim, dim);
        for axis in 1..=self.m {
            let down = self.d_view(axis, n);
            if !down.ghost_free() {
                return Ok(());
            }
            let up = self.x_view(axis, n - 1);
            match (up.known_matrix(), down.known_matrix()) {
                (Some(u), Some(d)) => acc = acc.add(&u.mul(&d)),
                _ => return Ok(()),
            }
        }
        if &acc != stored {
            return Err(ModuleError::EulerStore { degree: n });
        }
        Ok(())
    }
}

/// Verifies that `0 -> sub -> mid -> quot -> 0` is a degreewise short exact
/// sequence of window modules compatible with all stored actions.
/// `incl[k]` and `proj[k]` are the maps at degree `lo + k`.
pub fn check_short_exact(
    sub: &WindowModule,
    mid: &WindowModule,
    quot: &WindowModule,
    incl: &[RatMatrix],
    proj: &[RatMatrix],
) -> Result<(), ModuleError> {
    let lo = mid.lo();
    let hi = mid.hi();
    if sub.m() != mid.m() || quot.m() != mid.m() {
        return Err(ModuleError::Structure(String::from(
            "short exact sequence members have different variable counts",
        )));
    }
    if sub.lo() != lo || quot.lo() != lo || sub.hi() != hi || quot.hi() != hi {
        return Err(ModuleError::Structure(String::from(
            "short exact sequence members have different windows",
        )));
    }
    let len = (hi - lo + 1) as usize;
    if incl.len() != len || proj.len() != len {
        return Err(ModuleError::Structure(String::from(
            "need one inclusion and one projection matrix per degree",
        )));
    }

    for k in 0..len {
        let n = lo + k as i64;
        let (ds, dm, dq) = (
            sub.component(n).unwrap().dim,
            mid.component(n).unwrap().dim,
            quot.component(n).unwrap().dim,
        );
        if incl[k].rows() != dm || incl[k].cols() != ds || proj[k].rows() != dq || proj[k].cols() != dm
        {
            return Err(ModuleError::SesMismatch { reason: "matrix shape", degree: n });
        }
        if ds + dq != dm {
            return Err(ModuleError::SesMismatch { reason: "dimension count", degree: n });
        }
        if incl[k].rank() != ds {
            return Err(ModuleError::SesMismatch { reason: "inclusion not injective", degree: n });
        }
        if proj[k].rank() != dq {
            return Err(ModuleError::SesMismatch { reason: "projection not surjective", degree: n });
        }
        if !proj[k].mul(&incl[k]).is_zero() {
            return Err(ModuleError::SesMismatch { reason: "composite not zero", degree: n });
        }
    }

    // Chain compatibility with every stored action on both sides, e.g.
    // incl[k+1] . x_sub[n] = x_mid[n] . incl[k] for the upward maps.
    for k in 0..len.saturating_sub(1) {
        let n = lo + k as i64;
        for axis in 1..=mid.m() {
            let squares = [
                (sub.x_stored(axis, n), mid.x_stored(axis, n), &incl[k + 1], &incl[k]),
                (mid.x_stored(axis, n), quot.x_stored(axis, n), &proj[k + 1], &proj[k]),
                (sub.d_stored(axis, n + 1), mid.d_stored(axis, n + 1), &incl[k], &incl[k + 1]),
                (mid.d_stored(axis, n + 1), quot.d_stored(axis, n + 1), &proj[k], &proj[k + 1]),
            ];
            for (inner, outer, after, before) in squares {
                if let (Some(inner), Some(outer)) = (inner, outer) {
                    if after.mul(&inner.matrix) != outer.matrix.mul(before) {
                        return Err(ModuleError::SesMismatch { reason: "maps are not chain maps", degree: n });
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;

    /// K[x] on degrees [0, 3]: dims 1, x acts by 1, d by the exponent.
    pub(crate) fn poly_line(hi_deg: usize) -> WindowModule {
        let mut b = WindowBuilder::new(1, 0, vec![1; hi_deg + 1]);
        b.complete_below = true;
        for n in 0..hi_deg as i64 {
            b.set_x(1, n, RatMatrix::from_i64(&[&[1]]));
            b.set_d(1, n + 1, RatMatrix::from_i64(&[&[n + 1]]));
        }
        b.build().unwrap()
    }

    /// K[x1,x2] on total degrees [0, hi]: basis of degree n is
    /// x1^(n-k) x2^k for k = 0..n, with multidegree labels.
    pub(crate) fn poly_plane(hi: usize) -> WindowModule {
        use crate::rat::rat_int;
        let mut b = WindowBuilder::new(2, 0, (0..=hi).map(|n| n + 1).collect());
        b.complete_below = true;
        for n in 0..hi {
            let mut x1 = RatMatrix::zeros(n + 2, n + 1);
            let mut x2 = RatMatrix::zeros(n + 2, n + 1);
            for k in 0..=n {
                x1.set(k, k, rat_int(1));
                x2.set(k + 1, k, rat_int(1));
            }
            b.set_x(1, n as i64, x1);
            b.set_x(2, n as i64, x2);
            let mut d1 = RatMatrix::zeros(n + 1, n + 2);
            let mut d2 = RatMatrix::zeros(n + 1, n + 2);
            for k in 0..=(n + 1) {
                let a = (n + 1 - k) as i64;
                if a > 0 {
                    d1.set(k, k, rat_int(a));
                }
                if k > 0 {
                    d2.set(k - 1, k, rat_int(k as i64));
                }
            }
            b.set_d(1, (n + 1) as i64, d1);
            b.set_d(2, (n + 1) as i64, d2);
        }
        for n in 0..=hi {
            b.set_labels(
                n as i64,
                (0..=n).map(|k| vec![(n - k) as i64, k as i64]).collect(),
            );
        }
        b.build().unwrap()
    }

    /// Top local cohomology for m=1 on [-4,-1]: basis x^n, d scales by n,
    /// x includes upward.
    pub(crate) fn e_line() -> WindowModule {
        let mut b = WindowBuilder::new(1, -4, vec![1; 4]);
        b.complete_above = true;
        for n in -4i64..-1 {
            b.set_x(1, n, RatMatrix::from_i64(&[&[1]]));
        }
        for n in -3i64..=-1 {
            b.set_d(1, n, RatMatrix::from_i64(&[&[n]]));
        }
        b.build().unwrap()
    }

    #[test]
    fn poly_window_validates_and_reports_euler() {
        let r = poly_line(3);
        assert_eq!(r.dim_at(2), Some(1));
        assert_eq!(r.dim_at(-5), Some(0));
        assert_eq!(r.dim_at(9), None);
        // euler at n=2 is x.d = 2
        assert_eq!(r.euler_matrix(2).unwrap(), RatMatrix::from_i64(&[&[2]]));
        // at the lower edge the boundary maps are known zero: euler = 0
        assert_eq!(r.euler_matrix(0).unwrap(), RatMatrix::from_i64(&[&[0]]));
        // above the window nothing is known
        assert!(matches!(
            r.euler_matrix(5),
            Err(ModuleError::BoundaryIncomplete { degree: 5 })
        ));
    }

    #[test]
    fn e_window_euler_is_degree_scalar() {
        let e = e_line();
        for n in -3i64..=-1 {
            assert_eq!(
                e.euler_matrix(n).unwrap(),
                RatMatrix::from_i64(&[&[n]]),
                "euler at {n}"
            );
        }
        // -4 needs d at -4 whose target is outside the incomplete side
        assert!(e.euler_matrix(-4).is_err());
    }

    #[test]
    fn constructor_rejects_weyl_violation() {
        let mut b = WindowBuilder::new(1, 0, vec![1, 1]);
        b.complete_below = true;
        b.set_x(1, 0, RatMatrix::from_i64(&[&[1]]));
        b.set_d(1, 1, RatMatrix::from_i64(&[&[7]]));
        // d.x = 7 on degree 0 but x.d(below) = 0, so d x - x d = 7 != 1
        match b.build() {
            Err(ModuleError::WeylRelation { axis: 1, degree: 0 }) => {}
            other => panic!("expected Weyl failure, got {other:?}"),
        }
    }

    #[test]
    fn constructor_rejects_commutation_violation() {
        let mut b = WindowBuilder::new(2, 0, vec![1, 1, 1]);
        b.set_x(1, 0, RatMatrix::from_i64(&[&[1]]));
        b.set_x(2, 1, RatMatrix::from_i64(&[&[1]]));
        b.set_x(2, 0, RatMatrix::from_i64(&[&[2]]));
        b.set_x(1, 1, RatMatrix::from_i64(&[&[3]]));
        // x2.x1 = 1 but x1.x2 = 6
        match b.build() {
            Err(ModuleError::Commutation { kind: "xx", i: 1, j: 2, degree: 0 }) => {}
            other => panic!("expected commutation failure, got {other:?}"),
        }
    }

    #[test]
    fn constructor_rejects_bad_labels_and_euler() {
        let mut b = WindowBuilder::new(2, 1, vec![1]);
        b.set_labels(1, vec![vec![1, 1]]);
        assert!(matches!(b.build(), Err(ModuleError::Structure(_))));

        let mut b = WindowBuilder::new(2, 2, vec![2]);
        b.set_labels(2, vec![vec![1, 1], vec![2, 0]]);
        // off-diagonal entry between different multidegrees
        b.set_euler(2, RatMatrix::from_i64(&[&[2, 1], &[0, 2]]));
        assert!(matches!(b.build(), Err(ModuleError::EulerStore { degree: 2 })));
    }

    #[test]
    fn shift_round_trip_and_reindexing() {
        let e = e_line();
        let s = e.shift(1); // component at n is old n+1
        assert_eq!(s.lo(), -5);
        assert_eq!(s.hi(), -2);
        assert_eq!(s.dim_at(-2), Some(1));
        assert_eq!(e.shift(0), e);
        assert_eq!(s.shift(-1), e);
        // the euler matrix at new degree -2 is the old one at -1
        assert_eq!(
            s.euler_matrix(-2).unwrap(),
            e.euler_matrix(-1).unwrap()
        );
    }

    #[test]
    fn zero_module_is_valid_everywhere() {
        let z = WindowModule::zero(3, -2, 2);
        assert!(z.box_complete());
        assert!(z.is_zero_window());
        assert_eq!(z.euler_matrix(0).unwrap(), RatMatrix::zeros(0, 0));
        assert_eq!(z.euler_matrix(100).unwrap(), RatMatrix::zeros(0, 0));
    }

    #[test]
    fn ghost_rows_stack_below_the_matrix() {
        let a = Action {
            matrix: RatMatrix::from_i64(&[&[1, 0]]),
            overflow: Overflow::Tracked(alloc::vec![GhostBlock {
                target: alloc::vec![5, -1],
                rows: RatMatrix::from_i64(&[&[0, 3]]),
            }]),
        };
        assert_eq!(a.stacked(), RatMatrix::from_i64(&[&[1, 0], &[0, 3]]));
    }

    #[test]
    fn short_exact_check_accepts_direct_sum_and_rejects_junk() {
        let e = e_line();
        // E ⊕ E as a direct sum: inclusion of the first summand.
        let mut b = WindowBuilder::new(1, -4, vec![2; 4]);
        b.complete_above = true;
        for n in -4i64..-1 {
            b.set_x(1, n, RatMatrix::from_i64(&[&[1, 0], &[0, 1]]));
        }
        for n in -3i64..=-1 {
            b.set_d(1, n, RatMatrix::from_i64(&[&[n, 0], &[0, n]]));
        }
        let mid = b.build().unwrap();
        let incl: Vec<_> = (0..4).map(|_| RatMatrix::from_i64(&[&[1], &[0]])).collect();
        let proj: Vec<_> = (0..4).map(|_| RatMatrix::from_i64(&[&[0, 1]])).collect();
        check_short_exact(&e, &mid, &e, &incl, &proj).unwrap();

        let bad: Vec<_> = (0..4).map(|_| RatMatrix::from_i64(&[&[1, 0]])).collect();
        assert!(check_short_exact(&e, &mid, &e, &incl, &bad).is_err());
    }
}
