//! Čech-complex computation of multigraded local cohomology components.
//!
//! For a monomial ideal `I = (f_1..f_s)` in `Q[x_1..x_m]`, the Čech complex
//! `0 -> R -> (+) R_{f_t} -> ... -> R_{f_1...f_s} -> 0` is `Z^m`-graded and
//! every localization has zero- or one-dimensional graded pieces, so the
//! degree-`a` slice is a finite complex of `Q`-lines indexed by generator
//! subsets: `T` contributes exactly when `a_i >= 0` for every axis `i`
//! outside the union of the supports of `{f_t : t in T}` (inverting a
//! monomial frees precisely the axes in its support). Homology of the slice
//! at spot `i` is the component `H_I^i(R)_a`.
//!
//! Because presence depends only on which coordinates of `a` are negative,
//! slices with the same sign pattern are the same complex. The scanning and
//! assembly code exploits that, and [`scan::zdegree_status`] re-verifies the
//! agreement on every in-box representative rather than trusting it.

mod assemble;
mod oracle;
mod scan;

pub use assemble::{assemble_window_module, LCQuery};
pub use oracle::top_lc_oracle;
pub use scan::{validate_box, zdegree_status, BoxBounds, ZdegreeStatus};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{FiniteComplex, RatMatrix};
use crate::window::ModuleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CechError {
    Parse(String),
    EmptyIdeal,
    InvalidGenerator(String),
    IndexOutOfRange { index: usize, generators: usize },
    BoxInvalid(String),
    WindowInvalid(String),
    /// An assembly-time verification failed; this indicates a bug, not bad
    /// input, and is surfaced loudly rather than patched over.
    Assembly(String),
    Module(ModuleError),
}

impl From<ModuleError> for CechError {
    fn from(e: ModuleError) -> Self {
        CechError::Module(e)
    }
}

impl core::fmt::Display for CechError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CechError::Parse(s) => write!(f, "ideal parse error: {s}"),
            CechError::EmptyIdeal => write!(f, "ideal needs at least one generator"),
            CechError::InvalidGenerator(s) => write!(f, "invalid generator: {s}"),
            CechError::IndexOutOfRange { index, generators } => {
                write!(f, "cohomological index {index} exceeds generator count {generators}")
            }
            CechError::BoxInvalid(s) => write!(f, "box bounds rejected: {s}"),
            CechError::WindowInvalid(s) => write!(f, "window rejected: {s}"),
            CechError::Assembly(s) => write!(f, "assembly self-check failed: {s}"),
            CechError::Module(e) => write!(f, "{e}"),
        }
    }
}

/// A monomial ideal given by its minimal monomial generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    m: usize,
    generators: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Builds the ideal from exponent vectors, discarding generators that
    /// another generator divides and sorting the rest for a canonical form.
    pub fn new(m: usize, generators: Vec<Vec<u32>>) -> Result<Self, CechError> {
        if generators.is_empty() {
            return Err(CechError::EmptyIdeal);
        }
        for g in &generators {
            if g.len() != m {
                return Err(CechError::InvalidGenerator(format!(
                    "exponent vector of length {} for m={m}",
                    g.len()
                )));
            }
            if g.iter().all(|&e| e == 0) {
                return Err(CechError::InvalidGenerator(String::from(
                    "the constant monomial generates the unit ideal",
                )));
            }
        }
        let divides = |f: &[u32], g: &[u32]| f.iter().zip(g).all(|(a, b)| a <= b);
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        for g in &generators {
            if generators
                .iter()
                .any(|f| f != g && divides(f, g) && !(divides(g, f) && f > g))
            {
                continue;
            }
            if !minimal.contains(g) {
                minimal.push(g.clone());
            }
        }
        minimal.sort();
        Ok(MonomialIdeal {
            m,
            generators: minimal,
        })
    }

    /// Parses `x1*x2, x2^2*x3`. The variable count is the largest index
    /// seen unless `m_override` raises it.
    pub fn parse(text: &str, m_override: Option<usize>) -> Result<Self, CechError> {
        let mut raw: Vec<Vec<(usize, u32)>> = Vec::new();
        let mut max_index = 0usize;
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(CechError::Parse(String::from("empty generator")));
            }
            let mut factors = Vec::new();
            for factor in part.split('*') {
                let factor = factor.trim();
                let rest = factor
                    .strip_prefix('x')
                    .or_else(|| factor.strip_prefix('X'))
                    .ok_or_else(|| {
                        CechError::Parse(format!("expected a variable, found {factor:?}"))
                    })?;
                let (idx_text, exp_text) = match rest.split_once('^') {
                    Some((i, e)) => (i, Some(e)),
                    None => (rest, None),
                };
                let index: usize = idx_text
                    .trim()
                    .parse()
                    .map_err(|_| CechError::Parse(format!("bad variable index in {factor:?}")))?;
                if index == 0 {
                    return Err(CechError::Parse(String::from("variable indices start at 1")));
                }
                let exponent: u32 = match exp_text {
                    Some(e) => e
                        .trim()
                        .parse()
                        .map_err(|_| CechError::Parse(format!("bad exponent in {factor:?}")))?,
                    None => 1,
                };
                if exponent == 0 {
                    return Err(CechError::Parse(String::from("zero exponents not allowed")));
                }
                max_index = max_index.max(index);
                factors.push((index, exponent));
            }
            raw.push(factors);
        }
        let m = match m_override {
            Some(m) => {
                if m < max_index {
                    return Err(CechError::Parse(format!(
                        "m={m} is smaller than the largest variable index {max_index}"
                    )));
                }
                m
            }
            None => max_index,
        };
        let generators = raw
            .into_iter()
            .map(|factors| {
                let mut v = vec![0u32; m];
                for (i, e) in factors {
                    v[i - 1] += e;
                }
                v
            })
            .collect();
        MonomialIdeal::new(m, generators)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(|g| g.iter().all(|&e| e <= 1))
    }

    pub fn max_exponent(&self) -> u32 {
        self.generators
            .iter()
            .flat_map(|g| g.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (gi, g) in self.generators.iter().enumerate() {
            if gi > 0 {
                out.push_str(", ");
            }
            let mut first = true;
            for (i, &e) in g.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    out.push('*');
                }
                first = false;
                out.push_str(&format!("x{}", i + 1));
                if e > 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }

    /// Axes freed by inverting the monomials indexed by `mask`.
    fn support_union(&self, mask: u32) -> Vec<bool> {
        let mut freed = vec![false; self.m];
        for (t, g) in self.generators.iter().enumerate() {
            if mask & (1 << t) == 0 {
                continue;
            }
            for (i, &e) in g.iter().enumerate() {
                if e > 0 {
                    freed[i] = true;
                }
            }
        }
        freed
    }

    fn present(&self, mask: u32, negative: &[bool]) -> bool {
        let freed = self.support_union(mask);
        (0..self.m).all(|i| freed[i] || !negative[i])
    }
}

/// Size-`j` subsets of `0..s` as bitmasks, in lexicographic order of the
/// sorted index tuples.
fn subsets_of_size(s: usize, j: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn rec(s: usize, j: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<u32>) {
        if current.len() == j {
            out.push(current.iter().fold(0u32, |acc, &i| acc | (1 << i)));
            return;
        }
        for i in start..s {
            if s - i < j - current.len() {
                break;
            }
            current.push(i);
            rec(s, j, i + 1, current, out);
            current.pop();
        }
    }
    rec(s, j, 0, &mut current, &mut out);
    out
}

/// The degree-`a` slice of the Čech complex.
#[derive(Clone, Debug)]
pub struct MultidegreeSlice {
    pub a: Vec<i64>,
    /// Present subsets per spot, as bitmasks in lexicographic subset order.
    pub present: Vec<Vec<u32>>,
    pub complex: FiniteComplex,
}

impl MultidegreeSlice {
    pub fn is_present(&self, mask: u32) -> bool {
        let j = mask.count_ones() as usize;
        self.present[j].contains(&mask)
    }
}

pub(crate) fn sign_pattern(a: &[i64]) -> Vec<bool> {
    a.iter().map(|&c| c < 0).collect()
}

/// Builds the slice complex for the sign pattern `negative`, recording `a`
/// verbatim for reporting (only its pattern shapes the complex).
pub(crate) fn slice_for_pattern(
    ideal: &MonomialIdeal,
    negative: &[bool],
    a: Vec<i64>,
) -> MultidegreeSlice {
    let s = ideal.generator_count();
    let mut present: Vec<Vec<u32>> = Vec::with_capacity(s + 1);
    for j in 0..=s {
        present.push(
            subsets_of_size(s, j)
                .into_iter()
                .filter(|&mask| ideal.present(mask, negative))
                .collect(),
        );
    }
    let dims: Vec<usize> = present.iter().map(|p| p.len()).collect();
    let mut diffs = Vec::with_capacity(s);
    for j in 0..s {
        let mut d = RatMatrix::zeros(dims[j + 1], dims[j]);
        for (col, &tmask) in present[j].iter().enumerate() {
            for t in 0..s {
                if tmask & (1 << t) != 0 {
                    continue;
                }
                let umask = tmask | (1 << t);
                // Presence is monotone under adding generators, so the
                // target is always present.
                let row = present[j + 1]
                    .iter()
                    .position(|&u| u == umask)
                    .expect("superset of a present subset is present");
                let below = (tmask & ((1u32 << t) - 1)).count_ones();
                let sign = if below % 2 == 0 { 1 } else { -1 };
                d.set(row, col, crate::rat::rat_int(sign));
            }
        }
        diffs.push(d);
    }
    let complex = FiniteComplex::new(dims, diffs).expect("slice differentials square to zero");
    MultidegreeSlice {
        a,
        present,
        complex,
    }
}

pub fn slice(ideal: &MonomialIdeal, a: &[i64]) -> MultidegreeSlice {
    assert_eq!(a.len(), ideal.m(), "multidegree arity mismatch");
    slice_for_pattern(ideal, &sign_pattern(a), a.to_vec())
}

/// `dim_Q H_I^i(R)_a`.
pub fn component_dim(ideal: &MonomialIdeal, index: usize, a: &[i64]) -> Result<usize, CechError> {
    if index > ideal.generator_count() {
        return Err(CechError::IndexOutOfRange {
            index,
            generators: ideal.generator_count(),
        });
    }
    Ok(slice(ideal, a).complex.homology(index).dim)
}
