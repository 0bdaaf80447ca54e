//! Box bounds, degree scans, and certification of zero components.
//!
//! Components of `H_I^i(R)` in a fixed `Z`-degree `n` spread over infinitely
//! many multidegrees, so any finite computation scans a box
//! `{a : |a_j| <= B_j}`. A scan can certify a zero degree only when the box
//! provably sees every kind of multidegree: on the squarefree path slices
//! depend on the sign pattern of `a` alone, and the box invariant guarantees
//! each realizable pattern a representative.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::{sign_pattern, slice, CechError, MonomialIdeal};

/// Per-axis symmetric bounds: the box is `{a : -per_axis[j] <= a_j <= per_axis[j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxBounds {
    per_axis: Vec<i64>,
}

impl BoxBounds {
    pub fn new(per_axis: Vec<i64>) -> Result<Self, CechError> {
        if per_axis.is_empty() {
            return Err(CechError::BoxInvalid(alloc::string::String::from("no axes")));
        }
        if let Some(b) = per_axis.iter().find(|&&b| b < 1) {
            return Err(CechError::BoxInvalid(format!("bound {b} below 1")));
        }
        Ok(BoxBounds { per_axis })
    }

    pub fn uniform(m: usize, b: i64) -> Result<Self, CechError> {
        BoxBounds::new(vec![b; m])
    }

    /// `B_j = max(window radius + max generator degree, m + 2)`, enough for
    /// every realizable witness over the window on the squarefree path and
    /// for the exponent-based margin otherwise.
    pub fn default_for(ideal: &MonomialIdeal, lo: i64, hi: i64) -> Self {
        let radius = window_radius(lo, hi);
        let max_degree = ideal
            .generators()
            .iter()
            .map(|g| g.iter().map(|&e| e as i64).sum::<i64>())
            .max()
            .unwrap_or(0);
        let b = (radius + max_degree).max(ideal.m() as i64 + 2);
        BoxBounds {
            per_axis: vec![b; ideal.m()],
        }
    }

    pub fn per_axis(&self) -> &[i64] {
        &self.per_axis
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        a.len() == self.per_axis.len()
            && a.iter().zip(&self.per_axis).all(|(&c, &b)| -b <= c && c <= b)
    }
}

pub(crate) fn window_radius(lo: i64, hi: i64) -> i64 {
    lo.unsigned_abs().max(hi.unsigned_abs()) as i64
}

/// Total degrees of in-box multidegrees with the given sign pattern
/// (`true` = negative coordinate), as a closed interval.
pub(crate) fn in_box_degree_range(negative: &[bool], bounds: &[i64]) -> (i64, i64) {
    let mut lo = 0;
    let mut hi = 0;
    for (&neg, &b) in negative.iter().zip(bounds) {
        if neg {
            lo -= b;
            hi -= 1;
        } else {
            hi += b;
        }
    }
    (lo, hi)
}

/// Total degrees the pattern realizes anywhere in `Z^m`: an interval with
/// `None` for an unbounded end.
pub(crate) fn realizable_degree_range(negative: &[bool]) -> (Option<i64>, Option<i64>) {
    let m = negative.len();
    let k = negative.iter().filter(|&&b| b).count();
    let lo = if k == 0 { Some(0) } else { None };
    let hi = if k == m { Some(-(m as i64)) } else { None };
    (lo, hi)
}

/// Whether the pattern has a representative of total degree `n` with some
/// coordinate outside the box. (Always true for mixed patterns: both sides
/// are unbounded.)
pub(crate) fn out_of_box_representative(negative: &[bool], bounds: &[i64], n: i64) -> bool {
    let m = negative.len();
    let k = negative.iter().filter(|&&b| b).count();
    if k > 0 && k < m {
        return true;
    }
    let b_min = negative
        .iter()
        .zip(bounds)
        .map(|(_, &b)| b)
        .min()
        .expect("nonempty pattern");
    if k == m {
        n <= -b_min - m as i64
    } else {
        n >= b_min + 1
    }
}

fn pattern_from_bits(bits: usize, m: usize) -> Vec<bool> {
    (0..m).map(|i| bits & (1 << i) != 0).collect()
}

/// Rejects boxes that could not support certification over `[lo, hi]`:
/// on the squarefree path every realizable pattern must have an in-box
/// representative at each window degree; otherwise the exponent margin
/// `B_j >= max exponent + window radius` is required.
pub fn validate_box(
    ideal: &MonomialIdeal,
    bounds: &BoxBounds,
    lo: i64,
    hi: i64,
) -> Result<(), CechError> {
    let m = ideal.m();
    if bounds.per_axis.len() != m {
        return Err(CechError::BoxInvalid(format!(
            "{} axes for m={m}",
            bounds.per_axis.len()
        )));
    }
    if lo > hi {
        return Err(CechError::WindowInvalid(format!("lo {lo} > hi {hi}")));
    }
    if m >= 32 {
        return Err(CechError::BoxInvalid(format!(
            "pattern certification supports at most 31 variables, got {m}"
        )));
    }
    if ideal.is_squarefree() {
        for bits in 0..(1usize << m) {
            let p = pattern_from_bits(bits, m);
            let (rlo, rhi) = realizable_degree_range(&p);
            let need_lo = rlo.map_or(lo, |r| r.max(lo));
            let need_hi = rhi.map_or(hi, |r| r.min(hi));
            if need_lo > need_hi {
                continue;
            }
            let (blo, bhi) = in_box_degree_range(&p, &bounds.per_axis);
            if blo > need_lo || bhi < need_hi {
                return Err(CechError::BoxInvalid(format!(
                    "pattern {p:?} realizes degrees [{need_lo}, {need_hi}] but the box only covers [{blo}, {bhi}]"
                )));
            }
        }
    } else {
        let need = ideal.max_exponent() as i64 + window_radius(lo, hi);
        if let Some(&b) = bounds.per_axis.iter().find(|&&b| b < need) {
            return Err(CechError::BoxInvalid(format!(
                "bound {b} below max exponent + window radius = {need}"
            )));
        }
    }
    Ok(())
}

/// Visits every in-box multidegree of total degree `n` in descending
/// lexicographic order.
pub(crate) fn for_each_in_box_desc<F>(bounds: &[i64], n: i64, f: &mut F)
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    let m = bounds.len();
    assert!(m > 0);
    // suffix[i] = sum of bounds[i..]; coordinates i.. can contribute any
    // total in [-suffix[i], suffix[i]].
    let mut suffix = vec![0i64; m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1] + bounds[i];
    }
    let mut a = vec![0i64; m];
    fn rec<F>(
        bounds: &[i64],
        suffix: &[i64],
        remaining: i64,
        i: usize,
        a: &mut Vec<i64>,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        if i == bounds.len() {
            debug_assert_eq!(remaining, 0);
            return f(a);
        }
        let top = bounds[i].min(remaining + suffix[i + 1]);
        let bottom = (-bounds[i]).max(remaining - suffix[i + 1]);
        let mut v = top;
        while v >= bottom {
            a[i] = v;
            rec(bounds, suffix, remaining - v, i + 1, a, f)?;
            v -= 1;
        }
        ControlFlow::Continue(())
    }
    let _ = rec(&bounds[..m], &suffix, n, 0, &mut a, f);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZdegreeStatus {
    Nonzero { witness: Vec<i64>, dim: usize },
    ZeroInBox,
    ZeroCertified,
}

/// Scans every in-box multidegree of total degree `n` and classifies the
/// `Z`-graded component of `H_I^i(R)`.
///
/// A nonzero verdict is constructive (first witness in descending
/// lexicographic order). A zero verdict is certified only when the ideal is
/// squarefree, every pattern realizing degree `n` was observed in the box,
/// and all representatives of each pattern agreed.
pub fn zdegree_status(
    ideal: &MonomialIdeal,
    index: usize,
    n: i64,
    bounds: &BoxBounds,
) -> Result<ZdegreeStatus, CechError> {
    if index > ideal.generator_count() {
        return Err(CechError::IndexOutOfRange {
            index,
            generators: ideal.generator_count(),
        });
    }
    validate_box(ideal, bounds, n, n)?;
    let mut witness: Option<(Vec<i64>, usize)> = None;
    let mut per_pattern: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    let mut agree = true;
    for_each_in_box_desc(bounds.per_axis(), n, &mut |a| {
        let dim = slice(ideal, a).complex.homology(index).dim;
        if dim > 0 && witness.is_none() {
            witness = Some((a.to_vec(), dim));
        }
        match per_pattern.get(&sign_pattern(a)) {
            Some(&seen) => {
                if seen != dim {
                    agree = false;
                }
            }
            None => {
                per_pattern.insert(sign_pattern(a), dim);
            }
        }
        ControlFlow::Continue(())
    });
    if let Some((witness, dim)) = witness {
        return Ok(ZdegreeStatus::Nonzero { witness, dim });
    }
    if !ideal.is_squarefree() || !agree {
        return Ok(ZdegreeStatus::ZeroInBox);
    }
    let m = ideal.m();
    for bits in 0..(1usize << m) {
        let p = pattern_from_bits(bits, m);
        let (rlo, rhi) = realizable_degree_range(&p);
        if rlo.is_some_and(|r| n < r) || rhi.is_some_and(|r| n > r) {
            continue;
        }
        if !per_pattern.contains_key(&p) {
            return Ok(ZdegreeStatus::ZeroInBox);
        }
    }
    Ok(ZdegreeStatus::ZeroCertified)
}
