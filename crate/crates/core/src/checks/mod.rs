//! Structural verification of assembled local cohomology modules.
//!
//! Every statement quantifying over all of `Z` is tested on a finite window,
//! so verdicts are three-valued: PASS and FAIL speak only about certified
//! data (a FAIL always carries a concrete counterexample), and INCONCLUSIVE
//! names the boundary or completeness obstruction. Nothing here extrapolates
//! beyond what a window plus its completeness flags actually prove.

mod module_checks;
mod suite;

pub use module_checks::{
    candidate_forms, check_gtam, check_koszul_concentration, search_injective_form,
    InjectiveSearch,
};
pub use suite::{run_entry, run_suite, squarefree_ideals, SuiteConfig, SuiteEntry};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cech::{zdegree_status, BoxBounds, CechError, MonomialIdeal, ZdegreeStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

/// Verdict plus the witness or blocking reason that justifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub evidence: Vec<String>,
}

impl CheckOutcome {
    fn pass(evidence: Vec<String>) -> Self {
        CheckOutcome {
            verdict: Verdict::Pass,
            evidence,
        }
    }

    fn fail(evidence: Vec<String>) -> Self {
        CheckOutcome {
            verdict: Verdict::Fail,
            evidence,
        }
    }

    fn inconclusive(evidence: Vec<String>) -> Self {
        CheckOutcome {
            verdict: Verdict::Inconclusive,
            evidence,
        }
    }
}

/// One executed check inside a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub verdict: Verdict,
    pub evidence: Vec<String>,
    /// Filled by drivers that time execution; the core stays clock-free.
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == verdict).count()
    }
}

/// Certification status of one `Z`-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    Nonzero { witness: Vec<i64>, dim: usize },
    Zero,
    /// The box could not certify either way.
    Boundary,
}

/// Per-degree statuses over a window, the input to the pattern-shaped
/// theorem checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePattern {
    lo: i64,
    statuses: Vec<DegreeStatus>,
    pub complete_below: bool,
    pub complete_above: bool,
}

impl DegreePattern {
    pub fn new(lo: i64, statuses: Vec<DegreeStatus>) -> Self {
        assert!(!statuses.is_empty(), "pattern needs at least one degree");
        DegreePattern {
            lo,
            statuses,
            complete_below: false,
            complete_above: false,
        }
    }

    /// Classifies every degree of `[lo, hi]` by scanning the box.
    pub fn from_scan(
        ideal: &MonomialIdeal,
        index: usize,
        lo: i64,
        hi: i64,
        bounds: &BoxBounds,
    ) -> Result<Self, CechError> {
        assert!(lo <= hi);
        let mut statuses = Vec::with_capacity((hi - lo + 1) as usize);
        for n in lo..=hi {
            statuses.push(match zdegree_status(ideal, index, n, bounds)? {
                ZdegreeStatus::Nonzero { witness, dim } => DegreeStatus::Nonzero { witness, dim },
                ZdegreeStatus::ZeroCertified => DegreeStatus::Zero,
                ZdegreeStatus::ZeroInBox => DegreeStatus::Boundary,
            });
        }
        Ok(DegreePattern::new(lo, statuses))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.statuses.len() as i64 - 1
    }

    pub fn status(&self, n: i64) -> Option<&DegreeStatus> {
        if n < self.lo || n > self.hi() {
            return None;
        }
        Some(&self.statuses[(n - self.lo) as usize])
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.lo..=self.hi()
    }

    pub fn certified_nonzero(&self) -> impl Iterator<Item = i64> + '_ {
        self.degrees()
            .filter(|&n| matches!(self.status(n), Some(DegreeStatus::Nonzero { .. })))
    }

    pub fn certified_zero(&self) -> impl Iterator<Item = i64> + '_ {
        self.degrees()
            .filter(|&n| matches!(self.status(n), Some(DegreeStatus::Zero)))
    }
}

/// A nonzero module cannot vanish in all large degrees, so the only way a
/// window can exhibit a counterexample is certified-zero runs from the
/// support out to both window edges together with both completeness flags.
/// Anything short of that is consistent with the statement.
pub fn check_vanishing(pattern: &DegreePattern) -> CheckOutcome {
    let support: Vec<i64> = pattern.certified_nonzero().collect();
    let (Some(&first), Some(&last)) = (support.first(), support.last()) else {
        return CheckOutcome::pass(vec![String::from("no certified nonzero degree")]);
    };
    let zero_left = (pattern.lo()..first)
        .all(|n| matches!(pattern.status(n), Some(DegreeStatus::Zero)));
    let zero_right = (last + 1..=pattern.hi())
        .all(|n| matches!(pattern.status(n), Some(DegreeStatus::Zero)));
    let bounded_left = pattern.complete_below && zero_left;
    let bounded_right = pattern.complete_above && zero_right;
    if bounded_left && bounded_right {
        return CheckOutcome::fail(vec![format!(
            "support [{first}, {last}] is certified bounded on both sides: \
             zero out to the window edges and complete beyond them"
        )]);
    }
    CheckOutcome::pass(vec![format!(
        "support within [{first}, {last}] remains unbounded on at least one side \
         (left bounded: {bounded_left}, right bounded: {bounded_right})"
    )])
}

/// Tameness: a certified nonzero degree at `n0 >= -m+1` forces nonzero at
/// every later certified degree, and dually a certified nonzero `n0 <= -m`
/// forces nonzero at every earlier certified degree.
pub fn check_tameness(pattern: &DegreePattern, m: usize) -> CheckOutcome {
    let threshold = -(m as i64);
    // The earliest trigger covers the widest right range, the latest the
    // widest left range, so one trigger per direction suffices.
    if let Some(n0) = pattern.certified_nonzero().find(|&n| n >= threshold + 1) {
        for n in n0 + 1..=pattern.hi() {
            if matches!(pattern.status(n), Some(DegreeStatus::Zero)) {
                return CheckOutcome::fail(vec![format!(
                    "nonzero at {n0} >= {} but certified zero at {n}",
                    threshold + 1
                )]);
            }
        }
    }
    if let Some(n0) = pattern.certified_nonzero().filter(|&n| n <= threshold).max() {
        for n in pattern.lo()..n0 {
            if matches!(pattern.status(n), Some(DegreeStatus::Zero)) {
                return CheckOutcome::fail(vec![format!(
                    "nonzero at {n0} <= {threshold} but certified zero at {n}"
                )]);
            }
        }
    }
    CheckOutcome::pass(vec![format!(
        "no certified violation over [{}, {}]",
        pattern.lo(),
        pattern.hi()
    )])
}

/// Rigidity: one certified nonzero degree in a region forces the whole
/// region. Part (a): some `r <= -m` forces all `n <= -m`. Part (b): some
/// `s >= 0` forces all `n >= 0`. Part (c), for `m >= 2`: some `r` strictly
/// between `-m` and `0` forces every degree.
pub fn check_rigidity(pattern: &DegreePattern, m: usize) -> CheckOutcome {
    let top = -(m as i64);
    let support: Vec<i64> = pattern.certified_nonzero().collect();
    let mut notes = Vec::new();

    if let Some(&r) = support.iter().find(|&&n| n <= top) {
        for n in pattern.certified_zero() {
            if n <= top {
                return CheckOutcome::fail(vec![format!(
                    "part (a): nonzero at {r} <= {top} but certified zero at {n}"
                )]);
            }
        }
        notes.push(format!("part (a) triggered by {r}"));
    }
    if let Some(&s) = support.iter().find(|&&n| n >= 0) {
        for n in pattern.certified_zero() {
            if n >= 0 {
                return CheckOutcome::fail(vec![format!(
                    "part (b): nonzero at {s} >= 0 but certified zero at {n}"
                )]);
            }
        }
        notes.push(format!("part (b) triggered by {s}"));
    }
    if m >= 2 {
        if let Some(&r) = support.iter().find(|&&n| n > top && n < 0) {
            if let Some(n) = pattern.certified_zero().next() {
                return CheckOutcome::fail(vec![format!(
                    "part (c): nonzero at {r} in ({top}, 0) but certified zero at {n}"
                )]);
            }
            notes.push(format!("part (c) triggered by {r}"));
        }
    }
    if notes.is_empty() {
        notes.push(String::from("no part triggered; vacuous"));
    }
    CheckOutcome::pass(notes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternShape {
    AllZero,
    /// Nonzero exactly on `n <= -m`.
    LeftTail,
    /// Nonzero exactly on `n >= 0`.
    RightTail,
    AllOfZ,
}

impl PatternShape {
    pub fn describe(self) -> &'static str {
        match self {
            PatternShape::AllZero => "all-zero",
            PatternShape::LeftTail => "left tail (n <= -m)",
            PatternShape::RightTail => "right tail (n >= 0)",
            PatternShape::AllOfZ => "all of Z",
        }
    }
}

/// The support of a graded local cohomology module is one of four closed
/// shapes. Returns the first shape consistent with the certified data, or a
/// counterexample pair.
pub fn classify_shape(pattern: &DegreePattern, m: usize) -> Result<PatternShape, (i64, i64)> {
    let top = -(m as i64);
    let support: Vec<i64> = pattern.certified_nonzero().collect();
    let zeros: Vec<i64> = pattern.certified_zero().collect();
    if support.is_empty() {
        return Ok(PatternShape::AllZero);
    }
    if support.iter().all(|&n| n <= top) && zeros.iter().all(|&n| n > top) {
        return Ok(PatternShape::LeftTail);
    }
    if support.iter().all(|&n| n >= 0) && zeros.iter().all(|&n| n < 0) {
        return Ok(PatternShape::RightTail);
    }
    if zeros.is_empty() {
        return Ok(PatternShape::AllOfZ);
    }
    Err((support[0], zeros[0]))
}

pub fn check_shape(pattern: &DegreePattern, m: usize) -> CheckOutcome {
    match classify_shape(pattern, m) {
        Ok(shape) => CheckOutcome::pass(vec![format!("shape: {}", shape.describe())]),
        Err((s, z)) => CheckOutcome::fail(vec![format!(
            "no admissible shape: nonzero at {s} and certified zero at {z} \
             fit neither tail nor all of Z"
        )]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(m: usize) -> MonomialIdeal {
        MonomialIdeal::new(
            m,
            (0..m)
                .map(|i| {
                    let mut g = alloc::vec![0u32; m];
                    g[i] = 1;
                    g
                })
                .collect(),
        )
        .unwrap()
    }

    fn nz(n: i64) -> DegreeStatus {
        DegreeStatus::Nonzero {
            witness: alloc::vec![n],
            dim: 1,
        }
    }

    #[test]
    fn scanned_plane_pattern_passes_everything() {
        let ideal = vars(2);
        let bounds = BoxBounds::default_for(&ideal, -6, 3);
        let mut p = DegreePattern::from_scan(&ideal, 2, -6, 3, &bounds).unwrap();
        p.complete_below = false;
        p.complete_above = true;
        for n in -6..=-2 {
            assert!(matches!(p.status(n), Some(DegreeStatus::Nonzero { .. })), "at {n}");
        }
        for n in -1..=3 {
            assert_eq!(p.status(n), Some(&DegreeStatus::Zero));
        }
        assert_eq!(check_vanishing(&p).verdict, Verdict::Pass);
        assert_eq!(check_tameness(&p, 2).verdict, Verdict::Pass);
        assert_eq!(check_rigidity(&p, 2).verdict, Verdict::Pass);
        assert_eq!(classify_shape(&p, 2), Ok(PatternShape::LeftTail));
    }

    #[test]
    fn scanned_principal_pattern_is_all_of_z() {
        let ideal = MonomialIdeal::parse("x1", Some(2)).unwrap();
        let bounds = BoxBounds::default_for(&ideal, -4, 4);
        let p = DegreePattern::from_scan(&ideal, 1, -4, 4, &bounds).unwrap();
        assert!(p.certified_nonzero().count() == 9);
        assert_eq!(check_vanishing(&p).verdict, Verdict::Pass);
        assert_eq!(check_tameness(&p, 2).verdict, Verdict::Pass);
        assert_eq!(check_rigidity(&p, 2).verdict, Verdict::Pass);
        assert_eq!(classify_shape(&p, 2), Ok(PatternShape::AllOfZ));
    }

    #[test]
    fn constructed_violations_fail_with_witnesses() {
        // nonzero at 1, certified zero at 3
        let p = DegreePattern::new(
            0,
            alloc::vec![
                DegreeStatus::Zero,
                nz(1),
                DegreeStatus::Boundary,
                DegreeStatus::Zero,
            ],
        );
        let out = check_tameness(&p, 2);
        assert_eq!(out.verdict, Verdict::Fail);
        assert!(out.evidence[0].contains("nonzero at 1"));
        assert!(out.evidence[0].contains("zero at 3"));

        // m=2, nonzero only at -1, certified zero at 5: rigidity part (c)
        let statuses: Vec<DegreeStatus> = (-2..=5)
            .map(|n| if n == -1 { nz(-1) } else if n == 5 { DegreeStatus::Zero } else { DegreeStatus::Boundary })
            .collect();
        let p = DegreePattern::new(-2, statuses);
        let out = check_rigidity(&p, 2);
        assert_eq!(out.verdict, Verdict::Fail);
        assert!(out.evidence[0].contains("part (c)"));
        assert_eq!(check_shape(&p, 2).verdict, Verdict::Fail);
    }

    #[test]
    fn vanishing_fails_only_with_full_certification() {
        let statuses = alloc::vec![DegreeStatus::Zero, nz(-1), DegreeStatus::Zero];
        let mut p = DegreePattern::new(-2, statuses);
        assert_eq!(check_vanishing(&p).verdict, Verdict::Pass);
        p.complete_below = true;
        assert_eq!(check_vanishing(&p).verdict, Verdict::Pass);
        p.complete_above = true;
        let out = check_vanishing(&p);
        assert_eq!(out.verdict, Verdict::Fail);
        assert!(out.evidence[0].contains("bounded on both sides"));
    }

    #[test]
    fn rigidity_parts_a_and_b() {
        // nonzero at -3 (<= -m) and certified zero at -4: part (a)
        let p = DegreePattern::new(-4, alloc::vec![DegreeStatus::Zero, nz(-3), DegreeStatus::Boundary]);
        let out = check_rigidity(&p, 2);
        assert_eq!(out.verdict, Verdict::Fail);
        assert!(out.evidence[0].contains("part (a)"));

        let p = DegreePattern::new(0, alloc::vec![nz(0), DegreeStatus::Zero]);
        let out = check_rigidity(&p, 2);
        assert_eq!(out.verdict, Verdict::Fail);
        assert!(out.evidence[0].contains("part (b)"));
    }

    #[test]
    fn tame_pattern_with_boundary_gaps_passes() {
        // boundary degrees are not certified, so they cannot witness failure
        let p = DegreePattern::new(
            -1,
            alloc::vec![nz(-1), DegreeStatus::Boundary, nz(1), DegreeStatus::Boundary],
        );
        assert_eq!(check_tameness(&p, 1).verdict, Verdict::Pass);
        assert_eq!(check_rigidity(&p, 1).verdict, Verdict::Pass);
    }
}
