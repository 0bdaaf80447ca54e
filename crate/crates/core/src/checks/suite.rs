//! A batch runner: assemble modules, run every applicable check, aggregate
//! one flat report. Failures and assembly errors become results, never
//! panics, so a single bad entry cannot take down the batch.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{
    check_gtam, check_koszul_concentration, check_rigidity, check_shape, check_tameness,
    check_vanishing, search_injective_form, CheckOutcome, CheckResult, DegreePattern,
    VerificationReport,
};
use crate::cech::{assemble_window_module, BoxBounds, LCQuery, MonomialIdeal};
use crate::window::{
    check_generalized_eulerian, DegreeNilpotency, EulerianReport, EulerianVerdict, GeneratorSide,
    WindowModule,
};

#[derive(Clone, Debug)]
pub enum SuiteEntry {
    /// Assemble `H_I^i(R)` over `[lo, hi]` and run the full check battery.
    Module {
        ideal: MonomialIdeal,
        index: usize,
        lo: i64,
        hi: i64,
        /// `None` means the default box for the window.
        bounds: Option<BoxBounds>,
    },
    /// Run only the degree-pattern checks on externally supplied data.
    Pattern { m: usize, pattern: DegreePattern },
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteConfig {
    /// Every squarefree monomial ideal in up to three variables (one entry
    /// per minimal generating set, i.e. per antichain of variable subsets),
    /// every cohomological index, over the window `[-8, 4]`.
    pub fn default_suite() -> SuiteConfig {
        let mut entries = Vec::new();
        for m in 1..=3 {
            for ideal in squarefree_ideals(m) {
                for index in 0..=ideal.generator_count() {
                    entries.push(SuiteEntry::Module {
                        ideal: ideal.clone(),
                        index,
                        lo: -8,
                        hi: 4,
                        bounds: None,
                    });
                }
            }
        }
        SuiteConfig { entries }
    }
}

/// All squarefree monomial ideals in `m` variables with minimal generating
/// sets, sorted by generator list. Minimal generating sets of squarefree
/// monomial ideals are exactly the nonempty antichains of nonempty subsets
/// of the variables.
pub fn squarefree_ideals(m: usize) -> Vec<MonomialIdeal> {
    assert!(m >= 1 && m <= 16);
    let masks: Vec<u32> = (1..(1u32 << m)).collect();
    let mut out = Vec::new();
    for choice in 1u64..(1u64 << masks.len()) {
        let chosen: Vec<u32> = masks
            .iter()
            .enumerate()
            .filter(|(i, _)| choice >> i & 1 == 1)
            .map(|(_, &mk)| mk)
            .collect();
        let antichain = chosen
            .iter()
            .all(|&a| chosen.iter().all(|&b| a == b || a & b != a));
        if !antichain {
            continue;
        }
        let gens = chosen
            .iter()
            .map(|&mk| (0..m).map(|i| (mk >> i) & 1).collect())
            .collect();
        out.push(MonomialIdeal::new(m, gens).unwrap());
    }
    out.sort_by(|a, b| a.generators().cmp(b.generators()));
    out
}

fn to_result(name: &str, anchor: &str, outcome: CheckOutcome) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        anchor: anchor.to_string(),
        verdict: outcome.verdict,
        evidence: outcome.evidence,
        runtime_ms: None,
    }
}

fn eulerian_outcome(report: &EulerianReport) -> CheckOutcome {
    if report.verdict == EulerianVerdict::NotGeneralizedEulerian {
        let (n, _) = report
            .per_degree
            .iter()
            .find(|(_, r)| matches!(r, DegreeNilpotency::NotNilpotent))
            .expect("verdict carries a witness");
        return CheckOutcome::fail(vec![format!(
            "euler operator minus the degree is not nilpotent at degree {n}"
        )]);
    }
    if report.skipped == report.per_degree.len() && !report.per_degree.is_empty() {
        return CheckOutcome::inconclusive(vec![String::from(
            "no degree carries a stored euler matrix",
        )]);
    }
    CheckOutcome::pass(vec![format!(
        "{:?} with maximal nilpotency index {} ({} degrees skipped)",
        report.verdict, report.max_index, report.skipped
    )])
}

fn pattern_checks(name: &str, m: usize, pattern: &DegreePattern) -> Vec<CheckResult> {
    alloc::vec![
        to_result(name, "pattern-vanishing", check_vanishing(pattern)),
        to_result(name, "pattern-tameness", check_tameness(pattern, m)),
        to_result(name, "pattern-rigidity", check_rigidity(pattern, m)),
        to_result(name, "pattern-shape", check_shape(pattern, m)),
    ]
}

fn module_checks_battery(
    name: &str,
    ideal: &MonomialIdeal,
    index: usize,
    lo: i64,
    hi: i64,
    bounds: &BoxBounds,
    module: &WindowModule,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(to_result(
        name,
        "euler-nilpotence",
        eulerian_outcome(&check_generalized_eulerian(module)),
    ));
    if module.m() == 1 {
        out.push(to_result(
            name,
            "koszul-concentration",
            check_koszul_concentration(module),
        ));
    }
    out.push(to_result(name, "torsion-window", check_gtam(module)));
    match DegreePattern::from_scan(ideal, index, lo, hi, bounds) {
        Ok(mut pattern) => {
            pattern.complete_below = module.complete_below();
            pattern.complete_above = module.complete_above();
            out.extend(pattern_checks(name, module.m(), &pattern));
        }
        Err(e) => out.push(to_result(
            name,
            "pattern-vanishing",
            CheckOutcome::inconclusive(vec![format!("degree scan failed: {e}")]),
        )),
    }
    for (side, anchor) in [
        (GeneratorSide::X, "injective-form-x"),
        (GeneratorSide::D, "injective-form-d"),
    ] {
        out.push(to_result(
            name,
            anchor,
            search_injective_form(module, side).outcome,
        ));
    }
    out
}

pub fn run_entry(entry: &SuiteEntry) -> Vec<CheckResult> {
    match entry {
        SuiteEntry::Module {
            ideal,
            index,
            lo,
            hi,
            bounds,
        } => {
            let name = format!("{}|i={index}", ideal.render());
            let mut query = LCQuery::new(ideal.clone(), *index, *lo, *hi);
            if let Some(b) = bounds {
                query = query.with_box(b.clone());
            }
            match assemble_window_module(&query) {
                Ok(module) => {
                    module_checks_battery(&name, ideal, *index, *lo, *hi, &query.bounds, &module)
                }
                Err(e) => alloc::vec![to_result(
                    &name,
                    "window-assembly",
                    CheckOutcome::inconclusive(alloc::vec![format!("assembly failed: {e}")]),
                )],
            }
        }
        SuiteEntry::Pattern { m, pattern } => {
            let name = format!("pattern(m={m})");
            pattern_checks(&name, *m, pattern)
        }
    }
}

/// Runs every entry in order and concatenates the results. Deterministic:
/// two runs over the same config produce identical reports.
pub fn run_suite(config: &SuiteConfig) -> VerificationReport {
    let mut checks = Vec::new();
    for entry in &config.entries {
        checks.extend(run_entry(entry));
    }
    VerificationReport { checks }
}
