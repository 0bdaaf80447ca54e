//! Checks that consume a whole assembled module: Koszul concentration,
//! torsion placement, and the search for an injectively acting linear form.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{collections::BTreeMap, vec};

use super::{CheckOutcome, Verdict};
use crate::linalg::RatMatrix;
use crate::rat::rat_int;
use crate::window::{
    check_generalized_eulerian, koszul_d, koszul_x, torsion, GeneratorSide, MapView, OperatorWord,
    WindowModule,
};

/// Degrees of certified nonzero components, i.e. the support the module can
/// actually vouch for.
fn certified_support(module: &WindowModule) -> Vec<i64> {
    module
        .degrees()
        .filter(|&n| {
            let c = module.component(n).unwrap();
            c.exact && c.dim > 0
        })
        .collect()
}

/// For one variable, the Koszul homology of a generalized Eulerian module
/// concentrates: both homologies of `d` live in degree `-1` only, both
/// homologies of `x` in degree `0` only.
pub fn check_koszul_concentration(module: &WindowModule) -> CheckOutcome {
    if module.m() != 1 {
        return CheckOutcome::inconclusive(vec![format!(
            "concentration is a one-variable statement, module has m={}",
            module.m()
        )]);
    }
    if !check_generalized_eulerian(module).is_generalized_eulerian() {
        return CheckOutcome::inconclusive(vec![String::from(
            "module is not generalized Eulerian, hypothesis unmet",
        )]);
    }
    let pairs = match (koszul_d(module, 1), koszul_x(module, 1)) {
        (Ok(d), Ok(x)) => [(d, "d", -1i64), (x, "x", 0i64)],
        (Err(e), _) | (_, Err(e)) => {
            return CheckOutcome::inconclusive(vec![format!("koszul homology failed: {e}")])
        }
    };
    let mut evidence = Vec::new();
    for (pair, side, allowed) in &pairs {
        for (h, which) in [(&pair.h0, "h0"), (&pair.h1, "h1")] {
            let support = certified_support(h);
            if let Some(&bad) = support.iter().find(|&&n| n != *allowed) {
                return CheckOutcome::fail(vec![format!(
                    "{which} of {side} is certified nonzero at degree {bad}, \
                     outside the allowed degree {allowed}"
                )]);
            }
            let uncertified = h
                .degrees()
                .filter(|&n| !h.component(n).unwrap().exact)
                .count();
            evidence.push(format!(
                "{which} of {side}: certified support {support:?} within {{{allowed}}} \
                 ({uncertified} boundary degrees uncertified)"
            ));
        }
    }
    CheckOutcome::pass(evidence)
}

fn generator_words(side: GeneratorSide, m: usize) -> Vec<OperatorWord> {
    (1..=m)
        .map(|axis| OperatorWord::generator(side, axis, m))
        .collect()
}

/// Torsion placement for generalized Eulerian modules: elements annihilated
/// by powers of every `x_i` can only live in degrees `<= -m`, elements
/// annihilated by powers of every `d_i` only in degrees `>= -m+1`.
///
/// A computed torsion vector is a genuine annihilated element even on
/// truncated components (its images are fully tracked, ghost rows included),
/// so a misplaced one always refutes the statement. The positive quantifier
/// runs over certified degrees only; degrees the window cannot settle are
/// reported but carry no weight. INCONCLUSIVE is reserved for a failed
/// hypothesis or a torsion computation error.
pub fn check_gtam(module: &WindowModule) -> CheckOutcome {
    let m = module.m();
    let threshold = -(m as i64);
    let sides = [
        (GeneratorSide::X, "x"),
        (GeneratorSide::D, "d"),
    ];
    let mut evidence = Vec::new();
    let mut blocked: Vec<String> = Vec::new();
    for (side, label) in sides {
        let t = match torsion(module, &generator_words(side, m)) {
            Ok(t) => t,
            Err(e) => {
                blocked.push(format!("{label}-torsion computation failed: {e}"));
                continue;
            }
        };
        // Forbidden region: where this side's torsion must vanish.
        let forbidden = |n: i64| match side {
            GeneratorSide::X => n >= threshold + 1,
            GeneratorSide::D => n <= threshold,
        };
        let mut certified = 0usize;
        let mut unsettled = 0usize;
        for n in module.degrees().filter(|&n| forbidden(n)) {
            let tc = t.component(n).unwrap();
            if tc.dim > 0 {
                return CheckOutcome::fail(vec![format!(
                    "{label}-torsion has a computed {}-dimensional piece at degree {n}, \
                     inside its forbidden region",
                    tc.dim
                )]);
            }
            if tc.exact {
                certified += 1;
            } else {
                unsettled += 1;
            }
        }
        evidence.push(format!(
            "{label}-torsion vanishes on {certified} certified degrees \
             ({unsettled} unsettled by the window)"
        ));
    }
    if !check_generalized_eulerian(module).is_generalized_eulerian() {
        blocked.push(String::from("module is not generalized Eulerian, hypothesis unmet"));
    }
    if !blocked.is_empty() {
        blocked.extend(evidence);
        return CheckOutcome::inconclusive(blocked);
    }
    CheckOutcome::pass(evidence)
}

/// Primitive integer coefficient vectors to try as linear forms, cheapest
/// first: unit vectors, the all-ones vector, then everything of height up to
/// three (gcd one, leading sign positive), each block in lexicographic
/// order. Deterministic and duplicate-free.
pub fn candidate_forms(m: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let push = |v: Vec<i64>, out: &mut Vec<Vec<i64>>| {
        if !out.contains(&v) {
            out.push(v);
        }
    };
    for i in 0..m {
        let mut v = vec![0i64; m];
        v[i] = 1;
        push(v, &mut out);
    }
    push(vec![1; m], &mut out);
    for h in 1..=3i64 {
        let mut block = Vec::new();
        enumerate_forms(m, h, &mut vec![], &mut block);
        block.sort();
        for v in block {
            push(v, &mut out);
        }
    }
    out
}

fn enumerate_forms(m: usize, h: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() == m {
        if prefix.iter().any(|&c| c.abs() == h) && gcd_all(prefix) == 1 && leading_positive(prefix)
        {
            out.push(prefix.clone());
        }
        return;
    }
    for c in -h..=h {
        prefix.push(c);
        enumerate_forms(m, h, prefix, out);
        prefix.pop();
    }
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &c| gcd(g, c.abs()))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn leading_positive(v: &[i64]) -> bool {
    match v.iter().find(|&&c| c != 0) {
        Some(&c) => c > 0,
        None => false,
    }
}

pub struct InjectiveSearch {
    pub side: GeneratorSide,
    /// Coefficients of the first form found to act injectively.
    pub form: Option<Vec<i64>>,
    /// Degrees where the winning form's injectivity was verified.
    pub tested: Vec<i64>,
    /// Degrees whose action leaves the window, undecidable for this form.
    pub skipped: Vec<i64>,
    pub candidates_tried: usize,
    pub outcome: CheckOutcome,
}

fn render_form(side: GeneratorSide, form: &[i64]) -> String {
    let sym = match side {
        GeneratorSide::X => "x",
        GeneratorSide::D => "d",
    };
    let mut s = String::new();
    for (i, &c) in form.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push_str(if c > 0 { " + " } else { " - " });
        } else if c < 0 {
            s.push('-');
        }
        let a = c.abs();
        if a != 1 {
            s.push_str(&format!("{a}*"));
        }
        s.push_str(&format!("{sym}{}", i + 1));
    }
    s
}

/// Whether the form acts injectively at degree `n`, on the component the
/// window holds. Truncated components still count: their basis vectors are
/// genuine module elements with fully tracked images (ghost rows included),
/// so a rank deficiency is a genuine kernel and full rank certifies
/// injectivity on that subspace. `None` means a needed map is missing.
fn form_injective_at(
    module: &WindowModule,
    side: GeneratorSide,
    form: &[i64],
    n: i64,
) -> Option<bool> {
    let comp = module.component(n).unwrap();
    if comp.dim == 0 {
        return Some(true);
    }
    let mut base: Option<RatMatrix> = None;
    // Ghost rows from different axes can land in the same out-of-window
    // multidegree and must be summed there, not stacked.
    let mut ghosts: BTreeMap<Vec<i64>, RatMatrix> = BTreeMap::new();
    for (i, &c) in form.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let view = match side {
            GeneratorSide::X => module.x_view(i + 1, n),
            GeneratorSide::D => module.d_view(i + 1, n),
        };
        let coeff = rat_int(c);
        let mat = view.known_matrix()?.scale(&coeff);
        base = Some(match base {
            Some(b) => b.add(&mat),
            None => mat,
        });
        if let MapView::Present(a) = view {
            if let crate::window::Overflow::Tracked(blocks) = &a.overflow {
                for g in blocks {
                    let scaled = g.rows.scale(&coeff);
                    ghosts
                        .entry(g.target.clone())
                        .and_modify(|acc| *acc = acc.add(&scaled))
                        .or_insert(scaled);
                }
            }
        }
    }
    let mut full = base.expect("form has a nonzero coefficient");
    for g in ghosts.values() {
        full = full.vstack(g);
    }
    Some(full.rank() == comp.dim)
}

/// Searches [`candidate_forms`] for a linear form in the generators of one
/// side that acts injectively on every decidable degree of the region where
/// the theory predicts one exists: `n >= -m+1` for `x`-forms, `n <= -m` for
/// `d`-forms. The ladder is finite, so exhaustion is INCONCLUSIVE, never
/// FAIL.
pub fn search_injective_form(module: &WindowModule, side: GeneratorSide) -> InjectiveSearch {
    let m = module.m();
    let threshold = -(m as i64);
    let (lo, hi) = match side {
        GeneratorSide::X => ((threshold + 1).max(module.lo()), module.hi()),
        GeneratorSide::D => (module.lo(), threshold.min(module.hi())),
    };
    let degrees: Vec<i64> = if lo <= hi { (lo..=hi).collect() } else { Vec::new() };
    let forms = candidate_forms(m);
    let mut tried = 0usize;
    let mut first_obstruction: Option<String> = None;
    for form in &forms {
        tried += 1;
        let mut tested = Vec::new();
        let mut skipped = Vec::new();
        let mut refuted = None;
        for &n in &degrees {
            match form_injective_at(module, side, form, n) {
                Some(true) => tested.push(n),
                Some(false) => {
                    refuted = Some(n);
                    break;
                }
                None => skipped.push(n),
            }
        }
        if let Some(n) = refuted {
            if first_obstruction.is_none() {
                first_obstruction = Some(format!(
                    "{} has a kernel at degree {n}",
                    render_form(side, form)
                ));
            }
            continue;
        }
        let rendered = render_form(side, form);
        let evidence = if tested.is_empty() {
            format!(
                "{rendered} accepted vacuously: no degree in [{lo}, {hi}] is decidable \
                 ({} skipped)",
                skipped.len()
            )
        } else {
            format!(
                "{rendered} acts injectively on {} degrees in [{lo}, {hi}] \
                 ({} skipped)",
                tested.len(),
                skipped.len()
            )
        };
        return InjectiveSearch {
            side,
            form: Some(form.clone()),
            tested,
            skipped,
            candidates_tried: tried,
            outcome: CheckOutcome {
                verdict: Verdict::Pass,
                evidence: vec![evidence],
            },
        };
    }
    let mut evidence = vec![format!(
        "none of {} candidate forms is injective on all decidable degrees of [{lo}, {hi}]",
        forms.len()
    )];
    if let Some(ob) = first_obstruction {
        evidence.push(ob);
    }
    InjectiveSearch {
        side,
        form: None,
        tested: Vec::new(),
        skipped: Vec::new(),
        candidates_tried: tried,
        outcome: CheckOutcome {
            verdict: Verdict::Inconclusive,
            evidence,
        },
    }
}
