//! Plain-text and CSV views of CLI results.

use gradedlc_core::cech::{MonomialIdeal, ZdegreeStatus};
use gradedlc_core::checks::{Verdict, VerificationReport};
use gradedlc_core::window::WindowModule;

pub fn component_csv_row(ideal: &MonomialIdeal, index: usize, a: &[i64], dim: usize) -> String {
    format!(
        "{},{index},{},{dim}",
        csv_field(&ideal.render()),
        csv_field(&int_list(a))
    )
}

pub fn table_text(rows: &[(i64, ZdegreeStatus)], module: &WindowModule) -> String {
    let cells: Vec<[String; 4]> = rows.iter().map(|row| table_cells(row, module)).collect();
    let mut widths = ["degree".len(), "status".len(), "witness".len(), "dim".len()];
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, row: &[String; 4]| {
        // degree and dim are numeric, right-aligned; the middle two left.
        out.push_str(&format!(
            "{:>w0$}  {:<w1$}  {:<w2$}  {:>w3$}\n",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
        ));
    };
    line(
        &mut out,
        &["degree".into(), "status".into(), "witness".into(), "dim".into()],
    );
    for row in &cells {
        line(&mut out, row);
    }
    out
}

pub fn table_csv(rows: &[(i64, ZdegreeStatus)], module: &WindowModule) -> String {
    let mut out = String::from("degree,status,witness,dim\n");
    for row in rows {
        let [degree, status, witness, dim] = table_cells(row, module);
        let witness = if witness == "-" { String::new() } else { csv_field(&witness) };
        let dim = if dim == "-" { String::new() } else { dim };
        out.push_str(&format!("{degree},{status},{witness},{dim}\n"));
    }
    out
}

fn table_cells((n, status): &(i64, ZdegreeStatus), module: &WindowModule) -> [String; 4] {
    let (name, witness) = match status {
        ZdegreeStatus::Nonzero { witness, .. } => ("NONZERO", format!("({})", int_list(witness))),
        ZdegreeStatus::ZeroCertified => ("ZERO_CERTIFIED", "-".into()),
        ZdegreeStatus::ZeroInBox => ("ZERO_IN_BOX", "-".into()),
    };
    // Dimensions are only printed once the box certifies them.
    let dim = match module.component(*n) {
        Some(c) if c.exact => c.dim.to_string(),
        _ => "-".into(),
    };
    [n.to_string(), name.into(), witness, dim]
}

pub fn report_text(report: &VerificationReport, verbose: bool) -> String {
    let mut out = String::new();
    for check in &report.checks {
        out.push_str(&format!("{:<12}  {} :: {}", check.verdict, check.name, check.anchor));
        if let Some(ms) = check.runtime_ms {
            out.push_str(&format!("  [{ms} ms]"));
        }
        out.push('\n');
        if verbose || check.verdict != Verdict::Pass {
            for line in &check.evidence {
                out.push_str(&format!("    {line}\n"));
            }
        }
    }
    let total = report.checks.len();
    let fail = report.count(Verdict::Fail);
    let inconclusive = report.count(Verdict::Inconclusive);
    if fail == 0 && inconclusive == 0 {
        out.push_str(&format!("all checks passed ({total})\n"));
    } else {
        out.push_str(&format!(
            "{total} checks: {} passed, {fail} failed, {inconclusive} inconclusive\n",
            report.count(Verdict::Pass)
        ));
    }
    out
}

pub fn report_csv(report: &VerificationReport) -> String {
    let mut out = String::from("name,anchor,verdict,runtime_ms,evidence\n");
    for check in &report.checks {
        let ms = check.runtime_ms.map_or(String::new(), |ms| ms.to_string());
        out.push_str(&format!(
            "{},{},{},{ms},{}\n",
            csv_field(&check.name),
            csv_field(&check.anchor),
            check.verdict,
            csv_field(&check.evidence.join("; "))
        ));
    }
    out
}

fn int_list(values: &[i64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gradedlc_core::cech::{assemble_window_module, LCQuery};

    fn plane_table() -> (Vec<(i64, ZdegreeStatus)>, WindowModule) {
        let ideal = MonomialIdeal::parse("x1, x2", None).unwrap();
        let query = LCQuery::new(ideal.clone(), 2, -4, 0);
        let module = assemble_window_module(&query).unwrap();
        let bounds = gradedlc_core::cech::BoxBounds::default_for(&ideal, -4, 0);
        let rows = (-4..=0)
            .map(|n| (n, gradedlc_core::cech::zdegree_status(&ideal, 2, n, &bounds).unwrap()))
            .collect();
        (rows, module)
    }

    #[test]
    fn table_text_aligns_and_certifies() {
        let (rows, module) = plane_table();
        let text = table_text(&rows, &module);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert!(lines[0].starts_with("degree"));
        assert!(lines[1].contains("NONZERO") && lines[1].contains("(-1,-3)"));
        assert!(lines[1].trim_end().ends_with('3'));
        assert!(lines[5].contains("ZERO_CERTIFIED") && lines[5].trim_end().ends_with('0'));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn table_csv_quotes_witnesses() {
        let (rows, module) = plane_table();
        let csv = table_csv(&rows, &module);
        assert!(csv.starts_with("degree,status,witness,dim\n"));
        assert!(csv.contains("-4,NONZERO,\"(-1,-3)\",3\n"));
        assert!(csv.contains("0,ZERO_CERTIFIED,,0\n"));
    }

    #[test]
    fn report_text_summarizes() {
        use gradedlc_core::checks::{run_suite, SuiteConfig, SuiteEntry};
        let ideal = MonomialIdeal::parse("x1, x2", None).unwrap();
        let config = SuiteConfig {
            entries: vec![SuiteEntry::Module { ideal, index: 2, lo: -5, hi: 1, bounds: None }],
        };
        let report = run_suite(&config);
        let text = report_text(&report, false);
        assert!(text.lines().all(|l| !l.contains("INCONCLUSIVE")));
        assert!(text.ends_with(&format!("all checks passed ({})\n", report.checks.len())));
        let csv = report_csv(&report);
        assert_eq!(csv.lines().count(), report.checks.len() + 1);
        assert!(csv.contains("\"x2, x1|i=2\",euler-nilpotence,PASS,,"));
    }

    #[test]
    fn csv_fields_escape_quotes() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
