//! JSON views of CLI results. serde_json keeps object keys sorted, so the
//! serialized bytes are stable across runs.

use gradedlc_core::cech::{BoxBounds, MonomialIdeal, ZdegreeStatus};
use gradedlc_core::checks::VerificationReport;
use gradedlc_core::linalg::RatMatrix;
use gradedlc_core::rat::format_rat;
use gradedlc_core::window::{Overflow, WindowModule};
use serde_json::{json, Value};

pub fn component(ideal: &MonomialIdeal, index: usize, a: &[i64], dim: usize) -> String {
    pretty(json!({
        "ideal": ideal.render(),
        "m": ideal.m(),
        "i": index,
        "multidegree": a,
        "dimension": dim,
    }))
}

pub fn table(
    ideal: &MonomialIdeal,
    index: usize,
    bounds: &BoxBounds,
    rows: &[(i64, ZdegreeStatus)],
    module: &WindowModule,
) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|(n, status)| {
            let (name, witness) = match status {
                ZdegreeStatus::Nonzero { witness, .. } => ("NONZERO", json!(witness)),
                ZdegreeStatus::ZeroCertified => ("ZERO_CERTIFIED", Value::Null),
                ZdegreeStatus::ZeroInBox => ("ZERO_IN_BOX", Value::Null),
            };
            // Dimension of the whole graded component, null until the box
            // certifies it; the witness is one contributing multidegree.
            let dim = module
                .component(*n)
                .filter(|c| c.exact)
                .map_or(Value::Null, |c| c.dim.into());
            json!({ "degree": n, "status": name, "witness": witness, "dimension": dim })
        })
        .collect();
    pretty(json!({
        "ideal": ideal.render(),
        "m": ideal.m(),
        "i": index,
        "box": bounds.per_axis(),
        "window": { "lo": module.lo(), "hi": module.hi() },
        "rows": rows,
    }))
}

pub fn report(report: &VerificationReport) -> String {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let mut obj = json!({
                "name": c.name,
                "anchor": c.anchor,
                "verdict": c.verdict.to_string(),
                "evidence": c.evidence,
            });
            if let Some(ms) = c.runtime_ms {
                obj["runtime_ms"] = ms.into();
            }
            obj
        })
        .collect();
    pretty(json!({
        "checks": checks,
        "summary": {
            "total": report.checks.len(),
            "pass": report.count(gradedlc_core::checks::Verdict::Pass),
            "fail": report.count(gradedlc_core::checks::Verdict::Fail),
            "inconclusive": report.count(gradedlc_core::checks::Verdict::Inconclusive),
        },
    }))
}

fn pretty(value: Value) -> String {
    serde_json::to_string_pretty(&value).expect("serializing builtin value types")
}

fn matrix_value(m: &RatMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| {
            let row: Vec<String> = (0..m.cols()).map(|c| format_rat(m.get(r, c))).collect();
            json!(row)
        })
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

/// Full module serialization: every entry is an exact `p/q` string, so the
/// output round-trips bitwise and diffs cleanly in golden tests.
pub fn window_module(module: &WindowModule) -> String {
    let components: Vec<Value> = module
        .degrees()
        .map(|n| {
            let c = module.component(n).unwrap();
            json!({
                "degree": n,
                "dim": c.dim,
                "exact": c.exact,
                "labels": c.labels,
            })
        })
        .collect();
    let actions = |stored: &dyn Fn(usize, i64) -> Option<Value>| -> Vec<Value> {
        let mut out = Vec::new();
        for axis in 1..=module.m() {
            for n in module.degrees() {
                if let Some(v) = stored(axis, n) {
                    out.push(v);
                }
            }
        }
        out
    };
    let action_value = |axis: usize, from: i64, a: &gradedlc_core::window::Action| -> Value {
        let ghosts: Vec<Value> = match &a.overflow {
            Overflow::None => Vec::new(),
            Overflow::Tracked(blocks) => blocks
                .iter()
                .map(|b| json!({ "target": b.target, "matrix": matrix_value(&b.rows) }))
                .collect(),
        };
        json!({ "axis": axis, "from": from, "matrix": matrix_value(&a.matrix), "ghost": ghosts })
    };
    let x_action = actions(&|axis, n| module.x_stored(axis, n).map(|a| action_value(axis, n, a)));
    let d_action = actions(&|axis, n| module.d_stored(axis, n).map(|a| action_value(axis, n, a)));
    let euler: Vec<Value> = module
        .degrees()
        .filter_map(|n| {
            module
                .euler_stored(n)
                .map(|e| json!({ "degree": n, "matrix": matrix_value(e) }))
        })
        .collect();
    pretty(json!({
        "m": module.m(),
        "window": { "lo": module.lo(), "hi": module.hi() },
        "complete_below": module.complete_below(),
        "complete_above": module.complete_above(),
        "box_complete": module.box_complete(),
        "components": components,
        "x_action": x_action,
        "d_action": d_action,
        "euler": euler,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use gradedlc_core::cech::top_lc_oracle;

    #[test]
    fn line_module_serialization_is_frozen() {
        let module = top_lc_oracle(1, -3, -1).unwrap();
        let expected = r#"{
  "box_complete": true,
  "complete_above": true,
  "complete_below": false,
  "components": [
    {
      "degree": -3,
      "dim": 1,
      "exact": true,
      "labels": [
        [
          -3
        ]
      ]
    },
    {
      "degree": -2,
      "dim": 1,
      "exact": true,
      "labels": [
        [
          -2
        ]
      ]
    },
    {
      "degree": -1,
      "dim": 1,
      "exact": true,
      "labels": [
        [
          -1
        ]
      ]
    }
  ],
  "d_action": [
    {
      "axis": 1,
      "from": -2,
      "ghost": [],
      "matrix": {
        "cols": 1,
        "entries": [
          [
            "-2"
          ]
        ],
        "rows": 1
      }
    },
    {
      "axis": 1,
      "from": -1,
      "ghost": [],
      "matrix": {
        "cols": 1,
        "entries": [
          [
            "-1"
          ]
        ],
        "rows": 1
      }
    }
  ],
  "euler": [
    {
      "degree": -3,
      "matrix": {
        "cols": 1,
        "entries": [
          [
            "-3"
          ]
        ],
        "rows": 1
      }
    },
    {
      "degree": -2,
      "matrix": {
        "cols": 1,
        "entries": [
          [
            "-2"
          ]
        ],
        "rows": 1
      }
    },
    {
      "degree": -1,
      "matrix": {
        "cols": 1,
        "entries": [
          [
            "-1"
          ]
        ],
        "rows": 1
      }
    }
  ],
  "m": 1,
  "window": {
    "hi": -1,
    "lo": -3
  },
  "x_action": [
    {
      "axis": 1,
      "from": -3,
      "ghost": [],
      "matrix": {
        "cols": 1,
        "entries": [
          [
            "1"
          ]
        ],
        "rows": 1
      }
    },
    {
      "axis": 1,
      "from": -2,
      "ghost": [],
      "matrix": {
        "cols": 1,
        "entries": [
          [
            "1"
          ]
        ],
        "rows": 1
      }
    }
  ]
}"#;
        assert_eq!(window_module(&module), expected);
    }
}
