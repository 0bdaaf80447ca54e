//! Independent closed form for the top local cohomology of the full
//! variable ideal: `H^m_{(x1..xm)}(R)` has basis `{x^v : v <= (-1,...,-1)}`
//! with `∂_i x^v = v_i x^(v-e_i)` and `X_i x^v = x^(v+e_i)`, which is zero
//! exactly when `v_i = -1`. Nothing here touches the covering complex, so
//! agreement with [`super::assemble_window_module`] is a real cross-check.

use alloc::format;
use alloc::vec::Vec;

use super::CechError;
use crate::linalg::RatMatrix;
use crate::rat::rat_int;
use crate::window::{WindowBuilder, WindowModule};

/// All-negative multidegrees of total degree `n`, descending
/// lexicographically.
fn basis(m: usize, n: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = Vec::with_capacity(m);
    fn rec(m: usize, remaining: i64, v: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if v.len() + 1 == m {
            if remaining <= -1 {
                v.push(remaining);
                out.push(v.clone());
                v.pop();
            }
            return;
        }
        let spare = (m - v.len() - 1) as i64;
        let mut c = -1;
        while c >= remaining + spare {
            v.push(c);
            rec(m, remaining - c, v, out);
            v.pop();
            c -= 1;
        }
    }
    rec(m, n, &mut v, &mut out);
    out
}

pub fn top_lc_oracle(m: usize, lo: i64, hi: i64) -> Result<WindowModule, CechError> {
    if m == 0 {
        return Err(CechError::WindowInvalid(alloc::string::String::from(
            "need at least one variable",
        )));
    }
    if lo > hi {
        return Err(CechError::WindowInvalid(format!("lo {lo} > hi {hi}")));
    }
    if hi > -(m as i64) {
        return Err(CechError::WindowInvalid(format!(
            "module lives in degrees <= {}, window reaches {hi}",
            -(m as i64)
        )));
    }
    let len = (hi - lo + 1) as usize;
    let bases: Vec<Vec<Vec<i64>>> = (0..len).map(|k| basis(m, lo + k as i64)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();

    let mut builder = WindowBuilder::new(m, lo, dims.clone());
    for (k, b) in bases.iter().enumerate() {
        let n = lo + k as i64;
        builder.set_labels(n, b.clone());
        builder.set_euler(n, RatMatrix::scalar(dims[k], &rat_int(n)));
    }
    builder.complete_below = false;
    builder.complete_above = hi == -(m as i64);

    for axis in 1..=m {
        for k in 0..len.saturating_sub(1) {
            let n = lo + k as i64;
            let mut x = RatMatrix::zeros(dims[k + 1], dims[k]);
            for (col, v) in bases[k].iter().enumerate() {
                if v[axis - 1] <= -2 {
                    let mut w = v.clone();
                    w[axis - 1] += 1;
                    let row = bases[k + 1]
                        .iter()
                        .position(|u| u == &w)
                        .expect("raised vector stays all-negative");
                    x.set(row, col, rat_int(1));
                }
            }
            builder.set_x(axis, n, x);

            let mut d = RatMatrix::zeros(dims[k], dims[k + 1]);
            for (col, v) in bases[k + 1].iter().enumerate() {
                let mut w = v.clone();
                w[axis - 1] -= 1;
                let row = bases[k]
                    .iter()
                    .position(|u| u == &w)
                    .expect("lowered vector stays all-negative");
                d.set(row, col, rat_int(v[axis - 1]));
            }
            builder.set_d(axis, n + 1, d);
        }
    }
    Ok(builder.build()?)
}
