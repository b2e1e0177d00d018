//! Reference integrators used as independent oracles.
//!
//! These are deliberately a different algorithm from the library's
//! adaptive Gauss–Kronrod scheme: a double-exponential (exp-sinh)
//! trapezoid rule with step halving.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

const T_MAX: f64 = 4.5;
const MAX_LEVEL: u32 = 10;

/// `int_a^inf f(x) dx` via `x = a + s exp(pi/2 sinh t)`.
pub fn exp_sinh<F: Fn(f64) -> f64>(f: F, a: f64, scale: f64, rel_tol: f64) -> f64 {
    let node = |t: f64| {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let w = scale * FRAC_PI_2 * t.cosh() * e;
        let v = f(a + scale * e);
        if w == 0.0 || v == 0.0 {
            0.0
        } else {
            v * w
        }
    };
    let mut h = 0.5;
    let n = (T_MAX / h) as i64;
    let mut sum: f64 = (-n..=n).map(|i| node(i as f64 * h)).sum();
    let mut estimate = sum * h;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        let n = (T_MAX / h) as i64;
        let odd: f64 = (-n..=n).filter(|i| i % 2 != 0).map(|i| node(i as f64 * h)).sum();
        sum += odd;
        let next = sum * h;
        if (next - estimate).abs() <= rel_tol * next.abs() {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// `int_0^inf dx int_0^inf dy f(x, y)` with nested exp-sinh rules.
pub fn exp_sinh_2d<F: Fn(f64, f64) -> f64>(f: F, sx: f64, sy: f64, rel_tol: f64) -> f64 {
    exp_sinh(|x| exp_sinh(|y| f(x, y), 0.0, sy, rel_tol * 0.1), 0.0, sx, rel_tol)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Prints the one-line verdict of an acceptance criterion.
pub fn report(id: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id:>2} [{}] {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}
