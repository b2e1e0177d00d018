//! Adaptive integration over semi-infinite domains.
//!
//! The half line `[a, inf)` is mapped onto `[0, 1)` by
//! `x = a + s t / (1 - t)`, where `s` is the integrand's decay scale
//! (`QuadratureSpec::scale_hint`). The mapped integrand is integrated by a
//! globally adaptive 7/15-point Gauss–Kronrod scheme with bisection of the
//! worst panel. Node sets and summation order depend only on the settings and
//! the integrand values, so results are bit-reproducible; nested integrals
//! evaluate outer nodes in parallel but reduce them in a fixed order.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Integration controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_evaluations: usize,
    /// Characteristic decay length of the integrand in its own variable.
    pub scale_hint: T,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-8),
            abs_tol: T::zero(),
            max_evaluations: 200_000,
            scale_hint: T::one(),
        }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_scale(mut self, scale_hint: T) -> Self {
        self.scale_hint = scale_hint;
        self
    }

    pub fn with_max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero() || self.abs_tol > T::zero()) {
            return Err(Error::Config(
                "quadrature needs rel_tol > 0 or abs_tol > 0".into(),
            ));
        }
        if self.rel_tol < T::zero() || self.abs_tol < T::zero() {
            return Err(Error::Config("quadrature tolerances must be nonnegative".into()));
        }
        if self.max_evaluations < RULE_SIZE * INITIAL_PANELS {
            return Err(Error::Config(format!(
                "max_evaluations must be at least {}",
                RULE_SIZE * INITIAL_PANELS
            )));
        }
        if !(self.scale_hint > T::zero() && self.scale_hint.is_finite()) {
            return Err(Error::Config("scale_hint must be finite and positive".into()));
        }
        Ok(())
    }
}

/// Outcome of an integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult<T, V = T> {
    pub value: V,
    pub error_estimate: T,
    pub evaluations: usize,
    pub converged: bool,
}

/// Values that can be integrated: scalars and fixed-size vectors of scalars.
///
/// The norm is the L1 norm, so relative tolerances of vector integrals are
/// measured against the sum of component magnitudes.
pub trait QuadValue<T>: Copy + Send {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: T) -> Self;
    fn norm(&self) -> T;
    fn is_finite(&self) -> bool;
    /// Error already present in the value before integration.
    fn carried_error(&self) -> T;
}

impl<T: Real> QuadValue<T> for T {
    fn zero() -> Self {
        T::zero()
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: T) -> Self {
        self * s
    }
    fn norm(&self) -> T {
        self.abs()
    }
    fn is_finite(&self) -> bool {
        Float::is_finite(*self)
    }
    fn carried_error(&self) -> T {
        T::zero()
    }
}

use num_traits::Float;

impl<T: Real, const N: usize> QuadValue<T> for [T; N] {
    fn zero() -> Self {
        [T::zero(); N]
    }
    fn add(mut self, other: Self) -> Self {
        for (a, b) in self.iter_mut().zip(other) {
            *a = *a + b;
        }
        self
    }
    fn scale(mut self, s: T) -> Self {
        for a in self.iter_mut() {
            *a = *a * s;
        }
        self
    }
    fn norm(&self) -> T {
        self.iter().map(|a| a.abs()).sum()
    }
    fn is_finite(&self) -> bool {
        self.iter().all(|a| Float::is_finite(*a))
    }
    fn carried_error(&self) -> T {
        T::zero()
    }
}

/// Integral value paired with the integrated error of inner integrals.
#[derive(Debug, Clone, Copy)]
struct WithInnerError<T, V> {
    value: V,
    inner_error: T,
}

impl<T: Real, V: QuadValue<T>> QuadValue<T> for WithInnerError<T, V> {
    fn zero() -> Self {
        Self {
            value: V::zero(),
            inner_error: T::zero(),
        }
    }
    fn add(self, o: Self) -> Self {
        Self {
            value: self.value.add(o.value),
            inner_error: self.inner_error + o.inner_error,
        }
    }
    fn scale(self, s: T) -> Self {
        Self {
            value: self.value.scale(s),
            inner_error: self.inner_error * s.abs(),
        }
    }
    fn norm(&self) -> T {
        self.value.norm()
    }
    fn is_finite(&self) -> bool {
        self.value.is_finite() && Float::is_finite(self.inner_error)
    }
    fn carried_error(&self) -> T {
        self.inner_error
    }
}

const RULE_SIZE: usize = 15;
const INITIAL_PANELS: usize = 4;

// Kronrod abscissae (descending) and weights; Gauss weights for the 7-point
// rule on abscissae 1, 3, 5 and the centre.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
struct Panel<T, V> {
    a: T,
    b: T,
    value: V,
    error: T,
    resabs: T,
    splittable: bool,
}

/// Abscissae of the 15-point rule on `[a, b]`: left half, centre, right half.
fn nodes<T: Real>(a: T, b: T) -> [T; RULE_SIZE] {
    let half = T::lit(0.5);
    let c = half * (a + b);
    let h = half * (b - a);
    let mut x = [c; RULE_SIZE];
    for j in 0..7 {
        let d = h * T::lit(XGK[j]);
        x[j] = c - d;
        x[RULE_SIZE - 1 - j] = c + d;
    }
    x
}

fn gk15<T: Real, V: QuadValue<T>>(a: T, b: T, f: &[V; RULE_SIZE]) -> Panel<T, V> {
    let half = T::lit(0.5);
    let h = half * (b - a);
    let mut kron = V::zero();
    let mut gauss = V::zero();
    let mut resabs = T::zero();
    for j in 0..8 {
        let w = T::lit(WGK[j]);
        let pair = if j == 7 {
            f[7]
        } else {
            f[j].add(f[RULE_SIZE - 1 - j])
        };
        kron = kron.add(pair.scale(w));
        resabs = resabs
            + w * if j == 7 {
                f[7].norm()
            } else {
                f[j].norm() + f[RULE_SIZE - 1 - j].norm()
            };
        if j % 2 == 1 {
            gauss = gauss.add(pair.scale(T::lit(WG[j / 2])));
        }
    }
    let mean = kron.scale(half);
    let mut resasc = T::zero();
    for j in 0..8 {
        let w = T::lit(WGK[j]);
        let dev = |v: V| v.add(mean.scale(-T::one())).norm();
        resasc = resasc
            + w * if j == 7 {
                dev(f[7])
            } else {
                dev(f[j]) + dev(f[RULE_SIZE - 1 - j])
            };
    }
    let h_abs = h.abs();
    let value = kron.scale(h);
    resabs = resabs * h_abs;
    resasc = resasc * h_abs;
    let mut error = kron.add(gauss.scale(-T::one())).scale(h).norm();
    if resasc != T::zero() && error != T::zero() {
        let scaled = (T::lit(200.0) * error / resasc).powf(T::lit(1.5));
        error = resasc * scaled.min(T::one());
    }
    let eps = T::epsilon();
    if resabs > T::min_positive_value() / (T::lit(50.0) * eps) {
        error = error.max(T::lit(50.0) * eps * resabs);
    }
    let mid = half * (a + b);
    let width_ok = (b - a) > T::lit(8.0) * eps * a.abs().max(b.abs()).max(T::min_positive_value());
    Panel {
        a,
        b,
        value,
        error,
        resabs,
        splittable: mid > a && mid < b && width_ok,
    }
}

struct Raw<T, V> {
    value: V,
    error: T,
    evaluations: usize,
    converged: bool,
}

/// Globally adaptive Gauss–Kronrod on a finite interval. `batch` evaluates
/// the integrand at the 15 abscissae of one panel.
fn adaptive<T, V, B>(a: T, b: T, rel_tol: T, abs_tol: T, max_evals: usize, mut batch: B) -> Result<Raw<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    B: FnMut(&[T; RULE_SIZE]) -> Result<[V; RULE_SIZE]>,
{
    let mut panels: Vec<Panel<T, V>> = Vec::with_capacity(64);
    let mut evaluations = 0usize;
    let n0 = T::count(INITIAL_PANELS);
    for i in 0..INITIAL_PANELS {
        let lo = a + (b - a) * T::count(i) / n0;
        let hi = if i + 1 == INITIAL_PANELS {
            b
        } else {
            a + (b - a) * T::count(i + 1) / n0
        };
        let x = nodes(lo, hi);
        let f = batch(&x)?;
        evaluations += RULE_SIZE;
        panels.push(gk15(lo, hi, &f));
    }
    loop {
        let total = panels.iter().fold(V::zero(), |s, p| s.add(p.value));
        let error: T = panels.iter().map(|p| p.error).sum();
        let resabs: T = panels.iter().map(|p| p.resabs).sum();
        // roundoff in the integrand, and values so small that they have
        // lost relative precision to gradual underflow
        let floor = (T::lit(100.0) * T::epsilon() * resabs)
            .max(T::min_positive_value() / (T::epsilon() * T::epsilon()));
        let tol = (rel_tol * total.norm()).max(abs_tol).max(floor);
        if error + total.carried_error() <= tol {
            return Ok(Raw {
                value: total,
                error,
                evaluations,
                converged: true,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .fold(None::<(usize, T)>, |best, (i, p)| match best {
                Some((_, e)) if e >= p.error => best,
                _ => Some((i, p.error)),
            });
        let Some((i, _)) = worst else {
            return Ok(Raw {
                value: total,
                error,
                evaluations,
                converged: false,
            });
        };
        if evaluations + 2 * RULE_SIZE > max_evals {
            return Ok(Raw {
                value: total,
                error,
                evaluations,
                converged: false,
            });
        }
        let p = panels[i];
        let mid = T::lit(0.5) * (p.a + p.b);
        let fl = batch(&nodes(p.a, mid))?;
        let fr = batch(&nodes(mid, p.b))?;
        evaluations += 2 * RULE_SIZE;
        panels[i] = gk15(p.a, mid, &fl);
        panels.push(gk15(mid, p.b, &fr));
    }
}

/// Maps `t in [0, 1)` to `x in [lower, inf)`, returning `(x, dx/dt)`.
#[inline]
fn half_line_map<T: Real>(t: T, lower: T, scale: T) -> (T, T) {
    let u = T::one() - t;
    (lower + scale * t / u, scale / (u * u))
}

fn non_finite<T: Real>(x: T) -> Error {
    Error::NonFinite(x.to_f64().unwrap_or(f64::NAN))
}

fn finish<T: Real, V>(raw: Raw<T, V>) -> IntegralResult<T, V> {
    IntegralResult {
        value: raw.value,
        error_estimate: raw.error,
        evaluations: raw.evaluations,
        converged: raw.converged,
    }
}

/// Integrates a fallible integrand over `[lower, inf)`.
pub fn try_integrate_half_line<T, V, F>(
    f: F,
    lower: T,
    spec: &QuadratureSpec<T>,
) -> Result<IntegralResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> Result<V>,
{
    spec.validate()?;
    let raw = adaptive(
        T::zero(),
        T::one(),
        spec.rel_tol,
        spec.abs_tol,
        spec.max_evaluations,
        |ts: &[T; RULE_SIZE]| {
            let mut out = [V::zero(); RULE_SIZE];
            for (o, &t) in out.iter_mut().zip(ts) {
                let (x, jac) = half_line_map(t, lower, spec.scale_hint);
                let v = f(x)?;
                if !v.is_finite() {
                    return Err(non_finite(x));
                }
                *o = v.scale(jac);
            }
            Ok(out)
        },
    )?;
    Ok(finish(raw))
}

/// Integrates `f` over `[lower, inf)`.
///
/// A non-finite integrand value is a hard error; running out of
/// evaluations returns a result with `converged == false`.
pub fn integrate_half_line<T, V, F>(f: F, lower: T, spec: &QuadratureSpec<T>) -> Result<IntegralResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    try_integrate_half_line(|x| Ok(f(x)), lower, spec)
}

/// Integrates `f` over the finite interval `[a, b]`. `scale_hint` is unused.
pub fn integrate_interval<T, V, F>(f: F, a: T, b: T, spec: &QuadratureSpec<T>) -> Result<IntegralResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T) -> V,
{
    spec.validate()?;
    let raw = adaptive(a, b, spec.rel_tol, spec.abs_tol, spec.max_evaluations, |xs| {
        let mut out = [V::zero(); RULE_SIZE];
        for (o, &x) in out.iter_mut().zip(xs) {
            let v = f(x);
            if !v.is_finite() {
                return Err(non_finite(x));
            }
            *o = v;
        }
        Ok(out)
    })?;
    Ok(finish(raw))
}

/// Nested integral `int_{a}^inf dx int_{b}^inf dy g_x(y)`.
///
/// `make_inner(x)` prepares the inner integrand for one outer node, which
/// lets callers hoist work that depends on `x` only. Outer nodes are
/// evaluated in parallel; the reduction order is fixed. The error estimate
/// adds the outer error to the integrated inner errors, and the result is
/// converged only if every inner integral converged.
pub fn integrate_nested<T, V, M, G>(
    outer_lower: T,
    outer: &QuadratureSpec<T>,
    inner_lower: T,
    inner: &QuadratureSpec<T>,
    make_inner: M,
) -> Result<IntegralResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    M: Fn(T) -> Result<G> + Sync,
    G: Fn(T) -> Result<V>,
{
    outer.validate()?;
    inner.validate()?;
    let inner_evals = AtomicUsize::new(0);
    let inner_ok = AtomicBool::new(true);
    let eval_node = |t: T| -> Result<WithInnerError<T, V>> {
        let (x, jac) = half_line_map(t, outer_lower, outer.scale_hint);
        let g = make_inner(x)?;
        let r = try_integrate_half_line(g, inner_lower, inner)?;
        inner_evals.fetch_add(r.evaluations, Ordering::Relaxed);
        if !r.converged {
            inner_ok.store(false, Ordering::Relaxed);
        }
        if !r.value.is_finite() {
            return Err(non_finite(x));
        }
        Ok(WithInnerError {
            value: r.value,
            inner_error: r.error_estimate,
        }
        .scale(jac))
    };
    let raw = adaptive(
        T::zero(),
        T::one(),
        outer.rel_tol,
        outer.abs_tol,
        outer.max_evaluations,
        |ts: &[T; RULE_SIZE]| {
            let vals: Vec<Result<WithInnerError<T, V>>> =
                ts.par_iter().map(|&t| eval_node(t)).collect();
            let mut out = [WithInnerError::zero(); RULE_SIZE];
            for (o, v) in out.iter_mut().zip(vals) {
                *o = v?;
            }
            Ok(out)
        },
    )?;
    Ok(IntegralResult {
        value: raw.value.value,
        error_estimate: raw.error + raw.value.inner_error,
        evaluations: raw.evaluations + inner_evals.into_inner(),
        converged: raw.converged && inner_ok.into_inner(),
    })
}

/// Integrates `f(x, y)` over the quarter plane `[0, inf)^2`.
///
/// The inner integral runs at a tenth of the outer relative tolerance.
pub fn integrate_double<T, V, F>(f: F, spec: &QuadratureSpec<T>) -> Result<IntegralResult<T, V>>
where
    T: Real,
    V: QuadValue<T>,
    F: Fn(T, T) -> V + Sync,
{
    let inner = spec.with_rel_tol(spec.rel_tol * T::lit(0.1));
    let f = &f;
    integrate_nested(T::zero(), spec, T::zero(), &inner, |x| {
        Ok(move |y| Ok(f(x, y)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default()
    }

    #[test]
    fn golden_half_line() {
        let s = spec().with_rel_tol(1e-13);
        let r = integrate_half_line(|x: f64| (-x).exp(), 0.0, &s).unwrap();
        assert!(r.converged && (r.value - 1.0).abs() < 1e-10);
        let r = integrate_half_line(|x: f64| 1.0 / (1.0 + x * x), 0.0, &s).unwrap();
        assert!((r.value - FRAC_PI_2).abs() < 1e-12);
        let r = integrate_half_line(|p: f64| p.powi(-4), 1.0, &s).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
        let r = integrate_half_line(|p: f64| (2.0 * p * p - 1.0) * p.powi(-4), 1.0, &s).unwrap();
        assert!((r.value - 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn double_separable() {
        let r = integrate_double(|x: f64, y: f64| (-x - y).exp(), &spec()).unwrap();
        assert!(r.converged && (r.value - 1.0).abs() < 1e-8);
        let r = integrate_double(|x: f64, y: f64| (-x).exp() / (1.0 + y * y), &spec()).unwrap();
        assert!((r.value - FRAC_PI_2).abs() < 2e-8);
    }

    #[test]
    fn vector_integrand() {
        let r = integrate_half_line(|x: f64| [(-x).exp(), (-2.0 * x).exp()], 0.0, &spec()).unwrap();
        assert!((r.value[0] - 1.0).abs() < 1e-9 && (r.value[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn nan_is_hard_error() {
        let r = integrate_half_line(|x: f64| if x > 1.0 { f64::NAN } else { 1.0 }, 0.0, &spec());
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }

    #[test]
    fn exhausted_budget_flags_nonconvergence() {
        // oscillatory with slowly decaying envelope: cannot reach 1e-14 in 200 evaluations
        let s = spec().with_rel_tol(1e-14).with_max_evaluations(200);
        let r = integrate_half_line(|x: f64| (10.0 * x).sin() / (1.0 + x), 0.0, &s).unwrap();
        assert!(!r.converged);
        assert!(r.evaluations <= 200);
    }

    #[test]
    fn invalid_spec_rejected() {
        let s = spec().with_rel_tol(0.0);
        assert!(integrate_half_line(|x: f64| x, 0.0, &s).is_err());
        let s = spec().with_max_evaluations(3);
        assert!(integrate_half_line(|x: f64| x, 0.0, &s).is_err());
    }

    #[test]
    fn deterministic() {
        let f = |x: f64, y: f64| (-(x * x) - y).exp() * (1.0 + (x * y).cos());
        let a = integrate_double(f, &spec()).unwrap();
        let b = integrate_double(f, &spec()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }

    #[test]
    fn finite_interval() {
        let r = integrate_interval(|x: f64| x.sin(), 0.0, PI, &spec()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_precision() {
        let s = QuadratureSpec::<f32>::default().with_rel_tol(1e-5);
        let r = integrate_half_line(|x: f32| (-x).exp(), 0.0, &s).unwrap();
        assert!((r.value - 1.0).abs() < 1e-5);
    }
}
