use crate::dispersion::{AtomSpecies, Medium};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_half_line, IntegralResult, QuadratureSpec};
use crate::scalar::Real;

/// Two atoms interacting inside a medium.
#[derive(Debug, Clone, PartialEq)]
pub enum AtomPair<T> {
    /// Atoms `a` and `b` embedded in `host`, at short separation.
    EmbeddedEmbedded {
        a: AtomSpecies<T>,
        b: AtomSpecies<T>,
        host: Medium<T>,
    },
    /// An atom of a dilute medium and an embedded atom `b`.
    MediumEmbedded {
        medium_atom: AtomSpecies<T>,
        b: AtomSpecies<T>,
    },
}

/// Force between two atoms at separation `r`; positive means attraction.
pub fn atom_atom_forces<T: Real>(
    pair: &AtomPair<T>,
    r: T,
    spec: &QuadratureSpec<T>,
) -> Result<IntegralResult<T>> {
    if !(r > T::zero() && r.is_finite()) {
        return Err(Error::Config("atom separation must be finite and positive".into()));
    }
    match pair {
        AtomPair::EmbeddedEmbedded { a, b, host } => {
            a.validate()?;
            b.validate()?;
            host.validate()?;
            let omega = a
                .characteristic_frequency()
                .max(b.characteristic_frequency())
                .max(host.characteristic_frequency());
            let res = integrate_half_line(
                |xi: T| {
                    let s = host.sample_unchecked(xi);
                    let (ae_a, am_a) = a.eval_unchecked(xi);
                    let (ae_b, am_b) = b.eval_unchecked(xi);
                    ae_a * ae_b / s.epsilon.powi(3) + am_a * am_b / s.mu
                },
                T::zero(),
                &spec.with_scale(positive_or_one(omega)),
            )?;
            Ok(scale(res, T::lit(18.0) / (T::PI() * r.powi(7))))
        }
        AtomPair::MediumEmbedded { medium_atom, b } => {
            medium_atom.validate()?;
            b.validate()?;
            let integrand = |xi: T| {
                let (ae_m, am_m) = medium_atom.eval_unchecked(xi);
                let (ae_b, am_b) = b.eval_unchecked(xi);
                xi * xi * (ae_m + am_m) * (ae_b - am_b)
            };
            let omega = medium_atom
                .characteristic_frequency()
                .max(b.characteristic_frequency());
            check_tail(&integrand, omega)?;
            let res = integrate_half_line(integrand, T::zero(), &spec.with_scale(positive_or_one(omega)))?;
            Ok(scale(res, T::lit(2.0) / (T::PI() * r.powi(5))))
        }
    }
}

fn positive_or_one<T: Real>(omega: T) -> T {
    if omega > T::zero() {
        omega
    } else {
        T::one()
    }
}

/// The `xi^2`-weighted integrand must fall off faster than `1/xi`.
fn check_tail<T: Real, F: Fn(T) -> T>(f: &F, omega: T) -> Result<()> {
    let probe = positive_or_one(omega) * T::lit(1e4);
    let near = f(positive_or_one(omega)).abs();
    let tail = (f(probe) * probe).abs();
    if tail > T::lit(1e-2) * near * positive_or_one(omega) && tail > T::zero() {
        return Err(Error::UvDivergent(
            "medium and embedded polarizabilities do not decay fast enough at high frequency".into(),
        ));
    }
    Ok(())
}

fn scale<T: Real>(r: IntegralResult<T>, s: T) -> IntegralResult<T> {
    IntegralResult {
        value: r.value * s,
        error_estimate: r.error_estimate * s.abs(),
        ..r
    }
}
