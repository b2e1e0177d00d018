//! Leading short- and large-distance terms of the atom and medium-atom
//! forces in the semi-infinite cavity.

use super::{atom::MediumAtom, ForceResult, Formulation};
use crate::dispersion::{AtomSpecies, Medium, MediumSample};
use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_half_line, integrate_nested, try_integrate_half_line, IntegralResult, QuadratureSpec,
};
use crate::scalar::Real;
use crate::stratified::{static_reflection, Mirror, MirrorSample, Polarization};

/// Distance regime of an asymptotic formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Short,
    Large,
}

/// Ideal mirror variants that admit a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealMirrorKind {
    Conducting,
    Permeable,
}

impl IdealMirrorKind {
    fn sign<T: Real>(self) -> T {
        match self {
            IdealMirrorKind::Conducting => T::one(),
            IdealMirrorKind::Permeable => -T::one(),
        }
    }
}

fn check_z<T: Real>(z: T) -> Result<()> {
    if z > T::zero() && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Config("atom-mirror distance must be finite and positive".into()))
    }
}

/// Nonretarded reflection weighted over `u^n e^{-u}`, or the bare
/// nonretarded reflection when it does not depend on `k`.
enum NonRetarded<T> {
    Flat,
    Layered { z: T },
}

impl<T: Real> NonRetarded<T> {
    fn of(mirror: &Mirror<T>, z: T) -> Self {
        match mirror {
            Mirror::Stack { layers, .. } if !layers.is_empty() => NonRetarded::Layered { z },
            _ => NonRetarded::Flat,
        }
    }
}

/// `int dxi weight(xi, cavity) * <R_nr(xi)>` where `<.>` is the `u^n e^{-u} / n!`
/// average over `k = u / 2z`, for the two polarizations.
fn nonretarded_integral<T, W>(
    mirror: &Mirror<T>,
    cavity: &Medium<T>,
    z: T,
    power: i32,
    omega: T,
    spec: &QuadratureSpec<T>,
    weight: W,
) -> Result<IntegralResult<T, [T; 4]>>
where
    T: Real,
    W: Fn(T, &MediumSample<T>, [T; 2]) -> [T; 4] + Sync,
{
    let outer = spec.with_scale(if omega > T::zero() { omega } else { T::one() });
    let reflect = |m: &MirrorSample<T>, c: &MediumSample<T>, k: T| {
        Polarization::BOTH.map(|q| m.reflection(q, c, k, true))
    };
    match NonRetarded::of(mirror, z) {
        NonRetarded::Flat => integrate_half_line(
            |xi| {
                let c = cavity.sample_unchecked(xi);
                weight(xi, &c, reflect(&mirror.sample(xi), &c, T::one()))
            },
            T::zero(),
            &outer,
        ),
        NonRetarded::Layered { z } => {
            let factorial = (1..=power).fold(T::one(), |a, j| a * T::lit(f64::from(j)));
            let inner = spec.with_rel_tol(spec.rel_tol * T::lit(0.1)).with_scale(T::one());
            let two_z = T::lit(2.0) * z;
            integrate_nested(T::zero(), &outer, T::zero(), &inner, |xi| {
                let c = cavity.sample_unchecked(xi);
                let m = mirror.sample(xi);
                let weight = &weight;
                Ok(move |u: T| {
                    let w = u.powi(power) * (-u).exp() / factorial;
                    let r = reflect(&m, &c, u / two_z).map(|v| v * w);
                    Ok(weight(xi, &c, r))
                })
            })
        }
    }
}

/// Leading `1/z^4` term of the atom force at short distances.
///
/// The mirror is treated in the nonretarded approximation. Ideal mirrors
/// use `R = +-Delta_q` for every wavenumber, which keeps the result the
/// short-distance limit of [`super::atom_force`] also for magnetic atoms.
pub fn atom_force_short<T: Real>(
    mirror: &Mirror<T>,
    cavity_medium: &Medium<T>,
    atom: &AtomSpecies<T>,
    z: T,
    spec: &QuadratureSpec<T>,
) -> Result<ForceResult<T>> {
    check_z(z)?;
    mirror.validate()?;
    cavity_medium.validate()?;
    atom.validate()?;
    let omega = atom
        .characteristic_frequency()
        .max(mirror.characteristic_frequency())
        .max(cavity_medium.characteristic_frequency());
    let r = nonretarded_integral(mirror, cavity_medium, z, 3, omega, spec, |xi, c, [rp, rs]| {
        let (ae, am) = atom.eval_unchecked(xi);
        [ae / (c.epsilon * c.epsilon) * rp, am * rs, T::zero(), T::zero()]
    })?;
    let pref = T::lit(3.0) / (T::lit(4.0) * T::PI() * z.powi(4));
    Ok(ForceResult::from_integral(r, pref))
}

fn static_cavity<T: Real>(cavity_medium: &Medium<T>) -> Result<(T, T)> {
    let (eps0, mu0) = cavity_medium.static_values();
    if !(eps0.is_finite() && mu0.is_finite()) {
        return Err(Error::Config(
            "cavity medium must have a finite static response".into(),
        ));
    }
    Ok((eps0, mu0))
}

/// Leading `1/z^5` term of the atom force at large distances, from the
/// static polarizabilities and static mirror reflection along `p`.
pub fn atom_force_large<T: Real>(
    mirror: &Mirror<T>,
    cavity_medium: &Medium<T>,
    atom: &AtomSpecies<T>,
    z: T,
    formulation: Formulation,
    spec: &QuadratureSpec<T>,
) -> Result<ForceResult<T>> {
    check_z(z)?;
    mirror.validate()?;
    cavity_medium.validate()?;
    atom.validate()?;
    let (eps0, mu0) = static_cavity(cavity_medium)?;
    let (ae, am) = atom.static_values();
    let n0_sq = eps0 * mu0;
    let one = T::one();
    let two = T::lit(2.0);
    let r = try_integrate_half_line(
        |p: T| {
            let rp = static_reflection(mirror, Polarization::TM, (eps0, mu0), p)?;
            let rs = static_reflection(mirror, Polarization::TE, (eps0, mu0), p)?;
            let w = p.powi(-4);
            let g = two * p * p - one;
            let tm = (ae * mu0 * g - am * eps0) * rp;
            let te = (am * eps0 * g - ae * mu0) * rs;
            let parts = match formulation {
                Formulation::Lorentz => {
                    let drive = mu0 * (n0_sq - one);
                    [tm / eps0, te * mu0, drive * ae * rp, -drive * am * rs]
                }
                Formulation::Minkowski => [tm, te, T::zero(), T::zero()],
            };
            Ok(parts.map(|v| v * w))
        },
        one,
        &spec.with_scale(one),
    )?;
    let pref = T::lit(3.0) / (T::lit(4.0) * T::PI() * n0_sq * n0_sq.sqrt() * z.powi(5));
    Ok(ForceResult::from_integral(r, pref))
}

/// Exact large-distance force next to an ideal mirror.
pub fn ideal_mirror_closed_form<T: Real>(
    atom: &AtomSpecies<T>,
    cavity_medium: &Medium<T>,
    z: T,
    formulation: Formulation,
    kind: IdealMirrorKind,
) -> Result<T> {
    check_z(z)?;
    let (eps0, mu0) = static_cavity(cavity_medium)?;
    let (ae, am) = atom.static_values();
    let n0_sq = eps0 * mu0;
    let n0 = n0_sq.sqrt();
    let one = T::one();
    let five = T::lit(5.0);
    let value = match formulation {
        Formulation::Lorentz => {
            let bracket = ae * (five / eps0 + mu0 + n0_sq - one) - am * (one / mu0 + five * eps0 - n0_sq + one);
            bracket / (T::lit(4.0) * T::PI() * z.powi(5) * n0 * eps0)
        }
        Formulation::Minkowski => {
            T::lit(3.0) * (ae * mu0 - am * eps0) / (T::lit(2.0) * T::PI() * n0_sq * n0 * z.powi(5))
        }
    };
    Ok(kind.sign::<T>() * value)
}

/// Leading short- or large-distance force on an atom of a dilute medium
/// filling the half-space in front of `mirror`.
///
/// The short-distance integral carries `xi^2 alpha(xi)`, which tends to a
/// constant, so it converges only for mirrors that become transparent at
/// high frequency. Ideal mirrors and constant responses other than one are
/// rejected.
pub fn medium_atom_asymptotics<T: Real>(
    mirror: &Mirror<T>,
    medium_atom: &MediumAtom<T>,
    z: T,
    regime: Regime,
    spec: &QuadratureSpec<T>,
) -> Result<ForceResult<T>> {
    check_z(z)?;
    mirror.validate()?;
    let species = &medium_atom.species;
    species.validate()?;
    let vacuum = Medium::vacuum();
    match regime {
        Regime::Short => {
            if mirror.is_ideal() {
                return Err(Error::UvDivergent(
                    "ideal mirrors never become transparent; the short-distance medium-atom integral needs a dispersive mirror".into(),
                ));
            }
            if let Some(m) = mirror.media().into_iter().find(|m| {
                m.epsilon.is_nontrivial_constant() || m.mu.is_nontrivial_constant()
            }) {
                return Err(Error::UvDivergent(format!(
                    "mirror medium {m:?} has a frequency-independent response other than 1"
                )));
            }
            let omega = species
                .characteristic_frequency()
                .max(mirror.characteristic_frequency());
            let r = nonretarded_integral(mirror, &vacuum, z, 1, omega, spec, |xi, _, [rp, rs]| {
                let (ae, am) = species.eval_unchecked(xi);
                let w = xi * xi * (ae + am);
                [T::zero(), T::zero(), w * rp, -w * rs]
            })?;
            Ok(ForceResult::from_integral(r, T::one() / (T::lit(4.0) * T::PI() * z * z)))
        }
        Regime::Large => {
            let (ae, am) = species.static_values();
            let one = T::one();
            let r = try_integrate_half_line(
                |p: T| {
                    let w = p.powi(-4);
                    let rp = static_reflection(mirror, Polarization::TM, (one, one), p)?;
                    let rs = static_reflection(mirror, Polarization::TE, (one, one), p)?;
                    Ok([T::zero(), T::zero(), w * rp, -w * rs])
                },
                one,
                &spec.with_scale(one),
            )?;
            let pref = T::lit(3.0) * (ae + am) / (T::lit(4.0) * T::PI() * z.powi(5));
            Ok(ForceResult::from_integral(r, pref))
        }
    }
}
