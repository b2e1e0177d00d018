//! Force calculations in a planar cavity.
//!
//! Sign convention: a positive force points from mirror 1 toward mirror 2,
//! i.e. in the direction of decreasing `d2`. For the semi-infinite cavity
//! (no mirror 1) a positive force therefore means attraction toward the
//! only mirror.
//!
//! All quantities are in natural units (`hbar = c = 1`); forces on atoms
//! are per atom, forces on slabs and layers are per unit area.

mod asymptotic;
mod atom;
mod pair;
mod slab;
mod thin_slab;

pub use asymptotic::{
    atom_force_large, atom_force_short, ideal_mirror_closed_form, medium_atom_asymptotics,
    IdealMirrorKind, Regime,
};
pub use atom::{atom_force, medium_atom_force, medium_layer_force, MediumAtom};
pub use pair::{atom_atom_forces, AtomPair};
pub use slab::{assisted_contributions, slab_force, Dopant, SlabConfig};
pub use thin_slab::{thin_slab_decomposition_check, ThinSlabReport};

use crate::dispersion::{Medium, MediumSample};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_nested, IntegralResult, QuadratureSpec};
use crate::scalar::Real;
use crate::stratified::{Mirror, MirrorSample, Polarization};

/// Which stress tensor the atom force is derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Formulation {
    /// Lorentz-force approach: medium-screened plus medium-assisted parts.
    #[default]
    Lorentz,
    /// Minkowski tensor: no screening factors and no assisted part.
    Minkowski,
}

/// A pair of TM/TE contributions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PolarizationParts<T> {
    pub tm: T,
    pub te: T,
}

impl<T: Real> PolarizationParts<T> {
    pub fn sum(&self) -> T {
        self.tm + self.te
    }
}

/// A force with its decomposition and quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult<T> {
    pub total: T,
    pub screened: PolarizationParts<T>,
    pub assisted: PolarizationParts<T>,
    pub error_estimate: T,
    pub converged: bool,
    pub evaluations: usize,
}

impl<T: Real> ForceResult<T> {
    /// Builds a result from `[screened TM, screened TE, assisted TM, assisted TE]`.
    pub fn from_parts(parts: [T; 4], error_estimate: T, converged: bool, evaluations: usize) -> Self {
        let screened = PolarizationParts {
            tm: parts[0],
            te: parts[1],
        };
        let assisted = PolarizationParts {
            tm: parts[2],
            te: parts[3],
        };
        ForceResult {
            total: screened.sum() + assisted.sum(),
            screened,
            assisted,
            error_estimate,
            converged,
            evaluations,
        }
    }

    /// A closed-form value with no quadrature behind it.
    pub fn exact(parts: [T; 4]) -> Self {
        Self::from_parts(parts, T::zero(), true, 0)
    }

    pub(crate) fn from_integral(r: IntegralResult<T, [T; 4]>, prefactor: T) -> Self {
        Self::from_parts(
            r.value.map(|v| v * prefactor),
            r.error_estimate * prefactor.abs(),
            r.converged,
            r.evaluations,
        )
    }

    pub fn screened_part(&self) -> T {
        self.screened.sum()
    }

    pub fn assisted_part(&self) -> T {
        self.assisted.sum()
    }
}

/// Cavity medium between two mirrors, with the probe located `d1` from
/// mirror 1 and `d2` from mirror 2. Without mirror 1 the cavity is
/// semi-infinite and `d1` is infinite.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityConfig<T> {
    pub medium: Medium<T>,
    pub mirror1: Option<Mirror<T>>,
    pub mirror2: Mirror<T>,
    pub d1: T,
    pub d2: T,
}

impl<T: Real> CavityConfig<T> {
    pub fn new(medium: Medium<T>, mirror1: Mirror<T>, mirror2: Mirror<T>, d1: T, d2: T) -> Self {
        CavityConfig {
            medium,
            mirror1: Some(mirror1),
            mirror2,
            d1,
            d2,
        }
    }

    /// Single mirror at distance `z`.
    pub fn semi_infinite(medium: Medium<T>, mirror: Mirror<T>, z: T) -> Self {
        CavityConfig {
            medium,
            mirror1: None,
            mirror2: mirror,
            d1: T::infinity(),
            d2: z,
        }
    }

    pub fn is_semi_infinite(&self) -> bool {
        self.mirror1.is_none()
    }

    /// The same cavity with the probe moved to `(d1, d2)`.
    pub fn at(&self, d1: T, d2: T) -> Self {
        CavityConfig {
            d1: if self.is_semi_infinite() { T::infinity() } else { d1 },
            d2,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.medium.validate()?;
        if !self.medium.has_finite_static_response() {
            return Err(Error::Config(
                "cavity medium must have a finite static response".into(),
            ));
        }
        self.mirror2.validate()?;
        positive_distance("d2", self.d2)?;
        if let Some(m) = &self.mirror1 {
            m.validate()?;
            positive_distance("d1", self.d1)?;
        }
        Ok(())
    }

    pub(crate) fn min_distance(&self) -> T {
        self.d1.min(self.d2)
    }

    /// Static refractive index of the cavity medium.
    pub(crate) fn static_index(&self) -> T {
        let (e, m) = self.medium.static_values();
        (e * m).sqrt()
    }

    /// Largest resonance or plasma frequency of the cavity medium and mirrors.
    pub fn characteristic_frequency(&self) -> T {
        let m1 = self
            .mirror1
            .as_ref()
            .map_or(T::zero(), |m| m.characteristic_frequency());
        self.medium
            .characteristic_frequency()
            .max(self.mirror2.characteristic_frequency())
            .max(m1)
    }
}

fn positive_distance<T: Real>(name: &str, d: T) -> Result<()> {
    if d > T::zero() && d.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite and positive")))
    }
}

const SINGULAR_THRESHOLD: f64 = 1e-12;

/// `(r2 e2 - r1 e1) / (1 - r1 r2 e1 e2)` with `e_i = exp(-2 kappa d_i)`.
fn combine<T: Real>(r1e1: T, r2e2: T) -> Result<T> {
    let den = T::one() - r1e1 * r2e2;
    if den.abs() < T::lit(SINGULAR_THRESHOLD) {
        return Err(Error::Singular(den.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((r2e2 - r1e1) / den)
}

/// Cavity response function for polarization `q` at the probe position.
pub fn cavity_response<T: Real>(q: Polarization, cavity: &CavityConfig<T>, xi: T, k: T) -> Result<T> {
    cavity.validate()?;
    let c = cavity.medium.sample(xi)?;
    if k < T::zero() || (xi == T::zero() && k == T::zero()) {
        return Err(Error::DegenerateWavevector);
    }
    let kappa = (c.n2_xi2 + k * k).sqrt();
    let r2 = cavity.mirror2.sample(xi).reflection(q, &c, k, false);
    let e2 = (-T::lit(2.0) * kappa * cavity.d2).exp();
    let r1e1 = match &cavity.mirror1 {
        None => T::zero(),
        Some(m) => m.sample(xi).reflection(q, &c, k, false) * (-T::lit(2.0) * kappa * cavity.d1).exp(),
    };
    combine(r1e1, r2 * e2)
}

/// One node of the `(xi, kappa)` integration: the cavity medium sample and
/// the phase-weighted mirror reflections `r_i exp(-2 kappa d_i)`.
pub(crate) struct Point<T> {
    pub xi: T,
    pub kappa: T,
    pub k: T,
    pub medium: MediumSample<T>,
    /// `[TM, TE]` of `r_1 exp(-2 kappa d_1)`.
    pub r1e1: [T; 2],
    /// `[TM, TE]` of `r_2 exp(-2 kappa d_2)`.
    pub r2e2: [T; 2],
}

impl<T: Real> Point<T> {
    pub fn response(&self, q: Polarization) -> Result<T> {
        let i = q.index();
        combine(self.r1e1[i], self.r2e2[i])
    }
}

/// Frequency scale for the outer integral: the smaller of the model
/// frequency `omega` and the inverse round-trip distance `1 / (2 n d)`.
pub(crate) fn xi_scale<T: Real>(omega: T, n0: T, d: T) -> T {
    let geometric = T::one() / (T::lit(2.0) * n0 * d);
    if omega > T::zero() && omega.is_finite() {
        omega.min(geometric)
    } else {
        geometric
    }
}

/// `int_0^inf dxi int_{n xi}^inf dkappa kernel(point)`.
///
/// The inner variable is `x = kappa - n xi`, so that `k^2 = x (x + 2 n xi)`
/// stays polynomial in `x` and the integrand decays like
/// `exp(-2 x d_min)` for every frequency.
pub(crate) fn integrate_cavity<T, K>(
    cavity: &CavityConfig<T>,
    omega: T,
    spec: &QuadratureSpec<T>,
    kernel: K,
) -> Result<IntegralResult<T, [T; 4]>>
where
    T: Real,
    K: Fn(&Point<T>) -> Result<[T; 4]> + Sync,
{
    let two = T::lit(2.0);
    let d_min = cavity.min_distance();
    let outer = spec.with_scale(xi_scale(omega, cavity.static_index(), d_min));
    let inner = spec
        .with_rel_tol(spec.rel_tol * T::lit(0.1))
        .with_abs_tol(spec.abs_tol * T::lit(0.1))
        .with_scale(T::one() / (two * d_min));
    let kernel = &kernel;
    integrate_nested(T::zero(), &outer, T::zero(), &inner, |xi| {
        let medium = cavity.medium.sample_unchecked(xi);
        let m1 = cavity.mirror1.as_ref().map(|m| m.sample(xi));
        let m2 = cavity.mirror2.sample(xi);
        let kappa0 = medium.n2_xi2.sqrt();
        Ok(move |x: T| {
            let kappa = kappa0 + x;
            let k = (x * (x + two * kappa0)).sqrt();
            let weighted = |m: &MirrorSample<T>, d: T| {
                let e = (-two * kappa * d).exp();
                Polarization::BOTH.map(|q| m.reflection(q, &medium, k, false) * e)
            };
            let point = Point {
                xi,
                kappa,
                k,
                medium,
                r1e1: m1
                    .as_ref()
                    .map_or([T::zero(); 2], |m| weighted(m, cavity.d1)),
                r2e2: weighted(&m2, cavity.d2),
            };
            kernel(&point)
        })
    })
}
