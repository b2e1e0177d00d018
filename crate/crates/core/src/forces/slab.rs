use super::{integrate_cavity, CavityConfig, ForceResult, Point};
use crate::dispersion::{AtomSpecies, Medium, MediumSample};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;
use crate::stratified::{slab_coefficients_sampled, Polarization, SlabCoefficients};

/// Atoms dissolved in a slab at number density `density`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dopant<T> {
    pub species: AtomSpecies<T>,
    pub density: T,
}

/// A homogeneous slab of thickness `d_s`, optionally doped.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabConfig<T> {
    pub medium: Medium<T>,
    pub d_s: T,
    pub dopant: Option<Dopant<T>>,
}

impl<T: Real> SlabConfig<T> {
    pub fn new(medium: Medium<T>, d_s: T) -> Self {
        SlabConfig {
            medium,
            d_s,
            dopant: None,
        }
    }

    pub fn with_dopant(mut self, species: AtomSpecies<T>, density: T) -> Self {
        self.dopant = Some(Dopant { species, density });
        self
    }

    pub fn with_thickness(&self, d_s: T) -> Self {
        SlabConfig {
            d_s,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.medium.validate()?;
        if !(self.d_s > T::zero() && self.d_s.is_finite()) {
            return Err(Error::Config("slab thickness must be finite and positive".into()));
        }
        if let Some(d) = &self.dopant {
            d.species.validate()?;
            if !(d.density >= T::zero() && d.density.is_finite()) {
                return Err(Error::Config("dopant density must be finite and nonnegative".into()));
            }
        }
        Ok(())
    }

    pub(crate) fn characteristic_frequency(&self) -> T {
        let dopant = self
            .dopant
            .as_ref()
            .map_or(T::zero(), |d| d.species.characteristic_frequency());
        self.medium.characteristic_frequency().max(dopant)
    }

    pub(crate) fn sample(&self, xi: T) -> MediumSample<T> {
        let s = self.medium.sample_unchecked(xi);
        match &self.dopant {
            None => s,
            Some(d) => {
                let (ae, am) = d.species.eval_unchecked(xi);
                s.doped(d.density, ae, am, xi)
            }
        }
    }
}

struct SlabTerms<T> {
    coeffs: SlabCoefficients<T>,
    numerator: T,
    denominator: T,
}

fn slab_terms<T: Real>(p: &Point<T>, slab: &MediumSample<T>, d_s: T, q: Polarization) -> SlabTerms<T> {
    let i = q.index();
    let (a1, a2) = (p.r1e1[i], p.r2e2[i]);
    let coeffs = slab_coefficients_sampled(q, &p.medium, slab, p.xi, d_s, p.k);
    let denominator =
        T::one() - coeffs.r * (a1 + a2) + coeffs.r2_minus_t2 * a1 * a2;
    SlabTerms {
        coeffs,
        numerator: a2 - a1,
        denominator,
    }
}

/// Force per unit area on a slab whose faces are `d1` and `d2` away from
/// mirrors 1 and 2.
///
/// The screened part is driven by the slab reflection `r`; the assisted
/// part is proportional to `xi^2 mu (n^2 - 1)` of the cavity medium and to
/// `(1 + r)^2 - t^2`, which is positive for any passive slab.
pub fn slab_force<T: Real>(
    cavity: &CavityConfig<T>,
    slab: &SlabConfig<T>,
    spec: &QuadratureSpec<T>,
) -> Result<ForceResult<T>> {
    cavity.validate()?;
    slab.validate()?;
    let omega = cavity
        .characteristic_frequency()
        .max(slab.characteristic_frequency());
    let pi2 = T::PI() * T::PI();
    // the two parts carry different prefactors; fold the ratio into the
    // assisted entries so a single prefactor applies afterwards
    let assisted_ratio = T::lit(0.25);
    let r = integrate_cavity(cavity, omega, spec, |p| {
        let s = slab.sample(p.xi);
        let (eps, mu) = (p.medium.epsilon, p.medium.mu);
        let drive = p.xi * p.xi * mu * p.medium.n2_minus_one() * assisted_ratio;
        let k2 = p.kappa * p.kappa;
        let mut out = [T::zero(); 4];
        for q in Polarization::BOTH {
            let t = slab_terms(p, &s, slab.d_s, q);
            if t.denominator <= T::zero() {
                return Err(Error::Singular(t.denominator.to_f64().unwrap_or(f64::NAN)));
            }
            let weight = match q {
                Polarization::TM => T::one() / eps,
                Polarization::TE => mu,
            };
            let ratio = t.numerator / t.denominator;
            out[q.index()] = k2 * weight * t.coeffs.r * ratio;
            out[2 + q.index()] = drive * t.coeffs.one_plus_r_sq_minus_t2 * q.delta::<T>() * ratio;
        }
        Ok(out)
    })?;
    Ok(ForceResult::from_integral(r, T::one() / (T::lit(2.0) * pi2)))
}

/// Integrand of the assisted slab force for one polarization at one
/// `(xi, k)` point, split into the mirror-1 and mirror-2 contributions.
///
/// Each entry has the sign of `Delta_q r_i` times the direction from the
/// slab toward mirror `i` (negative for mirror 1).
pub fn assisted_contributions<T: Real>(
    cavity: &CavityConfig<T>,
    slab: &SlabConfig<T>,
    q: Polarization,
    xi: T,
    k: T,
) -> Result<[T; 2]> {
    cavity.validate()?;
    slab.validate()?;
    if !(xi >= T::zero() && k >= T::zero()) || (xi == T::zero() && k == T::zero()) {
        return Err(Error::DegenerateWavevector);
    }
    let medium = cavity.medium.sample(xi)?;
    let kappa = (medium.n2_xi2 + k * k).sqrt();
    let two = T::lit(2.0);
    let weighted = |m: &crate::stratified::Mirror<T>, d: T| {
        let sample = m.sample(xi);
        Polarization::BOTH.map(|q| sample.reflection(q, &medium, k, false) * (-two * kappa * d).exp())
    };
    let p = Point {
        xi,
        kappa,
        k,
        medium,
        r1e1: cavity
            .mirror1
            .as_ref()
            .map_or([T::zero(); 2], |m| weighted(m, cavity.d1)),
        r2e2: weighted(&cavity.mirror2, cavity.d2),
    };
    let t = slab_terms(&p, &slab.sample(xi), slab.d_s, q);
    let drive = xi * xi * medium.mu * medium.n2_minus_one() * t.coeffs.one_plus_r_sq_minus_t2
        * q.delta::<T>()
        / t.denominator;
    let i = q.index();
    Ok([-drive * p.r1e1[i], drive * p.r2e2[i]])
}
