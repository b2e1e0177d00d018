use super::{integrate_cavity, CavityConfig, ForceResult, Formulation};
use crate::dispersion::{AtomSpecies, Medium, Oscillator, PolarizabilityModel, ResponseModel};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;
use crate::stratified::Polarization::{TE, TM};

/// Force on a polarizable atom embedded in the cavity medium.
///
/// Lorentz: the screened TM part carries `1/epsilon` and the screened TE
/// part carries `mu`; the assisted part is proportional to
/// `xi^2 mu (n^2 - 1)`. Minkowski drops both.
pub fn atom_force<T: Real>(
    cavity: &CavityConfig<T>,
    atom: &AtomSpecies<T>,
    formulation: Formulation,
    spec: &QuadratureSpec<T>,
) -> Result<ForceResult<T>> {
    cavity.validate()?;
    atom.validate()?;
    let omega = cavity
        .characteristic_frequency()
        .max(atom.characteristic_frequency());
    let two = T::lit(2.0);
    let r = integrate_cavity(cavity, omega, spec, |p| {
        let (ae, am) = atom.eval_unchecked(p.xi);
        let (eps, mu) = (p.medium.epsilon, p.medium.mu);
        let xi2 = p.xi * p.xi;
        let k2 = p.kappa * p.kappa;
        let rp = p.response(TM)?;
        let rs = p.response(TE)?;
        let tm = (ae * (two * k2 / eps - mu * xi2) - am * eps * xi2) * rp;
        let te = (am * (two * k2 / mu - eps * xi2) - ae * mu * xi2) * rs;
        let parts = match formulation {
            Formulation::Lorentz => {
                let assisted = xi2 * mu * p.medium.n2_minus_one();
                [tm / eps, te * mu, assisted * ae * rp, -assisted * am * rs]
            }
            Formulation::Minkowski => [tm, te, T::zero(), T::zero()],
        };
        Ok(parts.map(|v| v * p.kappa))
    })?;
    Ok(ForceResult::from_integral(r, T::FRAC_1_PI()))
}

/// Atoms that make up a dilute cavity medium.
#[derive(Debug, Clone, PartialEq)]
pub struct MediumAtom<T> {
    pub species: AtomSpecies<T>,
    pub density: T,
}

const DILUTE_TOLERANCE: f64 = 1e-6;

impl<T: Real> MediumAtom<T> {
    pub fn new(species: AtomSpecies<T>, density: T) -> Self {
        MediumAtom { species, density }
    }

    /// The dilute medium these atoms form: `epsilon = 1 + 4 pi N alpha_e`,
    /// `mu = 1 + 4 pi N alpha_m`.
    pub fn host_medium(&self) -> Medium<T> {
        let four_pi_n = T::lit(4.0) * T::PI() * self.density;
        let model = |a: &PolarizabilityModel<T>| {
            if a.is_zero() {
                return ResponseModel::unity();
            }
            ResponseModel::DrudeLorentz(
                a.terms
                    .iter()
                    .map(|t| Oscillator {
                        strength: four_pi_n * t.weight * t.resonance * t.resonance,
                        resonance: t.resonance,
                        damping: T::zero(),
                    })
                    .collect(),
            )
        };
        Medium::new(model(&self.species.alpha_e), model(&self.species.alpha_m))
    }

    /// Checks `|n^2 - 1 - 4 pi N (alpha_e + alpha_m)| < 1e-6` on a
    /// logarithmic frequency grid around the relevant scales.
    pub fn check_dilute(&self, medium: &Medium<T>) -> Result<()> {
        self.species.validate()?;
        if !(self.density >= T::zero() && self.density.is_finite()) {
            return Err(Error::Config("medium atom density must be finite and nonnegative".into()));
        }
        let omega = medium
            .characteristic_frequency()
            .max(self.species.characteristic_frequency())
            .max(T::lit(1e-300));
        let four_pi_n = T::lit(4.0) * T::PI() * self.density;
        let tol = T::lit(DILUTE_TOLERANCE);
        let grid = std::iter::once(T::zero())
            .chain((0..=80).map(|i| omega * T::lit(10f64.powf(-4.0 + 0.1 * i as f64))));
        for xi in grid {
            let s = medium.sample(xi)?;
            let (ae, am) = self.species.eval_unchecked(xi);
            let deviation = (s.n2_minus_one() - four_pi_n * (ae + am)).abs();
            if !(deviation < tol) {
                return Err(Error::DiluteInconsistent {
                    xi: xi.to_f64().unwrap_or(f64::NAN),
                    deviation: deviation.to_f64().unwrap_or(f64::NAN),
                    tolerance: DILUTE_TOLERANCE,
                });
            }
        }
        Ok(())
    }
}

/// `xi^2 w(xi) kappa (R^p - R^s)` split into `[0, 0, TM, TE]`.
fn medium_kernel_integral<T, W>(
    cavity: &CavityConfig<T>,
    omega: T,
    spec: &QuadratureSpec<T>,
    weight: W,
) -> Result<crate::quadrature::IntegralResult<T, [T; 4]>>
where
    T: Real,
    W: Fn(T, &crate::dispersion::MediumSample<T>) -> T + Sync,
{
    integrate_cavity(cavity, omega, spec, |p| {
        let w = p.xi * p.xi * weight(p.xi, &p.medium) * p.kappa;
        Ok([T::zero(), T::zero(), w * p.response(TM)?, -w * p.response(TE)?])
    })
}

/// Force per unit area on a thin layer of the cavity medium itself, of
/// thickness `d_s`, centred at the probe position.
pub fn medium_layer_force<T: Real>(
    cavity: &CavityConfig<T>,
    d_s: T,
    spec: &QuadratureSpec<T>,
) -> Result<ForceResult<T>> {
    cavity.validate()?;
    if !(d_s >= T::zero() && d_s.is_finite()) {
        return Err(Error::Config("layer thickness must be finite and nonnegative".into()));
    }
    let r = medium_kernel_integral(cavity, cavity.characteristic_frequency(), spec, |_, s| {
        s.mu * s.n2_minus_one()
    })?;
    let four_pi_sq = T::lit(4.0) * T::PI() * T::PI();
    Ok(ForceResult::from_integral(r, d_s / four_pi_sq))
}

/// Force on one of the atoms forming a dilute cavity medium.
///
/// Depends on the medium atom only through `alpha_e + alpha_m`. The
/// cavity medium must be consistent with the atoms (see
/// [`MediumAtom::check_dilute`]).
pub fn medium_atom_force<T: Real>(
    cavity: &CavityConfig<T>,
    medium_atom: &MediumAtom<T>,
    spec: &QuadratureSpec<T>,
) -> Result<ForceResult<T>> {
    cavity.validate()?;
    medium_atom.check_dilute(&cavity.medium)?;
    let species = &medium_atom.species;
    let omega = cavity
        .characteristic_frequency()
        .max(species.characteristic_frequency());
    let r = medium_kernel_integral(cavity, omega, spec, |xi, _| {
        let (ae, am) = species.eval_unchecked(xi);
        ae + am
    })?;
    Ok(ForceResult::from_integral(r, T::FRAC_1_PI()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stratified::Mirror;

    fn spec() -> QuadratureSpec<f64> {
        QuadratureSpec::default()
    }

    fn plasma_mirror(wp: f64) -> Mirror<f64> {
        Mirror::half_space(Medium::dielectric(ResponseModel::Plasma { omega_p: wp }))
    }

    #[test]
    fn vacuum_ideal_conductor_limits() {
        let atom = AtomSpecies::electric(1.0, 1.0);
        let far = CavityConfig::semi_infinite(Medium::vacuum(), Mirror::IdealConducting, 100.0);
        let f = atom_force(&far, &atom, Formulation::Lorentz, &spec()).unwrap();
        let cp = 3.0 / (2.0 * std::f64::consts::PI * 100f64.powi(5));
        assert!(f.converged);
        assert!((f.total / cp - 1.0).abs() < 1e-2, "{}", f.total / cp);
        assert_eq!(f.assisted_part(), 0.0);

        let near = CavityConfig::semi_infinite(Medium::vacuum(), Mirror::IdealConducting, 1e-3);
        let f = atom_force(&near, &atom, Formulation::Lorentz, &spec()).unwrap();
        let vdw = 3.0 / (8.0 * 1e-3f64.powi(4));
        assert!((f.total / vdw - 1.0).abs() < 1e-2, "{}", f.total / vdw);
    }

    #[test]
    fn symmetric_cavity_cancels() {
        let c = CavityConfig::new(Medium::constant(2.0, 1.5), plasma_mirror(1.0), plasma_mirror(1.0), 0.6, 0.6);
        let atom = AtomSpecies::new(PolarizabilityModel::single(1.0, 0.5), PolarizabilityModel::single(0.3, 0.7));
        let f = atom_force(&c, &atom, Formulation::Lorentz, &spec()).unwrap();
        assert_eq!(f.total, 0.0);
    }

    #[test]
    fn medium_atom_equal_mirror_responses_vanish() {
        let a = PolarizabilityModel::single(1e-3, 1.0);
        let ma = MediumAtom::new(AtomSpecies::new(a.clone(), a), 1e-4);
        let m = Mirror::half_space(Medium::new(
            ResponseModel::Plasma { omega_p: 2.0 },
            ResponseModel::Plasma { omega_p: 2.0 },
        ));
        let c = CavityConfig::semi_infinite(ma.host_medium(), m, 0.5);
        let f = medium_atom_force(&c, &ma, &spec()).unwrap();
        assert_eq!(f.total, 0.0);
    }

    #[test]
    fn dilute_consistency_enforced() {
        let ma = MediumAtom::new(AtomSpecies::electric(1e-3, 1.0), 1e-4);
        let c = CavityConfig::semi_infinite(Medium::constant(1.5, 1.0), plasma_mirror(1.0), 0.5);
        assert!(matches!(
            medium_atom_force(&c, &ma, &spec()),
            Err(Error::DiluteInconsistent { .. })
        ));
    }
}
