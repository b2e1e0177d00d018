//! Material and atomic response on the imaginary frequency axis.
//!
//! Every response function here is evaluated at `omega = i xi` with `xi >= 0`,
//! where causal responses are real and positive. Frequencies are in units of
//! the run's reference frequency and polarizabilities in volume units of
//! `(c / omega_ref)^3`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One Lorentz term of a dielectric or magnetic response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator<T> {
    /// Oscillator strength, `omega_p^2`.
    pub strength: T,
    pub resonance: T,
    pub damping: T,
}

/// Permittivity or permeability model.
#[derive(Debug, Clone, PartialEq)]
pub enum ResponseModel<T> {
    /// Frequency independent value. Values other than 1 never become
    /// transparent at high frequency.
    Constant(T),
    /// `1 + wp^2 / xi^2`
    Plasma { omega_p: T },
    /// `1 + wp^2 / (xi^2 + gamma xi)`
    Drude { omega_p: T, gamma: T },
    /// `1 + sum_j s_j / (w0_j^2 + xi^2 + gamma_j xi)`
    DrudeLorentz(Vec<Oscillator<T>>),
}

fn check_nonneg<T: Real>(what: &str, v: T) -> Result<()> {
    if v >= T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} must be finite and nonnegative, got {}",
            v.to_f64().unwrap_or(f64::NAN)
        )))
    }
}

fn check_xi<T: Real>(xi: T) -> Result<()> {
    check_nonneg("imaginary frequency", xi)
}

impl<T: Real> ResponseModel<T> {
    /// The unit response of empty space.
    pub fn unity() -> Self {
        ResponseModel::Constant(T::one())
    }

    /// Checks parameter signs.
    pub fn validate(&self) -> Result<()> {
        match self {
            ResponseModel::Constant(v) => {
                check_nonneg("constant response", *v)?;
                if *v < T::one() {
                    return Err(Error::Domain(
                        "constant response must be >= 1 on the imaginary axis".into(),
                    ));
                }
                Ok(())
            }
            ResponseModel::Plasma { omega_p } => check_nonneg("plasma frequency", *omega_p),
            ResponseModel::Drude { omega_p, gamma } => {
                check_nonneg("plasma frequency", *omega_p)?;
                check_nonneg("damping", *gamma)
            }
            ResponseModel::DrudeLorentz(osc) => osc.iter().try_for_each(|o| {
                check_nonneg("oscillator strength", o.strength)?;
                check_nonneg("oscillator resonance", o.resonance)?;
                check_nonneg("oscillator damping", o.damping)
            }),
        }
    }

    /// Whether the model goes to 1 at high frequency.
    pub fn is_dispersive(&self) -> bool {
        !matches!(self, ResponseModel::Constant(_))
    }

    /// True for a constant model whose value is not exactly 1.
    pub fn is_nontrivial_constant(&self) -> bool {
        matches!(self, ResponseModel::Constant(v) if *v != T::one())
    }

    /// Largest resonance or plasma frequency in the model, zero if none.
    pub fn characteristic_frequency(&self) -> T {
        match self {
            ResponseModel::Constant(_) => T::zero(),
            ResponseModel::Plasma { omega_p } => *omega_p,
            ResponseModel::Drude { omega_p, gamma } => omega_p.max(*gamma),
            ResponseModel::DrudeLorentz(osc) => osc.iter().fold(T::zero(), |m, o| {
                m.max(o.resonance).max(o.strength.sqrt()).max(o.damping)
            }),
        }
    }

    /// Evaluates the response at `i xi`.
    ///
    /// Conductor-like models (plasma, Drude, or a Lorentz term with zero
    /// resonance) return `+inf` at `xi = 0`.
    pub fn eval(&self, xi: T) -> Result<T> {
        check_xi(xi)?;
        Ok(self.eval_unchecked(xi))
    }

    pub(crate) fn eval_unchecked(&self, xi: T) -> T {
        T::one() + self.susceptibility_unchecked(xi)
    }

    /// `value(i xi) - 1`, evaluated without forming the value first.
    pub(crate) fn susceptibility_unchecked(&self, xi: T) -> T {
        match self {
            ResponseModel::Constant(v) => *v - T::one(),
            ResponseModel::Plasma { omega_p } => {
                if *omega_p == T::zero() {
                    T::zero()
                } else {
                    omega_p.powi(2) / (xi * xi)
                }
            }
            ResponseModel::Drude { omega_p, gamma } => {
                if *omega_p == T::zero() {
                    T::zero()
                } else {
                    omega_p.powi(2) / (xi * (xi + *gamma))
                }
            }
            ResponseModel::DrudeLorentz(osc) => osc
                .iter()
                .filter(|o| o.strength != T::zero())
                .map(|o| o.strength / (o.resonance.powi(2) + xi * (xi + o.damping)))
                .sum::<T>(),
        }
    }

    /// `value(i xi) * xi^2`, finite at `xi = 0` for every model.
    pub(crate) fn times_xi_sq(&self, xi: T) -> T {
        let one = T::one();
        let xi2 = xi * xi;
        // ratio xi / (xi + gamma) with its xi -> 0 limit
        let damped = |gamma: T| {
            if xi == T::zero() {
                if gamma == T::zero() {
                    one
                } else {
                    T::zero()
                }
            } else {
                xi / (xi + gamma)
            }
        };
        match self {
            ResponseModel::Constant(v) => *v * xi2,
            ResponseModel::Plasma { omega_p } => xi2 + omega_p.powi(2),
            ResponseModel::Drude { omega_p, gamma } => xi2 + omega_p.powi(2) * damped(*gamma),
            ResponseModel::DrudeLorentz(osc) => {
                xi2 + osc
                    .iter()
                    .map(|o| {
                        if o.resonance == T::zero() {
                            o.strength * damped(o.damping)
                        } else {
                            o.strength * xi2 / (o.resonance.powi(2) + xi * (xi + o.damping))
                        }
                    })
                    .sum::<T>()
            }
        }
    }
}

/// Evaluates a response model at imaginary frequency `xi`.
pub fn eval_response<T: Real>(model: &ResponseModel<T>, xi: T) -> Result<T> {
    model.validate()?;
    model.eval(xi)
}

/// A single Lorentz term `alpha_0 w^2 / (w^2 + xi^2)` of an atomic polarizability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizabilityTerm<T> {
    /// Static contribution.
    pub weight: T,
    pub resonance: T,
}

/// Sum of undamped Lorentz terms. The empty model is identically zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolarizabilityModel<T> {
    pub terms: Vec<PolarizabilityTerm<T>>,
}

impl<T: Real> PolarizabilityModel<T> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn single(weight: T, resonance: T) -> Self {
        Self {
            terms: vec![PolarizabilityTerm { weight, resonance }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.weight == T::zero())
    }

    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            check_nonneg("polarizability weight", t.weight)?;
            if !(t.resonance > T::zero() && t.resonance.is_finite()) {
                return Err(Error::Domain(
                    "polarizability resonance must be finite and positive".into(),
                ));
            }
        }
        Ok(())
    }

    /// Static polarizability, the sum of the weights.
    pub fn static_value(&self) -> T {
        self.terms.iter().map(|t| t.weight).sum()
    }

    pub fn characteristic_frequency(&self) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |m, t| m.max(t.resonance))
    }

    pub fn eval(&self, xi: T) -> Result<T> {
        check_xi(xi)?;
        Ok(self.eval_unchecked(xi))
    }

    pub(crate) fn eval_unchecked(&self, xi: T) -> T {
        self.terms
            .iter()
            .map(|t| {
                let w2 = t.resonance * t.resonance;
                t.weight * w2 / (w2 + xi * xi)
            })
            .sum()
    }

    /// Multiplies every weight by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| PolarizabilityTerm {
                    weight: t.weight * factor,
                    resonance: t.resonance,
                })
                .collect(),
        }
    }
}

/// Evaluates an atomic polarizability at imaginary frequency `xi`.
pub fn eval_polarizability<T: Real>(model: &PolarizabilityModel<T>, xi: T) -> Result<T> {
    model.eval(xi)
}

/// A homogeneous magnetodielectric medium.
#[derive(Debug, Clone, PartialEq)]
pub struct Medium<T> {
    pub epsilon: ResponseModel<T>,
    pub mu: ResponseModel<T>,
}

/// A medium evaluated at one imaginary frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumSample<T> {
    pub epsilon: T,
    pub mu: T,
    /// `epsilon - 1` and `mu - 1`, carried separately for weak contrasts.
    pub chi_e: T,
    pub chi_m: T,
    /// `n^2 xi^2`, kept separately so that conductors stay finite at `xi = 0`.
    pub n2_xi2: T,
}

impl<T: Real> MediumSample<T> {
    /// `n^2 - 1`.
    pub fn n2_minus_one(&self) -> T {
        self.chi_e + self.chi_m + self.chi_e * self.chi_m
    }

    /// Adds a dilute admixture with number density `density` to the sample.
    pub fn doped(self, density: T, alpha_e: T, alpha_m: T, xi: T) -> Self {
        let four_pi_n = T::lit(4.0) * T::PI() * density;
        let chi_e = self.chi_e + four_pi_n * alpha_e;
        let chi_m = self.chi_m + four_pi_n * alpha_m;
        let (epsilon, mu) = (T::one() + chi_e, T::one() + chi_m);
        let n2_xi2 = if xi > T::zero() && epsilon.is_finite() && mu.is_finite() {
            epsilon * mu * xi * xi
        } else {
            self.n2_xi2
        };
        Self {
            epsilon,
            mu,
            chi_e,
            chi_m,
            n2_xi2,
        }
    }
}

impl<T: Real> Medium<T> {
    pub fn new(epsilon: ResponseModel<T>, mu: ResponseModel<T>) -> Self {
        Self { epsilon, mu }
    }

    pub fn vacuum() -> Self {
        Self::new(ResponseModel::unity(), ResponseModel::unity())
    }

    /// Nonmagnetic medium with the given permittivity.
    pub fn dielectric(epsilon: ResponseModel<T>) -> Self {
        Self::new(epsilon, ResponseModel::unity())
    }

    pub fn constant(epsilon: T, mu: T) -> Self {
        Self::new(ResponseModel::Constant(epsilon), ResponseModel::Constant(mu))
    }

    pub fn validate(&self) -> Result<()> {
        self.epsilon.validate()?;
        self.mu.validate()
    }

    pub fn characteristic_frequency(&self) -> T {
        self.epsilon
            .characteristic_frequency()
            .max(self.mu.characteristic_frequency())
    }

    pub fn sample(&self, xi: T) -> Result<MediumSample<T>> {
        check_xi(xi)?;
        Ok(self.sample_unchecked(xi))
    }

    pub(crate) fn sample_unchecked(&self, xi: T) -> MediumSample<T> {
        let chi_e = self.epsilon.susceptibility_unchecked(xi);
        let chi_m = self.mu.susceptibility_unchecked(xi);
        let (epsilon, mu) = (T::one() + chi_e, T::one() + chi_m);
        let n2_xi2 = if xi > T::zero() {
            self.epsilon.times_xi_sq(xi) * mu
        } else if epsilon.is_finite() {
            epsilon * self.mu.times_xi_sq(xi)
        } else if mu.is_finite() {
            self.epsilon.times_xi_sq(xi) * mu
        } else {
            T::infinity()
        };
        MediumSample {
            epsilon,
            mu,
            chi_e,
            chi_m,
            n2_xi2,
        }
    }

    /// Static values `(epsilon_0, mu_0)`.
    pub fn static_values(&self) -> (T, T) {
        (
            self.epsilon.eval_unchecked(T::zero()),
            self.mu.eval_unchecked(T::zero()),
        )
    }

    /// Whether both responses stay finite at zero frequency.
    pub fn has_finite_static_response(&self) -> bool {
        let (e, m) = self.static_values();
        e.is_finite() && m.is_finite()
    }
}

/// `n^2(i xi) = epsilon(i xi) mu(i xi)`.
pub fn refractive_index_sq<T: Real>(medium: &Medium<T>, xi: T) -> Result<T> {
    let s = medium.sample(xi)?;
    Ok(s.epsilon * s.mu)
}

/// Electric and magnetic polarizability of an atom.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AtomSpecies<T> {
    pub alpha_e: PolarizabilityModel<T>,
    pub alpha_m: PolarizabilityModel<T>,
}

impl<T: Real> AtomSpecies<T> {
    pub fn new(alpha_e: PolarizabilityModel<T>, alpha_m: PolarizabilityModel<T>) -> Self {
        Self { alpha_e, alpha_m }
    }

    /// Purely electric single-resonance atom.
    pub fn electric(alpha0: T, omega0: T) -> Self {
        Self::new(
            PolarizabilityModel::single(alpha0, omega0),
            PolarizabilityModel::zero(),
        )
    }

    /// Purely magnetic single-resonance atom.
    pub fn magnetic(alpha0: T, omega0: T) -> Self {
        Self::new(
            PolarizabilityModel::zero(),
            PolarizabilityModel::single(alpha0, omega0),
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.alpha_e.validate()?;
        self.alpha_m.validate()
    }

    pub fn characteristic_frequency(&self) -> T {
        self.alpha_e
            .characteristic_frequency()
            .max(self.alpha_m.characteristic_frequency())
    }

    /// `(alpha_e, alpha_m)` at `i xi`.
    pub(crate) fn eval_unchecked(&self, xi: T) -> (T, T) {
        (self.alpha_e.eval_unchecked(xi), self.alpha_m.eval_unchecked(xi))
    }

    pub fn static_values(&self) -> (T, T) {
        (self.alpha_e.static_value(), self.alpha_m.static_value())
    }

    /// The same atom with electric and magnetic responses exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.alpha_m.clone(), self.alpha_e.clone())
    }
}
