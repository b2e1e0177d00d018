//! Planar stratified media: perpendicular wave vectors, interface and slab
//! Fresnel coefficients, and mirror reflection coefficients.
//!
//! All coefficients are evaluated on the imaginary frequency axis where they
//! are real. The TM coefficient of a perfect conductor is `+1` and the TE one
//! is `-1`, i.e. `R = Delta_q` with `Delta_TM = +1`, `Delta_TE = -1`.

use crate::dispersion::{Medium, MediumSample, ResponseModel};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Field polarization of a planar mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    /// Transverse magnetic, `q = p`.
    TM,
    /// Transverse electric, `q = s`.
    TE,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::TM, Polarization::TE];

    /// `Delta_q = delta_qp - delta_qs`.
    pub fn delta<T: Real>(self) -> T {
        match self {
            Polarization::TM => T::one(),
            Polarization::TE => -T::one(),
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            Polarization::TM => 0,
            Polarization::TE => 1,
        }
    }
}

/// A finite layer of a mirror stack.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer<T> {
    pub medium: Medium<T>,
    pub thickness: T,
}

/// Cavity wall.
#[derive(Debug, Clone, PartialEq)]
pub enum Mirror<T> {
    /// `epsilon -> inf`: reflection `+Delta_q`.
    IdealConducting,
    /// `mu -> inf`: reflection `-Delta_q`.
    IdealPermeable,
    /// Layers listed from the cavity side inward, over a half-space.
    Stack {
        layers: Vec<Layer<T>>,
        substrate: Medium<T>,
    },
}

/// How the perpendicular wave vectors inside a mirror are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReflectionMode<T> {
    /// Exact `kappa_l = sqrt(n_l^2 xi^2 + k^2)`.
    Retarded { xi: T, k: T },
    /// `kappa_l = k` in every layer (media still evaluated at `xi`).
    NonRetarded { xi: T, k: T },
    /// `xi -> 0` along `kappa = n xi p` in the cavity, `p >= 1`.
    StaticP { p: T },
}

impl<T: Real> Mirror<T> {
    /// Single-interface mirror.
    pub fn half_space(substrate: Medium<T>) -> Self {
        Mirror::Stack {
            layers: Vec::new(),
            substrate,
        }
    }

    pub fn is_ideal(&self) -> bool {
        !matches!(self, Mirror::Stack { .. })
    }

    pub fn validate(&self) -> Result<()> {
        if let Mirror::Stack { layers, substrate } = self {
            substrate.validate()?;
            for l in layers {
                l.medium.validate()?;
                if !(l.thickness > T::zero() && l.thickness.is_finite()) {
                    return Err(Error::Config(
                        "mirror layer thickness must be finite and positive".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Every medium in the stack, cavity side first.
    pub fn media(&self) -> Vec<&Medium<T>> {
        match self {
            Mirror::Stack { layers, substrate } => layers
                .iter()
                .map(|l| &l.medium)
                .chain(std::iter::once(substrate))
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn characteristic_frequency(&self) -> T {
        self.media()
            .iter()
            .fold(T::zero(), |m, med| m.max(med.characteristic_frequency()))
    }

    /// Ideal mirrors give `+-Delta_q` in every mode.
    fn ideal_value(&self, q: Polarization) -> Option<T> {
        match self {
            Mirror::IdealConducting => Some(q.delta()),
            Mirror::IdealPermeable => Some(-q.delta::<T>()),
            Mirror::Stack { .. } => None,
        }
    }

    /// Samples every medium of the stack at `xi`, for repeated evaluation
    /// at many in-plane wavenumbers.
    pub(crate) fn sample(&self, xi: T) -> MirrorSample<T> {
        match self {
            Mirror::IdealConducting => MirrorSample::Ideal(T::one()),
            Mirror::IdealPermeable => MirrorSample::Ideal(-T::one()),
            Mirror::Stack { layers, substrate } => MirrorSample::Stack {
                layers: layers
                    .iter()
                    .map(|l| (l.medium.sample_unchecked(xi), l.thickness))
                    .collect(),
                substrate: substrate.sample_unchecked(xi),
                xi,
            },
        }
    }
}

/// `(a - b) / (a + b)` for nonnegative admittances, allowing one infinite side.
fn fresnel<T: Real>(a: T, b: T) -> T {
    if a.is_infinite() && b.is_finite() {
        T::one()
    } else if b.is_infinite() && a.is_finite() {
        -T::one()
    } else {
        (a - b) / (a + b)
    }
}

/// `kappa / epsilon` (TM) or `kappa / mu` (TE); zero for an infinite response.
fn admittance<T: Real>(q: Polarization, s: &MediumSample<T>, kappa: T) -> T {
    let resp = match q {
        Polarization::TM => s.epsilon,
        Polarization::TE => s.mu,
    };
    if resp.is_infinite() {
        T::zero()
    } else {
        kappa / resp
    }
}

/// Reflection from medium `a` onto medium `b`, with the numerator built from
/// the susceptibility differences so that weak contrasts keep full relative
/// precision. `xi_sq` is zero in the nonretarded variant, where
/// `ka = kb = k`.
fn interface<T: Real>(
    q: Polarization,
    a: &MediumSample<T>,
    ka: T,
    b: &MediumSample<T>,
    kb: T,
    xi_sq: T,
) -> T {
    let finite = [a.epsilon, a.mu, b.epsilon, b.mu].iter().all(|v| v.is_finite());
    if !finite || ka + kb == T::zero() {
        return fresnel(admittance(q, a, ka), admittance(q, b, kb));
    }
    let (d_e, d_m) = (b.chi_e - a.chi_e, b.chi_m - a.chi_m);
    let (ra, rb, dr) = match q {
        Polarization::TM => (a.epsilon, b.epsilon, d_e),
        Polarization::TE => (a.mu, b.mu, d_m),
    };
    let d_kappa = (d_e * b.mu + a.epsilon * d_m) * xi_sq / (ka + kb);
    (ka * dr - ra * d_kappa) / (ka * rb + kb * ra)
}

fn kappa_of<T: Real>(s: &MediumSample<T>, k: T) -> T {
    (s.n2_xi2 + k * k).sqrt()
}

fn check_xi_k<T: Real>(xi: T, k: T) -> Result<()> {
    if !(xi >= T::zero() && k >= T::zero()) {
        return Err(Error::Domain(
            "imaginary frequency and wavenumber must be nonnegative".into(),
        ));
    }
    if xi == T::zero() && k == T::zero() {
        return Err(Error::DegenerateWavevector);
    }
    Ok(())
}

/// Perpendicular wave vector `kappa = sqrt(n^2(i xi) xi^2 + k^2)` (positive branch).
pub fn perpendicular_wavevector<T: Real>(medium: &Medium<T>, xi: T, k: T) -> Result<T> {
    check_xi_k(xi, k)?;
    let kappa = kappa_of(&medium.sample(xi)?, k);
    debug_assert!(kappa > T::zero());
    Ok(kappa)
}

/// Single-interface reflection from the cavity medium onto `other`.
pub fn interface_reflection<T: Real>(
    q: Polarization,
    cavity: &Medium<T>,
    other: &Medium<T>,
    xi: T,
    k: T,
) -> Result<T> {
    check_xi_k(xi, k)?;
    let c = cavity.sample(xi)?;
    let o = other.sample(xi)?;
    Ok(interface(q, &c, kappa_of(&c, k), &o, kappa_of(&o, k), xi * xi))
}

/// Reflection and transmission of a slab embedded in the cavity medium,
/// together with the combinations that enter the slab force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabCoefficients<T> {
    pub r: T,
    pub t: T,
    /// `r^2 - t^2`
    pub r2_minus_t2: T,
    /// `(1 + r)^2 - t^2`
    pub one_plus_r_sq_minus_t2: T,
}

impl<T: Real> SlabCoefficients<T> {
    /// Builds the coefficients from the interface reflection `rho` and the
    /// optical thickness `kappa_s d_s`.
    ///
    /// The combinations are evaluated in closed form,
    /// `r^2 - t^2 = (rho^2 - e) / (1 - rho^2 e)` and
    /// `(1+r)^2 - t^2 = (1+rho)^2 (1 - e) / (1 - rho^2 e)` with
    /// `e = exp(-2 kappa_s d_s)`, which keeps thin slabs free of cancellation.
    pub fn from_interface(rho: T, kappa_s_ds: T) -> Self {
        let one = T::one();
        let two = T::lit(2.0);
        let e1 = (-kappa_s_ds).exp();
        let e2 = e1 * e1;
        let one_minus_e2 = -(-two * kappa_s_ds).exp_m1();
        let rho2 = rho * rho;
        let denom = one - rho2 * e2;
        let r = rho * one_minus_e2 / denom;
        let t = (one - rho2) * e1 / denom;
        SlabCoefficients {
            r,
            t,
            r2_minus_t2: (rho2 - e2) / denom,
            one_plus_r_sq_minus_t2: (one + rho).powi(2) * one_minus_e2 / denom,
        }
    }
}

/// Fresnel coefficients of a slab of `slab` medium and thickness `d_s`
/// inside the cavity medium.
pub fn slab_coefficients<T: Real>(
    q: Polarization,
    cavity: &Medium<T>,
    slab: &Medium<T>,
    d_s: T,
    xi: T,
    k: T,
) -> Result<SlabCoefficients<T>> {
    if !(d_s >= T::zero()) {
        return Err(Error::Domain("slab thickness must be nonnegative".into()));
    }
    check_xi_k(xi, k)?;
    let c = cavity.sample(xi)?;
    let s = slab.sample(xi)?;
    Ok(slab_coefficients_sampled(q, &c, &s, xi, d_s, k))
}

pub(crate) fn slab_coefficients_sampled<T: Real>(
    q: Polarization,
    cavity: &MediumSample<T>,
    slab: &MediumSample<T>,
    xi: T,
    d_s: T,
    k: T,
) -> SlabCoefficients<T> {
    let kappa_s = kappa_of(slab, k);
    let rho = interface(q, cavity, kappa_of(cavity, k), slab, kappa_s, xi * xi);
    SlabCoefficients::from_interface(rho, kappa_s * d_s)
}

/// Mirror media pre-evaluated at one imaginary frequency.
#[derive(Debug, Clone)]
pub(crate) enum MirrorSample<T> {
    Ideal(T),
    Stack {
        layers: Vec<(MediumSample<T>, T)>,
        substrate: MediumSample<T>,
        xi: T,
    },
}

impl<T: Real> MirrorSample<T> {
    /// Reflection coefficient seen from a cavity medium sampled at the same
    /// frequency. `nonretarded` replaces every `kappa_l` by `k`.
    pub(crate) fn reflection(
        &self,
        q: Polarization,
        cavity: &MediumSample<T>,
        k: T,
        nonretarded: bool,
    ) -> T {
        let (layers, substrate, xi) = match self {
            MirrorSample::Ideal(sign) => return *sign * q.delta::<T>(),
            MirrorSample::Stack {
                layers,
                substrate,
                xi,
            } => (layers, substrate, *xi),
        };
        let kappa = |s: &MediumSample<T>| if nonretarded { k } else { kappa_of(s, k) };
        let xi_sq = if nonretarded { T::zero() } else { xi * xi };
        let two = T::lit(2.0);
        // r_in: reflection seen from inside the current layer at its lower
        // interface, already carrying the round-trip phase of the layer
        let mut below = (substrate, kappa(substrate));
        let mut r_in: Option<T> = None;
        for (s, thickness) in layers.iter().rev() {
            let kl = kappa(s);
            let rho = interface(q, s, kl, below.0, below.1, xi_sq);
            let r = r_in.map_or(rho, |r| compose(rho, r));
            r_in = Some(r * (-two * kl * *thickness).exp());
            below = (s, kl);
        }
        let rho = interface(q, cavity, kappa(cavity), below.0, below.1, xi_sq);
        r_in.map_or(rho, |r| compose(rho, r))
    }
}

/// Two-interface composition `(rho + r) / (1 + rho r)`, `r` phase-weighted.
fn compose<T: Real>(rho: T, r: T) -> T {
    (rho + r) / (T::one() + rho * r)
}

/// Leading small-`xi` behaviour `coeff * xi^order` of a positive quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
struct PowerLaw<T> {
    coeff: T,
    order: T,
}

impl<T: Real> PowerLaw<T> {
    fn mul(self, o: Self) -> Self {
        PowerLaw {
            coeff: self.coeff * o.coeff,
            order: self.order + o.order,
        }
    }

    fn div(self, o: Self) -> Self {
        PowerLaw {
            coeff: self.coeff / o.coeff,
            order: self.order - o.order,
        }
    }

    fn sqrt(self) -> Self {
        PowerLaw {
            coeff: self.coeff.sqrt(),
            order: self.order / T::lit(2.0),
        }
    }

    fn add(self, o: Self) -> Self {
        if self.order < o.order {
            self
        } else if o.order < self.order {
            o
        } else {
            PowerLaw {
                coeff: self.coeff + o.coeff,
                order: self.order,
            }
        }
    }
}

fn leading_small_xi<T: Real>(model: &ResponseModel<T>) -> PowerLaw<T> {
    let flat = |c: T| PowerLaw {
        coeff: c,
        order: T::zero(),
    };
    let two = T::lit(2.0);
    match model {
        ResponseModel::Constant(v) => flat(*v),
        ResponseModel::Plasma { omega_p } | ResponseModel::Drude { omega_p, gamma: _ }
            if *omega_p == T::zero() =>
        {
            flat(T::one())
        }
        ResponseModel::Plasma { omega_p } => PowerLaw {
            coeff: omega_p.powi(2),
            order: -two,
        },
        ResponseModel::Drude { omega_p, gamma } => {
            if *gamma == T::zero() {
                PowerLaw {
                    coeff: omega_p.powi(2),
                    order: -two,
                }
            } else {
                PowerLaw {
                    coeff: omega_p.powi(2) / *gamma,
                    order: -T::one(),
                }
            }
        }
        ResponseModel::DrudeLorentz(osc) => {
            let mut lead = flat(T::one());
            for o in osc.iter().filter(|o| o.strength > T::zero()) {
                let term = if o.resonance > T::zero() {
                    flat(o.strength / o.resonance.powi(2))
                } else if o.damping > T::zero() {
                    PowerLaw {
                        coeff: o.strength / o.damping,
                        order: -T::one(),
                    }
                } else {
                    PowerLaw {
                        coeff: o.strength,
                        order: -two,
                    }
                };
                lead = lead.add(term);
            }
            lead
        }
    }
}

/// Admittance of a mirror medium along `kappa = n0 xi p`, as `xi -> 0`.
/// Returns the admittance power law and the limiting layer phase factor per
/// unit thickness exponent (`kappa_l` power law).
fn static_admittance<T: Real>(
    q: Polarization,
    medium: &Medium<T>,
    n0_sq: T,
    p: T,
) -> (PowerLaw<T>, PowerLaw<T>) {
    let eps = leading_small_xi(&medium.epsilon);
    let mu = leading_small_xi(&medium.mu);
    let two = T::lit(2.0);
    let xi2 = PowerLaw {
        coeff: T::one(),
        order: two,
    };
    let k2 = PowerLaw {
        coeff: n0_sq * (p * p - T::one()),
        order: two,
    };
    let n2xi2 = eps.mul(mu).mul(xi2);
    let kappa2 = if k2.coeff > T::zero() { n2xi2.add(k2) } else { n2xi2 };
    let kappa = kappa2.sqrt();
    let y = match q {
        Polarization::TM => kappa.div(eps),
        Polarization::TE => kappa.div(mu),
    };
    (y, kappa)
}

fn static_fresnel<T: Real>(a: PowerLaw<T>, b: PowerLaw<T>) -> T {
    if a.order < b.order {
        T::one()
    } else if b.order < a.order {
        -T::one()
    } else {
        (a.coeff - b.coeff) / (a.coeff + b.coeff)
    }
}

fn static_phase<T: Real>(kappa: PowerLaw<T>, thickness: T) -> T {
    if kappa.order > T::zero() {
        T::one()
    } else if kappa.order == T::zero() {
        (-T::lit(2.0) * kappa.coeff * thickness).exp()
    } else {
        T::zero()
    }
}

/// Static-`p` reflection of a mirror seen from a cavity with static
/// response `(epsilon_0, mu_0)`.
///
/// Conducting layers keep their limiting skin-depth phase. A finite layer
/// whose limit depends on its sheet conductance (a damped Drude film) has
/// no well-defined limit and is rejected.
pub(crate) fn static_reflection<T: Real>(
    mirror: &Mirror<T>,
    q: Polarization,
    cavity_static: (T, T),
    p: T,
) -> Result<T> {
    if !(p >= T::one()) {
        return Err(Error::Domain(format!(
            "static-p reflection requires p >= 1, got {}",
            p.to_f64().unwrap_or(f64::NAN)
        )));
    }
    if let Some(v) = mirror.ideal_value(q) {
        return Ok(v);
    }
    let Mirror::Stack { layers, substrate } = mirror else {
        unreachable!()
    };
    let (eps0, mu0) = cavity_static;
    if !(eps0.is_finite() && mu0.is_finite()) {
        return Err(Error::Config(
            "cavity medium must have a finite static response".into(),
        ));
    }
    let n0_sq = eps0 * mu0;
    let resp = match q {
        Polarization::TM => eps0,
        Polarization::TE => mu0,
    };
    let cavity_y = PowerLaw {
        coeff: n0_sq.sqrt() * p / resp,
        order: T::one(),
    };
    let (mut inner_y, _) = static_admittance(q, substrate, n0_sq, p);
    let mut r: Option<T> = None;
    for layer in layers.iter().rev() {
        let (y, kappa) = static_admittance(q, &layer.medium, n0_sq, p);
        let rho = static_fresnel(y, inner_y);
        let composed = match r {
            None => rho,
            Some(r_in) => checked_compose(rho, r_in)?,
        };
        r = Some(composed * static_phase(kappa, layer.thickness));
        inner_y = y;
    }
    let rho = static_fresnel(cavity_y, inner_y);
    match r {
        None => Ok(rho),
        Some(r_in) => checked_compose(rho, r_in),
    }
}

fn checked_compose<T: Real>(rho: T, r: T) -> Result<T> {
    let den = T::one() + rho * r;
    if den.abs() <= T::epsilon() {
        return Err(Error::Domain(
            "static limit of this layered mirror depends on the film conductance".into(),
        ));
    }
    Ok((rho + r) / den)
}

/// Reflection coefficient of a mirror for polarization `q`, seen from the
/// cavity medium, in the requested evaluation mode.
pub fn mirror_reflection<T: Real>(
    mirror: &Mirror<T>,
    q: Polarization,
    cavity: &Medium<T>,
    mode: ReflectionMode<T>,
) -> Result<T> {
    mirror.validate()?;
    match mode {
        ReflectionMode::Retarded { xi, k } | ReflectionMode::NonRetarded { xi, k } => {
            check_xi_k(xi, k)?;
            let nonretarded = matches!(mode, ReflectionMode::NonRetarded { .. });
            let c = cavity.sample(xi)?;
            let r = mirror.sample(xi).reflection(q, &c, k, nonretarded);
            if !r.is_finite() {
                return Err(Error::NonFinite(xi.to_f64().unwrap_or(f64::NAN)));
            }
            Ok(r)
        }
        ReflectionMode::StaticP { p } => static_reflection(mirror, q, cavity.static_values(), p),
    }
}
