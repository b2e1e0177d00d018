use super::{atom_force, medium_layer_force, slab_force, CavityConfig, Formulation, SlabConfig};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;

/// Outcome of the thin-slab decomposition check.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinSlabReport<T> {
    /// Slab thicknesses `d_s, d_s/2, d_s/4`.
    pub thicknesses: [T; 3],
    /// Slab force at each thickness.
    pub slab: [T; 3],
    /// Medium-layer force at each thickness.
    pub medium_layer: [T; 3],
    /// `(f - f_M) / (N d_s)`, or `(f - f_M) / d_s` without dopant.
    pub per_atom: [T; 3],
    /// First-order Richardson extrapolation of `per_atom` to `d_s -> 0`.
    pub extrapolated: T,
    /// Lorentz atom force at the slab centre, when a dopant is present.
    pub atom_force: Option<T>,
    /// Relative discrepancy against `atom_force`, or the absolute
    /// extrapolated value when there is nothing to compare with.
    pub discrepancy: T,
    /// The ladder approaches its limit monotonically.
    pub monotone: bool,
    pub converged: bool,
}

/// Checks that a thin doped slab behaves as a medium layer plus `N d_s`
/// independent atoms.
///
/// The cavity distances locate the slab centre; for each thickness of the
/// ladder the slab faces sit `d_s / 2` closer to the mirrors.
pub fn thin_slab_decomposition_check<T: Real>(
    cavity: &CavityConfig<T>,
    slab: &SlabConfig<T>,
    spec: &QuadratureSpec<T>,
) -> Result<ThinSlabReport<T>> {
    cavity.validate()?;
    slab.validate()?;
    let half = T::lit(0.5);
    if slab.d_s * half >= cavity.min_distance() {
        return Err(Error::Config("slab does not fit between the mirrors".into()));
    }
    let density = slab.dopant.as_ref().map_or(T::zero(), |d| d.density);
    let per = if density > T::zero() { density } else { T::one() };

    let thicknesses = [slab.d_s, slab.d_s * half, slab.d_s * half * half];
    let mut f = [T::zero(); 3];
    let mut fm = [T::zero(); 3];
    let mut g = [T::zero(); 3];
    let mut converged = true;
    for (i, &d) in thicknesses.iter().enumerate() {
        let faces = cavity.at(cavity.d1 - d * half, cavity.d2 - d * half);
        let s = slab_force(&faces, &slab.with_thickness(d), spec)?;
        let m = medium_layer_force(cavity, d, spec)?;
        converged &= s.converged && m.converged;
        f[i] = s.total;
        fm[i] = m.total;
        g[i] = (s.total - m.total) / (per * d);
    }
    let extrapolated = T::lit(2.0) * g[2] - g[1];
    let (d1, d2) = (g[0] - g[1], g[1] - g[2]);
    let monotone = d1 * d2 >= T::zero() && d2.abs() <= d1.abs();

    let (reference, discrepancy) = match &slab.dopant {
        Some(d) if d.density > T::zero() => {
            let a = atom_force(cavity, &d.species, Formulation::Lorentz, spec)?;
            converged &= a.converged;
            (Some(a.total), ((extrapolated - a.total) / a.total).abs())
        }
        _ => (None, extrapolated.abs()),
    };
    Ok(ThinSlabReport {
        thicknesses,
        slab: f,
        medium_layer: fm,
        per_atom: g,
        extrapolated,
        atom_force: reference,
        discrepancy,
        monotone,
        converged,
    })
}
