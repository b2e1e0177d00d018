//! Casimir-Polder and van der Waals forces inside planar magnetodielectric
//! cavities.
//!
//! Everything is generic over the floating-point type through [`Real`]
//! (implemented for `f32` and `f64`). The [`double`] module fixes the scalar to
//! double precision for callers that do not need the generality.
//!
//! Quantities are in natural units with `hbar = c = 1`. Frequencies are in
//! units of a reference frequency and lengths in units of `c / omega_ref`.

pub mod cli;
pub mod dispersion;
pub mod error;
pub mod forces;
pub mod quadrature;
pub mod scalar;
pub mod stratified;
pub mod validation;

pub use dispersion::{AtomSpecies, Medium, Oscillator, PolarizabilityModel, ResponseModel};
pub use error::{Error, Result};
pub use forces::{
    atom_atom_forces, atom_force, atom_force_large, atom_force_short, medium_atom_force, slab_force, AtomPair,
    CavityConfig, Formulation, ForceResult, MediumAtom, SlabConfig,
};
pub use quadrature::{IntegralResult, QuadratureSpec};
pub use scalar::Real;
pub use stratified::{Layer, Mirror, Polarization};

/// Double-precision aliases of the generic types.
pub mod double {
    pub type Medium = crate::dispersion::Medium<f64>;
    pub type ResponseModel = crate::dispersion::ResponseModel<f64>;
    pub type PolarizabilityModel = crate::dispersion::PolarizabilityModel<f64>;
    pub type AtomSpecies = crate::dispersion::AtomSpecies<f64>;
    pub type Mirror = crate::stratified::Mirror<f64>;
    pub type Layer = crate::stratified::Layer<f64>;
    pub type CavityConfig = crate::forces::CavityConfig<f64>;
    pub type SlabConfig = crate::forces::SlabConfig<f64>;
    pub type MediumAtom = crate::forces::MediumAtom<f64>;
    pub type ForceResult = crate::forces::ForceResult<f64>;
    pub type QuadratureSpec = crate::quadrature::QuadratureSpec<f64>;
}
