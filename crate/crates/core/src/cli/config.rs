//! Scenario files: the TOML document model and its resolution into
//! validated library types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::dispersion::{AtomSpecies, Medium, Oscillator, PolarizabilityModel, PolarizabilityTerm, ResponseModel};
use crate::forces::{AtomPair, CavityConfig, Formulation, MediumAtom, Regime, SlabConfig};
use crate::quadrature::QuadratureSpec;
use crate::stratified::{Layer, Mirror};

/// Medium name that always resolves to empty space.
pub const VACUUM: &str = "vacuum";
/// Built-in mirror names.
pub const IDEAL_CONDUCTING: &str = "ideal-conducting";
pub const IDEAL_PERMEABLE: &str = "ideal-permeable";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub units: UnitsEntry,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub response: BTreeMap<String, ResponseEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub medium: BTreeMap<String, MediumEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub atom: BTreeMap<String, AtomEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mirror: BTreeMap<String, MirrorEntry>,
    pub scenario: ScenarioEntry,
    pub sweep: SweepEntry,
    #[serde(default)]
    pub quadrature: QuadratureEntry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputUnits {
    #[default]
    Natural,
    Si,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsEntry {
    /// Reference angular frequency in rad/s; required for SI output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_ref: Option<f64>,
    #[serde(default)]
    pub output: OutputUnits,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ResponseEntry {
    Constant { value: f64 },
    Plasma { omega_p: f64 },
    Drude { omega_p: f64, gamma: f64 },
    DrudeLorentz { oscillators: Vec<OscillatorEntry> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorEntry {
    pub strength: f64,
    pub resonance: f64,
    #[serde(default)]
    pub damping: f64,
}

/// A response given inline as a constant or by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResponseRef {
    Value(f64),
    Name(String),
}

impl Default for ResponseRef {
    fn default() -> Self {
        ResponseRef::Value(1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumEntry {
    #[serde(default)]
    pub epsilon: ResponseRef,
    #[serde(default)]
    pub mu: ResponseRef,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub weight: f64,
    pub resonance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    #[serde(default)]
    pub electric: Vec<TermEntry>,
    #[serde(default)]
    pub magnetic: Vec<TermEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MirrorEntry {
    IdealConducting,
    IdealPermeable,
    HalfSpace { medium: String },
    Stack { layers: Vec<LayerEntry>, substrate: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerEntry {
    pub medium: String,
    pub thickness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulationEntry {
    #[default]
    Lorentz,
    Minkowski,
}

impl From<FormulationEntry> for Formulation {
    fn from(f: FormulationEntry) -> Self {
        match f {
            FormulationEntry::Lorentz => Formulation::Lorentz,
            FormulationEntry::Minkowski => Formulation::Minkowski,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    EmbeddedEmbedded,
    MediumEmbedded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsymptoticTarget {
    Atom,
    MediumAtom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeEntry {
    Short,
    Large,
}

fn vacuum() -> String {
    VACUUM.to_string()
}

/// What is computed at each sweep point. The swept distance is the gap
/// between the probe (atom, or the near face of the slab) and mirror 2.
/// With `mirror1` present, exactly one of `d1` (fixed gap to mirror 1) and
/// `width` (fixed mirror separation) places the other wall.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScenarioEntry {
    AtomForce {
        #[serde(default = "vacuum")]
        medium: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mirror1: Option<String>,
        mirror2: String,
        atom: String,
        #[serde(default)]
        formulation: FormulationEntry,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d1: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        width: Option<f64>,
    },
    SlabForce {
        #[serde(default = "vacuum")]
        medium: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mirror1: Option<String>,
        mirror2: String,
        slab_medium: String,
        thickness: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dopant: Option<String>,
        #[serde(default)]
        dopant_density: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d1: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        width: Option<f64>,
    },
    /// Without `medium`, the cavity is filled with the dilute medium the
    /// atoms themselves form.
    MediumAtomForce {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        medium: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mirror1: Option<String>,
        mirror2: String,
        atom: String,
        density: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d1: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        width: Option<f64>,
    },
    /// The swept distance is the atom separation.
    AtomAtom {
        pair: PairKind,
        atom_a: String,
        atom_b: String,
        #[serde(default = "vacuum")]
        host: String,
    },
    /// Leading-order forces next to a single mirror.
    Asymptotics {
        target: AsymptoticTarget,
        regime: RegimeEntry,
        mirror: String,
        atom: String,
        #[serde(default = "vacuum")]
        medium: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        density: Option<f64>,
        #[serde(default)]
        formulation: FormulationEntry,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepEntry {
    pub start: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default = "one")]
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureEntry {
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_abs_tol")]
    pub abs_tol: f64,
    #[serde(default = "default_max_evaluations")]
    pub max_evaluations: usize,
}

fn default_rel_tol() -> f64 {
    QuadratureSpec::<f64>::default().rel_tol
}
fn default_abs_tol() -> f64 {
    QuadratureSpec::<f64>::default().abs_tol
}
fn default_max_evaluations() -> usize {
    QuadratureSpec::<f64>::default().max_evaluations
}

impl Default for QuadratureEntry {
    fn default() -> Self {
        QuadratureEntry {
            rel_tol: default_rel_tol(),
            abs_tol: default_abs_tol(),
            max_evaluations: default_max_evaluations(),
        }
    }
}

/// Where mirror 1 sits relative to the probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Placement {
    SemiInfinite,
    FixedGap(f64),
    FixedWidth(f64),
}

/// Cavity with the probe position left open.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityTemplate {
    pub medium: Medium<f64>,
    pub mirror1: Option<Mirror<f64>>,
    pub mirror2: Mirror<f64>,
    pub placement: Placement,
}

impl CavityTemplate {
    /// Cavity with the probe `z` from mirror 2; `extent` is the probe's own
    /// thickness (zero for atoms).
    pub fn at(&self, z: f64, extent: f64) -> CavityConfig<f64> {
        let d1 = match self.placement {
            Placement::SemiInfinite => f64::INFINITY,
            Placement::FixedGap(d1) => d1,
            Placement::FixedWidth(w) => w - z - extent,
        };
        CavityConfig {
            medium: self.medium.clone(),
            mirror1: self.mirror1.clone(),
            mirror2: self.mirror2.clone(),
            d1,
            d2: z,
        }
    }
}

/// Fully resolved scenario.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    AtomForce {
        cavity: CavityTemplate,
        atom: AtomSpecies<f64>,
        formulation: Formulation,
    },
    SlabForce {
        cavity: CavityTemplate,
        slab: SlabConfig<f64>,
    },
    MediumAtomForce {
        cavity: CavityTemplate,
        medium_atom: MediumAtom<f64>,
    },
    AtomAtom {
        pair: AtomPair<f64>,
    },
    AtomAsymptotics {
        mirror: Mirror<f64>,
        medium: Medium<f64>,
        atom: AtomSpecies<f64>,
        regime: Regime,
        formulation: Formulation,
    },
    MediumAtomAsymptotics {
        mirror: Mirror<f64>,
        medium_atom: MediumAtom<f64>,
        regime: Regime,
    },
}

impl Scenario {
    /// Slab forces are per unit area; every other scenario is per atom.
    pub fn per_area(&self) -> bool {
        matches!(self, Scenario::SlabForce { .. })
    }
}

/// A validated scenario ready to run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// The input document with every default written out.
    pub resolved: ConfigFile,
    pub omega_ref: Option<f64>,
    pub output: OutputUnits,
    pub scenario: Scenario,
    pub distances: Vec<f64>,
    pub spec: QuadratureSpec<f64>,
}

impl ScenarioConfig {
    /// The resolved document as TOML.
    pub fn echo(&self) -> String {
        toml::to_string(&self.resolved).expect("configuration serializes")
    }
}

fn err(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Config {
        path: path.into(),
        message: message.into(),
    }
}

fn positive(path: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(err(path, format!("must be finite and positive, got {v}")))
    }
}

/// Parses and fully validates a scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let mut file: ConfigFile = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if file.sweep.stop.is_none() {
        file.sweep.stop = Some(file.sweep.start);
    }
    resolve(file)
}

struct Catalog<'a> {
    file: &'a ConfigFile,
}

impl Catalog<'_> {
    fn response(&self, path: &str, r: &ResponseRef) -> Result<ResponseModel<f64>, CliError> {
        let (path, entry) = match r {
            ResponseRef::Value(v) => return Ok(ResponseModel::Constant(*v)),
            ResponseRef::Name(name) => {
                let entry = self.file.response.get(name).ok_or_else(|| {
                    err(path, format!("undefined response \"{name}\""))
                })?;
                (format!("response.{name}"), entry)
            }
        };
        let model = match entry {
            ResponseEntry::Constant { value } => ResponseModel::Constant(*value),
            ResponseEntry::Plasma { omega_p } => ResponseModel::Plasma { omega_p: *omega_p },
            ResponseEntry::Drude { omega_p, gamma } => ResponseModel::Drude {
                omega_p: *omega_p,
                gamma: *gamma,
            },
            ResponseEntry::DrudeLorentz { oscillators } => ResponseModel::DrudeLorentz(
                oscillators
                    .iter()
                    .map(|o| Oscillator {
                        strength: o.strength,
                        resonance: o.resonance,
                        damping: o.damping,
                    })
                    .collect(),
            ),
        };
        model.validate().map_err(|e| err(path, e.to_string()))?;
        Ok(model)
    }

    fn medium(&self, path: &str, name: &str) -> Result<Medium<f64>, CliError> {
        let Some(entry) = self.file.medium.get(name) else {
            if name == VACUUM {
                return Ok(Medium::vacuum());
            }
            return Err(err(path, format!("undefined medium \"{name}\"")));
        };
        let here = format!("medium.{name}");
        let medium = Medium::new(
            self.response(&format!("{here}.epsilon"), &entry.epsilon)?,
            self.response(&format!("{here}.mu"), &entry.mu)?,
        );
        medium.validate().map_err(|e| err(&here, e.to_string()))?;
        Ok(medium)
    }

    fn atom(&self, path: &str, name: &str) -> Result<AtomSpecies<f64>, CliError> {
        let entry = self
            .file
            .atom
            .get(name)
            .ok_or_else(|| err(path, format!("undefined atom \"{name}\"")))?;
        let terms = |ts: &[TermEntry]| PolarizabilityModel {
            terms: ts
                .iter()
                .map(|t| PolarizabilityTerm {
                    weight: t.weight,
                    resonance: t.resonance,
                })
                .collect(),
        };
        let atom = AtomSpecies::new(terms(&entry.electric), terms(&entry.magnetic));
        atom.validate().map_err(|e| err(format!("atom.{name}"), e.to_string()))?;
        Ok(atom)
    }

    fn mirror(&self, path: &str, name: &str) -> Result<Mirror<f64>, CliError> {
        let Some(entry) = self.file.mirror.get(name) else {
            return match name {
                IDEAL_CONDUCTING => Ok(Mirror::IdealConducting),
                IDEAL_PERMEABLE => Ok(Mirror::IdealPermeable),
                _ => Err(err(path, format!("undefined mirror \"{name}\""))),
            };
        };
        let here = format!("mirror.{name}");
        let mirror = match entry {
            MirrorEntry::IdealConducting => Mirror::IdealConducting,
            MirrorEntry::IdealPermeable => Mirror::IdealPermeable,
            MirrorEntry::HalfSpace { medium } => {
                Mirror::half_space(self.medium(&format!("{here}.medium"), medium)?)
            }
            MirrorEntry::Stack { layers, substrate } => Mirror::Stack {
                layers: layers
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        let p = format!("{here}.layers[{i}]");
                        Ok(Layer {
                            medium: self.medium(&format!("{p}.medium"), &l.medium)?,
                            thickness: positive(&format!("{p}.thickness"), l.thickness)?,
                        })
                    })
                    .collect::<Result<_, CliError>>()?,
                substrate: self.medium(&format!("{here}.substrate"), substrate)?,
            },
        };
        mirror.validate().map_err(|e| err(&here, e.to_string()))?;
        Ok(mirror)
    }

    fn cavity(
        &self,
        medium: Medium<f64>,
        mirror1: &Option<String>,
        mirror2: &str,
        d1: Option<f64>,
        width: Option<f64>,
    ) -> Result<CavityTemplate, CliError> {
        let mirror1 = mirror1
            .as_deref()
            .map(|m| self.mirror("scenario.mirror1", m))
            .transpose()?;
        let placement = match (&mirror1, d1, width) {
            (None, None, None) => Placement::SemiInfinite,
            (None, _, _) => {
                return Err(err("scenario", "d1 and width require mirror1"));
            }
            (Some(_), Some(d1), None) => Placement::FixedGap(positive("scenario.d1", d1)?),
            (Some(_), None, Some(w)) => Placement::FixedWidth(positive("scenario.width", w)?),
            (Some(_), None, None) => {
                return Err(err("scenario", "mirror1 requires either d1 or width"));
            }
            (Some(_), Some(_), Some(_)) => {
                return Err(err("scenario", "d1 and width are mutually exclusive"));
            }
        };
        Ok(CavityTemplate {
            medium,
            mirror1,
            mirror2: self.mirror("scenario.mirror2", mirror2)?,
            placement,
        })
    }
}

fn sweep_points(sweep: &SweepEntry) -> Result<Vec<f64>, CliError> {
    let start = positive("sweep.start", sweep.start)?;
    let stop = positive("sweep.stop", sweep.stop.unwrap_or(start))?;
    if stop < start {
        return Err(err("sweep.stop", format!("stop ({stop}) is below start ({start})")));
    }
    let n = sweep.points;
    if n == 0 {
        return Err(err("sweep.points", "a sweep needs at least one point"));
    }
    if n == 1 {
        if stop != start {
            return Err(err("sweep.points", "a single-point sweep needs stop equal to start"));
        }
        return Ok(vec![start]);
    }
    let last = (n - 1) as f64;
    let points = (0..n)
        .map(|i| {
            let t = i as f64 / last;
            match sweep.spacing {
                Spacing::Log => start * (stop / start).powf(t),
                Spacing::Linear => start + (stop - start) * t,
            }
        })
        .collect();
    Ok(points)
}

fn regime(r: RegimeEntry) -> Regime {
    match r {
        RegimeEntry::Short => Regime::Short,
        RegimeEntry::Large => Regime::Large,
    }
}

fn validate_cavities(
    cavity: &CavityTemplate,
    distances: &[f64],
    extent: f64,
) -> Result<(), CliError> {
    for &z in distances {
        cavity
            .at(z, extent)
            .validate()
            .map_err(|e| err("scenario", format!("at distance {z}: {e}")))?;
    }
    Ok(())
}

fn resolve(file: ConfigFile) -> Result<ScenarioConfig, CliError> {
    let catalog = Catalog { file: &file };
    // every catalog entry is checked, referenced or not
    for name in file.response.keys() {
        catalog.response("response", &ResponseRef::Name(name.clone()))?;
    }
    for name in file.medium.keys() {
        catalog.medium("medium", name)?;
    }
    for name in file.atom.keys() {
        catalog.atom("atom", name)?;
    }
    for name in file.mirror.keys() {
        catalog.mirror("mirror", name)?;
    }

    let omega_ref = match file.units.omega_ref {
        Some(w) => Some(positive("units.omega_ref", w)?),
        None => None,
    };
    if file.units.output == OutputUnits::Si && omega_ref.is_none() {
        return Err(err("units.omega_ref", "SI output needs the reference frequency"));
    }
    let q = &file.quadrature;
    let spec = QuadratureSpec::default()
        .with_rel_tol(q.rel_tol)
        .with_abs_tol(q.abs_tol)
        .with_max_evaluations(q.max_evaluations);
    spec.validate().map_err(|e| err("quadrature", e.to_string()))?;
    let distances = sweep_points(&file.sweep)?;

    let scenario = match &file.scenario {
        ScenarioEntry::AtomForce {
            medium,
            mirror1,
            mirror2,
            atom,
            formulation,
            d1,
            width,
        } => {
            let medium = catalog.medium("scenario.medium", medium)?;
            let cavity = catalog.cavity(medium, mirror1, mirror2, *d1, *width)?;
            validate_cavities(&cavity, &distances, 0.0)?;
            Scenario::AtomForce {
                cavity,
                atom: catalog.atom("scenario.atom", atom)?,
                formulation: (*formulation).into(),
            }
        }
        ScenarioEntry::SlabForce {
            medium,
            mirror1,
            mirror2,
            slab_medium,
            thickness,
            dopant,
            dopant_density,
            d1,
            width,
        } => {
            let medium = catalog.medium("scenario.medium", medium)?;
            let cavity = catalog.cavity(medium, mirror1, mirror2, *d1, *width)?;
            let thickness = positive("scenario.thickness", *thickness)?;
            validate_cavities(&cavity, &distances, thickness)?;
            let mut slab = SlabConfig::new(catalog.medium("scenario.slab_medium", slab_medium)?, thickness);
            match dopant {
                Some(name) => {
                    slab = slab.with_dopant(catalog.atom("scenario.dopant", name)?, *dopant_density);
                }
                None if *dopant_density != 0.0 => {
                    return Err(err("scenario.dopant_density", "a density needs a dopant atom"));
                }
                None => {}
            }
            slab.validate().map_err(|e| err("scenario", e.to_string()))?;
            Scenario::SlabForce { cavity, slab }
        }
        ScenarioEntry::MediumAtomForce {
            medium,
            mirror1,
            mirror2,
            atom,
            density,
            d1,
            width,
        } => {
            let medium_atom = MediumAtom::new(catalog.atom("scenario.atom", atom)?, *density);
            let medium = match medium {
                Some(name) => catalog.medium("scenario.medium", name)?,
                None => medium_atom.host_medium(),
            };
            medium_atom
                .check_dilute(&medium)
                .map_err(|e| err("scenario.density", e.to_string()))?;
            let cavity = catalog.cavity(medium, mirror1, mirror2, *d1, *width)?;
            validate_cavities(&cavity, &distances, 0.0)?;
            Scenario::MediumAtomForce { cavity, medium_atom }
        }
        ScenarioEntry::AtomAtom {
            pair,
            atom_a,
            atom_b,
            host,
        } => {
            let a = catalog.atom("scenario.atom_a", atom_a)?;
            let b = catalog.atom("scenario.atom_b", atom_b)?;
            let pair = match pair {
                PairKind::EmbeddedEmbedded => AtomPair::EmbeddedEmbedded {
                    a,
                    b,
                    host: catalog.medium("scenario.host", host)?,
                },
                PairKind::MediumEmbedded => {
                    if host != VACUUM {
                        return Err(err("scenario.host", "medium-embedded pairs take no host medium"));
                    }
                    AtomPair::MediumEmbedded { medium_atom: a, b }
                }
            };
            Scenario::AtomAtom { pair }
        }
        ScenarioEntry::Asymptotics {
            target,
            regime: r,
            mirror,
            atom,
            medium,
            density,
            formulation,
        } => {
            let mirror = catalog.mirror("scenario.mirror", mirror)?;
            let species = catalog.atom("scenario.atom", atom)?;
            match target {
                AsymptoticTarget::Atom => {
                    if density.is_some() {
                        return Err(err("scenario.density", "only medium-atom targets take a density"));
                    }
                    Scenario::AtomAsymptotics {
                        mirror,
                        medium: catalog.medium("scenario.medium", medium)?,
                        atom: species,
                        regime: regime(*r),
                        formulation: (*formulation).into(),
                    }
                }
                AsymptoticTarget::MediumAtom => {
                    if medium != VACUUM {
                        return Err(err(
                            "scenario.medium",
                            "medium-atom targets use the medium the atoms form",
                        ));
                    }
                    let density = density
                        .ok_or_else(|| err("scenario.density", "medium-atom targets need a density"))?;
                    let medium_atom = MediumAtom::new(species, density);
                    medium_atom
                        .check_dilute(&medium_atom.host_medium())
                        .map_err(|e| err("scenario.density", e.to_string()))?;
                    Scenario::MediumAtomAsymptotics {
                        mirror,
                        medium_atom,
                        regime: regime(*r),
                    }
                }
            }
        }
    };

    Ok(ScenarioConfig {
        omega_ref,
        output: file.units.output,
        scenario,
        distances,
        spec,
        resolved: file,
    })
}
