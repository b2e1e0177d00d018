use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::{OutputUnits, Scenario, ScenarioConfig};
use super::CliError;
use crate::error::Error;
use crate::forces::{
    atom_atom_forces, atom_force, atom_force_large, atom_force_short, medium_atom_asymptotics, medium_atom_force,
    slab_force, ForceResult, Regime,
};

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// One sweep point. Components a scenario does not resolve are NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub distance: f64,
    pub total: f64,
    pub screened: f64,
    pub assisted: f64,
    pub screened_tm: f64,
    pub screened_te: f64,
    pub assisted_tm: f64,
    pub assisted_te: f64,
    pub error_estimate: f64,
    pub converged: bool,
    pub evaluations: usize,
}

impl Row {
    fn from_force(distance: f64, f: &ForceResult<f64>) -> Self {
        Row {
            distance,
            total: f.total,
            screened: f.screened_part(),
            assisted: f.assisted_part(),
            screened_tm: f.screened.tm,
            screened_te: f.screened.te,
            assisted_tm: f.assisted.tm,
            assisted_te: f.assisted.te,
            error_estimate: f.error_estimate,
            converged: f.converged,
            evaluations: f.evaluations,
        }
    }

    fn values(&self) -> [f64; 9] {
        [
            self.distance,
            self.total,
            self.screened,
            self.assisted,
            self.screened_tm,
            self.screened_te,
            self.assisted_tm,
            self.assisted_te,
            self.error_estimate,
        ]
    }

    fn scaled(self, length: f64, force: f64) -> Self {
        Row {
            distance: self.distance * length,
            total: self.total * force,
            screened: self.screened * force,
            assisted: self.assisted * force,
            screened_tm: self.screened_tm * force,
            screened_te: self.screened_te * force,
            assisted_tm: self.assisted_tm * force,
            assisted_te: self.assisted_te * force,
            error_estimate: self.error_estimate * force,
            ..self
        }
    }
}

pub const COLUMNS: [&str; 12] = [
    "index",
    "distance",
    "total",
    "screened",
    "assisted",
    "screened_tm",
    "screened_te",
    "assisted_tm",
    "assisted_te",
    "error_estimate",
    "converged",
    "evaluations",
];

/// Sweep output in the configured units, with the resolved configuration
/// that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    metadata: String,
    units: String,
    rows: Vec<Row>,
}

impl ResultTable {
    pub fn new(metadata: String, units: String, rows: Vec<Row>) -> Result<Self, CliError> {
        if metadata.trim().is_empty() {
            return Err(CliError::Internal("result table without metadata".into()));
        }
        Ok(ResultTable { metadata, units, rows })
    }

    pub fn metadata(&self) -> &str {
        &self.metadata
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }
}

fn evaluate(scenario: &Scenario, z: f64, spec: &crate::quadrature::QuadratureSpec<f64>) -> Result<Row, Error> {
    let row = match scenario {
        Scenario::AtomForce {
            cavity,
            atom,
            formulation,
        } => Row::from_force(z, &atom_force(&cavity.at(z, 0.0), atom, *formulation, spec)?),
        Scenario::SlabForce { cavity, slab } => {
            Row::from_force(z, &slab_force(&cavity.at(z, slab.d_s), slab, spec)?)
        }
        Scenario::MediumAtomForce { cavity, medium_atom } => {
            Row::from_force(z, &medium_atom_force(&cavity.at(z, 0.0), medium_atom, spec)?)
        }
        Scenario::AtomAtom { pair } => {
            let r = atom_atom_forces(pair, z, spec)?;
            let nan = f64::NAN;
            Row {
                distance: z,
                total: r.value,
                screened: nan,
                assisted: nan,
                screened_tm: nan,
                screened_te: nan,
                assisted_tm: nan,
                assisted_te: nan,
                error_estimate: r.error_estimate,
                converged: r.converged,
                evaluations: r.evaluations,
            }
        }
        Scenario::AtomAsymptotics {
            mirror,
            medium,
            atom,
            regime,
            formulation,
        } => {
            let f = match regime {
                Regime::Short => atom_force_short(mirror, medium, atom, z, spec)?,
                Regime::Large => atom_force_large(mirror, medium, atom, z, *formulation, spec)?,
            };
            Row::from_force(z, &f)
        }
        Scenario::MediumAtomAsymptotics {
            mirror,
            medium_atom,
            regime,
        } => Row::from_force(z, &medium_atom_asymptotics(mirror, medium_atom, z, *regime, spec)?),
    };
    Ok(row)
}

/// Unit labels and factors from natural units to the requested output.
fn conversion(config: &ScenarioConfig) -> (String, f64, f64) {
    let per_area = config.scenario.per_area();
    match (config.output, config.omega_ref) {
        (OutputUnits::Si, Some(w)) => {
            let length = SPEED_OF_LIGHT / w;
            let (force, unit) = if per_area {
                (HBAR * w.powi(4) / SPEED_OF_LIGHT.powi(3), "N/m^2")
            } else {
                (HBAR * w * w / SPEED_OF_LIGHT, "N")
            };
            (format!("distance [m], force [{unit}]"), length, force)
        }
        _ => {
            let unit = if per_area {
                "hbar omega_ref^4 / c^3"
            } else {
                "hbar omega_ref^2 / c"
            };
            (format!("distance [c/omega_ref], force [{unit}]"), 1.0, 1.0)
        }
    }
}

/// Computes every sweep point. Rows come back in sweep order however the
/// points are scheduled.
pub fn run_sweep(config: &ScenarioConfig) -> Result<ResultTable, CliError> {
    let rows = config
        .distances
        .par_iter()
        .map(|&z| evaluate(&config.scenario, z, &config.spec))
        .collect::<Result<Vec<_>, Error>>()?;
    if rows.len() != config.distances.len() {
        return Err(CliError::Internal("row count differs from sweep length".into()));
    }
    let (units, length, force) = conversion(config);
    let rows = rows.into_iter().map(|r| r.scaled(length, force)).collect();
    ResultTable::new(config.echo(), units, rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Human,
}

/// Renders a table. CSV floats use the shortest representation that reads
/// back to the same bits.
pub fn emit_table(table: &ResultTable, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("# cavity-vdw resolved configuration\n");
            for line in table.metadata.lines() {
                let _ = writeln!(out, "# {line}");
            }
            let _ = writeln!(out, "# units: {}", table.units);
            out.push_str(&COLUMNS.join(","));
            out.push('\n');
            for (i, row) in table.rows.iter().enumerate() {
                let _ = write!(out, "{i}");
                for v in row.values() {
                    let _ = write!(out, ",{v:e}");
                }
                let _ = writeln!(out, ",{},{}", row.converged, row.evaluations);
            }
        }
        Format::Human => {
            let _ = writeln!(out, "units: {}", table.units);
            let width = 13;
            let _ = write!(out, "{:>5}", COLUMNS[0]);
            for c in &COLUMNS[1..] {
                let _ = write!(out, " {c:>width$}");
            }
            out.push('\n');
            for (i, row) in table.rows.iter().enumerate() {
                let _ = write!(out, "{i:>5}");
                for v in row.values() {
                    let _ = write!(out, " {:>width$}", format!("{v:.5e}"));
                }
                let _ = writeln!(out, " {:>width$} {:>width$}", row.converged, row.evaluations);
            }
        }
    }
    out
}

/// Reads the data rows of CSV produced by [`emit_table`].
pub fn parse_csv_rows(text: &str) -> Result<Vec<Row>, CliError> {
    let bad = |line: usize, what: &str| CliError::Parse(format!("csv line {}: {what}", line + 1));
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (n, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            if line != COLUMNS.join(",") {
                return Err(bad(n, "unexpected header"));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != COLUMNS.len() {
            return Err(bad(n, "wrong field count"));
        }
        let mut v = [0.0; 9];
        for (slot, f) in v.iter_mut().zip(&fields[1..10]) {
            *slot = f.parse().map_err(|_| bad(n, "bad number"))?;
        }
        rows.push(Row {
            distance: v[0],
            total: v[1],
            screened: v[2],
            assisted: v[3],
            screened_tm: v[4],
            screened_te: v[5],
            assisted_tm: v[6],
            assisted_te: v[7],
            error_estimate: v[8],
            converged: fields[10].parse().map_err(|_| bad(n, "bad flag"))?,
            evaluations: fields[11].parse().map_err(|_| bad(n, "bad count"))?,
        });
    }
    Ok(rows)
}

/// Extracts the configuration echoed in the header of CSV output.
pub fn echoed_config(csv: &str) -> String {
    csv.lines()
        .skip(1)
        .take_while(|l| !l.starts_with("# units:"))
        .filter_map(|l| l.strip_prefix("# ").or(l.strip_prefix('#')))
        .map(|l| format!("{l}\n"))
        .collect()
}
