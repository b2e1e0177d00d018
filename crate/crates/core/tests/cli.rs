use std::f64::consts::PI;
use std::process::Command;

use cavity_vdw::cli::{
    echoed_config, emit_table, parse_config, parse_csv_rows, run_sweep, CliError, Format, FormulationEntry,
    OutputUnits, ResultTable, ScenarioEntry, Spacing, HBAR, SPEED_OF_LIGHT,
};

const MINIMAL: &str = r#"
[atom.probe]
electric = [{ weight = 1.0, resonance = 1.0 }]

[scenario]
kind = "atom-force"
mirror2 = "ideal-conducting"
atom = "probe"

[sweep]
start = 0.5
"#;

fn with_sweep(sweep: &str) -> String {
    MINIMAL.replace("[sweep]\nstart = 0.5\n", sweep)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cavity-vdw"))
}

fn write_temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cavity-vdw-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn minimal_config_fills_defaults() {
    let c = parse_config(MINIMAL).unwrap();
    assert_eq!(c.distances, vec![0.5]);
    assert_eq!(c.output, OutputUnits::Natural);
    assert_eq!(c.spec.rel_tol, 1e-8);
    assert_eq!(c.resolved.sweep.stop, Some(0.5));
    assert_eq!(c.resolved.sweep.spacing, Spacing::Log);
    match &c.resolved.scenario {
        ScenarioEntry::AtomForce { medium, formulation, .. } => {
            assert_eq!(medium, "vacuum");
            assert_eq!(*formulation, FormulationEntry::Lorentz);
        }
        other => panic!("unexpected scenario {other:?}"),
    }
    let echo = c.echo();
    assert!(echo.contains("formulation = \"lorentz\""));
    assert!(echo.contains("max_evaluations = 200000"));
}

#[test]
fn undefined_material_is_named() {
    let text = MINIMAL.replace("mirror2 = \"ideal-conducting\"", "mirror2 = \"wall\"")
        + "\n[mirror.wall]\nkind = \"half-space\"\nmedium = \"goldx\"\n";
    let e = parse_config(&text).unwrap_err();
    assert!(e.to_string().contains("goldx"), "{e}");
    assert!(e.to_string().contains("mirror.wall.medium"), "{e}");
    assert_eq!(e.exit_code(), 1);
}

#[test]
fn undefined_atom_and_mirror_are_named() {
    let e = parse_config(&MINIMAL.replace("atom = \"probe\"", "atom = \"ghost\"")).unwrap_err();
    assert!(e.to_string().contains("ghost") && e.to_string().contains("scenario.atom"), "{e}");
    let e = parse_config(&MINIMAL.replace("\"ideal-conducting\"", "\"silverx\"")).unwrap_err();
    assert!(e.to_string().contains("silverx"), "{e}");
}

#[test]
fn unknown_keys_are_rejected() {
    let e = parse_config(&MINIMAL.replace("atom = \"probe\"", "atom = \"probe\"\ncolour = 3")).unwrap_err();
    assert!(e.to_string().contains("colour"), "{e}");
    let e = parse_config(&(MINIMAL.to_string() + "\n[units]\noutput = \"natural\"\nscale = 2\n")).unwrap_err();
    assert!(e.to_string().contains("scale"), "{e}");
}

#[test]
fn sweep_with_stop_below_start_is_rejected() {
    let e = parse_config(&with_sweep("[sweep]\nstart = 2.0\nstop = 1.0\npoints = 3\n")).unwrap_err();
    assert!(matches!(e, CliError::Config { ref path, .. } if path == "sweep.stop"), "{e}");
}

#[test]
fn non_positive_distances_are_rejected() {
    let e = parse_config(&with_sweep("[sweep]\nstart = 0.0\nstop = 1.0\npoints = 3\n")).unwrap_err();
    assert!(e.to_string().contains("sweep.start"), "{e}");
    let e = parse_config(&with_sweep("[sweep]\nstart = 0.1\nstop = 1.0\npoints = 0\n")).unwrap_err();
    assert!(e.to_string().contains("sweep.points"), "{e}");
    // the far wall would be crossed at the end of the sweep
    let cavity = MINIMAL.replace("atom = \"probe\"", "atom = \"probe\"\nmirror1 = \"ideal-conducting\"\nwidth = 1.0");
    let text = cavity.replace("[sweep]\nstart = 0.5\n", "[sweep]\nstart = 0.5\nstop = 1.5\npoints = 3\n");
    assert!(parse_config(&text).is_err());
}

#[test]
fn cavity_placement_needs_exactly_one_anchor() {
    let both = MINIMAL.replace("atom = \"probe\"", "atom = \"probe\"\nmirror1 = \"ideal-conducting\"\nwidth = 2.0\nd1 = 1.0");
    assert!(parse_config(&both).is_err());
    let none = MINIMAL.replace("atom = \"probe\"", "atom = \"probe\"\nmirror1 = \"ideal-conducting\"");
    assert!(parse_config(&none).is_err());
}

#[test]
fn sweep_spacing() {
    let c = parse_config(&with_sweep("[sweep]\nstart = 1e-2\nstop = 1e2\npoints = 5\n")).unwrap();
    for (z, e) in c.distances.iter().zip([1e-2, 1e-1, 1.0, 1e1, 1e2]) {
        assert!((z / e - 1.0).abs() < 1e-14);
    }
    let c = parse_config(&with_sweep("[sweep]\nstart = 1\nstop = 3\npoints = 3\nspacing = \"linear\"\n")).unwrap();
    assert_eq!(c.distances, vec![1.0, 2.0, 3.0]);
}

#[test]
fn single_point_sweep_gives_one_row() {
    let table = run_sweep(&parse_config(MINIMAL).unwrap()).unwrap();
    assert_eq!(table.rows().len(), 1);
    let csv = emit_table(&table, Format::Csv);
    let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 2, "header plus one data row");
    assert!(data[0].starts_with("index,distance,total"));
}

#[test]
fn csv_round_trips_bit_exactly() {
    let text = with_sweep("[sweep]\nstart = 1e-2\nstop = 10\npoints = 4\n");
    let table = run_sweep(&parse_config(&text).unwrap()).unwrap();
    let back = parse_csv_rows(&emit_table(&table, Format::Csv)).unwrap();
    assert_eq!(back.len(), table.rows().len());
    for (a, b) in back.iter().zip(table.rows()) {
        assert_eq!(a.total.to_bits(), b.total.to_bits());
        assert_eq!(a.distance.to_bits(), b.distance.to_bits());
        assert_eq!(a.screened_te.to_bits(), b.screened_te.to_bits());
        assert_eq!(a.error_estimate.to_bits(), b.error_estimate.to_bits());
        assert_eq!(a.converged, b.converged);
        assert_eq!(a.evaluations, b.evaluations);
    }
}

#[test]
fn echoed_configuration_reproduces_the_table() {
    let text = r#"
[response.metal]
model = "drude-lorentz"
oscillators = [{ strength = 4.0, resonance = 0.0, damping = 0.1 }, { strength = 1.0, resonance = 2.0 }]

[medium.glass]
epsilon = 2.25

[medium.metal]
epsilon = "metal"

[mirror.coated]
kind = "stack"
layers = [{ medium = "glass", thickness = 0.05 }]
substrate = "metal"

[atom.probe]
electric = [{ weight = 0.7, resonance = 1.3 }]
magnetic = [{ weight = 0.1, resonance = 0.4 }]

[scenario]
kind = "atom-force"
medium = "glass"
mirror1 = "ideal-permeable"
mirror2 = "coated"
atom = "probe"
width = 3.0

[sweep]
start = 0.1
stop = 1.9
points = 4
spacing = "linear"
"#;
    let first = emit_table(&run_sweep(&parse_config(text).unwrap()).unwrap(), Format::Csv);
    let echo = echoed_config(&first);
    let second = emit_table(&run_sweep(&parse_config(&echo).unwrap()).unwrap(), Format::Csv);
    assert_eq!(first, second);
}

#[test]
fn ideal_conductor_sweep_endpoints_match_limits() {
    let text = with_sweep("[sweep]\nstart = 1e-3\nstop = 1e2\npoints = 6\n");
    let table = run_sweep(&parse_config(&text).unwrap()).unwrap();
    let rows = table.rows();
    let (near, far) = (rows[0], rows[rows.len() - 1]);
    let vdw = 3.0 / (8.0 * near.distance.powi(4));
    let cp = 3.0 / (2.0 * PI * far.distance.powi(5));
    assert!((near.total / vdw - 1.0).abs() < 1e-2);
    assert!((far.total / cp - 1.0).abs() < 1e-2);
    assert!(table.all_converged());
}

#[test]
fn si_output_scales_natural_values() {
    let omega = 2.0e15;
    let natural = run_sweep(&parse_config(MINIMAL).unwrap()).unwrap();
    let si_text = format!("{MINIMAL}\n[units]\nomega_ref = {omega:e}\noutput = \"si\"\n");
    let si = run_sweep(&parse_config(&si_text).unwrap()).unwrap();
    let (n, s) = (natural.rows()[0], si.rows()[0]);
    let length = SPEED_OF_LIGHT / omega;
    let force = HBAR * omega * omega / SPEED_OF_LIGHT;
    assert!((s.distance / (n.distance * length) - 1.0).abs() < 1e-15);
    assert!((s.total / (n.total * force) - 1.0).abs() < 1e-15);
    assert!(emit_table(&si, Format::Csv).contains("force [N]"));

    let missing = format!("{MINIMAL}\n[units]\noutput = \"si\"\n");
    assert!(parse_config(&missing).unwrap_err().to_string().contains("units.omega_ref"));
}

#[test]
fn slab_force_is_reported_per_area() {
    let text = r#"
[units]
omega_ref = 1e15
output = "si"

[medium.film]
epsilon = 3.0

[scenario]
kind = "slab-force"
mirror1 = "ideal-conducting"
mirror2 = "ideal-conducting"
slab_medium = "film"
thickness = 0.1
width = 2.0

[sweep]
start = 0.3
stop = 0.5
points = 2
"#;
    let table = run_sweep(&parse_config(text).unwrap()).unwrap();
    assert!(emit_table(&table, Format::Csv).contains("N/m^2"));
    // nearer to mirror 2 than to mirror 1: pulled toward mirror 2
    assert!(table.rows()[0].total > 0.0);
}

#[test]
fn other_scenarios_run() {
    let atoms = r#"
[atom.a]
electric = [{ weight = 1e-3, resonance = 1.0 }]
[atom.b]
electric = [{ weight = 1.0, resonance = 2.0 }]
magnetic = [{ weight = 0.5, resonance = 1.0 }]
[mirror.plasma]
kind = "half-space"
medium = "plasma"
[medium.plasma]
epsilon = "p"
[response.p]
model = "plasma"
omega_p = 1.0
"#;
    let scenarios = [
        "kind = \"atom-atom\"\npair = \"embedded-embedded\"\natom_a = \"a\"\natom_b = \"b\"",
        "kind = \"atom-atom\"\npair = \"medium-embedded\"\natom_a = \"a\"\natom_b = \"b\"",
        "kind = \"medium-atom-force\"\nmirror2 = \"plasma\"\natom = \"a\"\ndensity = 1e-4",
        "kind = \"asymptotics\"\ntarget = \"atom\"\nregime = \"short\"\nmirror = \"plasma\"\natom = \"b\"",
        "kind = \"asymptotics\"\ntarget = \"atom\"\nregime = \"large\"\nmirror = \"plasma\"\natom = \"b\"",
        "kind = \"asymptotics\"\ntarget = \"medium-atom\"\nregime = \"short\"\nmirror = \"plasma\"\natom = \"a\"\ndensity = 1e-4",
    ];
    for s in scenarios {
        let text = format!("{atoms}\n[scenario]\n{s}\n\n[sweep]\nstart = 0.1\nstop = 1.0\npoints = 3\n");
        let table = run_sweep(&parse_config(&text).unwrap_or_else(|e| panic!("{s}: {e}"))).unwrap();
        assert_eq!(table.rows().len(), 3);
        assert!(table.rows().iter().all(|r| r.total.is_finite() && r.converged), "{s}");
    }
}

#[test]
fn dilute_violation_is_a_configuration_error() {
    let text = r#"
[atom.a]
electric = [{ weight = 1e-3, resonance = 1.0 }]
[medium.thick]
epsilon = 2.0
[scenario]
kind = "medium-atom-force"
medium = "thick"
mirror2 = "ideal-conducting"
atom = "a"
density = 1e-4
[sweep]
start = 1.0
"#;
    let e = parse_config(text).unwrap_err();
    assert!(e.to_string().contains("scenario.density"), "{e}");
}

#[test]
fn empty_metadata_is_rejected() {
    assert!(ResultTable::new(String::new(), "units".into(), Vec::new()).is_err());
    assert!(ResultTable::new("  \n".into(), "units".into(), Vec::new()).is_err());
}

#[test]
fn binary_exit_codes() {
    let out = bin().arg("schema").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[scenario]"));

    let out = bin().args(["validate", "goldx"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("london"));

    let out = bin().args(["validate", "london"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(report.contains("[PASS] london") && !report.contains("quadrature"), "{report}");

    let bad = write_temp("bad.toml", &MINIMAL.replace("atom = \"probe\"", "atom = \"goldx\""));
    let out = bin().arg("run").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("goldx"));

    let starved = write_temp(
        "starved.toml",
        &format!("{}\n[quadrature]\nmax_evaluations = 120\n", with_sweep("[sweep]\nstart = 1e-3\n")),
    );
    let out = bin().arg("run").arg(&starved).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8_lossy(&out.stdout).to_string();
    assert_eq!(parse_csv_rows(&csv).unwrap().len(), 1, "non-converged rows are still emitted");

    let out = bin().args(["run", "--format", "xml", "x.toml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn binary_writes_to_out_path() {
    let cfg = write_temp("minimal.toml", MINIMAL);
    let target = cfg.with_file_name("out.txt");
    let out = bin()
        .arg("run")
        .arg(&cfg)
        .args(["--format", "human", "--out"])
        .arg(&target)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.starts_with("units:") && text.lines().count() == 3);
}
