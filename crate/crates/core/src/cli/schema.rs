/// Text printed by `cavity-vdw schema`.
pub const SCHEMA: &str = r#"cavity-vdw scenario file (TOML)

All quantities are in natural units (hbar = c = 1): frequencies in units of
omega_ref, lengths in c/omega_ref, polarizabilities in (c/omega_ref)^3,
number densities in (omega_ref/c)^3. Unknown keys are rejected.

[units]                          optional
  omega_ref = <rad/s>            required when output = "si"
  output    = "natural" | "si"   default "natural"

[response.<name>]                permittivity/permeability models
  model = "constant"       value = <>= 1>
  model = "plasma"         omega_p = <>= 0>
  model = "drude"          omega_p = <>= 0>, gamma = <>= 0>
  model = "drude-lorentz"  oscillators = [{ strength, resonance, damping = 0 }, ...]

[medium.<name>]                  "vacuum" is predefined
  epsilon = <number> | "<response name>"   default 1
  mu      = <number> | "<response name>"   default 1

[atom.<name>]                    sums of undamped Lorentz terms
  electric = [{ weight = <static polarizability>, resonance = <> 0> }, ...]
  magnetic = [...]

[mirror.<name>]                  "ideal-conducting", "ideal-permeable" are predefined
  kind = "ideal-conducting" | "ideal-permeable"
  kind = "half-space"      medium = "<medium>"
  kind = "stack"           layers = [{ medium, thickness }, ...]  (cavity side first)
                           substrate = "<medium>"

[scenario]
  The swept distance z is the gap between the probe and mirror 2. Without
  mirror1 the cavity is semi-infinite; with mirror1 give exactly one of
  d1 (fixed gap to mirror 1) or width (fixed mirror separation).
  Positive forces point from mirror 1 toward mirror 2.

  kind = "atom-force"
    medium = "vacuum", mirror1?, mirror2, atom,
    formulation = "lorentz" | "minkowski", d1?, width?
  kind = "slab-force"            force per unit area; z is the near-face gap
    medium = "vacuum", mirror1?, mirror2, slab_medium, thickness,
    dopant?, dopant_density = 0, d1?, width?
  kind = "medium-atom-force"     on an atom of a dilute cavity medium
    medium? (default: the medium the atoms form), mirror1?, mirror2,
    atom, density, d1?, width?
  kind = "atom-atom"             z is the atom separation; positive attracts
    pair = "embedded-embedded" | "medium-embedded",
    atom_a, atom_b, host = "vacuum" (embedded-embedded only)
  kind = "asymptotics"           leading order next to a single mirror
    target = "atom" | "medium-atom", regime = "short" | "large",
    mirror, atom, medium = "vacuum", density (medium-atom only),
    formulation = "lorentz" (atom, large regime)

[sweep]
  start   = <> 0>
  stop    = <>= start>           default start
  points  = <>= 1>               default 1
  spacing = "log" | "linear"     default "log"

[quadrature]                     optional
  rel_tol = 1e-8, abs_tol = 0, max_evaluations = 200000

Example:

  [atom.probe]
  electric = [{ weight = 1.0, resonance = 1.0 }]

  [scenario]
  kind = "atom-force"
  mirror2 = "ideal-conducting"
  atom = "probe"

  [sweep]
  start = 1e-3
  stop = 1e2
  points = 21
"#;
