use cavity_vdw::dispersion::{AtomSpecies, Medium, Oscillator, PolarizabilityModel, ResponseModel};
use cavity_vdw::forces::{
    atom_force, atom_force_large, atom_force_short, medium_atom_force, slab_force, CavityConfig, Formulation,
    MediumAtom, SlabConfig,
};
use cavity_vdw::quadrature::{integrate_half_line, integrate_interval, QuadratureSpec};
use cavity_vdw::stratified::{interface_reflection, Layer, Mirror, Polarization};
use proptest::prelude::*;

fn spec() -> QuadratureSpec<f64> {
    QuadratureSpec::default()
}

/// A cavity whose every frequency is divided and every length multiplied
/// by `lambda`.
fn scaled_cavity(lambda: f64, z: f64) -> (CavityConfig<f64>, AtomSpecies<f64>) {
    let f = 1.0 / lambda;
    let osc = |s: f64, r: f64, g: f64| Oscillator {
        strength: s * f * f,
        resonance: r * f,
        damping: g * f,
    };
    let medium = Medium::new(ResponseModel::DrudeLorentz(vec![osc(0.8, 1.2, 0.1)]), ResponseModel::Constant(1.1));
    let mirror1 = Mirror::half_space(Medium::dielectric(ResponseModel::Drude {
        omega_p: 2.0 * f,
        gamma: 0.05 * f,
    }));
    let mirror2 = Mirror::Stack {
        layers: vec![Layer {
            medium: Medium::constant(2.5, 1.0),
            thickness: 0.2 * lambda,
        }],
        substrate: Medium::dielectric(ResponseModel::Plasma { omega_p: 1.5 * f }),
    };
    let atom = AtomSpecies::new(PolarizabilityModel::single(1.0, 0.9 * f), PolarizabilityModel::single(0.4, 1.7 * f));
    let cavity = CavityConfig::new(medium, mirror1, mirror2, 0.9 * lambda, z * lambda);
    (cavity, atom)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrature_is_linear(a in -3.0..3.0f64, b in -3.0..3.0f64, c in 0.2..4.0f64) {
        let f = move |x: f64| (-c * x).exp() / (1.0 + x * x);
        let g = move |x: f64| x * (-x).exp();
        let s = spec().with_rel_tol(1e-12);
        let lhs = integrate_half_line(|x| a * f(x) + b * g(x), 0.0, &s).unwrap().value;
        let rhs = a * integrate_half_line(f, 0.0, &s).unwrap().value + b * integrate_half_line(g, 0.0, &s).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (a.abs() + b.abs()));
    }

    #[test]
    fn quadrature_ignores_the_scale_hint(scale in 1e-2..1e2f64, c in 0.1..10.0f64) {
        let f = move |x: f64| 1.0 / (c * c + x * x);
        let exact = std::f64::consts::FRAC_PI_2 / c;
        let r = integrate_half_line(f, 0.0, &spec().with_rel_tol(1e-10).with_scale(scale)).unwrap();
        prop_assert!(r.converged);
        prop_assert!((r.value / exact - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tighter_tolerance_is_not_worse(w in 0.5..20.0f64) {
        let f = move |x: f64| (w * x).cos().powi(2);
        let exact = 0.5 + (2.0 * w).sin() / (4.0 * w);
        let err = |tol: f64| {
            let r = integrate_interval(f, 0.0, 1.0, &spec().with_rel_tol(tol)).unwrap();
            (r.value - exact).abs().max(1e-15)
        };
        let (loose, tight) = (err(1e-4), err(1e-10));
        prop_assert!(tight <= loose.max(1e-13));
        prop_assert!(tight <= 1e-9 * exact);
    }

    #[test]
    fn atom_forces_scale_with_inverse_fifth_power(lambda in 0.05..20.0f64, z in 0.05..0.8f64) {
        let (c1, a1) = scaled_cavity(1.0, z);
        let (cl, al) = scaled_cavity(lambda, z);
        for form in [Formulation::Lorentz, Formulation::Minkowski] {
            let f1 = atom_force(&c1, &a1, form, &spec()).unwrap().total;
            let fl = atom_force(&cl, &al, form, &spec()).unwrap().total;
            prop_assert!((fl * lambda.powi(5) / f1 - 1.0).abs() < 1e-6, "{} {}", fl * lambda.powi(5), f1);
        }
        let s1 = atom_force_short(&c1.mirror2, &c1.medium, &a1, z, &spec()).unwrap().total;
        let sl = atom_force_short(&cl.mirror2, &cl.medium, &al, z * lambda, &spec()).unwrap().total;
        prop_assert!((sl * lambda.powi(5) / s1 - 1.0).abs() < 1e-6);
        let l1 = atom_force_large(&Mirror::IdealConducting, &c1.medium, &a1, z, Formulation::Lorentz, &spec()).unwrap().total;
        let ll = atom_force_large(&Mirror::IdealConducting, &cl.medium, &al, z * lambda, Formulation::Lorentz, &spec()).unwrap().total;
        prop_assert!((ll * lambda.powi(5) / l1 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn slab_force_per_area_scales_with_inverse_fourth_power(lambda in 0.1..10.0f64) {
        let (c1, _) = scaled_cavity(1.0, 0.4);
        let (cl, _) = scaled_cavity(lambda, 0.4);
        let slab = |l: f64| SlabConfig::new(Medium::constant(3.0, 1.2), 0.1 * l);
        let f1 = slab_force(&c1, &slab(1.0), &spec()).unwrap().total;
        let fl = slab_force(&cl, &slab(lambda), &spec()).unwrap().total;
        prop_assert!((fl * lambda.powi(4) / f1 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn decomposition_sums_and_vacuum_has_no_assisted_part(
        z in 0.02..3.0f64,
        wp in 0.2..4.0f64,
        ae in 0.0..2.0f64,
        am in 0.0..2.0f64,
    ) {
        let atom = AtomSpecies::new(PolarizabilityModel::single(ae, 1.0), PolarizabilityModel::single(am, 0.5));
        let mirror = Mirror::half_space(Medium::dielectric(ResponseModel::Plasma { omega_p: wp }));
        let vac = CavityConfig::semi_infinite(Medium::vacuum(), mirror.clone(), z);
        let f = atom_force(&vac, &atom, Formulation::Lorentz, &spec()).unwrap();
        prop_assert_eq!(f.assisted_part(), 0.0);
        prop_assert!((f.total - f.screened_part() - f.assisted_part()).abs() <= 1e-14 * f.total.abs());

        let filled = CavityConfig::semi_infinite(Medium::constant(1.8, 1.3), mirror, z);
        let g = atom_force(&filled, &atom, Formulation::Lorentz, &spec()).unwrap();
        prop_assert!((g.total - g.screened_part() - g.assisted_part()).abs() <= 1e-14 * g.total.abs().max(1e-300));
    }

    #[test]
    fn medium_atom_force_depends_on_the_polarizability_sum(
        we in 1e-4..1e-3f64,
        wm in 1e-4..1e-3f64,
        re in 0.3..3.0f64,
        rm in 0.3..3.0f64,
        z in 0.01..2.0f64,
    ) {
        let species = AtomSpecies::new(PolarizabilityModel::single(we, re), PolarizabilityModel::single(wm, rm));
        let a = MediumAtom::new(species.clone(), 1e-3);
        let b = MediumAtom::new(species.swapped(), 1e-3);
        let mirror = Mirror::half_space(Medium::dielectric(ResponseModel::Plasma { omega_p: 1.0 }));
        let cavity = CavityConfig::semi_infinite(a.host_medium(), mirror, z);
        let fa = medium_atom_force(&cavity, &a, &spec()).unwrap();
        let fb = medium_atom_force(&cavity, &b, &spec()).unwrap();
        prop_assert_eq!(fa.total.to_bits(), fb.total.to_bits());
    }

    #[test]
    fn weak_contrast_reflection_keeps_relative_precision(
        wp in 1e-9..1e-5f64,
        xi in 0.1..10.0f64,
        k in 0.01..10.0f64,
    ) {
        let other = Medium::dielectric(ResponseModel::Plasma { omega_p: wp });
        let delta = wp * wp / (xi * xi);
        let kappa = (xi * xi + k * k).sqrt();
        // first order in the permittivity contrast
        let tm = delta * (0.5 - xi * xi / (4.0 * kappa * kappa));
        let te = -delta * xi * xi / (4.0 * kappa * kappa);
        let r_tm = interface_reflection(Polarization::TM, &Medium::vacuum(), &other, xi, k).unwrap();
        let r_te = interface_reflection(Polarization::TE, &Medium::vacuum(), &other, xi, k).unwrap();
        prop_assert!((r_tm / tm - 1.0).abs() < 1e-9 + 4.0 * delta);
        prop_assert!((r_te / te - 1.0).abs() < 1e-9 + 4.0 * delta);
    }
}

#[test]
fn single_precision_atom_force_tracks_double() {
    let m32 = Mirror::half_space(Medium::dielectric(ResponseModel::Plasma { omega_p: 1.0f32 }));
    let m64 = Mirror::half_space(Medium::dielectric(ResponseModel::Plasma { omega_p: 1.0f64 }));
    let c32 = CavityConfig::<f32>::semi_infinite(Medium::vacuum(), m32, 0.3);
    let c64 = CavityConfig::<f64>::semi_infinite(Medium::vacuum(), m64, 0.3);
    let s32 = QuadratureSpec::default().with_rel_tol(1e-5);
    let f32_force = atom_force(&c32, &AtomSpecies::electric(1.0f32, 1.0), Formulation::Lorentz, &s32).unwrap();
    let f64_force = atom_force(&c64, &AtomSpecies::electric(1.0, 1.0), Formulation::Lorentz, &spec()).unwrap();
    assert!((f64::from(f32_force.total) / f64_force.total - 1.0).abs() < 1e-4);
}
