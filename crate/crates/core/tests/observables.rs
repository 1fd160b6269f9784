mod common;

use std::collections::HashMap;
use std::f64::consts::PI;

use approx::assert_relative_eq;
use nalgebra::{Matrix3, Vector3};
use spincurrent::cdt::{CurrentContext, CurrentGrid, Mode};
use spincurrent::field::GaussianSpinModel;
use spincurrent::observables::{
    chemical_shift, combine_with_orbital, curie_magnetizability, hyperfine, hyperfine_prefactor, resolve_g_factor,
    shielding_prefactor, spin_magnetizability, spin_shielding,
};
use spincurrent::pipeline::{PipelineOptions, Prepared};
use spincurrent::zora::ZoraModel;
use spincurrent::{build_grid, Atom, Error, MolecularSystem, Quality, SpinStatistics, StatisticsMode, Unit};

const LIN: StatisticsMode = StatisticsMode::Linear;

fn single_atom(z: u32, a: u32) -> MolecularSystem {
    MolecularSystem {
        atoms: vec![Atom { z, mass_number: a, position: Vector3::zeros() }],
        shells: vec![],
        n_alpha: 1,
        n_beta: 0,
    }
}

/// Spin currents of a model density on the default grid of `sys`.
fn model_currents(sys: &MolecularSystem, source: &GaussianSpinModel, mode: Mode) -> CurrentGrid {
    let grid = build_grid(sys, Quality::Default).unwrap();
    let zora = ZoraModel::new(sys).unwrap();
    CurrentGrid::build(&grid, &CurrentContext { zora: &zora, source, mode }).unwrap()
}

fn fixture_currents(name: &str, mode: Mode, quality: Quality) -> (Prepared, CurrentGrid) {
    let (sys, dens) = common::load(name);
    let opts = PipelineOptions { mode, grid: quality.into(), ..Default::default() };
    let prep = Prepared::new(sys, &dens, &opts).unwrap();
    let cg = prep.current_grid().unwrap();
    (prep, cg)
}

/// Diagonal Biot–Savart integrals ∫((r × J^β)_β)/r³ for Q = N e^{−a r²} at
/// the origin with J^β = −(g_e/2) ∇Q × ê_β, by the midpoint rule on a
/// rectangular grid over the positive octant (the integrand is even).
fn contact_cubature(a: f64, g_e: f64, half_width: f64, n: usize) -> [f64; 3] {
    let h = half_width / n as f64;
    let norm = (a / PI).powf(1.5);
    let mut acc = [0.0; 3];
    for i in 0..n {
        let x = (i as f64 + 0.5) * h;
        for j in 0..n {
            let y = (j as f64 + 0.5) * h;
            for k in 0..n {
                let z = (k as f64 + 0.5) * h;
                let r = [x, y, z];
                let r2 = x * x + y * y + z * z;
                let q = norm * (-a * r2).exp();
                let grad = r.map(|c| -2.0 * a * c * q);
                for (b, slot) in acc.iter_mut().enumerate() {
                    // J = −(g_e/2) ∇Q × ê_b
                    let mut e = [0.0; 3];
                    e[b] = 1.0;
                    let jv = [
                        -0.5 * g_e * (grad[1] * e[2] - grad[2] * e[1]),
                        -0.5 * g_e * (grad[2] * e[0] - grad[0] * e[2]),
                        -0.5 * g_e * (grad[0] * e[1] - grad[1] * e[0]),
                    ];
                    let cross = [
                        r[1] * jv[2] - r[2] * jv[1],
                        r[2] * jv[0] - r[0] * jv[2],
                        r[0] * jv[1] - r[1] * jv[0],
                    ];
                    *slot += cross[b] / (r2 * r2.sqrt());
                }
            }
        }
    }
    acc.map(|s| 8.0 * s * h * h * h)
}

#[test]
fn contact_shielding_matches_brute_force_cubature() {
    let g_e = 2.00231930436256;
    let c = 137.035999084;
    let k_b = 3.166811563e-6;
    let alpha = 1.0;
    let t = 300.0;
    let sys = single_atom(8, 16);
    let source = GaussianSpinModel::single(Vector3::zeros(), alpha, 1.0);
    let cg = model_currents(&sys, &source, Mode::Nr);
    let stats = SpinStatistics::new(1.0, t).unwrap();
    let sigma = spin_shielding(&cg, &Vector3::zeros(), &stats, LIN, false);
    assert_eq!(sigma.unit, Unit::Ppm);

    let diag = contact_cubature(alpha, g_e, 7.0, 160);
    let pref = g_e * 0.5 * (1.0 * 2.0) / (3.0 * k_b * t) / (c * c) * 1e6;
    let brute_iso = pref * diag.iter().sum::<f64>() / 3.0;
    // the same integral reduced by parts: −(8π/3)(g_e/2) Q(0)
    let symbolic = pref * -(8.0 * PI / 3.0) * 0.5 * g_e * (alpha / PI).powf(1.5);
    assert!((brute_iso / symbolic - 1.0).abs() < 5e-3, "{brute_iso} vs {symbolic}");

    let iso = sigma.iso();
    assert!((iso / brute_iso - 1.0).abs() < 5e-3, "{iso} vs {brute_iso}");
    for i in 0..3 {
        assert!((sigma.total[(i, i)] / iso - 1.0).abs() < 5e-3);
        for j in 0..3 {
            if i != j {
                assert!(sigma.total[(i, j)].abs() < 1e-8 * iso.abs(), "({i},{j}) {}", sigma.total[(i, j)]);
            }
        }
    }
}

#[test]
fn shielding_scales_as_inverse_temperature() {
    let (prep, cg) = fixture_currents("no_doublet", Mode::Sr, Quality::Coarse);
    let r = prep.system.atoms[0].position;
    let at = |t| spin_shielding(&cg, &r, &SpinStatistics::new(0.5, t).unwrap(), LIN, false);
    let (a, b) = (at(250.0), at(500.0));
    for i in 0..9 {
        assert_relative_eq!(a.total[i], 2.0 * b.total[i], max_relative = 1e-15);
    }
    assert_eq!(a.temperature, Some(250.0));
}

#[test]
fn hyperfine_is_temperature_free_and_linear_in_g() {
    let (prep, cg) = fixture_currents("no_doublet", Mode::Sr, Quality::Coarse);
    let r = prep.system.atoms[1].position;
    let g = resolve_g_factor(8, 17, &HashMap::new()).unwrap();
    let a = hyperfine(&cg, &r, g, false);
    assert_eq!(a.unit, Unit::MHz);
    assert_eq!(a.temperature, None);
    assert_eq!(hyperfine(&cg, &r, g, false), a);
    assert_eq!(hyperfine(&cg, &r, -g, false).total, -a.total);
}

#[test]
fn shielding_to_hyperfine_ratio() {
    let (prep, cg) = fixture_currents("o2_triplet", Mode::Sr, Quality::Coarse);
    let r = prep.system.atoms[0].position;
    let (s, t, g_i) = (1.0, 300.0, -0.757516);
    let stats = SpinStatistics::new(s, t).unwrap();
    let sigma = spin_shielding(&cg, &r, &stats, LIN, false);
    let a = hyperfine(&cg, &r, g_i, false);
    let expected = shielding_prefactor(&stats, LIN) / hyperfine_prefactor(g_i);
    // SI oracle: −g_e μ_B S(S+1) h / (3 k_B T g_I μ_N), ppm per MHz
    let (mu_b, mu_n, h, k_b) = (9.2740100783e-24, 5.0507837461e-27, 6.62607015e-34, 1.380649e-23);
    let si = -2.00231930436256 * mu_b * s * (s + 1.0) * h / (3.0 * k_b * t * g_i * mu_n) * 1e12;
    // the two constant sets agree to about 1e-10
    assert_relative_eq!(expected, si, max_relative = 1e-9);
    for i in 0..9 {
        if a.total[i].abs() > 1e-9 * a.total.amax() {
            assert_relative_eq!(sigma.total[i] / a.total[i], expected, max_relative = 1e-12);
        }
    }
}

#[test]
fn soc_breakdown_sums_to_total() {
    let (prep, cg) = fixture_currents("no_doublet", Mode::Sr, Quality::Coarse);
    let stats = SpinStatistics::new(0.5, 298.15).unwrap();
    let r = prep.system.atoms[0].position;
    let with = spin_shielding(&cg, &r, &stats, LIN, true);
    let without = spin_shielding(&cg, &r, &stats, LIN, false);
    assert_eq!(with.total, with.zee + with.soc.unwrap());
    assert_eq!(without.soc, None);
    assert_eq!(with.zee, without.zee);
    let chi = spin_magnetizability(&cg, &stats, LIN, true);
    assert_eq!(chi.total, chi.zee + chi.soc.unwrap());
}

#[test]
fn curie_law_for_model_densities() {
    let cases = [(1.0, 295.75, 3390.3), (0.5, 298.15, 1261.1), (0.5, 408.0, 921.5)];
    let sys = MolecularSystem {
        atoms: vec![
            Atom { z: 7, mass_number: 14, position: Vector3::new(0.0, 0.0, -1.1) },
            Atom { z: 8, mass_number: 16, position: Vector3::new(0.0, 0.0, 1.1) },
        ],
        shells: vec![],
        n_alpha: 1,
        n_beta: 0,
    };
    // any normalized spin density will do; this one is lopsided on purpose
    let source = GaussianSpinModel {
        terms: vec![(Vector3::new(0.0, 0.0, -1.1), 1.3, 0.7), (Vector3::new(0.2, 0.0, 1.0), 0.6, 0.3)],
        spin: 1.0,
    };
    let cg = model_currents(&sys, &source, Mode::Nr);
    for (s, t, table) in cases {
        let stats = SpinStatistics::new(s, t).unwrap();
        let chi = spin_magnetizability(&cg, &stats, LIN, false);
        assert_eq!(chi.unit, Unit::PpmCm3PerMol);
        assert!((chi.iso() / table - 1.0).abs() < 2e-3, "S={s} T={t}: {}", chi.iso());
        assert!((chi.iso() / curie_magnetizability(&stats) - 1.0).abs() < 2e-3);
        assert_eq!(chi.total, chi.total.transpose());
    }
}

#[test]
fn curie_product_is_temperature_independent() {
    let (_, cg) = fixture_currents("o2_triplet", Mode::Sr, Quality::Coarse);
    let tchi = |t: f64| t * spin_magnetizability(&cg, &SpinStatistics::new(1.0, t).unwrap(), LIN, false).iso();
    let base = tchi(300.0);
    for t in [100.0, 900.0] {
        assert_relative_eq!(tchi(t), base, max_relative = 1e-10);
    }
}

#[test]
fn fixture_magnetizability_follows_the_closed_form() {
    for (name, s) in [("o2_triplet", 1.0), ("no_doublet", 0.5)] {
        let (_, cg) = fixture_currents(name, Mode::Nr, Quality::Default);
        let stats = SpinStatistics::new(s, 298.15).unwrap();
        let chi = spin_magnetizability(&cg, &stats, LIN, false);
        assert!((chi.iso() / curie_magnetizability(&stats) - 1.0).abs() < 2e-3, "{name}: {}", chi.iso());
    }
}

#[test]
fn default_to_fine_changes_properties_little() {
    let (prep, a) = fixture_currents("no_doublet", Mode::Sr, Quality::Default);
    let (_, b) = fixture_currents("no_doublet", Mode::Sr, Quality::Fine);
    let stats = SpinStatistics::new(0.5, 298.15).unwrap();
    let (ca, cb) = (
        spin_magnetizability(&a, &stats, LIN, false),
        spin_magnetizability(&b, &stats, LIN, false),
    );
    assert!((ca.total - cb.total).amax() < 2e-3 * ca.iso().abs());
    for atom in &prep.system.atoms {
        let sa = spin_shielding(&a, &atom.position, &stats, LIN, false);
        let sb = spin_shielding(&b, &atom.position, &stats, LIN, false);
        assert!((sa.total - sb.total).amax() < 5e-3 * sa.total.amax(), "{:?} vs {:?}", sa.total, sb.total);
    }
}

#[test]
fn statistics_examples() {
    let st = SpinStatistics::new(0.5, 300.0).unwrap();
    // field giving x = 1
    let b1 = 1.0 / st.x(1.0);
    assert_relative_eq!(st.expectation(b1), -0.231059, epsilon = 1e-6);
    assert_relative_eq!(st.expectation(b1), -0.5 * 0.5f64.tanh(), max_relative = 1e-14);
    assert_eq!(st.expectation(0.0), 0.0);

    for s in [0.5, 1.0, 2.5] {
        let st = SpinStatistics::new(s, 300.0).unwrap();
        let b = 1e-3 / st.x(1.0);
        let (exact, lin) = (st.expectation(b), st.expectation_linear(b));
        assert!((exact / lin - 1.0).abs() < 1e-6, "S={s}");
        assert_relative_eq!(st.derivative(0.0), lin / b, max_relative = 1e-12);
    }

    let curie_slope = SpinStatistics::new(1.0, 300.0).unwrap().derivative(0.0);
    let cold = SpinStatistics::new(1.0, 1e-3).unwrap().derivative(1.0);
    assert!(cold.abs() < 1e-30 * curie_slope.abs(), "{cold}");
    let hot = SpinStatistics::new(1.0, 1e9).unwrap().derivative(1.0);
    assert!(hot.abs() < 1e-6 * curie_slope.abs(), "{hot}");
}

#[test]
fn exact_statistics_reduce_to_curie_in_weak_fields() {
    let (_, cg) = fixture_currents("model_triplet", Mode::Sr, Quality::Coarse);
    let st = SpinStatistics::new(1.0, 298.15).unwrap();
    let lin = spin_magnetizability(&cg, &st, LIN, false).iso();
    let weak = spin_magnetizability(&cg, &st, StatisticsMode::Exact { field: 1e-3 }, false).iso();
    let strong = spin_magnetizability(&cg, &st, StatisticsMode::Exact { field: 100.0 }, false).iso();
    assert!((weak / lin - 1.0).abs() < 1e-6);
    assert!(strong < lin && strong > 0.0);
}

#[test]
fn invalid_statistics_are_rejected() {
    for (s, t) in [(1.0, 0.0), (1.0, -5.0), (0.0, 300.0), (0.7, 300.0)] {
        assert!(matches!(SpinStatistics::new(s, t), Err(Error::DomainError(_))), "{s} {t}");
    }
}

#[test]
fn orbital_combination_and_shift() {
    let (_, cg) = fixture_currents("model_triplet", Mode::Nr, Quality::Coarse);
    let chi = spin_magnetizability(&cg, &SpinStatistics::new(1.0, 295.75).unwrap(), LIN, false);
    assert_eq!(combine_with_orbital(&chi, &Matrix3::zeros(), Unit::PpmCm3PerMol).unwrap().total, chi.total);
    let orb = Matrix3::from_diagonal_element(-11.0);
    let total = combine_with_orbital(&chi, &orb, Unit::PpmCm3PerMol).unwrap();
    assert_relative_eq!(total.iso(), chi.iso() - 11.0, max_relative = 1e-14);
    assert_eq!(total.orbital, Some(orb));
    assert!(matches!(combine_with_orbital(&chi, &orb, Unit::Ppm), Err(Error::DomainError(_))));

    // tabulated totals recomputed from their parts
    let mut spin = chi.clone();
    spin.total = Matrix3::from_diagonal_element(3390.5);
    let t = combine_with_orbital(&spin, &orb, Unit::PpmCm3PerMol).unwrap();
    assert!((t.iso() - 3379.5).abs() < 1e-9);
    assert!((chemical_shift(31.38, 44.81) + 13.43).abs() < 1e-9);
}

#[test]
fn nuclear_g_factors() {
    let none = HashMap::new();
    assert_relative_eq!(resolve_g_factor(1, 1, &none).unwrap(), 5.58569468);
    assert!(resolve_g_factor(7, 14, &none).unwrap() > 0.0);
    assert!(matches!(resolve_g_factor(8, 16, &none), Err(Error::MissingNuclearData(_))));
    let o = HashMap::from([("16O".to_string(), 0.1)]);
    assert_eq!(resolve_g_factor(8, 16, &o).unwrap(), 0.1);
}
