mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use nalgebra::Vector3;
use proptest::prelude::*;
use spincurrent::basis::{cartesian_powers, eval_basis, primitive_norm, Basis};
use spincurrent::{build_grid, Atom, BasisShell, MolecularSystem, Quality};

const DENSE: Quality = Quality::Custom { radial: 300, angular: 194 };

fn one_shell(l: u8, alpha: f64, center: Vector3<f64>) -> MolecularSystem {
    MolecularSystem::new(
        vec![Atom { z: 1, mass_number: 1, position: center }],
        vec![BasisShell { center: 0, l, exponents: vec![alpha], coefficients: vec![1.0] }],
        1,
        0,
    )
    .unwrap()
}

#[test]
fn s_function_at_its_center() {
    let sys = one_shell(0, 1.0, Vector3::zeros());
    let e = eval_basis(&sys, &Vector3::zeros());
    let n = (2.0 / PI).powf(0.75);
    assert_relative_eq!(e.values[0], n, max_relative = 1e-15);
    assert_eq!(e.gradients[0], Vector3::zeros());
    let e = eval_basis(&sys, &Vector3::new(0.0, 1.0, 0.0));
    assert_relative_eq!(e.values[0], n * (-1.0f64).exp(), max_relative = 1e-15);
}

#[test]
fn p_gradient_at_center_matches_finite_differences() {
    let sys = one_shell(1, 1.0, Vector3::zeros());
    let basis = Basis::new(&sys);
    let g = basis.eval(&Vector3::zeros()).gradients[0];
    let n = primitive_norm(1.0, [1, 0, 0]);
    assert_relative_eq!(g.x, n, max_relative = 1e-15);
    for h in [1e-5, 1e-6, 1e-7, 1e-8] {
        let plus = basis.eval(&Vector3::new(h, 0.0, 0.0)).values[0];
        let minus = basis.eval(&Vector3::new(-h, 0.0, 0.0)).values[0];
        let fd = (plus - minus) / (2.0 * h);
        assert!((fd - g.x).abs() < 1e-7 * g.x, "h = {h}: {fd} vs {}", g.x);
    }
}

#[test]
fn components_are_individually_normalized() {
    // x^l y^m z^n exp(-α r²) squared integrates to
    // Π (2k−1)!!/(4α)^k · (π/2α)^{3/2}
    for l in 0..=4u8 {
        for p in cartesian_powers(l) {
            let n = primitive_norm(0.7, p);
            let df: f64 = p.iter().map(|&k| spincurrent::basis::double_factorial_odd(k)).product();
            let integral = df / (4.0 * 0.7f64).powi(l as i32) * (PI / 1.4).powf(1.5);
            assert_relative_eq!(n * n * integral, 1.0, max_relative = 1e-13);
        }
    }
}

#[test]
fn overlap_diagonal_is_one_for_single_primitives() {
    for l in 0..=4u8 {
        let sys = one_shell(l, 1.3, Vector3::new(0.1, -0.2, 0.3));
        let s = Basis::new(&sys).overlap();
        for i in 0..s.nrows() {
            assert_relative_eq!(s[(i, i)], 1.0, max_relative = 1e-13);
        }
    }
}

#[test]
fn self_overlap_integrates_to_one_on_a_dense_grid() {
    // every primitive of every fixture, on its own element's grid; the
    // tightest core primitives need more radial points than the presets
    let mut seen = Vec::new();
    for name in common::FIXTURES {
        let (sys, _) = common::load(name);
        for shell in &sys.shells {
            let atom = &sys.atoms[shell.center];
            for &alpha in &shell.exponents {
                let key = (atom.z, shell.l, alpha.to_bits());
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                let single = MolecularSystem::new(
                    vec![Atom { position: Vector3::zeros(), ..atom.clone() }],
                    vec![BasisShell { center: 0, l: shell.l, exponents: vec![alpha], coefficients: vec![1.0] }],
                    1,
                    0,
                )
                .unwrap();
                let grid = build_grid(&single, DENSE).unwrap();
                let basis = Basis::new(&single);
                for k in 0..single.nbf() {
                    let norm = grid.integrate(|p| basis.eval(p).values[k].powi(2));
                    assert!((norm - 1.0).abs() < 1e-8, "{name} l={} α={alpha} k={k}: {norm}", shell.l);
                }
            }
        }
    }
}

#[test]
fn grid_overlap_matches_analytic_overlap() {
    let (sys, _) = common::load("no_doublet");
    let basis = Basis::new(&sys);
    let s = basis.overlap();
    let grid = build_grid(&sys, Quality::Default).unwrap();
    for (i, j) in [(0, 0), (3, 17), (8, 12), (13, 28), (9, 9)] {
        let num = grid.integrate(|p| {
            let e = basis.eval(p);
            e.values[i] * e.values[j]
        });
        assert!((num - s[(i, j)]).abs() < 1e-6, "({i},{j}): {num} vs {}", s[(i, j)]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gradients_match_finite_differences(
        l in 0u8..=4,
        alpha in 0.05f64..20.0,
        x in -2.0f64..2.0, y in -2.0f64..2.0, z in -2.0f64..2.0,
    ) {
        let sys = MolecularSystem::new(
            vec![Atom { z: 8, mass_number: 16, position: Vector3::new(0.2, -0.1, 0.3) }],
            vec![BasisShell { center: 0, l, exponents: vec![alpha, 2.5 * alpha], coefficients: vec![0.6, 0.4] }],
            5,
            3,
        ).unwrap();
        let basis = Basis::new(&sys);
        let p = Vector3::new(x, y, z);
        let e = basis.eval(&p);
        for k in 0..sys.nbf() {
            // relative to the size of the radial factor, so that gradients
            // near angular nodes are not judged against zero
            let radial = primitive_norm(alpha, [0, 0, 0]) * (-alpha * (p - sys.atoms[0].position).norm_squared()).exp();
            let scale = e.gradients[k].norm().max(radial * alpha.sqrt()).max(1e-300);
            let mut best = f64::INFINITY;
            for h in [1e-3, 1e-4, 1e-5] {
                let fd = Vector3::from_fn(|a, _| {
                    let dp = Vector3::ith(a, h);
                    (basis.eval(&(p + dp)).values[k] - basis.eval(&(p - dp)).values[k]) / (2.0 * h)
                });
                best = best.min((fd - e.gradients[k]).norm() / scale);
            }
            prop_assert!(best < 1e-7, "l={} k={} rel err {}", l, k, best);
        }
    }

    #[test]
    fn primitives_decay_beyond_their_center(alpha in 0.1f64..5.0, r in 0.5f64..4.0) {
        // radial factor exp(-α r²) falls monotonically along any ray
        let sys = one_shell(0, alpha, Vector3::zeros());
        let b = Basis::new(&sys);
        let dir = Vector3::new(0.3, -0.5, 0.8).normalize();
        let near = b.eval(&(dir * r)).values[0];
        let far = b.eval(&(dir * (r + 0.1))).values[0];
        prop_assert!(far < near);
    }
}
