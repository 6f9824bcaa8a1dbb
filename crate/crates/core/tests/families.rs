use susyrad::coulomb::{self, CoulombState};
use susyrad::oscillator::{self, OscillatorState};
use susyrad::qdt::{
    breaking_potential_coulomb, breaking_potential_oscillator, rydberg_energy, AnharmonicModel,
    AnharmonicState, DefectModel, DefectState,
};
use susyrad::radial::{linear_grid, log_grid, RadialFunction};
use susyrad::specfun::Quadrature;
use susyrad::susy::{apply_operator, relative_residual, RadialOperator};
use susyrad::verify::{coulomb_grid, gram_deviation, oscillator_grid};

#[test]
fn coulomb_gram_matrices() {
    let quad = Quadrature::default();
    for d in 2..=6 {
        for l in 0..=3 {
            let states: Vec<_> = (l + 1..=6).map(|n| CoulombState::new(d, n, l).unwrap()).collect();
            let g = gram_deviation(&states, &quad).unwrap();
            assert!(g <= 1e-8, "d={d} l={l}: {g:e}");
        }
    }
}

#[test]
fn oscillator_gram_matrices() {
    let quad = Quadrature::default();
    for d in [2, 3, 4, 6] {
        for l in 0..=3 {
            let states: Vec<_> = (l..=8)
                .step_by(2)
                .map(|n| OscillatorState::new(d, n, l).unwrap())
                .collect();
            let g = gram_deviation(&states, &quad).unwrap();
            assert!(g <= 1e-8, "D={d} L={l}: {g:e}");
        }
    }
}

#[test]
fn asymptotic_defect_gram_matrices() {
    let quad = Quadrature::default();
    for (d, l, delta, shift) in [(3, 0, 0.4, 1), (3, 1, 0.05, 0), (2, 0, 0.7, 1), (5, 2, 0.15, 0)] {
        let model = DefectModel::new(d).unwrap().with_defect(l, delta, shift).unwrap();
        let states: Vec<_> = (1..=8).filter_map(|n| DefectState::new(&model, n, l).ok()).collect();
        assert!(states.len() >= 6);
        let g = gram_deviation(&states, &quad).unwrap();
        assert!(g <= 1e-8, "d={d} l={l}: {g:e}");
    }
    for (d, l, delta, shift) in [(2, 1, 0.05, 0), (3, 2, 0.3, 1), (4, 0, 0.2, 0)] {
        let model = AnharmonicModel::new(d).unwrap().with_anharmonicity(l, delta, shift).unwrap();
        let states: Vec<_> = (l..=12)
            .step_by(2)
            .filter_map(|n| AnharmonicState::new(&model, n, l).ok())
            .collect();
        assert!(states.len() >= 4);
        let g = gram_deviation(&states, &quad).unwrap();
        assert!(g <= 1e-8, "D={d} L={l}: {g:e}");
    }
}

#[test]
fn oscillator_residuals_on_fixed_grid() {
    let grid = oscillator_grid();
    for d in [2, 3, 4, 6] {
        for n in 0..=8 {
            for l in (n % 2..=n).step_by(2) {
                let s = OscillatorState::new(d, n, l).unwrap();
                let r = relative_residual(&s.radial_operator(), &s, &grid, s.operator_eigenvalue()).unwrap();
                assert!(r <= 1e-8, "D={d} N={n} L={l}: {r:e}");
            }
        }
    }
}

#[test]
fn three_dimensional_oscillator_energies() {
    for n in 0..30 {
        assert_eq!(oscillator::oscillator_energy(3, n).unwrap(), n as f64 + 1.5);
    }
}

#[test]
fn rydberg_energy_is_the_residual_eigenvalue() {
    let model = DefectModel::new(3).unwrap().with_defect(0, 0.4, 1).unwrap().with_defect(1, 0.05, 0).unwrap();
    for n in 2..=6 {
        for l in 0..=1 {
            let s = DefectState::new(&model, n, l).unwrap();
            let e = rydberg_energy(&model, n, l).unwrap();
            assert_eq!(s.energy(), e);
            assert_eq!(s.operator_eigenvalue(), e / 2.0);
            let nu = s.modified().0 + s.gamma_shift();
            let r = relative_residual(&s.radial_operator(), &s, &coulomb_grid(nu), e / 2.0).unwrap();
            assert!(r <= 1e-8);
        }
    }
}

/// `[h + V_B] v* = ε v*` pointwise, with `h`, `ε` the unbroken operator and level.
#[test]
fn breaking_potential_completes_the_exact_operator() {
    let model = DefectModel::new(4).unwrap().with_defect(0, 0.63, 1).unwrap();
    for n in 2..=5 {
        let s = DefectState::new(&model, n, 0).unwrap();
        let exact = RadialOperator::coulomb(s.gamma_shift());
        let nu = n as f64 + s.gamma_shift();
        let grid = log_grid(0.1, 40.0, 60);
        let bare = apply_operator(&exact, &s, &grid, Some(-0.25 / (nu * nu))).unwrap();
        let amp = grid.iter().map(|&y| s.value(y).abs()).fold(0.0, f64::max);
        for (&y, b) in grid.iter().zip(bare) {
            let vb = breaking_potential_coulomb(&model, n, 0, y).unwrap();
            assert!((b + vb * s.value(y)).abs() <= 1e-8 * amp, "n={n} y={y}");
        }
    }
    let model = AnharmonicModel::new(3).unwrap().with_anharmonicity(1, 0.3, 1).unwrap();
    for n in (3..=9).step_by(2) {
        let s = AnharmonicState::new(&model, n, 1).unwrap();
        let exact = RadialOperator::oscillator(1.0 + s.gamma_shift());
        let eps = oscillator::operator_eigenvalue(oscillator::oscillator_energy(3, n).unwrap());
        let grid = linear_grid(0.1, 6.0, 60);
        let bare = apply_operator(&exact, &s, &grid, Some(eps)).unwrap();
        let amp = grid.iter().map(|&y| s.value(y).abs()).fold(0.0, f64::max);
        for (&y, b) in grid.iter().zip(bare) {
            let vb = breaking_potential_oscillator(&model, n, 1, y).unwrap();
            assert!((b + vb * s.value(y)).abs() <= 1e-8 * amp, "N={n} Y={y}");
        }
    }
}

#[test]
fn hydrogen_reduction() {
    for n in 1..=6 {
        for l in 0..n {
            let s = CoulombState::new(3, n, l).unwrap();
            for r in log_grid(0.05, 40.0, 30) {
                let lhs = 2f64.sqrt() * coulomb::eval_coulomb_state(&s, 2.0 * r).unwrap();
                let rhs = r * coulomb::eval_hydrogen_r(n, l, r).unwrap();
                assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1e-3));
            }
        }
    }
}

#[test]
fn states_are_positive_near_origin() {
    for d in 2..=6 {
        for n in 1..=5 {
            for l in 0..n {
                assert!(CoulombState::new(d, n, l).unwrap().value(1e-3) > 0.0);
            }
        }
        for n in 0..=6 {
            for l in (n % 2..=n).step_by(2) {
                assert!(OscillatorState::new(d, n, l).unwrap().value(1e-3) > 0.0);
            }
        }
    }
}

#[test]
fn n_dependent_defects_fall_back_to_asymptotic_value() {
    let model = DefectModel::new(3)
        .unwrap()
        .with_defect(1, 0.05, 0)
        .unwrap()
        .with_n_defect(2, 1, 0.08)
        .unwrap();
    assert!(!model.is_asymptotic());
    assert_eq!(DefectState::new(&model, 2, 1).unwrap().defect(), 0.08);
    assert_eq!(DefectState::new(&model, 3, 1).unwrap().defect(), 0.05);
    assert_eq!(DefectState::new(&model, 3, 2).unwrap().defect(), 0.0);
}
