//! The invariant suite behind `susyrad verify`.
//!
//! Each check returns its worst measured deviation together with the
//! tolerance and time budget it is judged against.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::coulomb::{self, CoulombState};
use crate::error::Result;
use crate::geonium::{susy_operating_point, trap_frequencies, GeoniumLevel, TrapConfig};
use crate::maps::{
    default_grid, solve_map_parameters, verify_map_identity, BrokenParameters, CoulombLabel,
    MapMode, OscillatorLabel,
};
use crate::oscillator::{self, OscillatorState};
use crate::qdt::{AnharmonicModel, AnharmonicState, DefectModel, DefectState};
use crate::radial::{linear_grid, log_grid, Normalization, RadialFunction};
use crate::specfun::{inner_product, Quadrature, SonineLaguerre};
use crate::susy::{apply_supercharge, relative_residual, Sector, SuperchargeImage};

const SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    /// Worst deviation found. Where a criterion mixes tolerances, each check
    /// is rescaled onto `tolerance` first.
    pub measured: f64,
    pub tolerance: f64,
    pub elapsed: Duration,
    pub time_limit: Duration,
    /// Number of individual comparisons.
    pub checks: usize,
    /// Failures that are not captured by `measured`, e.g. a wrong label.
    pub failures: Vec<String>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.measured.is_finite()
            && self.measured <= self.tolerance
            && self.elapsed <= self.time_limit
    }

    pub fn summary(&self) -> String {
        format!(
            "criterion {:>2} {:<28} {}  worst={:.3e} tol={:.0e} checks={} time={:.2}s/{}s{}",
            self.id,
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.measured,
            self.tolerance,
            self.checks,
            self.elapsed.as_secs_f64(),
            self.time_limit.as_secs(),
            if self.failures.is_empty() {
                String::new()
            } else {
                format!("  [{}]", self.failures.join("; "))
            }
        )
    }
}

/// Running worst-case tracker. Deviations are kept as fractions of the
/// tolerance they are judged against, so one criterion can mix tolerances.
struct Tally {
    tolerance: f64,
    worst: f64,
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            worst: 0.0,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, deviation: f64) {
        self.record_against(deviation, self.tolerance);
    }

    fn record_against(&mut self, deviation: f64, tolerance: f64) {
        self.checks += 1;
        let fraction = deviation / tolerance;
        // NaN must register as a failure
        if !(fraction <= self.worst) {
            self.worst = if fraction.is_nan() { f64::INFINITY } else { fraction };
        }
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.checks += 1;
        self.failures.push(what.into());
    }

    fn result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self, id: u8, name: &'static str, start: Instant, limit_secs: u64) -> CriterionReport {
        CriterionReport {
            id,
            name,
            measured: self.worst * self.tolerance,
            tolerance: self.tolerance,
            elapsed: start.elapsed(),
            time_limit: Duration::from_secs(limit_secs),
            checks: self.checks,
            failures: self.failures,
        }
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    vec![
        hydrogen_spectrum(),
        residual_suite(),
        orthonormality(),
        susy_structure(),
        map_identity(),
        odd_dimension_map(),
        reduction_limits(),
        penning_trap(),
        laguerre_oracle(),
    ]
}

pub fn hydrogen_spectrum() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-14);
    for n in 1..=20u32 {
        let exact = -1.0 / (2.0 * (n * n) as f64);
        if let Some(e) = t.result(coulomb::coulomb_energy(3, n), || format!("n={n}")) {
            t.record(((e - exact) / exact).abs());
        }
    }
    t.finish(1, "hydrogen spectrum", start, 1)
}

/// Residual grid for a Coulomb-side state with `ν = n + γ`: `y ∈ [0.05, 20ν]`.
pub fn coulomb_grid(nu: f64) -> Vec<f64> {
    linear_grid(0.05, 20.0 * nu, 200)
}

/// Residual grid for oscillator-side states: `Y ∈ [0.05, 6]`.
pub fn oscillator_grid() -> Vec<f64> {
    linear_grid(0.05, 6.0, 200)
}

/// The synthetic defect tables used by the residual suite.
pub fn synthetic_defect_models() -> Vec<DefectModel> {
    let mut out = Vec::new();
    for d in [2, 3, 4, 5] {
        for (delta, shift) in [(0.05, 0), (0.35, 0), (0.6, 1), (0.9, 1)] {
            let model = DefectModel::new(d)
                .and_then(|m| m.with_defect(0, delta, shift))
                .and_then(|m| m.with_defect(1, delta / 3.0, 0))
                .and_then(|m| m.with_defect(2, delta / 10.0, 0))
                .expect("synthetic defect table");
            out.push(model);
        }
    }
    out
}

pub fn synthetic_anharmonic_models() -> Vec<AnharmonicModel> {
    let mut out = Vec::new();
    for d in [2, 3, 4, 6] {
        for (delta, shift) in [(0.05, 0), (0.2, 0), (0.45, 1), (0.7, 1)] {
            let model = AnharmonicModel::new(d)
                .and_then(|m| m.with_anharmonicity(0, delta / 4.0, 0))
                .and_then(|m| m.with_anharmonicity(1, delta, shift))
                .and_then(|m| m.with_anharmonicity(2, delta / 2.0, 0))
                .expect("synthetic anharmonic table");
            out.push(model);
        }
    }
    out
}

pub fn residual_suite() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-8);
    for d in 2..=6 {
        for n in 1..=6 {
            for l in 0..n {
                let Some(s) = t.result(CoulombState::new(d, n, l), || format!("coulomb {d},{n},{l}"))
                else {
                    continue;
                };
                let grid = coulomb_grid(n as f64 + s.gamma_shift());
                let r = relative_residual(&s.radial_operator(), &s, &grid, s.operator_eigenvalue());
                if let Some(r) = t.result(r, || format!("coulomb {d},{n},{l}")) {
                    t.record(r);
                }
            }
        }
    }
    for d in [2, 3, 4, 6] {
        for n in 0..=8 {
            for l in (n % 2..=n).step_by(2) {
                let Some(s) = t.result(OscillatorState::new(d, n, l), || format!("osc {d},{n},{l}"))
                else {
                    continue;
                };
                let grid = oscillator_grid();
                let r = relative_residual(&s.radial_operator(), &s, &grid, s.operator_eigenvalue());
                if let Some(r) = t.result(r, || format!("osc {d},{n},{l}")) {
                    t.record(r);
                }
            }
        }
    }
    for model in synthetic_defect_models() {
        for n in 1..=5 {
            for l in 0..n.min(3) {
                // inadmissible combinations are simply not part of the model
                let Ok(s) = DefectState::new(&model, n, l) else {
                    continue;
                };
                let nu = s.modified().0 + s.gamma_shift();
                let r = relative_residual(&s.radial_operator(), &s, &coulomb_grid(nu), s.operator_eigenvalue());
                if let Some(r) = t.result(r, || format!("defect {n},{l}")) {
                    t.record(r);
                }
            }
        }
    }
    for model in synthetic_anharmonic_models() {
        for n in 0..=6 {
            for l in 0..=n.min(2) {
                let Ok(s) = AnharmonicState::new(&model, n, l) else {
                    continue;
                };
                let grid = oscillator_grid();
                let r = relative_residual(&s.radial_operator(), &s, &grid, s.operator_eigenvalue());
                if let Some(r) = t.result(r, || format!("anharmonic {n},{l}")) {
                    t.record(r);
                }
            }
        }
    }
    t.finish(2, "radial equation residuals", start, 30)
}

/// Max-norm distance of the Gram matrix of `states` from the identity.
pub fn gram_deviation<F: RadialFunction>(states: &[F], quad: &Quadrature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate().skip(i) {
            let ip = inner_product(|x| a.value(x), |x| b.value(x), quad)?;
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((ip.value - target).abs());
        }
    }
    Ok(worst)
}

pub fn orthonormality() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-8);
    let quad = Quadrature::default();
    for d in [2, 3, 5] {
        for l in 0..=2 {
            let states: Result<Vec<_>> = (l + 1..=8).map(|n| CoulombState::new(d, n, l)).collect();
            if let Some(states) = t.result(states, || format!("coulomb d={d} l={l}")) {
                if let Some(g) = t.result(gram_deviation(&states, &quad), || format!("coulomb d={d} l={l}")) {
                    t.record(g);
                }
            }
        }
    }
    for d in [2, 3, 4] {
        for l in 0..=1 {
            let states: Result<Vec<_>> =
                (l..=8).step_by(2).map(|n| OscillatorState::new(d, n, l)).collect();
            if let Some(states) = t.result(states, || format!("osc D={d} L={l}")) {
                if let Some(g) = t.result(gram_deviation(&states, &quad), || format!("osc D={d} L={l}")) {
                    t.record(g);
                }
            }
        }
    }
    // asymptotic defects: one radial operator per l, so states stay orthogonal
    for (d, l, delta, shift) in [(3, 0, 0.4, 1), (3, 1, 0.05, 0), (3, 2, 0.3, 0), (4, 0, 0.75, 1)] {
        let model = DefectModel::new(d).and_then(|m| m.with_defect(l, delta, shift));
        let Some(model) = t.result(model, || format!("defect table d={d}")) else {
            continue;
        };
        let states: Vec<_> = (1..=8).filter_map(|n| DefectState::new(&model, n, l).ok()).collect();
        if let Some(g) = t.result(gram_deviation(&states, &quad), || format!("defect d={d} l={l}")) {
            t.record(g);
        }
    }
    for (d, l, delta) in [(2, 1, 0.05), (3, 0, 0.2)] {
        let model = AnharmonicModel::new(d).and_then(|m| m.with_anharmonicity(l, delta, 0));
        let Some(model) = t.result(model, || format!("anharmonic table D={d}")) else {
            continue;
        };
        let states: Vec<_> = (l..=8)
            .step_by(2)
            .filter_map(|n| AnharmonicState::new(&model, n, l).ok())
            .collect();
        if let Some(g) = t.result(gram_deviation(&states, &quad), || format!("anharmonic D={d} L={l}")) {
            t.record(g);
        }
    }
    t.finish(3, "orthonormality", start, 60)
}

pub fn susy_structure() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-8);
    let grid = log_grid(0.05, 20.0, 80);

    // (a) V- - V+ = 2(μ+1)/x² once each sector's energy-zero constant is removed
    for d in 2..=6 {
        for l in 0..=4 {
            let pairs = [
                (coulomb::susy_pair(d, l), l as f64 + coulomb::gamma_shift(d)),
                (oscillator::susy_pair(d, l), l as f64 + oscillator::gamma_shift(d)),
            ];
            for (pair, mu) in pairs {
                let Some(pair) = t.result(pair, || format!("pair d={d} l={l}")) else {
                    continue;
                };
                let offset = pair.operator(Sector::Fermionic).constant_shift
                    - pair.operator(Sector::Bosonic).constant_shift;
                for &x in &grid {
                    let expected = 2.0 * (mu + 1.0) / (x * x);
                    let got = pair.v_minus(x) - pair.v_plus(x) - offset;
                    t.record_against((got - expected).abs() / expected.abs().max(1.0), 1e-12);
                }
            }
        }
    }

    // (b) the supercharge annihilates each ground state
    for d in 2..=6 {
        for l in 0..=4 {
            let ground = CoulombState::new(d, l + 1, l);
            let pair = coulomb::susy_pair(d, l);
            if let (Some(s), Some(p)) = (
                t.result(ground, || format!("coulomb ground d={d} l={l}")),
                t.result(pair, || format!("coulomb pair d={d} l={l}")),
            ) {
                let grid = coulomb_grid(l as f64 + 1.0 + s.gamma_shift());
                record_annihilation(&mut t, &p.superpotential, &s, &grid);
            }
            let ground = OscillatorState::new(d, l, l);
            let pair = oscillator::susy_pair(d, l);
            if let (Some(s), Some(p)) = (
                t.result(ground, || format!("osc ground D={d} L={l}")),
                t.result(pair, || format!("osc pair D={d} L={l}")),
            ) {
                record_annihilation(&mut t, &p.superpotential, &s, &oscillator_grid());
            }
        }
    }

    // (c) A maps h+ eigenfunctions onto h- eigenfunctions
    if let Some(pair) = t.result(coulomb::susy_pair(3, 0), || "hydrogen pair".into()) {
        let spectrum = pair.bosonic_spectrum(4).unwrap_or_default();
        for n in 2..=4u32 {
            let Some(s) = t.result(CoulombState::new(3, n, 0), || format!("hydrogen n={n}")) else {
                continue;
            };
            let image = SuperchargeImage {
                superpotential: pair.superpotential,
                psi: &s,
            };
            let grid = coulomb_grid(n as f64);
            let eps = spectrum[(n - 1) as usize];
            let r = relative_residual(&pair.operator(Sector::Fermionic), &image, &grid, eps);
            if let Some(r) = t.result(r, || format!("intertwining n={n}")) {
                t.record_against(r, 1e-7);
            }
        }
    }
    t.finish(4, "supersymmetric structure", start, 30)
}

fn record_annihilation(
    t: &mut Tally,
    u: &crate::susy::Superpotential,
    psi: &impl RadialFunction,
    grid: &[f64],
) {
    let amp = grid.iter().map(|&x| psi.value(x).abs()).fold(0.0, f64::max);
    if let Some(a) = t.result(apply_supercharge(u, psi, grid), || "supercharge".into()) {
        t.record(a.iter().map(|v| v.abs()).fold(0.0, f64::max) / amp);
    }
}

pub fn map_identity() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-8);
    let grid = default_grid();
    for d in 2..=5 {
        for n in 1..=4 {
            for l in 0..n {
                let source = CoulombLabel { dimension: d, n, l };
                for lambda in [0.0, 1.0] {
                    let exact = solve_map_parameters(source, lambda, MapMode::Exact);
                    let broken = solve_map_parameters(
                        source,
                        lambda,
                        MapMode::Broken(BrokenParameters::default()),
                    );
                    if exact != broken {
                        t.fail(format!("broken/exact MapSpec differ for {source:?} λ={lambda}"));
                    }
                    let Ok(spec) = exact else { continue };
                    if spec.target.dimension % 2 != 0 {
                        t.fail(format!("odd target dimension from {source:?}"));
                    }
                    if d == 3 && lambda == 1.0 {
                        let expected = OscillatorLabel {
                            dimension: 2,
                            n: 2 * n - 1,
                            l: 2 * l + 1,
                        };
                        if spec.target != expected {
                            t.fail(format!("hydrogen map gave {:?}", spec.target));
                        }
                    }
                    let v = verify_map_identity(&spec, &grid);
                    if let Some(v) = t.result(v, || format!("{source:?} λ={lambda}")) {
                        t.record(v.constancy_defect);
                    }
                }
            }
        }
    }
    t.finish(5, "exact map identity", start, 30)
}

pub fn odd_dimension_map() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-8);
    let mode = MapMode::Broken(BrokenParameters {
        defect: 0.0,
        coulomb_shift: 0,
        anharmonicity: 0.25,
        oscillator_shift: 0,
    });
    for n in 1..=4 {
        for l in 0..n {
            let source = CoulombLabel { dimension: 3, n, l };
            match solve_map_parameters(source, 0.5, mode) {
                Ok(spec) => {
                    if spec.target.dimension != 3 {
                        t.fail(format!("expected D=3, got {:?}", spec.target));
                    }
                    let v = verify_map_identity(&spec, &default_grid());
                    if let Some(v) = t.result(v, || format!("{source:?}")) {
                        t.record(v.constancy_defect);
                    }
                }
                Err(r) => t.fail(format!("{source:?} rejected: {r}")),
            }
        }
    }
    t.finish(6, "odd-dimension broken map", start, 30)
}

pub fn reduction_limits() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-12);
    let mut rng = StdRng::seed_from_u64(SEED);
    let closed = Normalization::ClosedForm;
    for _ in 0..100 {
        let d = rng.gen_range(2..=6);
        let n = rng.gen_range(1..=8);
        let l = rng.gen_range(0..n);
        let y = rng.gen_range(0.05..(4.0 * (n * n) as f64 + 10.0));
        let exact = CoulombState::new(d, n, l);
        let zero = DefectModel::new(d).and_then(|m| m.with_defect(l, 0.0, 0));
        let tiny = DefectModel::new(d).and_then(|m| m.with_defect(l, 1e-14, 0));
        let (Some(exact), Some(zero), Some(tiny)) = (
            t.result(exact, || format!("coulomb {d},{n},{l}")),
            t.result(zero, || "zero defect table".into()),
            t.result(tiny, || "tiny defect table".into()),
        ) else {
            continue;
        };
        if let Some(s) = t.result(DefectState::new(&zero, n, l), || format!("defect {n},{l}")) {
            t.record((s.value(y) - exact.value(y)).abs());
        }
        let pair = (
            CoulombState::with_normalization(d, n, l, closed),
            DefectState::with_normalization(&tiny, n, l, closed),
        );
        if let (Ok(a), Ok(b)) = pair {
            t.record((a.value(y) - b.value(y)).abs());
        }
    }
    for _ in 0..100 {
        let d = rng.gen_range(2..=6);
        let n = rng.gen_range(0..=10);
        let l = n - 2 * rng.gen_range(0..=n / 2);
        let y = rng.gen_range(0.05..((2 * n + 3) as f64).sqrt() + 3.0);
        let exact = OscillatorState::new(d, n, l);
        let zero = AnharmonicModel::new(d).and_then(|m| m.with_anharmonicity(l, 0.0, 0));
        let tiny = AnharmonicModel::new(d).and_then(|m| m.with_anharmonicity(l, 1e-14, 0));
        let (Some(exact), Some(zero), Some(tiny)) = (
            t.result(exact, || format!("osc {d},{n},{l}")),
            t.result(zero, || "zero anharmonic table".into()),
            t.result(tiny, || "tiny anharmonic table".into()),
        ) else {
            continue;
        };
        if let Some(s) = t.result(AnharmonicState::new(&zero, n, l), || format!("anharmonic {n},{l}")) {
            t.record((s.value(y) - exact.value(y)).abs());
        }
        let pair = (
            OscillatorState::with_normalization(d, n, l, closed),
            AnharmonicState::with_normalization(&tiny, n, l, closed),
        );
        if let (Ok(a), Ok(b)) = pair {
            t.record((a.value(y) - b.value(y)).abs());
        }
    }
    t.finish(7, "reduction limits", start, 30)
}

pub fn penning_trap() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-12);
    let mut rng = StdRng::seed_from_u64(SEED ^ 0x7);
    for _ in 0..50 {
        let b = rng.gen_range(0.1..10.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let d = rng.gen_range(1e-4..1e-2);
        let e = rng.gen_range(1e-20..1e-17) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let m = rng.gen_range(1e-31..1e-25);
        let Some(v) = t.result(susy_operating_point(b, d, e, m), || "operating point".into()) else {
            continue;
        };
        let f = TrapConfig::new(b, v, d, e, m).and_then(|cfg| trap_frequencies(&cfg));
        if let Some(f) = t.result(f, || format!("trap B={b} V={v}")) {
            t.record((f.cyclotron / f.axial - 1.0).abs());
        }
    }
    for i in 0..200 {
        let e = rng.gen_range(-1e-18..1e-18);
        let v = if i % 20 == 0 { 0.0 } else { rng.gen_range(-100.0..100.0) };
        let Some(cfg) = t.result(TrapConfig::new(1.0, v, 1e-3, e, 1e-30), || "trap".into()) else {
            continue;
        };
        if trap_frequencies(&cfg).is_err() != (e * v <= 0.0) {
            t.fail(format!("stability misclassified for e={e:e} V={v}"));
        } else {
            t.checks += 1;
        }
    }
    for n in 0..=20u32 {
        for l in (n % 2..=n).step_by(2) {
            if let Some(level) = t.result(GeoniumLevel::new(n, l, 0.0), || format!("level {n},{l}")) {
                t.record((level.energy - (n as f64 + 1.0)).abs());
            }
        }
    }
    t.finish(8, "Penning trap", start, 10)
}

pub const LAGUERRE_ORDERS: [f64; 5] = [-0.5, 0.0, 0.5, 1.0, 2.7];
pub const LAGUERRE_POINTS: [f64; 4] = [0.01, 1.0, 10.0, 50.0];

/// Central difference with one Richardson step.
pub fn richardson_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

pub fn laguerre_oracle() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new(1e-7);
    for n in 0..=15 {
        for alpha in LAGUERRE_ORDERS {
            let Some(p) = t.result(SonineLaguerre::new(n, alpha), || format!("L_{n}^({alpha})")) else {
                continue;
            };
            for x in LAGUERRE_POINTS {
                let pair = p.eval(x).and_then(|a| Ok((a, p.eval_direct_sum(x)?)));
                if let Some((rec, direct)) = t.result(pair, || format!("L_{n}^({alpha})({x})")) {
                    let rel = if rec == direct { 0.0 } else { (rec - direct).abs() / direct.abs() };
                    t.record_against(rel, 1e-10);
                }
            }
            for x in log_grid(0.1, 50.0, 40) {
                let h = 1e-3 * x.max(1.0);
                let fd = richardson_derivative(|z| p.eval(z).unwrap_or(f64::NAN), x, h);
                if let Some(d) = t.result(p.derivative(x), || format!("L'_{n}^({alpha})({x})")) {
                    t.record((d - fd).abs() / derivative_scale(&p, x));
                }
            }
        }
    }
    t.finish(9, "Sonine-Laguerre oracle", start, 10)
}

/// Magnitude the derivative is compared against: `|L'|` away from its
/// zeros, otherwise the size of `L` per unit argument.
fn derivative_scale(p: &SonineLaguerre, x: f64) -> f64 {
    let d = p.derivative(x).unwrap_or(0.0).abs();
    let v = p.eval(x).unwrap_or(0.0).abs() / x.max(1.0);
    d.max(v).max(f64::MIN_POSITIVE)
}
