//! Maps from Coulomb-side states to oscillator-side states.
//!
//! Exact case: `D = 2d-2-2λ`, `N = 2n-2+λ`, `L = 2l+λ` with integer `λ`, and
//! `v_dnl((n+γ)Y²) = K · Y^{1/2} · V_DNL(Y)`.
//!
//! Broken case: with defect `δ`, shift `i`, anharmonicity `Δ` and shift `I`,
//! `N = 2n + 2(Δ-δ) - 2 + λ` and `L = 2l + 2(Δ-δ) - 2(I-i) + λ`; `λ` may be a
//! half-integer as long as `2(Δ-δ) + λ` is an integer. The same identity then
//! holds between the starred states with `n* + γ` in the argument.

use std::fmt;

use crate::coulomb::{self, CoulombState};
use crate::error::{Error, Result};
use crate::oscillator::{self, OscillatorState};
use crate::qdt::{AnharmonicModel, AnharmonicState, DefectModel, DefectState};
use crate::radial::{log_grid, RadialFunction};
use crate::specfun::SonineLaguerre;

const INTEGRALITY_TOL: f64 = 1e-9;
/// Grid points closer than this to a node of the target state are skipped.
pub const NODE_EXCLUSION: f64 = 1e-6;
/// Grid points where the target amplitude is below this fraction of its
/// maximum are skipped.
pub const AMPLITUDE_FLOOR: f64 = 1e-12;
pub const CONSTANCY_TOL: f64 = 1e-8;

/// An integer or half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        Self(twice)
    }

    pub fn integer(value: i64) -> Self {
        Self(2 * value)
    }

    /// `None` unless `value` is within rounding of a multiple of 1/2.
    pub fn from_f64(value: f64) -> Option<Self> {
        let twice = 2.0 * value;
        let r = twice.round();
        if value.is_finite() && (twice - r).abs() <= INTEGRALITY_TOL {
            Some(Self(r as i64))
        } else {
            None
        }
    }

    pub fn twice(&self) -> i64 {
        self.0
    }

    pub fn value(&self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(&self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoulombLabel {
    pub dimension: u32,
    pub n: u32,
    pub l: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OscillatorLabel {
    pub dimension: u32,
    pub n: u32,
    pub l: u32,
}

/// Symmetry-breaking parameters of the three-parameter map.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BrokenParameters {
    /// Quantum defect `δ`.
    pub defect: f64,
    /// Coulomb-side shift `i`.
    pub coulomb_shift: u32,
    /// Oscillator anharmonicity `Δ`.
    pub anharmonicity: f64,
    /// Oscillator-side shift `I`.
    pub oscillator_shift: i32,
}

impl BrokenParameters {
    fn is_zero(&self) -> bool {
        self.defect == 0.0
            && self.anharmonicity == 0.0
            && self.coulomb_shift == 0
            && self.oscillator_shift == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapMode {
    Exact,
    Broken(BrokenParameters),
}

impl MapMode {
    fn parameters(&self) -> BrokenParameters {
        match self {
            MapMode::Exact => BrokenParameters::default(),
            MapMode::Broken(p) => *p,
        }
    }
}

/// A solved map: the source, the parameters, and the oscillator target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapSpec {
    pub lambda: HalfInteger,
    pub defect: f64,
    pub anharmonicity: f64,
    pub coulomb_shift: u32,
    pub oscillator_shift: i32,
    pub source: CoulombLabel,
    pub target: OscillatorLabel,
}

impl MapSpec {
    pub fn parameters(&self) -> BrokenParameters {
        BrokenParameters {
            defect: self.defect,
            coulomb_shift: self.coulomb_shift,
            anharmonicity: self.anharmonicity,
            oscillator_shift: self.oscillator_shift,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.parameters().is_zero()
    }

    pub fn defect_model(&self) -> Result<DefectModel> {
        DefectModel::new(self.source.dimension)?.with_defect(
            self.source.l,
            self.defect,
            self.coulomb_shift,
        )
    }

    pub fn anharmonic_model(&self) -> Result<AnharmonicModel> {
        AnharmonicModel::new(self.target.dimension)?.with_anharmonicity(
            self.target.l,
            self.anharmonicity,
            self.oscillator_shift,
        )
    }

    /// `n* + γ`, the scale in the argument `(n*+γ)Y²`.
    pub fn coulomb_scale(&self) -> f64 {
        self.source.n as f64 - self.defect + coulomb::gamma_shift(self.source.dimension)
    }

    /// `4E` of the target oscillator from its integer quantum numbers:
    /// `4E = 4N + 2D` before the anharmonic shift `-8Δ`.
    pub fn target_four_energy_unshifted(&self) -> i64 {
        4 * self.target.n as i64 + 2 * self.target.dimension as i64
    }
}

/// A constraint the requested map fails.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    LambdaNotHalfInteger(f64),
    LambdaNotInteger,
    ShiftNotInteger(f64),
    DimensionTooSmall(i64),
    NegativePrincipal(i64),
    NegativeAngular(i64),
    ParityOdd { n: i64, l: i64 },
    NegativeTargetDegree(i64),
    Source(String),
    Target(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LambdaNotHalfInteger(v) => {
                write!(f, "λ not integer or half-integer (λ = {v})")
            }
            Violation::LambdaNotInteger => write!(f, "λ not integer in exact mode"),
            Violation::ShiftNotInteger(v) => write!(f, "2(Δ-δ)+λ not integer (= {v})"),
            Violation::DimensionTooSmall(d) => write!(f, "D < 2 (D = {d})"),
            Violation::NegativePrincipal(n) => write!(f, "N < 0 (N = {n})"),
            Violation::NegativeAngular(l) => write!(f, "L < 0 (L = {l})"),
            Violation::ParityOdd { n, l } => write!(f, "N-L odd (N = {n}, L = {l})"),
            Violation::NegativeTargetDegree(k) => {
                write!(f, "target degree negative (N/2-L/2-I = {k})")
            }
            Violation::Source(msg) => write!(f, "source inadmissible: {msg}"),
            Violation::Target(msg) => write!(f, "target inadmissible: {msg}"),
        }
    }
}

/// Every constraint a requested map violates.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub lambda: f64,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl std::error::Error for ConstraintReport {}

/// Solves for the oscillator target of a Coulomb-side state.
pub fn solve_map_parameters(
    source: CoulombLabel,
    lambda: f64,
    mode: MapMode,
) -> std::result::Result<MapSpec, ConstraintReport> {
    let params = mode.parameters();
    let mut violations = Vec::new();
    let fail = |violations| ConstraintReport { lambda, violations };

    let source_model = DefectModel::new(source.dimension)
        .and_then(|m| m.with_defect(source.l, params.defect, params.coulomb_shift));
    match &source_model {
        Ok(m) => {
            if let Err(e) = m.modified_numbers(source.n, source.l) {
                violations.push(Violation::Source(inner_message(e)));
            }
        }
        Err(e) => violations.push(Violation::Source(inner_message(e.clone()))),
    }

    let lambda_h = match HalfInteger::from_f64(lambda) {
        Some(h) => h,
        None => {
            violations.push(Violation::LambdaNotHalfInteger(lambda));
            return Err(fail(violations));
        }
    };

    // m = 2(Δ-δ) + λ
    let shift = match mode {
        MapMode::Exact => {
            if !lambda_h.is_integer() {
                violations.push(Violation::LambdaNotInteger);
                return Err(fail(violations));
            }
            lambda_h.twice() / 2
        }
        MapMode::Broken(p) => {
            let m = 2.0 * (p.anharmonicity - p.defect) + lambda_h.value();
            if (m - m.round()).abs() > INTEGRALITY_TOL {
                violations.push(Violation::ShiftNotInteger(m));
                return Err(fail(violations));
            }
            m.round() as i64
        }
    };

    let d = 2 * source.dimension as i64 - 2 - lambda_h.twice();
    let n = 2 * source.n as i64 - 2 + shift;
    let l = 2 * source.l as i64 + shift
        - 2 * (params.oscillator_shift as i64 - params.coulomb_shift as i64);

    if d < 2 {
        violations.push(Violation::DimensionTooSmall(d));
    }
    if n < 0 {
        violations.push(Violation::NegativePrincipal(n));
    }
    if l < 0 {
        violations.push(Violation::NegativeAngular(l));
    }
    if (n - l).rem_euclid(2) != 0 {
        violations.push(Violation::ParityOdd { n, l });
    } else {
        let degree = (n - l) / 2 - params.oscillator_shift as i64;
        if degree < 0 {
            violations.push(Violation::NegativeTargetDegree(degree));
        }
    }
    if violations.is_empty() {
        let target = AnharmonicModel::new(d as u32).and_then(|m| {
            m.with_anharmonicity(l as u32, params.anharmonicity, params.oscillator_shift)
        });
        let check = target.and_then(|m| m.modified_numbers(n as u32, l as u32));
        if let Err(e) = check {
            violations.push(Violation::Target(inner_message(e)));
        }
    }
    if !violations.is_empty() {
        return Err(fail(violations));
    }
    Ok(MapSpec {
        lambda: lambda_h,
        defect: params.defect,
        anharmonicity: params.anharmonicity,
        coulomb_shift: params.coulomb_shift,
        oscillator_shift: params.oscillator_shift,
        source,
        target: OscillatorLabel {
            dimension: d as u32,
            n: n as u32,
            l: l as u32,
        },
    })
}

fn inner_message(e: Error) -> String {
    match e {
        Error::InvalidState(m) | Error::Domain(m) => m,
        other => other.to_string(),
    }
}

/// Outcome of checking `v((n*+γ)Y²) / (Y^{1/2} V(Y))` for constancy.
#[derive(Debug, Clone, PartialEq)]
pub struct MapVerification {
    /// `(Y, ratio)` at every retained grid point.
    pub ratios: Vec<(f64, f64)>,
    /// Grid points dropped near target nodes or where the target is negligible.
    pub excluded: Vec<f64>,
    /// `(max - min) / |mean|` over the retained ratios.
    pub constancy_defect: f64,
    /// Measured proportionality constant (mean ratio).
    pub k: f64,
}

impl MapVerification {
    pub fn passed(&self) -> bool {
        self.constancy_defect <= CONSTANCY_TOL
    }
}

/// 64 logarithmically spaced points on `[0.2, 3.0]`.
pub fn default_grid() -> Vec<f64> {
    log_grid(0.2, 3.0, 64)
}

pub fn verify_map_identity(spec: &MapSpec, grid: &[f64]) -> Result<MapVerification> {
    if let Some(y) = grid.iter().find(|y| !(**y > 0.0 && y.is_finite())) {
        return Err(Error::Domain(format!("grid points must be positive, got {y}")));
    }
    let scale = spec.coulomb_scale();
    let (source, target, node_poly): (Box<dyn RadialFunction>, Box<dyn RadialFunction>, _) =
        if spec.is_exact() {
            let s = CoulombState::new(spec.source.dimension, spec.source.n, spec.source.l)?;
            let t = OscillatorState::new(spec.target.dimension, spec.target.n, spec.target.l)?;
            let poly = SonineLaguerre::new(t.laguerre_degree(), t.form().poly.order())?;
            (Box::new(s), Box::new(t), poly)
        } else {
            let s = DefectState::new(&spec.defect_model()?, spec.source.n, spec.source.l)?;
            let t = AnharmonicState::new(&spec.anharmonic_model()?, spec.target.n, spec.target.l)?;
            let poly = SonineLaguerre::new(t.laguerre_degree(), t.form().poly.order())?;
            (Box::new(s), Box::new(t), poly)
        };

    let nodes: Vec<f64> = node_poly.zeros().into_iter().map(f64::sqrt).collect();
    let peak = grid.iter().map(|&y| target.value(y).abs()).fold(0.0, f64::max);

    let mut ratios = Vec::with_capacity(grid.len());
    let mut excluded = Vec::new();
    for &y in grid {
        let v = target.value(y);
        let near_node = nodes.iter().any(|z| (y - z).abs() < NODE_EXCLUSION);
        if near_node || v.abs() <= AMPLITUDE_FLOOR * peak {
            excluded.push(y);
            continue;
        }
        ratios.push((y, source.value(scale * y * y) / (y.sqrt() * v)));
    }
    if ratios.is_empty() {
        return Err(Error::Verification(
            "every grid point was excluded; no ratio to test".into(),
        ));
    }
    let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for &(_, r) in &ratios {
        lo = lo.min(r);
        hi = hi.max(r);
        sum += r;
    }
    let mean = sum / ratios.len() as f64;
    Ok(MapVerification {
        ratios,
        excluded,
        constancy_defect: (hi - lo) / mean.abs(),
        k: mean,
    })
}

/// Every admissible map over the given `λ` values and modes, sorted by target.
pub fn enumerate_admissible_targets(
    source: CoulombLabel,
    lambdas: &[f64],
    modes: &[MapMode],
) -> Result<Vec<MapSpec>> {
    if lambdas.is_empty() || modes.is_empty() {
        return Err(Error::Domain("empty λ range or mode list".into()));
    }
    let mut out: Vec<MapSpec> = modes
        .iter()
        .flat_map(|mode| {
            lambdas
                .iter()
                .filter_map(move |&lambda| solve_map_parameters(source, lambda, *mode).ok())
        })
        .collect();
    out.sort_by(|a, b| {
        a.target
            .cmp(&b.target)
            .then(a.lambda.cmp(&b.lambda))
            .then(a.anharmonicity.total_cmp(&b.anharmonicity))
            .then(a.defect.total_cmp(&b.defect))
    });
    Ok(out)
}

/// Half-integer steps from `lo` to `hi` inclusive; integer steps when
/// `half_steps` is false.
pub fn lambda_range(lo: f64, hi: f64, half_steps: bool) -> Vec<f64> {
    let start = (2.0 * lo).ceil() as i64;
    let end = (2.0 * hi).floor() as i64;
    (start..=end)
        .filter(|t| half_steps || t % 2 == 0)
        .map(|t| t as f64 / 2.0)
        .collect()
}

/// `E = (2N+2Γ+3)/2` of the target, with the anharmonic shift.
pub fn target_energy(spec: &MapSpec) -> f64 {
    let n_star = spec.target.n as f64 - 2.0 * spec.anharmonicity;
    (2.0 * n_star + 2.0 * oscillator::gamma_shift(spec.target.dimension) + 3.0) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src(d: u32, n: u32, l: u32) -> CoulombLabel {
        CoulombLabel { dimension: d, n, l }
    }

    fn broken(defect: f64, anharmonicity: f64) -> MapMode {
        MapMode::Broken(BrokenParameters {
            defect,
            anharmonicity,
            ..Default::default()
        })
    }

    #[test]
    fn hydrogen_to_two_dimensional_oscillator() {
        for n in 1..=6 {
            for l in 0..n {
                let spec = solve_map_parameters(src(3, n, l), 1.0, MapMode::Exact).unwrap();
                assert_eq!(
                    spec.target,
                    OscillatorLabel {
                        dimension: 2,
                        n: 2 * n - 1,
                        l: 2 * l + 1
                    }
                );
            }
        }
    }

    #[test]
    fn lambda_zero_gives_four_dimensions() {
        let spec = solve_map_parameters(src(3, 1, 0), 0.0, MapMode::Exact).unwrap();
        assert_eq!(spec.target, OscillatorLabel { dimension: 4, n: 0, l: 0 });
    }

    #[test]
    fn quarter_integer_anharmonicity_gives_odd_dimension() {
        let spec = solve_map_parameters(src(3, 1, 0), 0.5, broken(0.0, 0.25)).unwrap();
        assert_eq!(spec.target, OscillatorLabel { dimension: 3, n: 1, l: 1 });
    }

    #[test]
    fn exact_mode_rejects_half_integer() {
        let r = solve_map_parameters(src(3, 2, 0), 0.5, MapMode::Exact).unwrap_err();
        assert_eq!(r.violations, vec![Violation::LambdaNotInteger]);
        assert_eq!(r.to_string(), "λ not integer in exact mode");
        let r = solve_map_parameters(src(3, 2, 0), 0.3, MapMode::Exact).unwrap_err();
        assert!(matches!(r.violations[0], Violation::LambdaNotHalfInteger(_)));
    }

    #[test]
    fn dimension_floor() {
        let r = solve_map_parameters(src(3, 1, 0), 2.0, MapMode::Exact).unwrap_err();
        assert!(r.violations.contains(&Violation::DimensionTooSmall(0)));
        assert!(r.to_string().contains("D < 2"));
    }

    #[test]
    fn broken_integrality() {
        let s = src(3, 2, 0);
        assert!(solve_map_parameters(s, 1.0, broken(0.3, 0.3)).is_ok());
        assert!(solve_map_parameters(s, 1.0, broken(0.3, 0.8)).is_ok());
        let r = solve_map_parameters(s, 1.0, broken(0.3, 0.55)).unwrap_err();
        assert!(matches!(r.violations[0], Violation::ShiftNotInteger(_)));
    }

    #[test]
    fn enumeration_example() {
        let specs = enumerate_admissible_targets(src(3, 1, 0), &[0.0, 1.0, 2.0], &[MapMode::Exact]).unwrap();
        let targets: Vec<_> = specs.iter().map(|s| (s.lambda.twice() / 2, s.target)).collect();
        assert_eq!(
            targets,
            vec![
                (1, OscillatorLabel { dimension: 2, n: 1, l: 1 }),
                (0, OscillatorLabel { dimension: 4, n: 0, l: 0 }),
            ]
        );
        assert!(enumerate_admissible_targets(src(3, 1, 0), &[], &[MapMode::Exact]).is_err());
        let none = enumerate_admissible_targets(src(3, 1, 0), &[0.5, 1.5], &[MapMode::Exact]).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn broken_with_zero_parameters_equals_exact() {
        for d in 2..=6 {
            for n in 1..=4 {
                for l in 0..n {
                    for lambda in [-2.0, -1.0, 0.0, 1.0, 2.0] {
                        let a = solve_map_parameters(src(d, n, l), lambda, MapMode::Exact);
                        let b = solve_map_parameters(src(d, n, l), lambda, broken(0.0, 0.0));
                        assert_eq!(a.is_ok(), b.is_ok());
                        if let (Ok(a), Ok(b)) = (a, b) {
                            assert_eq!(a, b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ground_state_identity() {
        let spec = solve_map_parameters(src(3, 1, 0), 1.0, MapMode::Exact).unwrap();
        let v = verify_map_identity(&spec, &log_grid(0.3, 2.5, 50)).unwrap();
        assert!(v.constancy_defect <= 1e-10, "{:e}", v.constancy_defect);
        assert!(v.k > 0.0);
    }

    #[test]
    fn excited_state_identity_skips_nodes() {
        let spec = solve_map_parameters(src(3, 3, 0), 1.0, MapMode::Exact).unwrap();
        let t = OscillatorState::new(2, 5, 1).unwrap();
        let nodes: Vec<f64> = SonineLaguerre::new(2, t.form().poly.order())
            .unwrap()
            .zeros()
            .into_iter()
            .map(f64::sqrt)
            .collect();
        let mut grid = default_grid();
        grid.extend(nodes.iter().copied());
        let v = verify_map_identity(&spec, &grid).unwrap();
        assert_eq!(v.excluded.len(), 2);
        assert!(v.passed(), "{:e}", v.constancy_defect);
    }

    #[test]
    fn all_points_excluded_is_an_error() {
        let spec = solve_map_parameters(src(3, 2, 0), 1.0, MapMode::Exact).unwrap();
        let node = SonineLaguerre::new(1, 1.0).unwrap().zeros()[0].sqrt();
        assert!(matches!(
            verify_map_identity(&spec, &[node]),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn target_energy_tracks_coulomb_scale() {
        for d in 2..=7 {
            for n in 1..=5 {
                for l in 0..n {
                    for lambda in -2..=2 {
                        let Ok(spec) = solve_map_parameters(src(d, n, l), lambda as f64, MapMode::Exact)
                        else {
                            continue;
                        };
                        let rhs = 8 * n as i64 + 4 * d as i64 - 12;
                        assert_eq!(spec.target_four_energy_unshifted(), rhs);
                    }
                }
            }
        }
        let spec = solve_map_parameters(src(3, 3, 0), 1.0, broken(0.3, 0.8)).unwrap();
        assert!((target_energy(&spec) - 2.0 * spec.coulomb_scale()).abs() < 1e-12);
    }

    #[test]
    fn half_integer_display_and_parse() {
        assert_eq!(HalfInteger::from_f64(1.5).unwrap().to_string(), "3/2");
        assert_eq!(HalfInteger::from_f64(-2.0).unwrap().to_string(), "-2");
        assert!(HalfInteger::from_f64(0.3).is_none());
    }

    #[test]
    fn lambda_ranges() {
        assert_eq!(lambda_range(0.0, 2.0, false), vec![0.0, 1.0, 2.0]);
        assert_eq!(lambda_range(-0.5, 1.0, true), vec![-0.5, 0.0, 0.5, 1.0]);
    }
}
