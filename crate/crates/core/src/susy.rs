//! sqm(2) partner Hamiltonians built from a superpotential.
//!
//! With `W = U'/2` the partners are `h± = -d²/dx² + W² ∓ W'`, and the real
//! first-order operator `A = d/dx + W` factorizes them as `h+ = A†A`,
//! `h- = AA†`. The `-i` phase of the supercharge carries no observable
//! content and is dropped throughout.

use crate::error::{Error, Result};
use crate::radial::{Jet, RadialFunction};

/// Power of the non-logarithmic term in the superpotential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerTerm {
    /// `a·x`: Coulomb-type partners.
    Linear,
    /// `a·x²`: oscillator-type partners.
    Quadratic,
}

impl PowerTerm {
    fn exponent(self) -> f64 {
        match self {
            PowerTerm::Linear => 1.0,
            PowerTerm::Quadratic => 2.0,
        }
    }
}

/// `U(x) = a·x^p + b·ln x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superpotential {
    linear_coeff: f64,
    log_coeff: f64,
    power: PowerTerm,
}

impl Superpotential {
    pub fn new(linear_coeff: f64, log_coeff: f64, power: PowerTerm) -> Result<Self> {
        if !(linear_coeff > 0.0 && linear_coeff.is_finite()) {
            return Err(Error::InvalidSuperpotential(format!(
                "power-term coefficient must be positive and finite, got {linear_coeff}"
            )));
        }
        if !log_coeff.is_finite() {
            return Err(Error::InvalidSuperpotential(
                "logarithmic coefficient must be finite".into(),
            ));
        }
        Ok(Self {
            linear_coeff,
            log_coeff,
            power,
        })
    }

    /// `y/(μ+1) - 2(μ+1) ln y` for centrifugal index `μ = l + γ`.
    pub fn coulomb(mu: f64) -> Result<Self> {
        if !(mu > -1.0) {
            return Err(Error::InvalidSuperpotential(format!(
                "Coulomb superpotential needs l+γ > -1, got {mu}"
            )));
        }
        Self::new(1.0 / (mu + 1.0), -2.0 * (mu + 1.0), PowerTerm::Linear)
    }

    /// `Y² - 2(μ+1) ln Y` for centrifugal index `μ = L + Γ`.
    pub fn oscillator(mu: f64) -> Result<Self> {
        if !(mu > -1.0) {
            return Err(Error::InvalidSuperpotential(format!(
                "oscillator superpotential needs L+Γ > -1, got {mu}"
            )));
        }
        Self::new(1.0, -2.0 * (mu + 1.0), PowerTerm::Quadratic)
    }

    pub fn linear_coeff(&self) -> f64 {
        self.linear_coeff
    }

    pub fn log_coeff(&self) -> f64 {
        self.log_coeff
    }

    pub fn power(&self) -> PowerTerm {
        self.power
    }

    pub fn value(&self, x: f64) -> f64 {
        self.linear_coeff * x.powf(self.power.exponent()) + self.log_coeff * x.ln()
    }

    /// `U'(x)`
    pub fn first(&self, x: f64) -> f64 {
        let p = self.power.exponent();
        self.linear_coeff * p * x.powf(p - 1.0) + self.log_coeff / x
    }

    /// `U''(x)`
    pub fn second(&self, x: f64) -> f64 {
        let p = self.power.exponent();
        self.linear_coeff * p * (p - 1.0) * x.powf(p - 2.0) - self.log_coeff / (x * x)
    }

    /// `U'''(x)`
    pub fn third(&self, x: f64) -> f64 {
        let p = self.power.exponent();
        self.linear_coeff * p * (p - 1.0) * (p - 2.0) * x.powf(p - 3.0)
            + 2.0 * self.log_coeff / (x * x * x)
    }
}

/// `-d²/dx² + V(x) - ε` with
/// `V(x) = -c/x + w·x² + μ(μ+1)/x² + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialOperator {
    pub coulomb_strength: f64,
    pub oscillator_strength: f64,
    /// `μ` in the centrifugal coefficient `μ(μ+1)`.
    pub centrifugal_index: f64,
    pub constant_shift: f64,
}

impl RadialOperator {
    pub fn new(
        coulomb_strength: f64,
        oscillator_strength: f64,
        centrifugal_index: f64,
        constant_shift: f64,
    ) -> Result<Self> {
        let op = Self {
            coulomb_strength,
            oscillator_strength,
            centrifugal_index,
            constant_shift,
        };
        if (coulomb_strength != 0.0) == (oscillator_strength != 0.0) {
            return Err(Error::Domain(
                "exactly one of the Coulomb and oscillator strengths must be nonzero".into(),
            ));
        }
        if ![coulomb_strength, oscillator_strength, centrifugal_index, constant_shift]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::Domain("operator coefficients must be finite".into()));
        }
        Ok(op)
    }

    /// `-d²/dy² - 1/y + μ(μ+1)/y²`; eigenvalue `E/2`.
    pub fn coulomb(mu: f64) -> Self {
        Self {
            coulomb_strength: 1.0,
            oscillator_strength: 0.0,
            centrifugal_index: mu,
            constant_shift: 0.0,
        }
    }

    /// `-d²/dY² + Y² + μ(μ+1)/Y²`; eigenvalue `2E`.
    pub fn oscillator(mu: f64) -> Self {
        Self {
            coulomb_strength: 0.0,
            oscillator_strength: 1.0,
            centrifugal_index: mu,
            constant_shift: 0.0,
        }
    }

    pub fn centrifugal_coeff(&self) -> f64 {
        self.centrifugal_index * (self.centrifugal_index + 1.0)
    }

    pub fn potential(&self, x: f64) -> f64 {
        -self.coulomb_strength / x
            + self.oscillator_strength * x * x
            + self.centrifugal_coeff() / (x * x)
            + self.constant_shift
    }

    /// The lowest `count` bound-state eigenvalues, from the closed-form
    /// Coulomb or oscillator spectrum of the regular solutions.
    pub fn analytic_spectrum(&self, count: usize) -> Result<Vec<f64>> {
        let mu = self.centrifugal_index;
        if !(mu > -1.0) {
            return Err(Error::Domain(format!(
                "no regular bound states for centrifugal index {mu}"
            )));
        }
        let c = self.coulomb_strength;
        let w = self.oscillator_strength;
        match (c != 0.0, w != 0.0) {
            (true, false) if c > 0.0 => Ok((0..count)
                .map(|k| {
                    let nu = k as f64 + mu + 1.0;
                    self.constant_shift - c * c / (4.0 * nu * nu)
                })
                .collect()),
            (false, true) if w > 0.0 => Ok((0..count)
                .map(|k| self.constant_shift + w.sqrt() * (4.0 * k as f64 + 2.0 * mu + 3.0))
                .collect()),
            _ => Err(Error::Domain(
                "closed-form spectrum needs an attractive Coulomb or confining oscillator term"
                    .into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Bosonic,
    Fermionic,
}

/// The partner pair `(h+, h-)` generated by a superpotential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyPair {
    pub superpotential: Superpotential,
    /// Constant added to the bare radial operator so the bosonic ground state sits at zero.
    pub energy_zero_offset: f64,
}

pub fn build_susy_pair(u: Superpotential) -> SusyPair {
    let bosonic = expand(&u, Sector::Bosonic);
    SusyPair {
        superpotential: u,
        energy_zero_offset: bosonic.constant_shift,
    }
}

/// Closed-form expansion of `(U'/2)² ∓ U''/2` into operator coefficients.
fn expand(u: &Superpotential, sector: Sector) -> RadialOperator {
    let a = u.linear_coeff;
    let b = u.log_coeff;
    let sign = match sector {
        Sector::Bosonic => 1.0,
        Sector::Fermionic => -1.0,
    };
    // μ(μ+1) = b²/4 ± b/2
    let mu = match sector {
        Sector::Bosonic => -b / 2.0 - 1.0,
        Sector::Fermionic => -b / 2.0,
    };
    match u.power {
        PowerTerm::Linear => RadialOperator {
            coulomb_strength: -a * b / 2.0,
            oscillator_strength: 0.0,
            centrifugal_index: mu,
            constant_shift: a * a / 4.0,
        },
        PowerTerm::Quadratic => RadialOperator {
            coulomb_strength: 0.0,
            oscillator_strength: a * a,
            centrifugal_index: mu,
            constant_shift: a * b - sign * a,
        },
    }
}

impl SusyPair {
    /// `V+ = (U'/2)² - U''/2`, evaluated directly from the superpotential.
    pub fn v_plus(&self, x: f64) -> f64 {
        let w = 0.5 * self.superpotential.first(x);
        w * w - 0.5 * self.superpotential.second(x)
    }

    /// `V- = (U'/2)² + U''/2`.
    pub fn v_minus(&self, x: f64) -> f64 {
        let w = 0.5 * self.superpotential.first(x);
        w * w + 0.5 * self.superpotential.second(x)
    }

    /// `V- - V+ = U''`.
    pub fn difference(&self, x: f64) -> f64 {
        self.superpotential.second(x)
    }

    pub fn operator(&self, sector: Sector) -> RadialOperator {
        expand(&self.superpotential, sector)
    }

    pub fn bosonic_spectrum(&self, count: usize) -> Result<Vec<f64>> {
        self.operator(Sector::Bosonic).analytic_spectrum(count)
    }

    pub fn fermionic_spectrum(&self, count: usize) -> Result<Vec<f64>> {
        self.operator(Sector::Fermionic).analytic_spectrum(count)
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    match grid.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        Some(x) => Err(Error::Domain(format!(
            "grid points must be finite and positive, got {x}"
        ))),
        None => Ok(()),
    }
}

/// `(-ψ'' + Vψ)(x) - εψ(x)` at each grid point, or the bare operator action
/// when `eigenvalue` is `None`.
pub fn apply_operator(
    op: &RadialOperator,
    psi: &impl RadialFunction,
    grid: &[f64],
    eigenvalue: Option<f64>,
) -> Result<Vec<f64>> {
    check_grid(grid)?;
    let eps = eigenvalue.unwrap_or(0.0);
    Ok(grid
        .iter()
        .map(|&x| {
            let j = psi.jet(x);
            -j.second + (op.potential(x) - eps) * j.value
        })
        .collect())
}

/// Largest residual divided by the largest `|ψ|` on the grid.
pub fn relative_residual(
    op: &RadialOperator,
    psi: &impl RadialFunction,
    grid: &[f64],
    eigenvalue: f64,
) -> Result<f64> {
    let res = apply_operator(op, psi, grid, Some(eigenvalue))?;
    let amp = grid.iter().map(|&x| psi.value(x).abs()).fold(0.0, f64::max);
    let worst = res.iter().map(|r| r.abs()).fold(0.0, f64::max);
    if amp == 0.0 {
        return Ok(worst);
    }
    Ok(worst / amp)
}

/// `(ψ' + (U'/2)ψ)(x)` at each grid point.
pub fn apply_supercharge(
    u: &Superpotential,
    psi: &impl RadialFunction,
    grid: &[f64],
) -> Result<Vec<f64>> {
    check_grid(grid)?;
    Ok(grid
        .iter()
        .map(|&x| {
            let j = psi.jet(x);
            j.first + 0.5 * u.first(x) * j.value
        })
        .collect())
}

/// `Aψ` as a radial function; needs the third derivative of `ψ`.
/// The resulting jet carries two derivatives.
#[derive(Debug, Clone, Copy)]
pub struct SuperchargeImage<'a, F> {
    pub superpotential: Superpotential,
    pub psi: &'a F,
}

impl<F: RadialFunction> RadialFunction for SuperchargeImage<'_, F> {
    fn jet(&self, x: f64) -> Jet {
        let j = self.psi.jet(x);
        let u = &self.superpotential;
        let w = 0.5 * u.first(x);
        let w1 = 0.5 * u.second(x);
        let w2 = 0.5 * u.third(x);
        Jet {
            value: j.first + w * j.value,
            first: j.second + w1 * j.value + w * j.first,
            second: j.third + w2 * j.value + 2.0 * w1 * j.first + w * j.second,
            third: f64::NAN,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::log_grid;

    #[test]
    fn hydrogen_s_wave_potentials() {
        let pair = build_susy_pair(Superpotential::coulomb(0.0).unwrap());
        for &y in &[0.05, 0.7, 3.0, 50.0] {
            assert!((pair.v_plus(y) - (0.25 - 1.0 / y)).abs() < 1e-12);
            assert!((pair.v_minus(y) - (0.25 - 1.0 / y + 2.0 / (y * y))).abs() < 1e-12 * (1.0 / (y * y)).max(1.0));
        }
    }

    #[test]
    fn oscillator_ground_potential() {
        let pair = build_susy_pair(Superpotential::oscillator(0.0).unwrap());
        for &y in &[0.05, 1.0, 4.0] {
            let expect = y * y - 3.0;
            assert!((pair.v_plus(y) - expect).abs() < 1e-12 * (1.0 + expect.abs()));
        }
        assert_eq!(pair.energy_zero_offset, -3.0);
    }

    #[test]
    fn expansion_matches_direct_evaluation() {
        for u in [
            Superpotential::coulomb(1.5).unwrap(),
            Superpotential::oscillator(-0.5).unwrap(),
            Superpotential::new(0.7, -3.1, PowerTerm::Quadratic).unwrap(),
        ] {
            let pair = build_susy_pair(u);
            for &x in &log_grid(0.05, 50.0, 40) {
                let vp = pair.operator(Sector::Bosonic).potential(x);
                let vm = pair.operator(Sector::Fermionic).potential(x);
                let scale = 1.0 + pair.v_plus(x).abs() + pair.v_minus(x).abs();
                assert!((vp - pair.v_plus(x)).abs() < 1e-13 * scale);
                assert!((vm - pair.v_minus(x)).abs() < 1e-13 * scale);
            }
        }
    }

    #[test]
    fn invalid_superpotential() {
        assert!(Superpotential::new(0.0, -1.0, PowerTerm::Linear).is_err());
        assert!(Superpotential::new(-1.0, -1.0, PowerTerm::Quadratic).is_err());
        assert!(Superpotential::new(1.0, f64::NAN, PowerTerm::Linear).is_err());
    }

    #[test]
    fn operator_requires_single_family() {
        assert!(RadialOperator::new(1.0, 1.0, 0.0, 0.0).is_err());
        assert!(RadialOperator::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(RadialOperator::new(1.0, 0.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn zero_function_gives_zero_residual() {
        let zero = |_x: f64| Jet::ZERO;
        let op = RadialOperator::coulomb(0.0);
        let r = apply_operator(&op, &zero, &[0.1, 1.0, 10.0], Some(-0.25)).unwrap();
        assert!(r.iter().all(|v| *v == 0.0));
        let u = Superpotential::coulomb(0.0).unwrap();
        let a = apply_supercharge(&u, &zero, &[0.1, 1.0]).unwrap();
        assert!(a.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn grid_must_be_positive() {
        let zero = |_x: f64| Jet::ZERO;
        let op = RadialOperator::coulomb(0.0);
        assert!(apply_operator(&op, &zero, &[1.0, 0.0], None).is_err());
        let u = Superpotential::coulomb(0.0).unwrap();
        assert!(apply_supercharge(&u, &zero, &[-1.0]).is_err());
    }

    #[test]
    fn partner_spectra_interlace() {
        for u in [
            Superpotential::coulomb(0.0).unwrap(),
            Superpotential::coulomb(2.5).unwrap(),
            Superpotential::oscillator(-0.5).unwrap(),
            Superpotential::oscillator(3.0).unwrap(),
        ] {
            let pair = build_susy_pair(u);
            let plus = pair.bosonic_spectrum(12).unwrap();
            let minus = pair.fermionic_spectrum(11).unwrap();
            assert!(plus[0].abs() < 1e-15);
            for k in 0..11 {
                assert!((minus[k] - plus[k + 1]).abs() <= 1e-14 * plus[k + 1].abs().max(1.0));
            }
        }
    }
}
