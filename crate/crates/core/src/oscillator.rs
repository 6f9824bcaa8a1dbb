//! Radial eigenstates of the unit-frequency D-dimensional harmonic oscillator.
//!
//! `V(Y) = C · Y^{L+Γ+1} · e^{-Y²/2} · L_{(N-L)/2}^{(L+Γ+1/2)}(Y²)` with
//! `Γ = (D-3)/2` solves `[-d²/dY² + Y² + (L+Γ)(L+Γ+1)/Y²] V = 2E V`,
//! `E = (2N+2Γ+3)/2`.

use crate::error::{Error, Result};
use crate::radial::{Argument, Jet, LaguerreForm, Normalization, RadialFunction};
use crate::specfun::{ln_gamma, SonineLaguerre};
use crate::susy::{build_susy_pair, RadialOperator, Superpotential, SusyPair};

/// `Γ = (D-3)/2`.
pub fn gamma_shift(dimension: u32) -> f64 {
    (dimension as f64 - 3.0) / 2.0
}

fn check_dimension(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidState(format!(
            "oscillator dimension must be >= 2, got D = {d}"
        )));
    }
    Ok(())
}

/// `E = (2N + 2Γ + 3)/2` in units of the oscillator quantum.
pub fn oscillator_energy(dimension: u32, principal: u32) -> Result<f64> {
    check_dimension(dimension)?;
    Ok((2.0 * principal as f64 + 2.0 * gamma_shift(dimension) + 3.0) / 2.0)
}

/// The radial operator in `Y` carries `2E` as its eigenvalue.
pub fn operator_eigenvalue(energy: f64) -> f64 {
    2.0 * energy
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    dimension: u32,
    principal: u32,
    angular: u32,
    gamma_shift: f64,
    form: LaguerreForm,
}

impl OscillatorState {
    pub fn new(dimension: u32, principal: u32, angular: u32) -> Result<Self> {
        Self::with_normalization(dimension, principal, angular, Normalization::default())
    }

    pub fn with_normalization(
        dimension: u32,
        principal: u32,
        angular: u32,
        normalization: Normalization,
    ) -> Result<Self> {
        check_dimension(dimension)?;
        if angular > principal {
            return Err(Error::InvalidState(format!(
                "angular quantum number must satisfy L <= N, got N = {principal}, L = {angular}"
            )));
        }
        if !(principal - angular).is_multiple_of(2) {
            return Err(Error::InvalidState(format!(
                "parity: N - L must be even, got N = {principal}, L = {angular}"
            )));
        }
        let gamma = gamma_shift(dimension);
        let mu = angular as f64 + gamma;
        let degree = ((principal - angular) / 2) as usize;
        let order = mu + 0.5;
        let mut form = LaguerreForm {
            norm: 1.0,
            power: mu + 1.0,
            decay: 0.5,
            argument: Argument::Quadratic,
            scale: 1.0,
            poly: SonineLaguerre::new(degree, order)?,
        };
        form.norm = match normalization {
            Normalization::Quadrature(q) => form.numeric_norm(&q)?,
            Normalization::ClosedForm => closed_form_norm(degree, order),
        };
        Ok(Self {
            dimension,
            principal,
            angular,
            gamma_shift: gamma,
            form,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn principal(&self) -> u32 {
        self.principal
    }

    pub fn angular(&self) -> u32 {
        self.angular
    }

    pub fn gamma_shift(&self) -> f64 {
        self.gamma_shift
    }

    pub fn normalization(&self) -> f64 {
        self.form.norm
    }

    pub fn laguerre_degree(&self) -> usize {
        self.form.poly.degree()
    }

    pub fn energy(&self) -> f64 {
        (2.0 * self.principal as f64 + 2.0 * self.gamma_shift + 3.0) / 2.0
    }

    pub fn operator_eigenvalue(&self) -> f64 {
        operator_eigenvalue(self.energy())
    }

    pub fn radial_operator(&self) -> RadialOperator {
        RadialOperator::oscillator(self.angular as f64 + self.gamma_shift)
    }

    pub fn closed_form_normalization(&self) -> f64 {
        closed_form_norm(self.laguerre_degree(), self.form.poly.order())
    }

    pub fn form(&self) -> &LaguerreForm {
        &self.form
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::Domain(format!("radial coordinate must be positive, got {y}")));
        }
        Ok(self.form.value(y))
    }
}

impl RadialFunction for OscillatorState {
    fn jet(&self, x: f64) -> Jet {
        self.form.jet(x)
    }

    fn value(&self, x: f64) -> f64 {
        self.form.value(x)
    }
}

/// `∫ Y^{2β+1} e^{-Y²} [L_k^(β)(Y²)]² dY = Γ(k+β+1) / (2 k!)`.
pub(crate) fn closed_form_norm(degree: usize, order: f64) -> f64 {
    let k = degree as f64;
    let ln_n2 = ln_gamma(k + order + 1.0) - ln_gamma(k + 1.0) - std::f64::consts::LN_2;
    (-0.5 * ln_n2).exp()
}

pub fn eval_oscillator_state(s: &OscillatorState, y: f64) -> Result<f64> {
    s.eval(y)
}

/// The partner pair at fixed `(D, L)`; its bosonic sector is the radial
/// operator shifted by `-(2L+2Γ+3)`.
pub fn susy_pair(dimension: u32, angular: u32) -> Result<SusyPair> {
    check_dimension(dimension)?;
    Ok(build_susy_pair(Superpotential::oscillator(
        angular as f64 + gamma_shift(dimension),
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{count_sign_changes, linear_grid};
    use crate::susy::relative_residual;

    #[test]
    fn energies() {
        assert_eq!(oscillator_energy(3, 0).unwrap(), 1.5);
        assert_eq!(oscillator_energy(3, 2).unwrap(), 3.5);
        assert_eq!(oscillator_energy(2, 0).unwrap(), 1.0);
        assert!(oscillator_energy(1, 0).is_err());
        for n in 0..20 {
            assert_eq!(oscillator_energy(3, n).unwrap(), n as f64 + 1.5);
        }
    }

    #[test]
    fn parity_rejected() {
        let err = OscillatorState::new(3, 3, 0).unwrap_err();
        assert!(err.to_string().contains("parity"));
        assert!(OscillatorState::new(3, 1, 2).is_err());
    }

    #[test]
    fn ground_state_shape() {
        let s = OscillatorState::new(3, 0, 0).unwrap();
        // ∫ Y² e^{-Y²} dY = √π/4
        let c = (4.0 / std::f64::consts::PI.sqrt()).sqrt();
        assert!((s.normalization() - c).abs() < 1e-10);
        for &y in &[0.2, 1.0, 2.5] {
            assert!((s.value(y) - c * y * (-y * y / 2.0).exp()).abs() < 1e-10);
        }
    }

    #[test]
    fn single_node_of_n2() {
        let s = OscillatorState::new(3, 2, 0).unwrap();
        let node = 1.5f64.sqrt();
        assert!(s.value(node).abs() < 1e-14);
        let vals: Vec<f64> = linear_grid(1e-3, 8.0, 5000).into_iter().map(|y| s.value(y)).collect();
        assert_eq!(count_sign_changes(&vals), 1);
    }

    #[test]
    fn fractional_leading_power() {
        let s = OscillatorState::new(2, 1, 1).unwrap();
        let ratio = s.value(4e-6) / s.value(1e-6);
        assert!((ratio - 8.0).abs() < 1e-6);
    }

    #[test]
    fn residual_of_excited_state() {
        let s = OscillatorState::new(3, 1, 1).unwrap();
        let grid = linear_grid(0.05, 6.0, 200);
        let r = relative_residual(&s.radial_operator(), &s, &grid, 5.0).unwrap();
        assert!(r < 1e-8);
    }

    #[test]
    fn normalizations_agree() {
        for d in [2, 3, 4, 6] {
            for n in 0..=8 {
                for l in (n % 2..=n).step_by(2) {
                    let s = OscillatorState::new(d, n, l).unwrap();
                    let rel = (s.normalization() / s.closed_form_normalization() - 1.0).abs();
                    assert!(rel < 1e-10, "D={d} N={n} L={l}");
                }
            }
        }
    }
}
