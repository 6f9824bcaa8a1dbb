//! Bound states of the d-dimensional Coulomb radial problem in atomic units.
//!
//! In the radial variable `y = 2r` the states are
//! `v(y) = c · y^{l+γ+1} · exp(-y / 2(n+γ)) · L_{n-l-1}^{(2l+2γ+1)}(y/(n+γ))`
//! with `γ = (d-3)/2` and energy `E = -1/(2(n+γ)²)`. They solve
//! `[-d²/dy² - 1/y + (l+γ)(l+γ+1)/y²] v = (E/2) v`.

use crate::error::{Error, Result};
use crate::radial::{Argument, Jet, LaguerreForm, Normalization, RadialFunction};
use crate::specfun::{ln_gamma, SonineLaguerre};
use crate::susy::{build_susy_pair, RadialOperator, Superpotential, SusyPair};

/// `γ = (d-3)/2`.
pub fn gamma_shift(dimension: u32) -> f64 {
    (dimension as f64 - 3.0) / 2.0
}

fn check_dimension(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidState(format!(
            "Coulomb dimension must be >= 2, got d = {d}"
        )));
    }
    Ok(())
}

/// `E_dn = -1/(2(n+γ)²)` in hartree.
pub fn coulomb_energy(dimension: u32, principal: u32) -> Result<f64> {
    check_dimension(dimension)?;
    if principal < 1 {
        return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
    }
    let nu = principal as f64 + gamma_shift(dimension);
    Ok(-1.0 / (2.0 * nu * nu))
}

/// The radial operator in `y` carries `E/2` as its eigenvalue.
pub fn operator_eigenvalue(energy: f64) -> f64 {
    energy / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombState {
    dimension: u32,
    principal: u32,
    angular: u32,
    gamma_shift: f64,
    form: LaguerreForm,
}

impl CoulombState {
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
        if principal < 1 {
            return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
        }
        if angular >= principal {
            return Err(Error::InvalidState(format!(
                "angular quantum number must satisfy l <= n-1, got n = {principal}, l = {angular}"
            )));
        }
        let gamma = gamma_shift(dimension);
        let mu = angular as f64 + gamma;
        let nu = principal as f64 + gamma;
        let degree = (principal - angular - 1) as usize;
        let order = 2.0 * mu + 1.0;
        let mut form = LaguerreForm {
            norm: 1.0,
            power: mu + 1.0,
            decay: 1.0 / (2.0 * nu),
            argument: Argument::Linear,
            scale: 1.0 / nu,
            poly: SonineLaguerre::new(degree, order)?,
        };
        form.norm = match normalization {
            Normalization::Quadrature(q) => form.numeric_norm(&q)?,
            Normalization::ClosedForm => closed_form_norm(nu, degree, order),
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
        let nu = self.principal as f64 + self.gamma_shift;
        -1.0 / (2.0 * nu * nu)
    }

    pub fn operator_eigenvalue(&self) -> f64 {
        operator_eigenvalue(self.energy())
    }

    pub fn radial_operator(&self) -> RadialOperator {
        RadialOperator::coulomb(self.angular as f64 + self.gamma_shift)
    }

    /// Closed-form normalization constant, for cross-checks.
    pub fn closed_form_normalization(&self) -> f64 {
        closed_form_norm(
            self.principal as f64 + self.gamma_shift,
            self.laguerre_degree(),
            self.form.poly.order(),
        )
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

impl RadialFunction for CoulombState {
    fn jet(&self, x: f64) -> Jet {
        self.form.jet(x)
    }

    fn value(&self, x: f64) -> f64 {
        self.form.value(x)
    }
}

/// `∫ y^{α+1} e^{-y/ν} [L_k^(α)(y/ν)]² dy = ν^{α+2} Γ(k+α+1)/k! · (2k+α+1)`.
pub(crate) fn closed_form_norm(nu: f64, degree: usize, order: f64) -> f64 {
    let k = degree as f64;
    let ln_n2 = (order + 2.0) * nu.ln() + ln_gamma(k + order + 1.0) - ln_gamma(k + 1.0)
        + (2.0 * k + order + 1.0).ln();
    (-0.5 * ln_n2).exp()
}

pub fn eval_coulomb_state(s: &CoulombState, y: f64) -> Result<f64> {
    s.eval(y)
}

/// Hydrogen `R_nl(r)`, normalized so `∫ R² r² dr = 1`.
pub fn eval_hydrogen_r(n: u32, l: u32, r: f64) -> Result<f64> {
    if n < 1 || l >= n {
        return Err(Error::InvalidState(format!(
            "hydrogen state needs n >= 1 and 0 <= l <= n-1, got n = {n}, l = {l}"
        )));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let nf = n as f64;
    let lf = l as f64;
    let prefactor = 2.0 / (nf * nf) * (0.5 * (ln_gamma(nf - lf) - ln_gamma(nf + lf + 1.0))).exp();
    let rho = 2.0 * r / nf;
    let poly = SonineLaguerre::new((n - l - 1) as usize, 2.0 * lf + 1.0)?;
    Ok(prefactor * rho.powi(l as i32) * (-r / nf).exp() * poly.eval(rho)?)
}

/// The partner pair at fixed `(d, l)`; its bosonic sector is the radial
/// operator shifted by `1/(4(l+γ+1)²)`.
pub fn susy_pair(dimension: u32, angular: u32) -> Result<SusyPair> {
    check_dimension(dimension)?;
    Ok(build_susy_pair(Superpotential::coulomb(
        angular as f64 + gamma_shift(dimension),
    )?))
}
