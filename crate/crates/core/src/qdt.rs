//! Supersymmetry-breaking models with analytic eigenfunctions.
//!
//! On the Coulomb side a quantum defect `δ` and an integer shift `i` replace
//! `n, l` by `n* = n - δ`, `l* = l + i - δ`; on the oscillator side an
//! anharmonicity `Δ` and integer shift `I` give `N* = N - 2Δ`,
//! `L* = L + 2I - 2Δ`. The breaking potentials below turn the exact radial
//! operators into ones whose eigenfunctions keep the Sonine-Laguerre form.

use std::collections::BTreeMap;

use crate::coulomb;
use crate::error::{Error, Result};
use crate::oscillator;
use crate::radial::{Argument, Jet, LaguerreForm, Normalization, RadialFunction};
use crate::specfun::SonineLaguerre;
use crate::susy::RadialOperator;

/// Per-`l` quantum defects and supersymmetric shifts for one Coulomb dimension.
///
/// Lookups fall back from `δ(n, l)` to the asymptotic `δ(l)` and then to zero;
/// a missing shift is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectModel {
    dimension: u32,
    asymptotic: BTreeMap<u32, f64>,
    specific: BTreeMap<(u32, u32), f64>,
    shifts: BTreeMap<u32, u32>,
}

fn check_defect(delta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidState(format!(
            "quantum defect must lie in [0, 1), got {delta}"
        )));
    }
    Ok(())
}

impl DefectModel {
    pub fn new(dimension: u32) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidState(format!(
                "Coulomb dimension must be >= 2, got d = {dimension}"
            )));
        }
        Ok(Self {
            dimension,
            asymptotic: BTreeMap::new(),
            specific: BTreeMap::new(),
            shifts: BTreeMap::new(),
        })
    }

    /// Asymptotic defect `δ(l)` and shift `i(l)`.
    pub fn with_defect(mut self, l: u32, delta: f64, shift: u32) -> Result<Self> {
        check_defect(delta)?;
        self.asymptotic.insert(l, delta);
        self.shifts.insert(l, shift);
        Ok(self)
    }

    /// An `n`-dependent override `δ(n, l)`.
    pub fn with_n_defect(mut self, n: u32, l: u32, delta: f64) -> Result<Self> {
        check_defect(delta)?;
        self.specific.insert((n, l), delta);
        Ok(self)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn gamma_shift(&self) -> f64 {
        coulomb::gamma_shift(self.dimension)
    }

    pub fn defect(&self, n: u32, l: u32) -> f64 {
        self.specific
            .get(&(n, l))
            .or_else(|| self.asymptotic.get(&l))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn shift(&self, l: u32) -> u32 {
        self.shifts.get(&l).copied().unwrap_or(0)
    }

    /// True when no entry depends on `n`.
    pub fn is_asymptotic(&self) -> bool {
        self.specific.is_empty()
    }

    /// `(n*, l*)` after checking admissibility.
    pub fn modified_numbers(&self, n: u32, l: u32) -> Result<(f64, f64)> {
        let delta = self.defect(n, l);
        let shift = self.shift(l);
        if n < 1 {
            return Err(Error::InvalidState("principal quantum number must be >= 1".into()));
        }
        if (n as i64) - (l as i64) - (shift as i64) - 1 < 0 {
            return Err(Error::InvalidState(format!(
                "Laguerre degree n-l-i-1 is negative for n = {n}, l = {l}, i = {shift}"
            )));
        }
        let n_star = n as f64 - delta;
        let l_star = (l + shift) as f64 - delta;
        if !(l_star + self.gamma_shift() + 1.0 > 0.0) {
            return Err(Error::InvalidState(format!(
                "l* + γ + 1 = {} must be positive for a normalizable state",
                l_star + self.gamma_shift() + 1.0
            )));
        }
        Ok((n_star, l_star))
    }
}

/// Breaking term added to the d-dimensional Coulomb operator:
/// `[(l*+γ)(l*+γ+1) - (l+γ)(l+γ+1)]/y² + [(n+γ)² - (n*+γ)²]/[4(n+γ)²(n*+γ)²]`.
pub fn breaking_potential_coulomb(model: &DefectModel, n: u32, l: u32, y: f64) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("radial coordinate must be positive, got {y}")));
    }
    let (n_star, l_star) = model.modified_numbers(n, l)?;
    let g = model.gamma_shift();
    let (ms, m) = (l_star + g, l as f64 + g);
    let (nus, nu) = (n_star + g, n as f64 + g);
    Ok((ms * (ms + 1.0) - m * (m + 1.0)) / (y * y)
        + (nu * nu - nus * nus) / (4.0 * nu * nu * nus * nus))
}

/// `E = -1/(2(n*+γ)²)`.
pub fn rydberg_energy(model: &DefectModel, n: u32, l: u32) -> Result<f64> {
    let (n_star, _) = model.modified_numbers(n, l)?;
    let nu = n_star + model.gamma_shift();
    Ok(-1.0 / (2.0 * nu * nu))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefectState {
    dimension: u32,
    principal: u32,
    angular: u32,
    defect: f64,
    shift: u32,
    n_star: f64,
    l_star: f64,
    gamma_shift: f64,
    form: LaguerreForm,
}

impl DefectState {
    pub fn new(model: &DefectModel, n: u32, l: u32) -> Result<Self> {
        Self::with_normalization(model, n, l, Normalization::default())
    }

    pub fn with_normalization(
        model: &DefectModel,
        n: u32,
        l: u32,
        normalization: Normalization,
    ) -> Result<Self> {
        let (n_star, l_star) = model.modified_numbers(n, l)?;
        let shift = model.shift(l);
        let gamma = model.gamma_shift();
        let mu = l_star + gamma;
        let nu = n_star + gamma;
        let degree = (n - l - shift - 1) as usize;
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
            Normalization::ClosedForm => coulomb::closed_form_norm(nu, degree, order),
        };
        Ok(Self {
            dimension: model.dimension(),
            principal: n,
            angular: l,
            defect: model.defect(n, l),
            shift,
            n_star,
            l_star,
            gamma_shift: gamma,
            form,
        })
    }

    pub fn base(&self) -> (u32, u32) {
        (self.principal, self.angular)
    }

    pub fn modified(&self) -> (f64, f64) {
        (self.n_star, self.l_star)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn gamma_shift(&self) -> f64 {
        self.gamma_shift
    }

    pub fn normalization(&self) -> f64 {
        self.form.norm
    }

    pub fn closed_form_normalization(&self) -> f64 {
        coulomb::closed_form_norm(
            self.n_star + self.gamma_shift,
            self.laguerre_degree(),
            self.form.poly.order(),
        )
    }

    pub fn laguerre_degree(&self) -> usize {
        self.form.poly.degree()
    }

    pub fn form(&self) -> &LaguerreForm {
        &self.form
    }

    pub fn energy(&self) -> f64 {
        let nu = self.n_star + self.gamma_shift;
        -1.0 / (2.0 * nu * nu)
    }

    pub fn operator_eigenvalue(&self) -> f64 {
        coulomb::operator_eigenvalue(self.energy())
    }

    /// The Coulomb operator with the modified centrifugal term.
    pub fn radial_operator(&self) -> RadialOperator {
        RadialOperator::coulomb(self.l_star + self.gamma_shift)
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::Domain(format!("radial coordinate must be positive, got {y}")));
        }
        Ok(self.form.value(y))
    }
}

impl RadialFunction for DefectState {
    fn jet(&self, x: f64) -> Jet {
        self.form.jet(x)
    }

    fn value(&self, x: f64) -> f64 {
        self.form.value(x)
    }
}

pub fn eval_defect_state(s: &DefectState, y: f64) -> Result<f64> {
    s.eval(y)
}

/// Per-`L` anharmonicities and even supersymmetric shifts `2I` for one
/// oscillator dimension. Same fallback rules as [`DefectModel`].
#[derive(Debug, Clone, PartialEq)]
pub struct AnharmonicModel {
    dimension: u32,
    asymptotic: BTreeMap<u32, f64>,
    specific: BTreeMap<(u32, u32), f64>,
    shifts: BTreeMap<u32, i32>,
}

fn check_anharmonicity(delta: f64) -> Result<()> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::InvalidState(format!(
            "anharmonicity must be finite and >= 0, got {delta}"
        )));
    }
    Ok(())
}

impl AnharmonicModel {
    pub fn new(dimension: u32) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidState(format!(
                "oscillator dimension must be >= 2, got D = {dimension}"
            )));
        }
        Ok(Self {
            dimension,
            asymptotic: BTreeMap::new(),
            specific: BTreeMap::new(),
            shifts: BTreeMap::new(),
        })
    }

    pub fn with_anharmonicity(mut self, l: u32, delta: f64, shift: i32) -> Result<Self> {
        check_anharmonicity(delta)?;
        self.asymptotic.insert(l, delta);
        self.shifts.insert(l, shift);
        Ok(self)
    }

    pub fn with_n_anharmonicity(mut self, n: u32, l: u32, delta: f64) -> Result<Self> {
        check_anharmonicity(delta)?;
        self.specific.insert((n, l), delta);
        Ok(self)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn gamma_shift(&self) -> f64 {
        oscillator::gamma_shift(self.dimension)
    }

    pub fn anharmonicity(&self, n: u32, l: u32) -> f64 {
        self.specific
            .get(&(n, l))
            .or_else(|| self.asymptotic.get(&l))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn shift(&self, l: u32) -> i32 {
        self.shifts.get(&l).copied().unwrap_or(0)
    }

    pub fn is_asymptotic(&self) -> bool {
        self.specific.is_empty()
    }

    /// Degree `N/2 - L/2 - I` of the Laguerre factor.
    pub fn laguerre_degree(&self, n: u32, l: u32) -> Result<usize> {
        let diff = n as i64 - l as i64;
        if diff % 2 != 0 {
            return Err(Error::InvalidState(format!(
                "parity: N - L must be even, got N = {n}, L = {l}"
            )));
        }
        let degree = diff / 2 - self.shift(l) as i64;
        if degree < 0 {
            return Err(Error::InvalidState(format!(
                "Laguerre degree N/2 - L/2 - I is negative for N = {n}, L = {l}, I = {}",
                self.shift(l)
            )));
        }
        Ok(degree as usize)
    }

    /// `(N*, L*)` after checking admissibility.
    pub fn modified_numbers(&self, n: u32, l: u32) -> Result<(f64, f64)> {
        self.laguerre_degree(n, l)?;
        let delta = self.anharmonicity(n, l);
        let n_star = n as f64 - 2.0 * delta;
        let l_star = (l as i64 + 2 * self.shift(l) as i64) as f64 - 2.0 * delta;
        if !(l_star + self.gamma_shift() + 1.0 > 0.0) {
            return Err(Error::InvalidState(format!(
                "L* + Γ + 1 = {} must be positive for a normalizable state",
                l_star + self.gamma_shift() + 1.0
            )));
        }
        Ok((n_star, l_star))
    }
}

/// Breaking term added to the D-dimensional oscillator operator:
/// `[(L*+Γ)(L*+Γ+1) - (L+Γ)(L+Γ+1)]/Y² + 2(N - N*)`.
pub fn breaking_potential_oscillator(
    model: &AnharmonicModel,
    n: u32,
    l: u32,
    y: f64,
) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("radial coordinate must be positive, got {y}")));
    }
    let (n_star, l_star) = model.modified_numbers(n, l)?;
    let g = model.gamma_shift();
    let (ms, m) = (l_star + g, l as f64 + g);
    Ok((ms * (ms + 1.0) - m * (m + 1.0)) / (y * y) + 2.0 * (n as f64 - n_star))
}

/// `E = (2N* + 2Γ + 3)/2`.
pub fn anharmonic_energy(model: &AnharmonicModel, n: u32, l: u32) -> Result<f64> {
    let (n_star, _) = model.modified_numbers(n, l)?;
    Ok((2.0 * n_star + 2.0 * model.gamma_shift() + 3.0) / 2.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnharmonicState {
    dimension: u32,
    principal: u32,
    angular: u32,
    anharmonicity: f64,
    shift: i32,
    n_star: f64,
    l_star: f64,
    gamma_shift: f64,
    form: LaguerreForm,
}

impl AnharmonicState {
    pub fn new(model: &AnharmonicModel, n: u32, l: u32) -> Result<Self> {
        Self::with_normalization(model, n, l, Normalization::default())
    }

    pub fn with_normalization(
        model: &AnharmonicModel,
        n: u32,
        l: u32,
        normalization: Normalization,
    ) -> Result<Self> {
        let (n_star, l_star) = model.modified_numbers(n, l)?;
        let degree = model.laguerre_degree(n, l)?;
        let gamma = model.gamma_shift();
        let mu = l_star + gamma;
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
            Normalization::ClosedForm => oscillator::closed_form_norm(degree, order),
        };
        Ok(Self {
            dimension: model.dimension(),
            principal: n,
            angular: l,
            anharmonicity: model.anharmonicity(n, l),
            shift: model.shift(l),
            n_star,
            l_star,
            gamma_shift: gamma,
            form,
        })
    }

    pub fn base(&self) -> (u32, u32) {
        (self.principal, self.angular)
    }

    pub fn modified(&self) -> (f64, f64) {
        (self.n_star, self.l_star)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn anharmonicity(&self) -> f64 {
        self.anharmonicity
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn gamma_shift(&self) -> f64 {
        self.gamma_shift
    }

    pub fn normalization(&self) -> f64 {
        self.form.norm
    }

    pub fn closed_form_normalization(&self) -> f64 {
        oscillator::closed_form_norm(self.laguerre_degree(), self.form.poly.order())
    }

    pub fn laguerre_degree(&self) -> usize {
        self.form.poly.degree()
    }

    pub fn form(&self) -> &LaguerreForm {
        &self.form
    }

    pub fn energy(&self) -> f64 {
        (2.0 * self.n_star + 2.0 * self.gamma_shift + 3.0) / 2.0
    }

    pub fn operator_eigenvalue(&self) -> f64 {
        oscillator::operator_eigenvalue(self.energy())
    }

    pub fn radial_operator(&self) -> RadialOperator {
        RadialOperator::oscillator(self.l_star + self.gamma_shift)
    }

    pub fn eval(&self, y: f64) -> Result<f64> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::Domain(format!("radial coordinate must be positive, got {y}")));
        }
        Ok(self.form.value(y))
    }
}

impl RadialFunction for AnharmonicState {
    fn jet(&self, x: f64) -> Jet {
        self.form.jet(x)
    }

    fn value(&self, x: f64) -> f64 {
        self.form.value(x)
    }
}

pub fn eval_anharmonic_state(s: &AnharmonicState, y: f64) -> Result<f64> {
    s.eval(y)
}
