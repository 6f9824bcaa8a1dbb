//! Evaluatable radial functions with analytic derivatives.
//!
//! Every eigenfunction in this crate has the shape
//! `c · x^p · exp(-a x^q) · L_k^(α)(b x^q)` with `q ∈ {1, 2}`; [`LaguerreForm`]
//! evaluates it together with its first three derivatives by the product rule.

use crate::error::{Error, Result};
use crate::specfun::{self, Quadrature, SonineLaguerre};

/// Value and derivatives of a function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub first: f64,
    pub second: f64,
    /// `NaN` for functions that only provide two derivatives.
    pub third: f64,
}

impl Jet {
    pub const ZERO: Jet = Jet {
        value: 0.0,
        first: 0.0,
        second: 0.0,
        third: 0.0,
    };
}

pub trait RadialFunction {
    fn jet(&self, x: f64) -> Jet;

    fn value(&self, x: f64) -> f64 {
        self.jet(x).value
    }
}

impl<F: Fn(f64) -> Jet> RadialFunction for F {
    fn jet(&self, x: f64) -> Jet {
        self(x)
    }
}

/// How a state's normalization constant is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// `∫ ψ² = 1` enforced by numerical quadrature.
    Quadrature(Quadrature),
    /// Gamma-function closed form.
    ClosedForm,
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization::Quadrature(Quadrature::default())
    }
}

/// Whether the exponential and the Laguerre argument are linear or quadratic in `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Argument {
    Linear,
    Quadratic,
}

impl Argument {
    fn exponent(self) -> f64 {
        match self {
            Argument::Linear => 1.0,
            Argument::Quadratic => 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreForm {
    pub norm: f64,
    pub power: f64,
    pub decay: f64,
    pub argument: Argument,
    pub scale: f64,
    pub poly: SonineLaguerre,
}

impl LaguerreForm {
    /// The same form with the normalization constant replaced by one.
    pub fn unit(&self) -> Self {
        Self { norm: 1.0, ..*self }
    }

    /// `∫_0^∞ ψ²` for the current constant.
    pub fn norm_squared(&self, quad: &Quadrature) -> Result<f64> {
        let r = quad.integrate(|x| {
            let v = self.value(x);
            v * v
        })?;
        Ok(r.value)
    }

    /// Numerical normalization constant making `∫ ψ² = 1`.
    pub fn numeric_norm(&self, quad: &Quadrature) -> Result<f64> {
        let n2 = self.unit().norm_squared(quad)?;
        if !(n2 > 0.0 && n2.is_finite()) {
            return Err(Error::InvalidState(format!(
                "state is not normalizable (norm² = {n2})"
            )));
        }
        Ok(1.0 / n2.sqrt())
    }

    fn envelope_log(&self, x: f64) -> f64 {
        let q = self.argument.exponent();
        self.power * x.ln() - self.decay * x.powf(q)
    }
}

impl RadialFunction for LaguerreForm {
    fn value(&self, x: f64) -> f64 {
        let u = match self.argument {
            Argument::Linear => self.scale * x,
            Argument::Quadratic => self.scale * x * x,
        };
        let p = specfun::laguerre_recurrence(self.poly.degree(), self.poly.order(), u);
        self.norm * self.envelope_log(x).exp() * p
    }

    fn jet(&self, x: f64) -> Jet {
        let k = self.poly.degree();
        let alpha = self.poly.order();
        let (p, a, b) = (self.power, self.decay, self.scale);
        let q = self.argument.exponent();

        // envelope g = x^p e^{-a x^q}; h = g'/g
        let h = p / x - a * q * x.powf(q - 1.0);
        let h1 = -p / (x * x) - a * q * (q - 1.0) * x.powf(q - 2.0);
        let h2 = 2.0 * p / (x * x * x) - a * q * (q - 1.0) * (q - 2.0) * x.powf(q - 3.0);

        // inner argument u = b x^q
        let u = b * x.powf(q);
        let u1 = b * q * x.powf(q - 1.0);
        let u2 = b * q * (q - 1.0) * x.powf(q - 2.0);
        let u3 = b * q * (q - 1.0) * (q - 2.0) * x.powf(q - 3.0);

        let l0 = specfun::laguerre_recurrence(k, alpha, u);
        let l1 = specfun::laguerre_derivative(k, alpha, u);
        let l2 = specfun::laguerre_second_derivative(k, alpha, u);
        let l3 = if k < 3 {
            0.0
        } else {
            -specfun::laguerre_recurrence(k - 3, alpha + 3.0, u)
        };

        let p0 = l0;
        let p1 = l1 * u1;
        let p2 = l2 * u1 * u1 + l1 * u2;
        let p3 = l3 * u1 * u1 * u1 + 3.0 * l2 * u1 * u2 + l1 * u3;

        let g = self.norm * self.envelope_log(x).exp();
        Jet {
            value: g * p0,
            first: g * (h * p0 + p1),
            second: g * ((h * h + h1) * p0 + 2.0 * h * p1 + p2),
            third: g
                * ((h * h * h + 3.0 * h * h1 + h2) * p0
                    + 3.0 * (h * h + h1) * p1
                    + 3.0 * h * p2
                    + p3),
        }
    }
}

/// Number of sign changes in a sampled function, ignoring exact zeros.
pub fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0_f64;
    let mut changes = 0;
    for &v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// `count` points spaced uniformly in `log x` over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// `count` points spaced uniformly over `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}
