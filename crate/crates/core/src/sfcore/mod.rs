//! Special-function evaluators.
//!
//! Everything here works in binary64 complex arithmetic. The Hurwitz zeta
//! function is continued to the whole plane by Euler–Maclaurin summation, and
//! the periodic pair `P(s,a)` is obtained from the Hurwitz pair `Z(1-s,a)`
//! through the reflection
//!
//! ```text
//! P(s,a) = 2 Γ(1-s) (2π)^(s-1) cos(π(1-s)/2) Z(1-s,a),
//! ```
//!
//! which is analytic except for removable points at the non-negative
//! integers. Those are handled by averaging over a small circle.

mod bernoulli;
mod deriv;
mod gamma;
mod hurwitz;
mod pair;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bernoulli::bernoulli_table;
pub use deriv::{deriv_s, deriv_s_with_radius, CAUCHY_NODES, DEFAULT_DERIV_RADIUS};
pub use gamma::{gamma, ln_gamma, reflection_factor};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_da, hurwitz_zeta_regularized};
pub(crate) use hurwitz::hurwitz_raw;
pub use pair::{
    circle_average, periodic_pair_rational, periodic_pair_series, q_eval, xi_q, z_eval, zq_eval,
    ZqValues, CIRCLE_AVERAGE_NODES,
};

/// The scalar of the `s`-plane.
pub type ComplexValue = num_complex::Complex64;

/// Knobs shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings {
    /// Target absolute error.
    pub abs_tol: f64,
    /// Cap on the Euler–Maclaurin head length.
    pub max_terms: usize,
    /// Number of Bernoulli corrections `B_2 … B_{2k}`.
    pub bernoulli_order: usize,
    /// Distance to a removable point below which circle averaging is used.
    pub pole_guard_radius: f64,
}

impl Default for EvalSettings {
    fn default() -> Self {
        EvalSettings {
            abs_tol: 1e-12,
            max_terms: 10_000,
            bernoulli_order: 15,
            pole_guard_radius: 0.05,
        }
    }
}

impl EvalSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(1..=15).contains(&self.bernoulli_order) {
            return Err(Error::InvalidArgument(format!(
                "bernoulli_order must lie in 1..=15, got {}",
                self.bernoulli_order
            )));
        }
        if self.max_terms < 16 {
            return Err(Error::InvalidArgument(format!(
                "max_terms must be at least 16, got {}",
                self.max_terms
            )));
        }
        if !(self.pole_guard_radius > 0.0 && self.pole_guard_radius < 0.25) {
            return Err(Error::InvalidArgument(format!(
                "pole_guard_radius must lie in (0, 0.25), got {}",
                self.pole_guard_radius
            )));
        }
        Ok(())
    }
}

/// The shift parameter `a`.
///
/// Values built with [`AlphaParam::from_fraction`] remember the reduced
/// fraction so that exact rational code paths can be dispatched.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaParam {
    value: f64,
    fraction: Option<(u32, u32)>,
}

impl AlphaParam {
    /// `a` in the Hurwitz domain `0 < a <= 1`.
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "a must satisfy 0 < a <= 1, got {a}"
            )));
        }
        Ok(AlphaParam {
            value: a,
            fraction: None,
        })
    }

    /// `a` in the quadrilateral domain `0 < a <= 1/2`.
    pub fn quadrilateral(a: f64) -> Result<Self> {
        let alpha = Self::new(a)?;
        alpha.require_quadrilateral()?;
        Ok(alpha)
    }

    /// The exact rational `r/q`, reduced to lowest terms.
    pub fn from_fraction(r: u32, q: u32) -> Result<Self> {
        if q == 0 || r == 0 || r > q {
            return Err(Error::InvalidArgument(format!(
                "fraction {r}/{q} is not in (0, 1]"
            )));
        }
        let g = gcd(r, q);
        let (r, q) = (r / g, q / g);
        Ok(AlphaParam {
            value: r as f64 / q as f64,
            fraction: Some((r, q)),
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// The reduced fraction, when the parameter was constructed exactly.
    pub fn fraction(&self) -> Option<(u32, u32)> {
        self.fraction
    }

    pub fn is_quadrilateral(&self) -> bool {
        self.value <= 0.5
    }

    pub(crate) fn require_quadrilateral(&self) -> Result<()> {
        if self.is_quadrilateral() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "a must satisfy 0 < a <= 1/2, got {}",
                self.value
            )))
        }
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Which branch produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    EulerMaclaurin,
    Reflection,
    CircleAverage,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: ComplexValue,
    /// Non-negative estimate of the absolute error.
    pub est_error: f64,
    pub method: Method,
}

impl EvalResult {
    pub(crate) fn new(value: ComplexValue, est_error: f64, method: Method) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFinite {
                re: value.re,
                im: value.im,
            });
        }
        Ok(EvalResult {
            value,
            est_error: est_error.abs(),
            method,
        })
    }
}

/// Shorthand for a real point on the axis.
pub fn real(x: f64) -> ComplexValue {
    ComplexValue::new(x, 0.0)
}
