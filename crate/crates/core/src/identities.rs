//! Residual checks for the exact identities satisfied by `Q`, `Z` and `P`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sfcore::{
    deriv_s, hurwitz_zeta, q_eval, real, reflection_factor, zq_eval, AlphaParam, ComplexValue,
    EvalSettings,
};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Binary64 approximation of the threshold `a₀` (the double real zero of
/// `Q(σ, a₀)` at `σ = 1/2`), used only to place grid points.
pub const A0_APPROX: f64 = 0.118_375_139_615_272_29;

/// `σ` values of the functional-equation grid.
pub const FE_SIGMAS: [f64; 6] = [-1.5, -0.5, 0.25, 0.75, 2.0, 3.0];
/// `t` values of the functional-equation grid.
pub const FE_TS: [f64; 4] = [0.0, 1.0, 5.0, 20.0];
/// `a` values of the functional-equation grid.
pub const FE_ALPHAS: [f64; 7] = [0.07, A0_APPROX, 1.0 / 6.0, 0.25, 1.0 / 3.0, 0.49, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub abs_residual: f64,
    pub rel_residual: f64,
}

impl ResidualReport {
    pub fn new(lhs: ComplexValue, rhs: ComplexValue) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = abs_residual / 1.0f64.max(lhs.norm()).max(rhs.norm());
        ResidualReport {
            lhs,
            rhs,
            abs_residual,
            rel_residual,
        }
    }
}

/// The three functional-equation residuals at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeReports {
    /// `Q(1-s,a)` against `2Γ(s)(2π)^{-s}cos(πs/2) Q(s,a)`.
    pub q_equation: ResidualReport,
    /// `Z(1-s,a)` against the factor times `P(s,a)`. Self-consistency only:
    /// `P` is computed from this very identity.
    pub z_to_p: ResidualReport,
    /// `P(1-s,a)` against the factor times `Z(s,a)`.
    pub p_to_z: ResidualReport,
}

pub fn fe_residual(s: ComplexValue, a: AlphaParam, cfg: &EvalSettings) -> Result<FeReports> {
    if s.norm() < 1e-6 || (s - 1.0).norm() < 1e-6 {
        return Err(Error::InvalidArgument(format!(
            "s = {s} is too close to 0 or 1 for the functional equation check"
        )));
    }
    let here = zq_eval(s, a, cfg)?;
    let there = zq_eval(1.0 - s, a, cfg)?;
    let factor = reflection_factor(s)?;
    Ok(FeReports {
        q_equation: ResidualReport::new(there.q.value, factor * here.q.value),
        z_to_p: ResidualReport::new(there.z.value, factor * here.p.value),
        p_to_z: ResidualReport::new(there.p.value, factor * here.z.value),
    })
}

/// The special parameters with closed-form `Z` and `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialAlpha {
    Half,
    Third,
    Quarter,
    Sixth,
}

impl SpecialAlpha {
    pub const ALL: [SpecialAlpha; 4] = [
        SpecialAlpha::Half,
        SpecialAlpha::Third,
        SpecialAlpha::Quarter,
        SpecialAlpha::Sixth,
    ];

    pub fn alpha(self) -> AlphaParam {
        let q = match self {
            SpecialAlpha::Half => 2,
            SpecialAlpha::Third => 3,
            SpecialAlpha::Quarter => 4,
            SpecialAlpha::Sixth => 6,
        };
        AlphaParam::from_fraction(1, q).expect("valid fraction")
    }

    /// The factors `(z_factor, p_factor)` with `Z = z_factor·ζ(s)` and
    /// `P = p_factor·ζ(s)`.
    pub fn factors(self, s: ComplexValue) -> (ComplexValue, ComplexValue) {
        let pow = |base: f64, e: ComplexValue| (e * base.ln()).exp();
        let w = 1.0 - s;
        match self {
            SpecialAlpha::Half => (2.0 * (pow(2.0, s) - 1.0), 2.0 * (pow(2.0, w) - 1.0)),
            SpecialAlpha::Third => (pow(3.0, s) - 1.0, pow(3.0, w) - 1.0),
            SpecialAlpha::Quarter => (
                pow(2.0, s) * (pow(2.0, s) - 1.0),
                pow(2.0, w) * (pow(2.0, w) - 1.0),
            ),
            SpecialAlpha::Sixth => (
                (pow(2.0, s) - 1.0) * (pow(3.0, s) - 1.0),
                (pow(2.0, w) - 1.0) * (pow(3.0, w) - 1.0),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub z: ResidualReport,
    pub p: ResidualReport,
}

impl ClosedFormReport {
    pub fn worst_rel(&self) -> f64 {
        self.z.rel_residual.max(self.p.rel_residual)
    }
}

/// Compares `Z(s,a)` and `P(s,a)` with their closed forms in terms of `ζ(s)`.
pub fn closed_form_residual(
    s: ComplexValue,
    which: SpecialAlpha,
    cfg: &EvalSettings,
) -> Result<ClosedFormReport> {
    let values = zq_eval(s, which.alpha(), cfg)?;
    let zeta = hurwitz_zeta(s, AlphaParam::new(1.0)?, cfg)?.value;
    let (zf, pf) = which.factors(s);
    Ok(ClosedFormReport {
        z: ResidualReport::new(values.z.value, zf * zeta),
        p: ResidualReport::new(values.p.value, pf * zeta),
    })
}

/// `|g_p(s)|` with `g_p(s) = (p^s - 1)/(p^{1-s} - 1)`.
pub fn g_p_modulus(s: ComplexValue, p: u32) -> Result<f64> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidArgument(format!("p must be 2 or 3, got {p}")));
    }
    let lp = (p as f64).ln();
    let num = (s * lp).exp() - 1.0;
    let den = ((1.0 - s) * lp).exp() - 1.0;
    if den.norm() < 1e-14 {
        return Err(Error::DenominatorZero);
    }
    Ok(num.norm() / den.norm())
}

/// Whether `Q(σ,a) > 0` for a real `σ > 1`.
pub fn positivity_sigma_gt1(sigma: f64, a: AlphaParam, cfg: &EvalSettings) -> Result<bool> {
    if !(sigma > 1.0 + 1e-6) {
        return Err(Error::InvalidArgument(format!(
            "positivity is checked for sigma > 1 + 1e-6, got {sigma}"
        )));
    }
    Ok(q_eval(real(sigma), a, cfg)?.value.re > 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroFreeBound {
    pub a: f64,
    pub eta: f64,
    /// Smallest `σ >= 3/2` past which the Dirichlet-series lower bound
    /// guarantees `|Q| > η`.
    pub sigma_prime: f64,
    /// `sigma_prime + 1`.
    pub sigma_a: f64,
}

/// `ζ(3/2)`.
fn zeta_three_halves() -> f64 {
    static VALUE: std::sync::OnceLock<f64> = std::sync::OnceLock::new();
    *VALUE.get_or_init(|| {
        hurwitz_zeta(real(1.5), AlphaParam::new(1.0).unwrap(), &EvalSettings::default())
            .unwrap()
            .value
            .re
    })
}

/// Lower bound for `2|Q(σ+it, a)|` valid for `σ >= 3/2`.
pub fn zero_free_lower_bound(a: f64, sigma: f64) -> f64 {
    let tail = 4.0 * zeta_three_halves();
    if a == 0.5 {
        2f64.powf(sigma + 1.0) - tail
    } else {
        a.powf(-sigma) - (1.0 - a).powf(-sigma) - tail
    }
}

/// Effective abscissa beyond which `|Q(s,a)| > η`.
pub fn zero_free_abscissa(a: AlphaParam, eta: f64) -> Result<ZeroFreeBound> {
    a.require_quadrilateral()?;
    if !(eta >= 0.0) {
        return Err(Error::InvalidArgument(format!("eta must be non-negative, got {eta}")));
    }
    let av = a.value();
    let target = 2.0 * eta;
    let f = |sigma: f64| zero_free_lower_bound(av, sigma) - target;
    let mut lo = 1.5;
    let sigma_prime = if f(lo) >= 0.0 {
        lo
    } else {
        let mut hi = 3.0;
        while f(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        while hi - lo > 1e-13 * hi {
            let mid = 0.5 * (lo + hi);
            if f(mid) >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    Ok(ZeroFreeBound {
        a: av,
        eta,
        sigma_prime,
        sigma_a: sigma_prime + 1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HadamardData {
    pub a: f64,
    /// `A` with `e^A = 1/2`.
    pub a_const: f64,
    pub b_of_a: f64,
    pub gamma_e: f64,
    /// `Q(0,a)`, expected to be `-1/2`.
    pub q_at_zero: f64,
    /// `Q'(0,a)`.
    pub dq_at_zero: f64,
}

/// The constants of the genus-one product of `ξ_Q`:
/// `B(a) = Q'(0,a)/Q(0,a) - 1 - (γ + log π)/2`.
pub fn hadamard_b(a: AlphaParam, cfg: &EvalSettings) -> Result<HadamardData> {
    a.require_quadrilateral()?;
    let q0 = q_eval(real(0.0), a, cfg)?.value.re;
    let dq = deriv_s(|w| q_eval(w, a, cfg).map(|r| r.value), real(0.0), 1)?
        .value
        .re;
    let b = dq / q0 - 1.0 - 0.5 * (EULER_GAMMA + std::f64::consts::PI.ln());
    Ok(HadamardData {
        a: a.value(),
        a_const: 0.5f64.ln(),
        b_of_a: b,
        gamma_e: EULER_GAMMA,
        q_at_zero: q0,
        dq_at_zero: dq,
    })
}

/// Richardson-extrapolated central difference of `Q(σ,a)` in `a`.
pub fn dq_da(sigma: f64, a: f64, cfg: &EvalSettings) -> Result<f64> {
    let h = 1e-4f64.min(0.25 * a).min(0.25 * (0.5 - a).abs().max(1e-6));
    let q = |x: f64| -> Result<f64> { Ok(q_eval(real(sigma), AlphaParam::quadrilateral(x)?, cfg)?.value.re) };
    let d = |h: f64| -> Result<f64> { Ok((q(a + h)? - q(a - h)?) / (2.0 * h)) };
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Grid for the `∂Q/∂a < 0` check: `σ = 0.1 … 0.9`, `a = 0.05 … 0.45`.
pub fn monotonicity_grid() -> Vec<(f64, f64)> {
    let mut grid = Vec::new();
    for i in 1..=9 {
        for j in 1..=9 {
            grid.push((i as f64 / 10.0, j as f64 * 0.05));
        }
    }
    grid
}

/// The functional-equation grid `FE_SIGMAS × FE_TS × FE_ALPHAS`.
pub fn fe_grid() -> Vec<(ComplexValue, f64)> {
    let mut grid = Vec::new();
    for &a in FE_ALPHAS.iter() {
        for &sigma in FE_SIGMAS.iter() {
            for &t in FE_TS.iter() {
                grid.push((ComplexValue::new(sigma, t), a));
            }
        }
    }
    grid
}
