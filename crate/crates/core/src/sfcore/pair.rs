//! The symmetric pairs `Z(s,a) = ζ(s,a) + ζ(s,1-a)` and
//! `P(s,a) = Li_s(e^{2πia}) + Li_s(e^{2πi(1-a)})`, their half-sum `Q`, and
//! the completed function `ξ_Q`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::{ln_gamma, reflection_factor};
use super::hurwitz::{hurwitz_raw, hurwitz_zeta_regularized};
use super::{AlphaParam, ComplexValue, EvalResult, EvalSettings, Method};
use crate::error::{Error, Result};

/// Trapezoid nodes used when averaging over a circle around a removable point.
pub const CIRCLE_AVERAGE_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZqValues {
    pub z: EvalResult,
    pub p: EvalResult,
    pub q: EvalResult,
}

/// Mean of `f` over `nodes` equally spaced points of the circle
/// `|w - center| = radius`. For `f` analytic on the closed disk this is
/// `f(center)` up to the Taylor coefficients of order `nodes`, `2·nodes`, ….
pub fn circle_average<F>(mut f: F, center: ComplexValue, radius: f64, nodes: usize) -> Result<ComplexValue>
where
    F: FnMut(ComplexValue) -> Result<ComplexValue>,
{
    let mut acc = ComplexValue::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = 2.0 * PI * (j as f64 + 0.5) / nodes as f64;
        acc += f(center + ComplexValue::from_polar(radius, theta))?;
    }
    Ok(acc / nodes as f64)
}

/// Distance from `s` to the nearest integer in `[min, max]`.
fn distance_to_integers(s: ComplexValue, min: f64, max: f64) -> f64 {
    let m = s.re.round().clamp(min, max);
    (s - m).norm()
}

/// `Z(s,a)`; the pole at `s = 1` is reported.
pub fn z_eval(s: ComplexValue, a: AlphaParam, cfg: &EvalSettings) -> Result<EvalResult> {
    a.require_quadrilateral()?;
    z_raw(s, a.value(), cfg)
}

pub(crate) fn z_raw(s: ComplexValue, a: f64, cfg: &EvalSettings) -> Result<EvalResult> {
    let lo = hurwitz_raw(s, a, cfg)?;
    let hi = hurwitz_raw(s, 1.0 - a, cfg)?;
    EvalResult::new(lo.value + hi.value, lo.est_error + hi.est_error, Method::EulerMaclaurin)
}

fn p_reflected(s: ComplexValue, a: f64, cfg: &EvalSettings) -> Result<(ComplexValue, f64)> {
    let w = 1.0 - s;
    let z = z_raw(w, a, cfg)?;
    let f = reflection_factor(w)?;
    let value = f * z.value;
    let err = f.norm() * z.est_error + 8.0 * f64::EPSILON * value.norm();
    Ok((value, err))
}

pub(crate) fn p_raw(s: ComplexValue, a: f64, cfg: &EvalSettings) -> Result<EvalResult> {
    let guard = cfg.pole_guard_radius;
    if s.re > -guard && s.im.abs() < guard && distance_to_integers(s, 0.0, f64::MAX) < guard {
        let mut err = 0.0f64;
        let value = circle_average(
            |w| {
                let (v, e) = p_reflected(w, a, cfg)?;
                err = err.max(e);
                Ok(v)
            },
            s,
            2.0 * guard,
            CIRCLE_AVERAGE_NODES,
        );
        let value = value?;
        return EvalResult::new(value, err, Method::CircleAverage);
    }
    let (value, err) = p_reflected(s, a, cfg)?;
    EvalResult::new(value, err, Method::Reflection)
}

/// `Z`, `P` and `Q = (Z+P)/2` at `s`.
///
/// `P` is always obtained by reflection from `Z(1-s,a)`; within
/// `pole_guard_radius` of a removable point (`s = 0, 1, 2, …`) it is the
/// average of the reflected formula over a circle of twice that radius.
pub fn zq_eval(s: ComplexValue, a: AlphaParam, cfg: &EvalSettings) -> Result<ZqValues> {
    a.require_quadrilateral()?;
    let z = z_raw(s, a.value(), cfg)?;
    let p = p_raw(s, a.value(), cfg)?;
    let method = if p.method == Method::CircleAverage {
        Method::CircleAverage
    } else {
        Method::Reflection
    };
    let q = EvalResult::new(
        0.5 * (z.value + p.value),
        0.5 * (z.est_error + p.est_error),
        method,
    )?;
    Ok(ZqValues { z, p, q })
}

/// `Q(s,a)` alone.
pub fn q_eval(s: ComplexValue, a: AlphaParam, cfg: &EvalSettings) -> Result<EvalResult> {
    zq_eval(s, a, cfg).map(|v| v.q)
}

fn xi_direct(s: ComplexValue, a: AlphaParam, cfg: &EvalSettings) -> Result<ComplexValue> {
    let q = q_eval(s, a, cfg)?.value;
    let half_s = 0.5 * s;
    let gamma_part = (ln_gamma(half_s)? - half_s * PI.ln()).exp();
    Ok(0.5 * s * (s - 1.0) * gamma_part * q)
}

/// The completed function `ξ_Q(s,a) = s(s-1) π^{-s/2} Γ(s/2) Q(s,a) / 2`.
///
/// Entire; near `s = 0` and `s = 1` the value is taken as a circle average.
pub fn xi_q(s: ComplexValue, a: AlphaParam, cfg: &EvalSettings) -> Result<EvalResult> {
    a.require_quadrilateral()?;
    let guard = cfg.pole_guard_radius;
    if s.norm() < guard || (s - 1.0).norm() < guard {
        let v = circle_average(|w| xi_direct(w, a, cfg), s, 2.0 * guard, CIRCLE_AVERAGE_NODES)?;
        return EvalResult::new(v, 1e-13 * (1.0 + v.norm()), Method::CircleAverage);
    }
    let v = xi_direct(s, a, cfg)?;
    EvalResult::new(v, 1e-13 * (1.0 + v.norm()), Method::Reflection)
}

/// `P(s,a)` from its Dirichlet series `2 Σ cos(2πna)/n^s`, for `Re s > 1`.
/// The error estimate is the integral bound on the omitted tail.
pub fn periodic_pair_series(s: ComplexValue, a: f64, terms: usize) -> Result<EvalResult> {
    if !(s.re > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "the cosine series needs Re s > 1, got {}",
            s.re
        )));
    }
    let mut acc = ComplexValue::new(0.0, 0.0);
    for n in (1..=terms).rev() {
        let nf = n as f64;
        acc += 2.0 * (2.0 * PI * nf * a).cos() * (-s * nf.ln()).exp();
    }
    let tail = 2.0 * (terms as f64).powf(1.0 - s.re) / (s.re - 1.0);
    EvalResult::new(acc, tail, Method::Series)
}

/// `P(s, r/q)` through the finite Hurwitz combination
/// `Li_s(e^{2πir/q}) = q^{-s} Σ_{m=1}^{q} e^{2πirm/q} ζ(s, m/q)`.
///
/// The pole terms cancel because the exponential sum vanishes, so the
/// regularized Hurwitz function is used and `s = 1` is allowed.
pub fn periodic_pair_rational(
    s: ComplexValue,
    r: u32,
    q: u32,
    cfg: &EvalSettings,
) -> Result<EvalResult> {
    if q < 2 || r == 0 || r >= q || super::gcd(r, q) != 1 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < r < q with gcd(r,q) = 1, got {r}/{q}"
        )));
    }
    let mut acc = ComplexValue::new(0.0, 0.0);
    let mut err = 0.0;
    for m in 1..=q {
        let weight = 2.0 * (2.0 * PI * ((r as u64 * m as u64) % q as u64) as f64 / q as f64).cos();
        let h = hurwitz_zeta_regularized(s, m as f64 / q as f64, cfg)?;
        acc += weight * h.value;
        err += weight.abs() * h.est_error;
    }
    let scale = (-s * (q as f64).ln()).exp();
    EvalResult::new(scale * acc, scale.norm() * err, Method::Series)
}
