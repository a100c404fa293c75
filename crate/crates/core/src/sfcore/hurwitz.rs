//! Hurwitz zeta function by Euler–Maclaurin summation.
//!
//! ```text
//! ζ(s,a) = Σ_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
//!        + Σ_{k=1}^{K} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · (N+a)^{-s-2k+1}
//! ```
//!
//! For `Re s >= 0` the head length is `N = max(20, ⌈|t|⌉, ⌈|σ|⌉+5)`. For
//! `Re s < 0` the head terms grow like `(n+a)^{|σ|}` and cancel against the
//! integral term, so `N` is instead chosen to balance that cancellation
//! against the truncation of the Bernoulli series.

use std::f64::consts::PI;

use super::bernoulli::scaled_even_bernoulli;
use super::{AlphaParam, ComplexValue, EvalResult, EvalSettings, Method};
use crate::error::{Error, Result};

const POLE_DISTANCE: f64 = 1e-12;

#[derive(Clone, Copy)]
enum IntegralTerm {
    /// `(N+a)^{1-s}/(s-1)`
    Plain,
    /// `((N+a)^{1-s} - 1)/(s-1)`, i.e. the pole `1/(s-1)` removed.
    Regularized,
}

fn spec_head_length(s: ComplexValue) -> usize {
    let n = 20.0f64.max(s.im.abs().ceil()).max(s.re.abs().ceil() + 5.0);
    n as usize
}

/// `log10` of the first omitted Bernoulli correction at head length `n`.
fn log_truncation(s: ComplexValue, a: f64, n: usize, order: usize) -> f64 {
    let x = n as f64 + a;
    let m = 2 * order + 2;
    let mut log_poch = 0.0;
    for j in 0..m - 1 {
        let f = (s + j as f64).norm();
        if f == 0.0 {
            return f64::NEG_INFINITY;
        }
        log_poch += f.ln();
    }
    // |B_m/m!| ≈ 2/(2π)^m
    let log_b = 2.0f64.ln() - m as f64 * (2.0 * PI).ln();
    (log_b + log_poch + (-s.re - m as f64 + 1.0) * x.ln()) / std::f64::consts::LN_10
}

fn roundoff_estimate(s: ComplexValue, a: f64, n: usize) -> f64 {
    let x = n as f64 + a;
    let sigma = s.re;
    let head = if sigma < 1.0 {
        x.powf(1.0 - sigma) / (1.0 - sigma) + a.powf(-sigma)
    } else {
        a.powf(-sigma) + 2.0
    };
    let integral = x.powf(1.0 - sigma) / (s - 1.0).norm().max(1e-300);
    f64::EPSILON * (head + integral)
}

fn choose_head_length(s: ComplexValue, a: f64, cfg: &EvalSettings) -> Result<usize> {
    let spec_n = spec_head_length(s);
    let order = cfg.bernoulli_order;
    if s.re < 0.0 {
        let mut best = (f64::INFINITY, spec_n);
        for n in 1..=spec_n {
            let err = 10f64.powf(log_truncation(s, a, n, order)) + roundoff_estimate(s, a, n);
            if err < best.0 {
                best = (err, n);
            }
        }
        return Ok(best.1);
    }
    let mut n = spec_n;
    while 10f64.powf(log_truncation(s, a, n, order)) > cfg.abs_tol && n <= cfg.max_terms {
        n *= 2;
    }
    if n > cfg.max_terms {
        return Err(Error::TruncationFailure {
            needed: n,
            max_terms: cfg.max_terms,
        });
    }
    Ok(n)
}

/// `(e^w - 1)/w`, accurate for small `w`.
fn exprel(w: ComplexValue) -> ComplexValue {
    if w.norm() < 1e-3 {
        1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)))
    } else {
        (w.exp() - 1.0) / w
    }
}

fn euler_maclaurin(
    s: ComplexValue,
    a: f64,
    cfg: &EvalSettings,
    integral: IntegralTerm,
) -> Result<EvalResult> {
    let n = choose_head_length(s, a, cfg)?;
    let mut head = ComplexValue::new(0.0, 0.0);
    for k in 0..n {
        head += (-s * (k as f64 + a).ln()).exp();
    }
    let x = n as f64 + a;
    let lx = x.ln();
    let x_pow = (-s * lx).exp();
    let integral_term = match integral {
        IntegralTerm::Plain => x * x_pow / (s - 1.0),
        IntegralTerm::Regularized => -lx * exprel((1.0 - s) * lx),
    };
    let mut tail = integral_term + 0.5 * x_pow;
    let scaled = scaled_even_bernoulli();
    let mut poch = s;
    let mut xp = x_pow / x;
    let inv_x2 = 1.0 / (x * x);
    for (k, &c) in scaled.iter().take(cfg.bernoulli_order).enumerate() {
        tail += c * poch * xp;
        let j = 2.0 * (k + 1) as f64;
        poch *= (s + (j - 1.0)) * (s + j);
        xp *= inv_x2;
    }
    let est = 10f64.powf(log_truncation(s, a, n, cfg.bernoulli_order)) + roundoff_estimate(s, a, n);
    EvalResult::new(head + tail, est, Method::EulerMaclaurin)
}

/// ζ(s,a) for any `a > 0`; used internally where `a` may leave `(0,1]`.
pub(crate) fn hurwitz_raw(s: ComplexValue, a: f64, cfg: &EvalSettings) -> Result<EvalResult> {
    if (s - 1.0).norm() <= POLE_DISTANCE {
        return Err(Error::PoleAtOne);
    }
    euler_maclaurin(s, a, cfg, IntegralTerm::Plain)
}

/// The Hurwitz zeta function ζ(s,a), continued to `s ≠ 1`.
pub fn hurwitz_zeta(s: ComplexValue, a: AlphaParam, cfg: &EvalSettings) -> Result<EvalResult> {
    hurwitz_raw(s, a.value(), cfg)
}

/// `ζ(s,a) - 1/(s-1)`, entire in `s`. At `s = 1` this equals `-ψ(a)`.
pub fn hurwitz_zeta_regularized(
    s: ComplexValue,
    a: f64,
    cfg: &EvalSettings,
) -> Result<EvalResult> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("a must be positive, got {a}")));
    }
    euler_maclaurin(s, a, cfg, IntegralTerm::Regularized)
}

/// ∂ζ(s,a)/∂a = -s ζ(s+1,a). At `s = 0` (where the right side is `0·∞`)
/// a Richardson-extrapolated central difference is used instead.
pub fn hurwitz_zeta_da(s: ComplexValue, a: AlphaParam) -> Result<EvalResult> {
    let cfg = EvalSettings::default();
    if s.norm() < 1e-8 {
        return central_difference_a(s, a.value(), &cfg);
    }
    let z = hurwitz_raw(s + 1.0, a.value(), &cfg)?;
    EvalResult::new(-s * z.value, s.norm() * z.est_error, Method::EulerMaclaurin)
}

fn central_difference_a(s: ComplexValue, a: f64, cfg: &EvalSettings) -> Result<EvalResult> {
    let h = 1e-6f64.min(0.5 * a);
    let diff = |h: f64| -> Result<ComplexValue> {
        let up = hurwitz_raw(s, a + h, cfg)?.value;
        let down = hurwitz_raw(s, a - h, cfg)?.value;
        Ok((up - down) / (2.0 * h))
    };
    let d1 = diff(h)?;
    let d2 = diff(0.5 * h)?;
    let value = (4.0 * d2 - d1) / 3.0;
    EvalResult::new(value, (d2 - d1).norm(), Method::Series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    fn cfg() -> EvalSettings {
        EvalSettings::default()
    }

    /// Direct summation with an Euler–Maclaurin style tail; valid for σ > 1.
    fn direct_sum(s: ComplexValue, a: f64, terms: usize) -> ComplexValue {
        let mut acc = c(0.0, 0.0);
        for n in 0..terms {
            acc += (-s * (n as f64 + a).ln()).exp();
        }
        let x = terms as f64 + a;
        let xs = (-s * x.ln()).exp();
        acc + x * xs / (s - 1.0) + 0.5 * xs + s * xs / (12.0 * x)
    }

    #[test]
    fn zeta_two() {
        let v = hurwitz_zeta(c(2.0, 0.0), AlphaParam::new(1.0).unwrap(), &cfg()).unwrap();
        assert!((v.value.re - 1.644_934_066_848_226_4).abs() < 1e-14);
        assert!(v.value.im.abs() < 1e-15);
        let oracle = direct_sum(c(2.0, 0.0), 1.0, 20_000);
        assert!((v.value - oracle).norm() < 1e-12);
    }

    #[test]
    fn values_at_non_positive_integers_are_bernoulli_polynomials() {
        let a = AlphaParam::new(0.3).unwrap();
        let v = hurwitz_zeta(c(0.0, 0.0), a, &cfg()).unwrap().value;
        assert!((v.re - 0.2).abs() < 1e-14);
        let v = hurwitz_zeta(c(-1.0, 0.0), AlphaParam::new(1.0).unwrap(), &cfg()).unwrap().value;
        assert!((v.re + 1.0 / 12.0).abs() < 1e-14);
        // ζ(-2, a) = -B_3(a)/3 with B_3(x) = x^3 - 3x^2/2 + x/2
        let x = 0.3f64;
        let b3 = x.powi(3) - 1.5 * x * x + 0.5 * x;
        let v = hurwitz_zeta(c(-2.0, 0.0), a, &cfg()).unwrap().value;
        assert!((v.re + b3 / 3.0).abs() < 1e-14);
        // ζ(-10, a) = -B_11(a)/11, checked against its odd symmetry: B_11(1-a) = -B_11(a)
        let v1 = hurwitz_zeta(c(-10.0, 0.0), a, &cfg()).unwrap().value;
        let v2 = hurwitz_zeta(c(-10.0, 0.0), AlphaParam::new(0.7).unwrap(), &cfg()).unwrap().value;
        assert!((v1 + v2).norm() < 1e-12, "{v1} {v2}");
    }

    #[test]
    fn matches_direct_series_right_half_plane() {
        for &(re, im, a) in &[(6.0, 0.0, 0.3), (7.5, 12.0, 0.05), (6.2, -40.0, 0.9), (9.0, 100.0, 0.5)] {
            let s = c(re, im);
            let v = hurwitz_zeta(s, AlphaParam::new(a).unwrap(), &cfg()).unwrap().value;
            let oracle = direct_sum(s, a, 4000);
            assert!((v - oracle).norm() < 1e-14 * (1.0 + oracle.norm()), "s = {s}, a = {a}");
        }
    }

    #[test]
    fn head_shift_identity_on_the_left() {
        // ζ(s,a) = a^{-s} + ζ(s,a+1) holds across the plane.
        for &(re, im, a) in &[(-3.5, 2.0, 0.25), (-6.5, 0.0, 0.4), (-2.4, 60.0, 0.3), (0.5, 30.0, 0.1)] {
            let s = c(re, im);
            let left = hurwitz_raw(s, a, &cfg()).unwrap().value;
            let right = (-s * a.ln()).exp() + hurwitz_raw(s, a + 1.0, &cfg()).unwrap().value;
            assert!((left - right).norm() < 1e-10 * (1.0 + left.norm()), "s = {s}");
        }
    }

    #[test]
    fn regularized_value_at_one_is_minus_digamma() {
        let euler_gamma = 0.577_215_664_901_532_9;
        let v = hurwitz_zeta_regularized(c(1.0, 0.0), 1.0, &cfg()).unwrap().value;
        assert!((v.re - euler_gamma).abs() < 1e-14);
        // ψ(1/2) = -γ - 2 ln 2
        let v = hurwitz_zeta_regularized(c(1.0, 0.0), 0.5, &cfg()).unwrap().value;
        assert!((v.re - euler_gamma - 2.0 * 2f64.ln()).abs() < 1e-14);
        let s = c(1.3, 0.2);
        let plain = hurwitz_raw(s, 0.4, &cfg()).unwrap().value;
        let reg = hurwitz_zeta_regularized(s, 0.4, &cfg()).unwrap().value;
        assert!((plain - reg - 1.0 / (s - 1.0)).norm() < 1e-13);
    }

    #[test]
    fn pole_rejected() {
        let err = hurwitz_zeta(c(1.0, 0.0), AlphaParam::new(0.5).unwrap(), &cfg()).unwrap_err();
        assert_eq!(err, Error::PoleAtOne);
        assert!(hurwitz_zeta(c(1.0 + 1e-9, 0.0), AlphaParam::new(0.5).unwrap(), &cfg()).is_ok());
    }

    #[test]
    fn truncation_failure_when_head_too_long() {
        let tight = EvalSettings {
            max_terms: 16,
            ..EvalSettings::default()
        };
        let err = hurwitz_zeta(c(0.5, 100.0), AlphaParam::new(0.5).unwrap(), &tight).unwrap_err();
        assert!(matches!(err, Error::TruncationFailure { .. }));
    }

    #[test]
    fn derivative_in_a() {
        let v = hurwitz_zeta_da(c(2.0, 0.0), AlphaParam::new(1.0).unwrap()).unwrap().value;
        // -2 Σ (n+1)^{-3}
        let oracle = -2.0 * direct_sum(c(3.0, 0.0), 1.0, 20_000);
        assert!((v - oracle).norm() < 1e-12);
        assert!((v.re + 2.404_113_806_319_188_6).abs() < 1e-13);

        let v = hurwitz_zeta_da(c(0.0, 0.0), AlphaParam::new(0.3).unwrap()).unwrap().value;
        assert!((v.re + 1.0).abs() < 1e-8);

        let s = c(3.0, 0.0);
        let v = hurwitz_zeta_da(s, AlphaParam::new(0.5).unwrap()).unwrap().value;
        let fd = central_difference_a(s, 0.5, &cfg()).unwrap().value;
        assert!((v - fd).norm() < 1e-7);
    }
}
