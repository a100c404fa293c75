//! Complex gamma function via the Lanczos approximation (g = 607/128, 15 terms).

use std::f64::consts::PI;

use super::{ComplexValue, EvalResult, Method};
use crate::error::{Error, Result};

const LANCZOS_G_HALF: f64 = 5.242_187_5; // g + 1/2
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;
const POLE_DISTANCE: f64 = 1e-14;

fn lanczos_series(z: ComplexValue) -> ComplexValue {
    let mut ser = ComplexValue::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for &c in LANCZOS_COEFFS.iter() {
        y += 1.0;
        ser += c / y;
    }
    ser
}

fn pole_check(s: ComplexValue) -> Result<()> {
    if s.re <= 0.5 && s.im.abs() < POLE_DISTANCE {
        let nearest = s.re.round();
        if nearest <= 0.0 && (s.re - nearest).abs() < POLE_DISTANCE {
            return Err(Error::PoleAtNonPositiveInteger { re: s.re, im: s.im });
        }
    }
    Ok(())
}

/// `ln Γ(z)` for `Re z >= 1/2` (principal-ish branch, continuous in `Im z`).
fn ln_gamma_right(z: ComplexValue) -> ComplexValue {
    let t = z + LANCZOS_G_HALF;
    (z + 0.5) * t.ln() - t + (SQRT_TWO_PI * lanczos_series(z) / z).ln()
}

/// `ln Γ(z)`. The imaginary part is only determined modulo `2π` for
/// `Re z < 1/2`; it is meant for exponentiation and modulus work, which is
/// what large `|Im z|` requires to avoid overflow in intermediate factors.
pub fn ln_gamma(z: ComplexValue) -> Result<ComplexValue> {
    pole_check(z)?;
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        let sin_pz = (PI * z).sin();
        Ok(ComplexValue::new(PI.ln(), 0.0) - sin_pz.ln() - ln_gamma_right(1.0 - z))
    }
}

fn gamma_real(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_real(1.0 - x));
    }
    if x == x.trunc() && x <= 171.0 {
        return (1..x as u32).fold(1.0, |acc, k| acc * k as f64);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G_HALF;
    let mut ser = LANCZOS_C0;
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate() {
        ser += c / (z + 1.0 + k as f64);
    }
    // t^(z+1/2) is split so that the factors stay in range up to x ~ 171.
    let half = t.powf(0.5 * (z + 0.5));
    half * (half * (-t).exp()) * SQRT_TWO_PI * ser
}

/// Γ(s). Poles at the non-positive integers are reported as errors.
pub fn gamma(s: ComplexValue) -> Result<EvalResult> {
    pole_check(s)?;
    if s.im == 0.0 {
        let v = gamma_real(s.re);
        return EvalResult::new(ComplexValue::new(v, 0.0), 4.0 * f64::EPSILON * v.abs(), Method::Series);
    }
    let value = if s.re >= 0.5 {
        // Γ(s) = Γ(s+1)/s keeps the Lanczos argument z = s with Re z >= 1/2.
        let z = s - 1.0;
        let t = z + LANCZOS_G_HALF;
        ((z + 0.5) * t.ln() - t).exp() * SQRT_TWO_PI * lanczos_series(z)
    } else {
        let g1 = gamma(1.0 - s)?.value;
        PI / ((PI * s).sin() * g1)
    };
    let lg = value.norm().ln().abs().max(1.0);
    EvalResult::new(value, 8.0 * f64::EPSILON * lg * value.norm(), Method::Series)
}

/// The functional-equation factor `2 Γ(w) (2π)^(-w) cos(πw/2)`.
///
/// Computed in log form so that the exponentially small Γ and the
/// exponentially large cosine do not overflow for large `|Im w|`.
pub fn reflection_factor(w: ComplexValue) -> Result<ComplexValue> {
    let lg = ln_gamma(w)?;
    let log_two_pi = (2.0 * PI).ln();
    let scaled = (lg - w * log_two_pi).exp();
    Ok(2.0 * scaled * cos_half_pi(w))
}

/// `cos(πw/2)` with the real part reduced exactly, so odd integers give 0.
fn cos_half_pi(w: ComplexValue) -> ComplexValue {
    let x = w.re.rem_euclid(4.0);
    let (c, s) = if x == 1.0 || x == 3.0 {
        (0.0, if x == 1.0 { 1.0 } else { -1.0 })
    } else if x == 0.0 || x == 2.0 {
        (if x == 0.0 { 1.0 } else { -1.0 }, 0.0)
    } else {
        let (s, c) = (0.5 * PI * x).sin_cos();
        (c, s)
    };
    let y = 0.5 * PI * w.im;
    ComplexValue::new(c * y.cosh(), -s * y.sinh())
}
