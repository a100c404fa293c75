use rayon::prelude::*;

use super::{ZeroMethod, ZeroRecord};
use crate::error::{Error, Result};
use crate::sfcore::{q_eval, xi_q, AlphaParam, ComplexValue, EvalSettings};

/// Bisection stops once the bracket in `t` is this narrow.
pub const HARDY_T_TOLERANCE: f64 = 1e-12;

fn xi_on_line(t: f64, a: AlphaParam, cfg: &EvalSettings) -> Result<f64> {
    Ok(xi_q(ComplexValue::new(0.5, t), a, cfg)?.value.re)
}

/// Zeros of `Q(1/2+it, a)` for `t_lo ≤ t ≤ t_hi` found as sign changes of
/// the real function `ξ_Q(1/2+it, a)` sampled every `step`.
///
/// Pairs of zeros closer than `step` and zeros of even order are missed.
pub fn hardy_scan(
    a: AlphaParam,
    t_lo: f64,
    t_hi: f64,
    step: f64,
    cfg: &EvalSettings,
) -> Result<Vec<ZeroRecord>> {
    a.require_quadrilateral()?;
    if !(step > 0.0 && step <= 0.25) {
        return Err(Error::InvalidArgument(format!("step must lie in (0, 0.25], got {step}")));
    }
    if !(t_lo >= 0.0) || !(t_lo < t_hi) || !t_hi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    let ts: Vec<f64> = (0..=n)
        .map(|k| (t_lo + k as f64 * step).min(t_hi))
        .collect();
    let values: Vec<f64> = ts
        .par_iter()
        .map(|&t| xi_on_line(t, a, cfg))
        .collect::<Result<_>>()?;
    let brackets: Vec<usize> = (0..n)
        .filter(|&k| values[k] != 0.0 && (values[k] < 0.0) != (values[k + 1] < 0.0))
        .collect();
    brackets
        .par_iter()
        .map(|&k| {
            let (mut lo, mut hi) = (ts[k], ts[k + 1]);
            let lo_negative = values[k] < 0.0;
            while hi - lo > HARDY_T_TOLERANCE {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let v = xi_on_line(mid, a, cfg)?;
                if v == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (v < 0.0) == lo_negative {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let s = ComplexValue::new(0.5, 0.5 * (lo + hi));
            Ok(ZeroRecord {
                s,
                method: ZeroMethod::HardyScan,
                residual: q_eval(s, a, cfg)?.value.norm(),
                newton_refined: false,
                multiplicity: 1,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn cfg() -> EvalSettings {
        EvalSettings::default()
    }

    #[test]
    fn half_matches_factor_roots_and_zeta_zero() {
        let a = AlphaParam::quadrilateral(0.5).unwrap();
        let zeros = hardy_scan(a, 0.0, 15.0, 0.1, &cfg()).unwrap();
        let ts: Vec<f64> = zeros.iter().map(|z| z.s.im).collect();
        // Roots of 2^s = 1 ± i on the line, then the first ζ zero.
        let expected = [
            PI / 4.0 / LN_2,
            (2.0 * PI - PI / 4.0) / LN_2,
            (2.0 * PI + PI / 4.0) / LN_2,
            14.134_725_141_734_693,
        ];
        assert_eq!(ts.len(), 4, "{ts:?}");
        for (t, e) in ts.iter().zip(expected) {
            assert!((t - e).abs() < 1e-9, "{t} vs {e}");
        }
        assert!(zeros.iter().all(|z| z.residual <= 1e-8));
    }

    #[test]
    fn third_has_zeros_and_quarter_residuals() {
        let third = AlphaParam::quadrilateral(1.0 / 3.0).unwrap();
        let zeros = hardy_scan(third, 0.0, 30.0, 0.1, &cfg()).unwrap();
        assert!(!zeros.is_empty());
        // 3^s = 1 + i√2 on the line: t = arctan(√2)/log 3.
        let first = 2f64.sqrt().atan() / 3f64.ln();
        assert!((zeros[0].s.im - first).abs() < 1e-9, "{}", zeros[0].s.im);
        let quarter = AlphaParam::quadrilateral(0.25).unwrap();
        for z in hardy_scan(quarter, 0.0, 15.0, 0.1, &cfg()).unwrap() {
            assert_eq!(z.s.re, 0.5);
            assert!(z.residual <= 1e-8);
        }
    }

    #[test]
    fn rejects_bad_steps() {
        let a = AlphaParam::quadrilateral(0.5).unwrap();
        assert!(hardy_scan(a, 0.0, 10.0, 0.5, &cfg()).is_err());
        assert!(hardy_scan(a, -1.0, 10.0, 0.1, &cfg()).is_err());
        assert!(hardy_scan(a, 5.0, 5.0, 0.1, &cfg()).is_err());
    }
}
