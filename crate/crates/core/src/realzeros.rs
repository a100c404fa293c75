//! Real zeros of `Q(σ,a)` and `Z(σ,a)`, the threshold `a₀`, and the
//! classification of interior zeros on `(0,1)`.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sfcore::{deriv_s, q_eval, real, z_eval, AlphaParam, EvalSettings};

/// Half-width of the parameter window classified as the double zero.
pub const DOUBLE_ZERO_WINDOW: f64 = 1e-9;
const BISECTION_WIDTH: f64 = 1e-13;
const TANGENCY_LEVEL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Multiplicity {
    Simple,
    DoubleSuspected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealZero {
    pub sigma: f64,
    /// `|f(sigma)|` for the scanned function.
    pub residual: f64,
    pub multiplicity_hint: Multiplicity,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NoInteriorZeros,
    DoubleAtHalf,
    AtLeastTwo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealClassification {
    pub a: f64,
    pub verdict: Verdict,
    pub zeros: Vec<RealZero>,
}

fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64, width: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok((mid, mid));
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Sign changes of `f` on a uniform grid over `[lo, hi]`, refined by
/// bisection, plus tangential minima of `|f|` below `1e-6`.
fn scan_function<F>(f: F, lo: f64, hi: f64, grid: usize) -> Result<Vec<RealZero>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let xs: Vec<f64> = (0..=grid)
        .map(|i| lo + (hi - lo) * i as f64 / grid as f64)
        .collect();
    let values: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let mut zeros = Vec::new();
    for i in 0..grid {
        let (x0, x1, f0, f1) = (xs[i], xs[i + 1], values[i], values[i + 1]);
        if f0 == 0.0 {
            zeros.push(RealZero {
                sigma: x0,
                residual: 0.0,
                multiplicity_hint: Multiplicity::Simple,
                bracket: (x0, x0),
            });
            continue;
        }
        if f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            let (a, b) = bisect(&f, x0, x1, f0, BISECTION_WIDTH)?;
            let sigma = 0.5 * (a + b);
            zeros.push(RealZero {
                sigma,
                residual: f(sigma)?.abs(),
                multiplicity_hint: Multiplicity::Simple,
                bracket: (a, b),
            });
        } else if i > 0 && i + 1 < grid {
            // Local minimum of |f| without a sign change: a near-tangency.
            let fm = values[i - 1];
            if f0.abs() < TANGENCY_LEVEL
                && f0.abs() <= fm.abs()
                && f0.abs() <= f1.abs()
                && (fm < 0.0) == (f0 < 0.0)
            {
                zeros.push(RealZero {
                    sigma: x0,
                    residual: f0.abs(),
                    multiplicity_hint: Multiplicity::DoubleSuspected,
                    bracket: (xs[i - 1], x1),
                });
            }
        }
    }
    if values[grid] == 0.0 {
        zeros.push(RealZero {
            sigma: xs[grid],
            residual: 0.0,
            multiplicity_hint: Multiplicity::Simple,
            bracket: (xs[grid], xs[grid]),
        });
    }
    Ok(zeros)
}

/// Real zeros of `Q(σ,a)` on `[lo, hi]`. An interval containing the pole at
/// `σ = 1` is split at `1 ± 1e-6`.
pub fn scan_real_zeros(
    a: AlphaParam,
    lo: f64,
    hi: f64,
    grid: usize,
    cfg: &EvalSettings,
) -> Result<Vec<RealZero>> {
    a.require_quadrilateral()?;
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    if grid < 64 {
        return Err(Error::InvalidArgument(format!("grid must be at least 64, got {grid}")));
    }
    let f = |x: f64| -> Result<f64> { Ok(q_eval(real(x), a, cfg)?.value.re) };
    let eps = 1e-6;
    if lo < 1.0 + eps && hi > 1.0 - eps {
        let mut zeros = Vec::new();
        let total = hi - lo;
        if lo < 1.0 - eps {
            let n = ((grid as f64) * (1.0 - eps - lo) / total).ceil().max(64.0) as usize;
            zeros.extend(scan_function(f, lo, 1.0 - eps, n)?);
        }
        if hi > 1.0 + eps {
            let n = ((grid as f64) * (hi - 1.0 - eps) / total).ceil().max(64.0) as usize;
            zeros.extend(scan_function(f, 1.0 + eps, hi, n)?);
        }
        return Ok(zeros);
    }
    scan_function(f, lo, hi, grid)
}

/// `Z(1/2, a)`, which equals `Q(1/2, a)` because the reflection factor is 1
/// at `s = 1/2`.
pub fn central_z(a: f64, cfg: &EvalSettings) -> Result<f64> {
    Ok(z_eval(real(0.5), AlphaParam::quadrilateral(a)?, cfg)?.value.re)
}

/// The threshold `a₀ ∈ (0, 1/6)`: the unique zero of `a ↦ Z(1/2, a)`,
/// found by bisection on `[0.05, 1/6]`.
pub fn find_a0(tol: f64, cfg: &EvalSettings) -> Result<f64> {
    if !(tol >= 1e-13) {
        return Err(Error::InvalidArgument(format!("tol must be at least 1e-13, got {tol}")));
    }
    let (mut lo, mut hi) = (0.05, 1.0 / 6.0);
    let f_lo = central_z(lo, cfg)?;
    let f_hi = central_z(hi, cfg)?;
    if (f_lo < 0.0) == (f_hi < 0.0) {
        return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
    }
    // Bisect well past `tol`: the value is cached and reused by the classifier.
    let width = tol.min(1e-15);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = central_z(mid, cfg)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `a₀` with default settings, computed once.
pub fn a0() -> f64 {
    static A0: OnceLock<f64> = OnceLock::new();
    *A0.get_or_init(|| find_a0(1e-13, &EvalSettings::default()).expect("a0 bracket"))
}

/// The interior zero `β_Z(a)` of `Z(σ,a)` on `(0,1)`, for `0 < a < 1/6`.
pub fn find_beta_z(a: AlphaParam, cfg: &EvalSettings) -> Result<RealZero> {
    a.require_quadrilateral()?;
    let (lo, hi) = (0.01, 1.0 - 1e-6);
    let f = |x: f64| -> Result<f64> { Ok(z_eval(real(x), a, cfg)?.value.re) };
    let zeros = scan_function(f, lo, hi, 1024)?;
    zeros
        .into_iter()
        .find(|z| z.multiplicity_hint == Multiplicity::Simple)
        .ok_or(Error::NoSignChange { lo, hi })
}

/// Interior real zeros of `Q(σ,a)` on `(0,1)` and the resulting verdict.
///
/// The grid always contains `σ = 1/2`, so for `a < a₀` (where `Q(1/2,a) > 0`)
/// the sign changes on either side of the centre are always bracketed.
pub fn classify_real(a: AlphaParam, grid: usize, cfg: &EvalSettings) -> Result<RealClassification> {
    a.require_quadrilateral()?;
    let grid = grid.max(64) + grid % 2;
    let a0 = a0();
    if (a.value() - a0).abs() <= DOUBLE_ZERO_WINDOW {
        let residual = q_eval(real(0.5), a, cfg)?.value.norm();
        return Ok(RealClassification {
            a: a.value(),
            verdict: Verdict::DoubleAtHalf,
            zeros: vec![RealZero {
                sigma: 0.5,
                residual,
                multiplicity_hint: Multiplicity::DoubleSuspected,
                bracket: (0.5, 0.5),
            }],
        });
    }
    let zeros = scan_real_zeros(a, 0.001, 0.999, grid, cfg)?;
    let simple = zeros
        .iter()
        .filter(|z| z.multiplicity_hint == Multiplicity::Simple)
        .count();
    let verdict = if simple >= 2 {
        Verdict::AtLeastTwo
    } else if zeros.is_empty() {
        Verdict::NoInteriorZeros
    } else {
        // A lone sign change or a tangency away from the window: report
        // what was seen, classified by the side of a₀ it falls on.
        if a.value() < a0 {
            Verdict::AtLeastTwo
        } else {
            Verdict::NoInteriorZeros
        }
    };
    Ok(RealClassification {
        a: a.value(),
        verdict,
        zeros,
    })
}

/// `Q'(σ,a)` and `Q''(σ,a)` by Cauchy circles of radius `radius`.
pub fn sigma_derivatives(sigma: f64, a: AlphaParam, cfg: &EvalSettings) -> Result<(f64, f64)> {
    let f = |w| q_eval(w, a, cfg).map(|r| r.value);
    let d1 = deriv_s(f, real(sigma), 1)?.value.re;
    let d2 = deriv_s(f, real(sigma), 2)?.value.re;
    Ok((d1, d2))
}
