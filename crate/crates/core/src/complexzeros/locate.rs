use rayon::prelude::*;

use super::winding::{winding_count_with, WindingOptions};
use super::{Rectangle, ZeroMethod, ZeroRecord};
use crate::error::{Error, Result};
use crate::sfcore::{deriv_s_with_radius, q_eval, AlphaParam, ComplexValue, EvalSettings};

pub const MAX_LOCATE_DEPTH: u32 = 12;
const NEWTON_MAX_ITER: usize = 50;
const NEWTON_STEP_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-8;

/// Cut points tried in turn; none is 1/2, so symmetric lines such as
/// `σ = 1/2` in a symmetric rectangle never fall on a cut.
const SPLITS: [(f64, f64); 4] = [(0.537, 0.471), (0.463, 0.529), (0.611, 0.389), (0.389, 0.611)];

/// Newton's method on `Q(·,a)` from `start`. The derivative comes from a
/// Cauchy circle that stays clear of the pole at `s = 1`.
pub fn refine_zero(start: ComplexValue, a: AlphaParam, cfg: &EvalSettings) -> Result<ComplexValue> {
    let f = |w| q_eval(w, a, cfg).map(|r| r.value);
    let mut s = start;
    for _ in 0..NEWTON_MAX_ITER {
        let radius = (0.25 * (s - 1.0).norm()).min(0.05);
        let q = f(s)?;
        let dq = deriv_s_with_radius(f, s, 1, radius)?.value;
        if dq.norm() == 0.0 {
            break;
        }
        let step = q / dq;
        s -= step;
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::NonFinite { re: s.re, im: s.im });
        }
        if step.norm() <= NEWTON_STEP_TOL {
            return Ok(s);
        }
    }
    Err(Error::NonFinite { re: s.re, im: s.im })
}

fn newton_in_cell(cell: &Rectangle, a: AlphaParam, cfg: &EvalSettings) -> Option<ZeroRecord> {
    let s = refine_zero(cell.center(), a, cfg).ok()?;
    if !cell.contains(s, 1e-9) {
        return None;
    }
    let residual = q_eval(s, a, cfg).ok()?.value.norm();
    (residual <= RESIDUAL_TOL).then_some(ZeroRecord {
        s,
        method: ZeroMethod::Subdivision,
        residual,
        newton_refined: true,
        multiplicity: 1,
    })
}

fn split_counts(
    cell: &Rectangle,
    count: i64,
    a: AlphaParam,
    opts: &WindingOptions,
    cfg: &EvalSettings,
) -> Result<Vec<(Rectangle, i64)>> {
    let strict = WindingOptions {
        auto_perturb: false,
        ..*opts
    };
    let mut last = Error::NonIntegerWinding { value: f64::NAN };
    for &(fx, fy) in &SPLITS {
        let parts = cell.split(fx, fy);
        let counts: Result<Vec<i64>> = parts
            .par_iter()
            .map(|p| winding_count_with(p, a, &strict, cfg).map(|w| w.count))
            .collect();
        match counts {
            Ok(c) if c.iter().sum::<i64>() == count => {
                return Ok(parts.iter().copied().zip(c).collect());
            }
            Ok(c) => {
                last = Error::NonIntegerWinding {
                    value: c.iter().sum::<i64>() as f64,
                }
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn locate_cell(
    cell: Rectangle,
    count: i64,
    depth: u32,
    max_depth: u32,
    a: AlphaParam,
    opts: &WindingOptions,
    cfg: &EvalSettings,
) -> Result<Vec<ZeroRecord>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if count == 1 {
        if let Some(r) = newton_in_cell(&cell, a, cfg) {
            return Ok(vec![r]);
        }
        if depth >= max_depth {
            let s = cell.center();
            return Ok(vec![ZeroRecord {
                s,
                method: ZeroMethod::Subdivision,
                residual: q_eval(s, a, cfg)?.value.norm(),
                newton_refined: false,
                multiplicity: 1,
            }]);
        }
    } else if depth >= max_depth {
        return Err(Error::UnresolvedCluster {
            depth: depth as usize,
            count,
        });
    }
    let children = split_counts(&cell, count, a, opts, cfg)?;
    let found: Vec<Vec<ZeroRecord>> = children
        .into_par_iter()
        .map(|(c, n)| locate_cell(c, n, depth + 1, max_depth, a, opts, cfg))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Zeros of `Q(·,a)` in `rect` by quadtree subdivision and Newton refinement.
pub fn locate_zeros(
    rect: &Rectangle,
    a: AlphaParam,
    max_depth: u32,
    cfg: &EvalSettings,
) -> Result<Vec<ZeroRecord>> {
    locate_zeros_with(rect, a, max_depth, &WindingOptions::default(), cfg)
}

pub fn locate_zeros_with(
    rect: &Rectangle,
    a: AlphaParam,
    max_depth: u32,
    opts: &WindingOptions,
    cfg: &EvalSettings,
) -> Result<Vec<ZeroRecord>> {
    a.require_quadrilateral()?;
    if max_depth > MAX_LOCATE_DEPTH {
        return Err(Error::InvalidArgument(format!(
            "max_depth must be at most {MAX_LOCATE_DEPTH}, got {max_depth}"
        )));
    }
    let top = winding_count_with(rect, a, opts, cfg)?;
    let mut zeros = locate_cell(top.rect, top.count, 0, max_depth, a, opts, cfg)?;
    zeros.sort_by(|x, y| x.s.im.total_cmp(&y.s.im).then(x.s.re.total_cmp(&y.s.re)));
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn cfg() -> EvalSettings {
        EvalSettings::default()
    }

    fn alpha(a: f64) -> AlphaParam {
        AlphaParam::quadrilateral(a).unwrap()
    }

    #[test]
    fn factor_zero_located() {
        let rect = Rectangle::new(-0.5, 1.5, 0.5, 3.0).unwrap();
        let zeros = locate_zeros(&rect, alpha(0.5), 8, &cfg()).unwrap();
        assert_eq!(zeros.len(), 1);
        let z = zeros[0];
        assert!(z.newton_refined);
        assert!((z.s.re - 0.5).abs() < 1e-12);
        assert!((z.s.im - PI / 4.0 / LN_2).abs() < 1e-12);
        assert!(z.residual <= 1e-8);
    }

    #[test]
    fn zero_free_rectangle_is_empty() {
        let rect = Rectangle::new(2.6, 3.5, 1.0, 2.0).unwrap();
        assert!(locate_zeros(&rect, alpha(1.0 / 3.0), 8, &cfg()).unwrap().is_empty());
    }

    #[test]
    fn critical_line_for_special_parameters() {
        let rect = Rectangle::new(-0.5, 1.5, 0.05, 20.0).unwrap();
        for &a in &[1.0 / 6.0, 0.25] {
            let zeros = locate_zeros(&rect, alpha(a), 10, &cfg()).unwrap();
            assert!(!zeros.is_empty());
            for z in &zeros {
                assert!((z.s.re - 0.5).abs() <= 1e-6, "a = {a}: {}", z.s);
                assert!(z.residual <= 1e-8);
            }
        }
    }

    #[test]
    fn newton_from_nearby_point() {
        let target = ComplexValue::new(0.5, 14.134_725_141_734_693);
        let s = refine_zero(target + ComplexValue::new(0.01, -0.02), alpha(0.5), &cfg()).unwrap();
        assert!((s - target).norm() < 1e-11);
    }

    #[test]
    fn depth_limit() {
        let rect = Rectangle::new(-0.5, 1.5, 0.5, 3.0).unwrap();
        assert!(locate_zeros(&rect, alpha(0.5), 13, &cfg()).is_err());
    }
}
