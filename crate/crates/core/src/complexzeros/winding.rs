use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Rectangle;
use crate::error::{Error, Result};
use crate::sfcore::{q_eval, AlphaParam, ComplexValue, EvalSettings};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingOptions {
    /// Spacing of the initial boundary samples.
    pub initial_step: f64,
    /// Largest accepted phase increment between neighbouring samples.
    pub phase_cap: f64,
    /// Smallest `|Q|` tolerated on the boundary.
    pub min_modulus: f64,
    /// Largest accepted distance of the raw winding from an integer.
    pub snap_tolerance: f64,
    /// Bisection depth limit for a single initial segment.
    pub max_bisections: u32,
    /// Retry once with every edge moved by `perturbation`, outward first.
    pub auto_perturb: bool,
    pub perturbation: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.05,
            phase_cap: PI / 2.0,
            min_modulus: 1e-10,
            snap_tolerance: 0.1,
            max_bisections: 40,
            auto_perturb: true,
            perturbation: 1e-3,
        }
    }
}

impl WindingOptions {
    /// Same options with twice the initial boundary sampling.
    pub fn doubled(self) -> Self {
        Self {
            initial_step: 0.5 * self.initial_step,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingResult {
    /// Zeros of `Q` inside the rectangle, with multiplicity.
    pub count: i64,
    pub boundary_samples: usize,
    pub min_boundary_modulus: f64,
    pub perturbed: bool,
    /// Whether the pole at `s = 1` lies inside (its `-1` is already undone
    /// in `count`).
    pub pole_enclosed: bool,
    /// Total change of `arg Q` over `2π` before snapping.
    pub raw_winding: f64,
    /// The contour actually used (differs from the request when perturbed).
    pub rect: Rectangle,
}

/// Closest approach of the boundary to `s = 1`.
const POLE_CLEARANCE: f64 = 1e-9;

struct EdgeTrace {
    phase: f64,
    samples: usize,
    min_modulus: f64,
}

fn eval(s: ComplexValue, a: AlphaParam, opts: &WindingOptions, cfg: &EvalSettings) -> Result<ComplexValue> {
    let v = q_eval(s, a, cfg)?.value;
    let m = v.norm();
    if m < opts.min_modulus {
        return Err(Error::ZeroOnBoundary {
            re: s.re,
            im: s.im,
            modulus: m,
        });
    }
    Ok(v)
}

/// Phase change from `(z0, f0)` to `(z1, f1)`, bisecting until every step
/// stays below the cap.
fn segment_phase(
    z0: ComplexValue,
    f0: ComplexValue,
    z1: ComplexValue,
    f1: ComplexValue,
    a: AlphaParam,
    opts: &WindingOptions,
    cfg: &EvalSettings,
) -> Result<EdgeTrace> {
    let mut trace = EdgeTrace {
        phase: 0.0,
        samples: 0,
        min_modulus: f64::INFINITY,
    };
    let mut stack = vec![(z0, f0, z1, f1, 0u32)];
    while let Some((za, fa, zb, fb, depth)) = stack.pop() {
        let d = (fb / fa).arg();
        if d.abs() <= opts.phase_cap {
            trace.phase += d;
            continue;
        }
        let zm = 0.5 * (za + zb);
        if depth >= opts.max_bisections {
            return Err(Error::ZeroOnBoundary {
                re: zm.re,
                im: zm.im,
                modulus: fa.norm().min(fb.norm()),
            });
        }
        let fm = eval(zm, a, opts, cfg)?;
        trace.samples += 1;
        trace.min_modulus = trace.min_modulus.min(fm.norm());
        // Second half pushed first so the first half is summed first.
        stack.push((zm, fm, zb, fb, depth + 1));
        stack.push((za, fa, zm, fm, depth + 1));
    }
    Ok(trace)
}

fn edge_phase(
    z0: ComplexValue,
    z1: ComplexValue,
    a: AlphaParam,
    opts: &WindingOptions,
    cfg: &EvalSettings,
) -> Result<EdgeTrace> {
    let n = ((z1 - z0).norm() / opts.initial_step).ceil().max(4.0) as usize;
    let points: Vec<ComplexValue> = (0..=n).map(|k| z0 + (z1 - z0) * (k as f64 / n as f64)).collect();
    let values: Vec<ComplexValue> = points
        .par_iter()
        .map(|&z| eval(z, a, opts, cfg))
        .collect::<Result<_>>()?;
    let pieces: Vec<EdgeTrace> = (0..n)
        .into_par_iter()
        .map(|k| segment_phase(points[k], values[k], points[k + 1], values[k + 1], a, opts, cfg))
        .collect::<Result<_>>()?;
    let mut trace = EdgeTrace {
        phase: 0.0,
        samples: n + 1,
        min_modulus: values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min),
    };
    for p in pieces {
        trace.phase += p.phase;
        trace.samples += p.samples;
        trace.min_modulus = trace.min_modulus.min(p.min_modulus);
    }
    Ok(trace)
}

fn winding_once(
    rect: &Rectangle,
    a: AlphaParam,
    opts: &WindingOptions,
    cfg: &EvalSettings,
) -> Result<WindingResult> {
    let pole = ComplexValue::new(1.0, 0.0);
    if rect.contains(pole, POLE_CLEARANCE) && rect.boundary_distance(pole) < POLE_CLEARANCE {
        return Err(Error::PoleAtOne);
    }
    let c = rect.corners();
    let traces: Vec<EdgeTrace> = (0..4)
        .into_par_iter()
        .map(|i| edge_phase(c[i], c[(i + 1) % 4], a, opts, cfg))
        .collect::<Result<_>>()?;
    let mut phase = 0.0;
    let mut samples = 0;
    let mut min_modulus = f64::INFINITY;
    for t in &traces {
        phase += t.phase;
        // Corners are shared by two edges.
        samples += t.samples - 1;
        min_modulus = min_modulus.min(t.min_modulus);
    }
    let raw = phase / (2.0 * PI);
    let snapped = raw.round();
    if (raw - snapped).abs() > opts.snap_tolerance {
        return Err(Error::NonIntegerWinding { value: raw });
    }
    let pole_enclosed = rect.encloses(pole);
    let count = snapped as i64 + i64::from(pole_enclosed);
    if count < 0 {
        return Err(Error::NonIntegerWinding { value: raw });
    }
    Ok(WindingResult {
        count,
        boundary_samples: samples,
        min_boundary_modulus: min_modulus,
        perturbed: false,
        pole_enclosed,
        raw_winding: raw,
        rect: *rect,
    })
}

/// Number of zeros of `Q(·,a)` inside `rect` by the argument principle.
pub fn winding_count(rect: &Rectangle, a: AlphaParam, cfg: &EvalSettings) -> Result<WindingResult> {
    winding_count_with(rect, a, &WindingOptions::default(), cfg)
}

pub fn winding_count_with(
    rect: &Rectangle,
    a: AlphaParam,
    opts: &WindingOptions,
    cfg: &EvalSettings,
) -> Result<WindingResult> {
    a.require_quadrilateral()?;
    match winding_once(rect, a, opts, cfg) {
        Err(Error::ZeroOnBoundary { .. } | Error::NonIntegerWinding { .. } | Error::PoleAtOne)
            if opts.auto_perturb =>
        {
            // Outward first; inward if that lands on the obstruction again.
            let mut r = winding_once(&rect.grown(opts.perturbation), a, opts, cfg)
                .or_else(|_| winding_once(&rect.grown(-opts.perturbation), a, opts, cfg))?;
            r.perturbed = true;
            Ok(r)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalSettings {
        EvalSettings::default()
    }

    fn alpha(a: f64) -> AlphaParam {
        AlphaParam::quadrilateral(a).unwrap()
    }

    #[test]
    fn factor_zero_at_half() {
        let rect = Rectangle::new(-0.5, 1.5, 0.5, 3.0).unwrap();
        let r = winding_count(&rect, alpha(0.5), &cfg()).unwrap();
        assert_eq!(r.count, 1);
        assert!(!r.perturbed && !r.pole_enclosed);
        assert!(r.min_boundary_modulus > 1e-10);
        assert!((r.raw_winding - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_free_rectangle() {
        let rect = Rectangle::new(2.6, 3.5, 1.0, 2.0).unwrap();
        assert_eq!(winding_count(&rect, alpha(1.0 / 3.0), &cfg()).unwrap().count, 0);
    }

    #[test]
    fn first_zeta_zero() {
        let rect = Rectangle::new(-0.5, 1.5, 13.5, 14.5).unwrap();
        assert_eq!(winding_count(&rect, alpha(0.5), &cfg()).unwrap().count, 1);
    }

    #[test]
    fn pole_is_accounted_for() {
        // Around s = 1 with no zeros nearby for a = 0.3.
        let rect = Rectangle::new(0.7, 1.3, -0.3, 0.3).unwrap();
        let r = winding_count(&rect, alpha(0.3), &cfg()).unwrap();
        assert!(r.pole_enclosed);
        assert_eq!(r.raw_winding.round(), -1.0);
        assert_eq!(r.count, 0);
    }

    #[test]
    fn conjugate_rectangles_agree() {
        for &(a, rect) in &[
            (0.5, Rectangle::new(-1.0, 2.0, 0.3, 12.0).unwrap()),
            (0.2, Rectangle::new(-1.5, 2.5, 2.0, 20.0).unwrap()),
        ] {
            let up = winding_count(&rect, alpha(a), &cfg()).unwrap().count;
            let down = winding_count(&rect.conjugate(), alpha(a), &cfg()).unwrap().count;
            assert_eq!(up, down);
        }
    }

    #[test]
    fn split_is_additive() {
        let rect = Rectangle::new(-1.0, 2.0, 0.3, 16.0).unwrap();
        let a = alpha(1.0 / 3.0);
        let whole = winding_count(&rect, a, &cfg()).unwrap().count;
        let parts: i64 = rect
            .split(0.537, 0.471)
            .iter()
            .map(|r| winding_count(r, a, &cfg()).unwrap().count)
            .sum();
        assert_eq!(whole, parts);
        assert!(whole >= 2);
    }

    #[test]
    fn doubled_sampling_agrees() {
        let rect = Rectangle::new(-1.0, 2.0, 0.3, 25.0).unwrap();
        let a = alpha(0.25);
        let once = winding_count_with(&rect, a, &WindingOptions::default(), &cfg()).unwrap();
        let twice = winding_count_with(&rect, a, &WindingOptions::default().doubled(), &cfg()).unwrap();
        assert_eq!(once.count, twice.count);
        assert!(twice.boundary_samples > once.boundary_samples);
    }

    #[test]
    fn zero_on_edge_triggers_perturbation() {
        // The bottom edge passes through the trivial zero at s = -2.
        let rect = Rectangle::new(-3.0, -1.0, 0.0, 1.0).unwrap();
        let opts = WindingOptions {
            auto_perturb: false,
            ..WindingOptions::default()
        };
        let err = winding_count_with(&rect, alpha(0.3), &opts, &cfg()).unwrap_err();
        assert!(matches!(err, Error::ZeroOnBoundary { .. }), "{err:?}");
        let r = winding_count(&rect, alpha(0.3), &cfg()).unwrap();
        assert!(r.perturbed);
        assert_eq!(r.count, 1);
    }
}
