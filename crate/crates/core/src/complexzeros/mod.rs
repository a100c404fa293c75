//! Non-real zeros of `Q(s,a)`: argument-principle counts over rectangles,
//! the census `N(T)` and its comparison with the Riemann–von Mangoldt main
//! term, sign-change scans on the critical line, and quadtree location.
//!
//! The census relies on every non-real zero lying in the strip
//! `1-σ_a ≤ σ ≤ σ_a`; a zero outside it would not be seen.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sfcore::ComplexValue;

mod census;
mod hardy;
mod locate;
mod winding;

pub use census::{count_nonreal, nonreal_census, rvm_compare, rvm_main_term, NonrealCensus, RvmReport};
pub use hardy::{hardy_scan, HARDY_T_TOLERANCE};
pub use locate::{locate_zeros, locate_zeros_with, refine_zero};
pub use winding::{winding_count, winding_count_with, WindingOptions, WindingResult};

/// Closed rectangle `[sigma_lo, sigma_hi] × [t_lo, t_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rectangle {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        let finite = [sigma_lo, sigma_hi, t_lo, t_hi].iter().all(|x| x.is_finite());
        if !finite || !(sigma_lo < sigma_hi) || !(t_lo < t_hi) {
            return Err(Error::InvalidArgument(format!(
                "invalid rectangle [{sigma_lo}, {sigma_hi}] x [{t_lo}, {t_hi}]"
            )));
        }
        Ok(Self {
            sigma_lo,
            sigma_hi,
            t_lo,
            t_hi,
        })
    }

    /// Corners in counter-clockwise order starting at the lower left.
    pub fn corners(&self) -> [ComplexValue; 4] {
        [
            ComplexValue::new(self.sigma_lo, self.t_lo),
            ComplexValue::new(self.sigma_hi, self.t_lo),
            ComplexValue::new(self.sigma_hi, self.t_hi),
            ComplexValue::new(self.sigma_lo, self.t_hi),
        ]
    }

    pub fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    pub fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    pub fn center(&self) -> ComplexValue {
        ComplexValue::new(
            0.5 * (self.sigma_lo + self.sigma_hi),
            0.5 * (self.t_lo + self.t_hi),
        )
    }

    /// Whether `s` lies in the closed rectangle grown by `margin`.
    pub fn contains(&self, s: ComplexValue, margin: f64) -> bool {
        s.re >= self.sigma_lo - margin
            && s.re <= self.sigma_hi + margin
            && s.im >= self.t_lo - margin
            && s.im <= self.t_hi + margin
    }

    /// Whether `s` lies strictly inside.
    pub fn encloses(&self, s: ComplexValue) -> bool {
        s.re > self.sigma_lo && s.re < self.sigma_hi && s.im > self.t_lo && s.im < self.t_hi
    }

    /// Distance from `s` to the boundary.
    pub fn boundary_distance(&self, s: ComplexValue) -> f64 {
        let dx = if s.re < self.sigma_lo {
            self.sigma_lo - s.re
        } else if s.re > self.sigma_hi {
            s.re - self.sigma_hi
        } else {
            0.0
        };
        let dy = if s.im < self.t_lo {
            self.t_lo - s.im
        } else if s.im > self.t_hi {
            s.im - self.t_hi
        } else {
            0.0
        };
        if dx > 0.0 || dy > 0.0 {
            return dx.hypot(dy);
        }
        (s.re - self.sigma_lo)
            .min(self.sigma_hi - s.re)
            .min(s.im - self.t_lo)
            .min(self.t_hi - s.im)
    }

    /// The rectangle grown by `delta` on every side.
    pub fn grown(&self, delta: f64) -> Self {
        Self {
            sigma_lo: self.sigma_lo - delta,
            sigma_hi: self.sigma_hi + delta,
            t_lo: self.t_lo - delta,
            t_hi: self.t_hi + delta,
        }
    }

    /// Mirror image under complex conjugation.
    pub fn conjugate(&self) -> Self {
        Self {
            sigma_lo: self.sigma_lo,
            sigma_hi: self.sigma_hi,
            t_lo: -self.t_hi,
            t_hi: -self.t_lo,
        }
    }

    /// The four cells cut at fractions `fx` of the width and `fy` of the
    /// height, in the order lower-left, lower-right, upper-left, upper-right.
    pub fn split(&self, fx: f64, fy: f64) -> [Rectangle; 4] {
        let xm = self.sigma_lo + fx * self.width();
        let ym = self.t_lo + fy * self.height();
        [
            Rectangle { sigma_hi: xm, t_hi: ym, ..*self },
            Rectangle { sigma_lo: xm, t_hi: ym, ..*self },
            Rectangle { sigma_hi: xm, t_lo: ym, ..*self },
            Rectangle { sigma_lo: xm, t_lo: ym, ..*self },
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroMethod {
    HardyScan,
    Subdivision,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub s: ComplexValue,
    pub method: ZeroMethod,
    /// `|Q(s,a)|`.
    pub residual: f64,
    pub newton_refined: bool,
    /// Winding count of the cell that isolated the zero; 1 for scan zeros.
    pub multiplicity: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_validation_and_geometry() {
        assert!(Rectangle::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(Rectangle::new(0.0, 1.0, 2.0, 2.0).is_err());
        assert!(Rectangle::new(0.0, f64::NAN, 0.0, 1.0).is_err());
        let r = Rectangle::new(0.0, 2.0, 1.0, 3.0).unwrap();
        assert_eq!(r.center(), ComplexValue::new(1.0, 2.0));
        assert!(r.encloses(ComplexValue::new(1.0, 2.0)));
        assert!(!r.encloses(ComplexValue::new(0.0, 2.0)));
        assert!((r.boundary_distance(ComplexValue::new(0.5, 2.0)) - 0.5).abs() < 1e-15);
        assert!((r.boundary_distance(ComplexValue::new(3.0, 4.0)) - 2f64.sqrt()).abs() < 1e-15);
        let c = r.conjugate();
        assert_eq!((c.t_lo, c.t_hi), (-3.0, -1.0));
        let parts = r.split(0.25, 0.5);
        let area: f64 = parts.iter().map(|p| p.width() * p.height()).sum();
        assert!((area - 4.0).abs() < 1e-14);
        assert_eq!(parts[0].sigma_hi, 0.5);
        assert_eq!(parts[3].t_lo, 2.0);
    }
}
