use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use super::winding::{winding_count_with, WindingOptions, WindingResult};
use super::Rectangle;
use crate::error::{Error, Result};
use crate::identities::zero_free_abscissa;
use crate::realzeros::{scan_real_zeros, Multiplicity};
use crate::sfcore::{AlphaParam, EvalSettings};

const REAL_SCAN_GRID: usize = 4096;

/// Everything behind one value of `N(T)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonrealCensus {
    #[serde(rename = "T")]
    pub t: f64,
    pub a: f64,
    pub sigma_a: f64,
    pub rect: Rectangle,
    pub winding: WindingResult,
    /// Real zeros inside the rectangle, repeated by multiplicity.
    pub real_zeros: Vec<f64>,
    pub count: i64,
}

/// `N(T)` with the full breakdown.
pub fn nonreal_census(
    t: f64,
    a: AlphaParam,
    opts: &WindingOptions,
    cfg: &EvalSettings,
) -> Result<NonrealCensus> {
    a.require_quadrilateral()?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("T must be positive, got {t}")));
    }
    let sigma_a = zero_free_abscissa(a, 0.0)?.sigma_a;
    let base = Rectangle::new(1.0 - sigma_a, sigma_a, -t, t)?;
    let winding = winding_count_with(&base, a, opts, cfg)?;
    let rect = winding.rect;
    let found = scan_real_zeros(a, rect.sigma_lo, rect.sigma_hi, REAL_SCAN_GRID, cfg)?;
    let mut real_zeros = Vec::new();
    for z in found {
        real_zeros.push(z.sigma);
        if z.multiplicity_hint == Multiplicity::DoubleSuspected {
            real_zeros.push(z.sigma);
        }
    }
    let count = winding.count - real_zeros.len() as i64;
    Ok(NonrealCensus {
        t: rect.t_hi,
        a: a.value(),
        sigma_a,
        rect,
        winding,
        real_zeros,
        count,
    })
}

/// Number of non-real zeros with `|Im s| < T`.
pub fn count_nonreal(t: f64, a: AlphaParam, cfg: &EvalSettings) -> Result<i64> {
    Ok(nonreal_census(t, a, &WindingOptions::default(), cfg)?.count)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RvmReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub a: f64,
    #[serde(rename = "empirical_N")]
    pub empirical_n: i64,
    pub main_term: f64,
    pub diff: f64,
    #[serde(rename = "diff_over_logT")]
    pub diff_over_log_t: f64,
}

/// `(T/π) log T − (T/π) log(2eπa²)`.
pub fn rvm_main_term(t: f64, a: f64) -> f64 {
    t / PI * t.ln() - t / PI * (2.0 * E * PI * a * a).ln()
}

/// Empirical `N(T)` against the Riemann–von Mangoldt main term.
pub fn rvm_compare(t: f64, a: AlphaParam, cfg: &EvalSettings) -> Result<RvmReport> {
    if !(5.0..=100.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("T must lie in [5, 100], got {t}")));
    }
    let n = count_nonreal(t, a, cfg)?;
    let main_term = rvm_main_term(t, a.value());
    let diff = n as f64 - main_term;
    Ok(RvmReport {
        t,
        a: a.value(),
        empirical_n: n,
        main_term,
        diff,
        diff_over_log_t: diff / t.ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalSettings {
        EvalSettings::default()
    }

    fn half() -> AlphaParam {
        AlphaParam::quadrilateral(0.5).unwrap()
    }

    #[test]
    fn small_heights_at_half() {
        assert!(count_nonreal(0.0, half(), &cfg()).is_err());
        assert_eq!(count_nonreal(0.5, half(), &cfg()).unwrap(), 0);
        assert_eq!(count_nonreal(2.0 + 1e-9, half(), &cfg()).unwrap(), 2);
        let census = nonreal_census(15.0, half(), &WindingOptions::default(), &cfg()).unwrap();
        assert_eq!(census.count, 8);
        // Trivial zero at -2 inside [1-σ_a, σ_a].
        assert_eq!(census.real_zeros.len(), 1);
        assert!((census.real_zeros[0] + 2.0).abs() < 1e-9);
        assert!(census.winding.pole_enclosed);
    }

    #[test]
    fn interior_real_zeros_are_removed() {
        let a = AlphaParam::quadrilateral(0.08).unwrap();
        let census = nonreal_census(6.0, a, &WindingOptions::default(), &cfg()).unwrap();
        let interior = census.real_zeros.iter().filter(|&&x| x > 0.0 && x < 1.0).count();
        assert_eq!(interior, 2);
        assert_eq!(census.count % 2, 0);
        assert!(census.count >= 0);
    }

    #[test]
    fn rvm_at_fifteen() {
        let r = rvm_compare(15.0, half(), &cfg()).unwrap();
        assert_eq!(r.empirical_n, 8);
        assert!((r.main_term - 6.0).abs() < 0.05, "{}", r.main_term);
        assert!((r.diff - (8.0 - r.main_term)).abs() < 1e-15);
        assert!(rvm_compare(4.0, half(), &cfg()).is_err());
    }

    #[test]
    fn main_term_formula() {
        for &(t, a) in &[(10.0, 0.5), (37.5, 0.2), (99.0, 1.0 / 3.0)] {
            let hand = (t / PI) * t.ln() - (t / PI) * (2.0 * E * PI * a * a).ln();
            assert!((rvm_main_term(t, a) - hand).abs() <= 1e-12 * hand.abs().max(1.0));
        }
    }
}
