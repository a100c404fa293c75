use quadzeta::complexzeros::{
    hardy_scan, locate_zeros, nonreal_census, rvm_compare, Rectangle, WindingOptions,
};
use quadzeta::realzeros::{classify_real, scan_real_zeros, Verdict};
use quadzeta::{AlphaParam, EvalSettings};

fn cfg() -> EvalSettings {
    EvalSettings::default()
}

fn alpha(a: f64) -> AlphaParam {
    AlphaParam::quadrilateral(a).unwrap()
}

#[test]
fn exactly_two_interior_zeros_below_threshold() {
    for &a in &[0.02, 0.05, 0.08, 0.1] {
        let c = classify_real(alpha(a), 4096, &cfg()).unwrap();
        assert_eq!(c.verdict, Verdict::AtLeastTwo);
        assert_eq!(c.zeros.len(), 2, "a = {a}");
        assert!((c.zeros[0].sigma + c.zeros[1].sigma - 1.0).abs() < 1e-9);
    }
}

#[test]
fn only_trivial_real_zeros_left_of_zero() {
    let zeros = scan_real_zeros(alpha(0.4), -10.5, -0.01, 4096, &cfg()).unwrap();
    let sigmas: Vec<f64> = zeros.iter().map(|z| z.sigma).collect();
    assert_eq!(sigmas.len(), 5, "{sigmas:?}");
    for (k, s) in sigmas.iter().rev().enumerate() {
        assert!((s + 2.0 * (k + 1) as f64).abs() < 1e-9);
    }
}

#[test]
fn local_density_is_logarithmic() {
    // N(T+1) − N(T) ≤ C log T with C calibrated at 2.
    let opts = WindingOptions::default();
    for &a in &[0.2, 1.0 / 3.0, 0.5] {
        for &t in &[10.0, 20.0, 40.0] {
            let n0 = nonreal_census(t, alpha(a), &opts, &cfg()).unwrap().count;
            let n1 = nonreal_census(t + 1.0, alpha(a), &opts, &cfg()).unwrap().count;
            assert!(n1 >= n0);
            assert!((n1 - n0) as f64 <= 2.0 * f64::ln(t), "a = {a}, T = {t}: {n0} -> {n1}");
        }
    }
}

#[test]
fn census_reproduced_with_doubled_sampling() {
    for &(a, t) in &[(0.5, 15.0), (1.0 / 3.0, 30.0), (0.2, 25.0)] {
        let once = nonreal_census(t, alpha(a), &WindingOptions::default(), &cfg()).unwrap();
        let twice =
            nonreal_census(t, alpha(a), &WindingOptions::default().doubled(), &cfg()).unwrap();
        assert_eq!(once.count, twice.count);
        assert!(twice.winding.boundary_samples > once.winding.boundary_samples);
    }
}

#[test]
fn rvm_difference_stays_logarithmic() {
    let third = alpha(1.0 / 3.0);
    for &t in &[40.0, 80.0] {
        let r = rvm_compare(t, third, &cfg()).unwrap();
        assert_eq!(r.empirical_n % 2, 0);
        assert!(r.diff_over_log_t.abs() <= 6.0, "{r:?}");
    }
}

#[test]
fn census_matches_doubled_upper_half() {
    // Conjugate pairing: twice the zeros with 0 < t < T.
    let a = alpha(0.25);
    let census = nonreal_census(20.0, a, &WindingOptions::default(), &cfg()).unwrap();
    let upper = Rectangle::new(census.rect.sigma_lo, census.rect.sigma_hi, 0.05, census.t).unwrap();
    let located = locate_zeros(&upper, a, 12, &cfg()).unwrap();
    assert_eq!(census.count, 2 * located.len() as i64);
}

#[test]
fn hardy_scan_is_a_subset_of_located_zeros() {
    let a = alpha(0.2);
    let scan = hardy_scan(a, 0.0, 25.0, 0.1, &cfg()).unwrap();
    let rect = Rectangle::new(-1.0, 2.0, 0.05, 25.0).unwrap();
    let located = locate_zeros(&rect, a, 12, &cfg()).unwrap();
    assert!(located.len() >= scan.len());
    for h in &scan {
        assert!(
            located.iter().any(|z| (z.s - h.s).norm() <= 1e-6),
            "scan zero {} not located",
            h.s
        );
    }
}
