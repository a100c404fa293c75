use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub(crate) const BERNOULLI_MAX: usize = 30;

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
    }
    row
}

fn exact_table() -> &'static [f64; BERNOULLI_MAX + 1] {
    static TABLE: OnceLock<[f64; BERNOULLI_MAX + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_m = -1/(m+1) Σ_{k<m} C(m+1,k) B_k, exactly in rationals.
        let mut exact: Vec<BigRational> = Vec::with_capacity(BERNOULLI_MAX + 1);
        exact.push(BigRational::one());
        for m in 1..=BERNOULLI_MAX {
            let row = binomial_row(m + 1);
            let mut acc = BigRational::zero();
            for (k, b) in exact.iter().enumerate() {
                acc += BigRational::from_integer(row[k].clone()) * b;
            }
            exact.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let mut out = [0.0; BERNOULLI_MAX + 1];
        for (slot, b) in out.iter_mut().zip(exact.iter()) {
            // Numerators and denominators up to B_30 are exact in binary64,
            // so a single division rounds correctly.
            *slot = b.numer().to_f64().unwrap() / b.denom().to_f64().unwrap();
        }
        out
    })
}

/// `B_0 … B_{n_max}` with the convention `B_1 = -1/2`.
///
/// # Panics
///
/// If `n_max > 30`.
pub fn bernoulli_table(n_max: usize) -> Vec<f64> {
    assert!(
        n_max <= BERNOULLI_MAX,
        "bernoulli_table supports n_max <= {BERNOULLI_MAX}"
    );
    exact_table()[..=n_max].to_vec()
}

/// `B_{2k} / (2k)!` for `k = 1..=15`.
pub(crate) fn scaled_even_bernoulli() -> &'static [f64; 15] {
    static SCALED: OnceLock<[f64; 15]> = OnceLock::new();
    SCALED.get_or_init(|| {
        let b = exact_table();
        let mut out = [0.0; 15];
        let mut fact = 1.0f64;
        let mut n = 0u32;
        for (k, slot) in out.iter_mut().enumerate() {
            let two_k = 2 * (k + 1) as u32;
            while n < two_k {
                n += 1;
                fact *= n as f64;
            }
            *slot = b[two_k as usize] / fact;
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let b = bernoulli_table(30);
        assert_eq!(b[0], 1.0);
        assert_eq!(b[1], -0.5);
        assert_eq!(b[2], 1.0 / 6.0);
        assert_eq!(b[3], 0.0);
        assert_eq!(b[12], -691.0 / 2730.0);
        assert_eq!(b[30], 8_615_841_276_005.0 / 14_322.0);
        for n in (3..=29).step_by(2) {
            assert_eq!(b[n], 0.0, "B_{n}");
        }
    }

    #[test]
    fn scaled_values_match_zeta_formula() {
        // B_{2k}/(2k)! = (-1)^{k+1} 2 ζ(2k) / (2π)^{2k}
        let scaled = scaled_even_bernoulli();
        for (k, &v) in scaled.iter().enumerate() {
            let two_k = 2 * (k + 1) as i32;
            // Partial sum plus an Euler–Maclaurin tail.
            let big_n = 1000.0f64;
            let head: f64 = (1..1000).map(|n| (n as f64).powi(-two_k)).sum();
            let p = two_k as f64;
            let zeta = head
                + big_n.powf(1.0 - p) / (p - 1.0)
                + 0.5 * big_n.powf(-p)
                + p * big_n.powf(-p - 1.0) / 12.0;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let expected = sign * 2.0 * zeta / (2.0 * std::f64::consts::PI).powi(two_k);
            assert!(((v - expected) / expected).abs() < 1e-13, "k = {}", k + 1);
        }
    }

    #[test]
    #[should_panic]
    fn table_bound_enforced() {
        bernoulli_table(31);
    }
}
