//! Dirichlet characters, twisted Gauss sums, L-functions through Hurwitz
//! combinations, and the character decomposition of `Q(s, r/q)`.
//!
//! The character sum
//!
//! ```text
//! (1/(2φ(q))) Σ_χ (1+χ(-1)) (χ̄(r) q^s + G(χ̄)) L(s,χ)
//! ```
//!
//! reproduces the Hurwitz half of `Q` exactly, but its periodic half only
//! sees the terms `n` coprime to `q`. [`q_via_characters`] adds the missing
//! terms, grouped by `d = gcd(n, q)`, as `(1/2) Σ_{d|q, d>1} d^{-s} P*_{q/d}`
//! where `P*_m` is the same character sum taken modulo `m` (and
//! `P*_1 = 2ζ(s)`). Both the bare sum and the completed one are reported.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sfcore::{
    gcd, hurwitz_raw, hurwitz_zeta_regularized, q_eval, AlphaParam, ComplexValue, EvalResult,
    EvalSettings, Method,
};

pub const MAX_MODULUS: u32 = 64;

/// A Dirichlet character modulo `q`.
///
/// Values are stored as exact angles: `χ(n) = exp(2πi·angle[n]/order)` on
/// residues coprime to `q`, `None` otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Character {
    modulus: u32,
    order: u32,
    angles: Vec<Option<u32>>,
    is_principal: bool,
    parity: i8,
}

fn root_of_unity(k: u32, n: u32) -> Complex64 {
    let k = k % n;
    // Exact values at the quarter points keep real characters real.
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * k == n {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * k == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

impl Character {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_principal(&self) -> bool {
        self.is_principal
    }

    /// `χ(-1)`, either `1` or `-1`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == 1
    }

    /// `χ(n)` for any integer `n`.
    pub fn value(&self, n: i64) -> Complex64 {
        let q = self.modulus as i64;
        match self.angles[n.rem_euclid(q) as usize] {
            Some(k) => root_of_unity(k, self.order),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// `χ̄(n)`.
    pub fn conj_value(&self, n: i64) -> Complex64 {
        self.value(n).conj()
    }

    /// `χ(0), …, χ(q-1)`.
    pub fn value_table(&self) -> Vec<Complex64> {
        (0..self.modulus as i64).map(|n| self.value(n)).collect()
    }

    /// Checks `χ(mn) = χ(m)χ(n)` on every pair of residues, exactly on the
    /// stored angles.
    pub fn is_multiplicative(&self) -> bool {
        let q = self.modulus as usize;
        for m in 0..q {
            for n in 0..q {
                let prod = self.angles[(m * n) % q];
                let expected = match (self.angles[m], self.angles[n]) {
                    (Some(x), Some(y)) => Some((x + y) % self.order),
                    _ => None,
                };
                if prod != expected {
                    return false;
                }
            }
        }
        true
    }
}

/// Euler's totient.
pub fn euler_phi(q: u32) -> u32 {
    factor(q)
        .iter()
        .map(|&(p, k)| (p - 1) * p.pow(k - 1))
        .product()
}

fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

/// Cyclic generators `(g, ord g)` of `(ℤ/p^kℤ)^×`, with `g` given modulo `p^k`.
fn local_generators(p: u32, k: u32) -> Vec<(u32, u32)> {
    let pk = p.pow(k);
    if p == 2 {
        return match k {
            1 => vec![],
            2 => vec![(3, 2)],
            _ => vec![(pk - 1, 2), (5, pk / 4)],
        };
    }
    let phi = (p - 1) * p.pow(k - 1);
    let g = (2..pk)
        .find(|&g| gcd(g, p) == 1 && multiplicative_order(g, pk) == phi)
        .expect("odd prime powers are cyclic");
    vec![(g, phi)]
}

fn multiplicative_order(g: u32, m: u32) -> u32 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

/// All `φ(q)` characters modulo `q`, principal first.
pub fn enumerate_characters(q: u32) -> Result<Vec<Character>> {
    if !(2..=MAX_MODULUS).contains(&q) {
        return Err(Error::InvalidArgument(format!(
            "modulus must lie in [2, {MAX_MODULUS}], got {q}"
        )));
    }
    let mut gens: Vec<(u32, u32)> = Vec::new(); // (generator mod q, order)
    for (p, k) in factor(q) {
        let pk = p.pow(k);
        for (g, ord) in local_generators(p, k) {
            // CRT lift: g modulo p^k, 1 modulo the cofactor.
            let lifted = (1..q)
                .find(|&x| x % pk == g && x % (q / pk) == 1 % (q / pk))
                .expect("CRT lift exists");
            gens.push((lifted, ord));
        }
    }
    let order = gens.iter().fold(1, |acc, &(_, o)| lcm(acc, o));
    // Discrete logarithms of every unit, by walking all exponent tuples.
    let mut logs: Vec<Option<Vec<u32>>> = vec![None; q as usize];
    let total: u32 = gens.iter().map(|&(_, o)| o).product();
    for index in 0..total {
        let mut rem = index;
        let mut exps = Vec::with_capacity(gens.len());
        let mut x = 1 % q;
        for &(g, o) in &gens {
            let e = rem % o;
            rem /= o;
            for _ in 0..e {
                x = x * g % q;
            }
            exps.push(e);
        }
        logs[x as usize] = Some(exps);
    }
    let orders: Vec<u32> = gens.iter().map(|&(_, o)| o).collect();
    let mut chars = Vec::with_capacity(total as usize);
    for index in 0..total {
        let mut rem = index;
        let mut js = Vec::with_capacity(orders.len());
        for &o in &orders {
            js.push(rem % o);
            rem /= o;
        }
        let angles: Vec<Option<u32>> = logs
            .iter()
            .map(|l| {
                l.as_ref().map(|exps| {
                    exps.iter()
                        .zip(js.iter().zip(&orders))
                        .map(|(&e, (&j, &o))| (j * e % o) * (order / o))
                        .sum::<u32>()
                        % order
                })
            })
            .collect();
        let minus_one = angles[(q - 1) as usize].expect("-1 is a unit");
        let parity = if minus_one == 0 { 1 } else { -1 };
        chars.push(Character {
            modulus: q,
            order,
            angles,
            is_principal: js.iter().all(|&j| j == 0),
            parity,
        });
    }
    debug_assert_eq!(chars.len() as u32, euler_phi(q));
    Ok(chars)
}

/// The twisted Gauss sum `G(χ̄) = Σ_{n=1}^{q} χ̄(n) e^{2πi r n / q}`.
pub fn gauss_sum(chi: &Character, r: i64) -> Result<Complex64> {
    let q = chi.modulus;
    if gcd(r.rem_euclid(q as i64) as u32, q) != 1 {
        return Err(Error::InvalidArgument(format!("gcd({r}, {q}) must be 1")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=q as i64 {
        let k = (r * n).rem_euclid(q as i64) as u32;
        sum += chi.conj_value(n) * root_of_unity(k, q);
    }
    Ok(sum)
}

/// `L(s,χ) = q^{-s} Σ_{m=1}^{q} χ(m) ζ(s, m/q)`.
///
/// For non-principal `χ` the pole parts cancel, so the regularized Hurwitz
/// values are combined and `s = 1` is allowed.
pub fn dirichlet_l(s: ComplexValue, chi: &Character, cfg: &EvalSettings) -> Result<EvalResult> {
    let q = chi.modulus;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for m in 1..=q {
        let c = chi.value(m as i64);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let a = m as f64 / q as f64;
        let h = if chi.is_principal {
            hurwitz_raw(s, a, cfg)?
        } else {
            hurwitz_zeta_regularized(s, a, cfg)?
        };
        sum += c * h.value;
        err += h.est_error;
    }
    let scale = (-s * (q as f64).ln()).exp();
    EvalResult::new(scale * sum, scale.norm() * err, Method::EulerMaclaurin)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub s: ComplexValue,
    pub r: u32,
    pub q: u32,
    /// `Q(s, r/q)` evaluated directly.
    pub lhs: ComplexValue,
    /// The character sum completed with the non-coprime terms.
    pub rhs: ComplexValue,
    pub rel_residual: f64,
    /// The character sum alone.
    pub bare_rhs: ComplexValue,
    pub bare_rel_residual: f64,
}

fn rel_residual(lhs: ComplexValue, rhs: ComplexValue) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(1e-300)
}

/// `(1/φ(q)) Σ_χ (1+χ(-1)) w_χ L(s,χ)` over the characters mod `q`.
fn even_character_sum<F>(
    s: ComplexValue,
    chars: &[Character],
    mut weight: F,
    cfg: &EvalSettings,
) -> Result<ComplexValue>
where
    F: FnMut(&Character) -> Result<ComplexValue>,
{
    let mut sum = Complex64::new(0.0, 0.0);
    for chi in chars.iter().filter(|c| c.is_even()) {
        sum += 2.0 * weight(chi)? * dirichlet_l(s, chi, cfg)?.value;
    }
    Ok(sum / chars.len() as f64)
}

/// `Σ_{gcd(n,m)=1} 2cos(2πrn/m) n^{-s}` through characters modulo `m`.
fn coprime_periodic_pair(s: ComplexValue, r: u32, m: u32, cfg: &EvalSettings) -> Result<ComplexValue> {
    if m == 1 {
        return Ok(2.0 * hurwitz_raw(s, 1.0, cfg)?.value);
    }
    let chars = enumerate_characters(m)?;
    even_character_sum(s, &chars, |chi| gauss_sum(chi, r as i64), cfg)
}

/// Compares `Q(s, r/q)` with its character decomposition.
pub fn q_via_characters(s: ComplexValue, r: u32, q: u32, cfg: &EvalSettings) -> Result<DecompositionReport> {
    if r == 0 || gcd(r, q) != 1 || 2 * r > q {
        return Err(Error::InvalidArgument(format!(
            "need gcd(r, q) = 1 and 0 < r/q <= 1/2, got {r}/{q}"
        )));
    }
    if (s - 1.0).norm() <= 1e-12 {
        return Err(Error::PoleAtOne);
    }
    let chars = enumerate_characters(q)?;
    let q_s = (s * (q as f64).ln()).exp();
    let bare = 0.5
        * even_character_sum(
            s,
            &chars,
            |chi| Ok(chi.conj_value(r as i64) * q_s + gauss_sum(chi, r as i64)?),
            cfg,
        )?;
    let mut missing = Complex64::new(0.0, 0.0);
    for d in 2..=q {
        if q % d == 0 {
            let m = q / d;
            let d_s = (-s * (d as f64).ln()).exp();
            missing += d_s * coprime_periodic_pair(s, r % m.max(1), m, cfg)?;
        }
    }
    let rhs = bare + 0.5 * missing;
    let lhs = q_eval(s, AlphaParam::from_fraction(r, q)?, cfg)?.value;
    Ok(DecompositionReport {
        s,
        r,
        q,
        lhs,
        rhs,
        rel_residual: rel_residual(lhs, rhs),
        bare_rhs: bare,
        bare_rel_residual: rel_residual(lhs, bare),
    })
}

/// The decomposition grid: σ ∈ {−0.5, 0.5, 2}, t ∈ {0, 3, 10}.
pub fn decomposition_grid() -> Vec<ComplexValue> {
    let mut out = Vec::new();
    for &sigma in &[-0.5, 0.5, 2.0] {
        for &t in &[0.0, 3.0, 10.0] {
            out.push(Complex64::new(sigma, t));
        }
    }
    out
}

/// Pairs `(r, q)` with `gcd(r,q) = 1` and `0 < r/q ≤ 1/2`.
pub fn admissible_numerators(q: u32) -> Vec<u32> {
    (1..=q / 2).filter(|&r| gcd(r, q) == 1).collect()
}
