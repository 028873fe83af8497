//! Generating functions for descent-restricted Dyck words.
//!
//! For a descent set `E`, `φ_E(x) = 1 + Σ_{i∈E} x^i` and the counting series
//! `X_E` solves `X = z φ_E(X)`; the number of full Dyck words of size `2t`
//! with all descents in `E` is the coefficient of `z^{t+1}`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dyck::DescentSet;

/// Largest `N` accepted by [`series_coefficients`].
pub const MAX_SERIES_N: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenfunError {
    #[error("φ(x) − xφ'(x) has no sign change on ({lo}, {hi})")]
    NoRoot { lo: f64, hi: f64 },
    #[error("N = {0} exceeds the series cap {MAX_SERIES_N}")]
    TooManyTerms(usize),
}

/// `φ_E` and its first two derivatives in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSeries {
    set: DescentSet,
    /// Explicit exponents not already produced by the tail.
    finite: Vec<u32>,
}

impl PhiSeries {
    pub fn new(set: DescentSet) -> Self {
        let finite = set
            .explicit()
            .iter()
            .copied()
            .filter(|&i| set.tail().is_none_or(|(s, p)| i < s || (i - s) % p != 0))
            .collect();
        PhiSeries { set, finite }
    }

    pub fn descent_set(&self) -> &DescentSet {
        &self.set
    }

    /// Radius of convergence: 1 with an infinite tail, otherwise unbounded.
    pub fn radius(&self) -> f64 {
        if self.set.tail().is_some() {
            1.0
        } else {
            f64::INFINITY
        }
    }

    /// `(φ, φ', φ'')` at `x`.
    pub fn eval(&self, x: f64) -> (f64, f64, f64) {
        let mut f = 1.0;
        let mut d1 = 0.0;
        let mut d2 = 0.0;
        for &i in &self.finite {
            let i = f64::from(i);
            f += x.powf(i);
            d1 += i * x.powf(i - 1.0);
            d2 += i * (i - 1.0) * x.powf(i - 2.0);
        }
        if let Some((s, p)) = self.set.tail() {
            let (s, p) = (f64::from(s), f64::from(p));
            // x^s · (1 − x^p)^{-1}
            let q = 1.0 - x.powf(p);
            let a = x.powf(s);
            let a1 = s * x.powf(s - 1.0);
            let a2 = s * (s - 1.0) * x.powf(s - 2.0);
            let b = 1.0 / q;
            let b1 = p * x.powf(p - 1.0) / (q * q);
            let b2 = p * (p - 1.0) * x.powf(p - 2.0) / (q * q) + 2.0 * p * p * x.powf(2.0 * p - 2.0) / (q * q * q);
            f += a * b;
            d1 += a1 * b + a * b1;
            d2 += a2 * b + 2.0 * a1 * b1 + a * b2;
        }
        (f, d1, d2)
    }

    /// gcd of the exponents with non-zero coefficient.
    pub fn period(&self) -> u32 {
        let mut g = self.finite.iter().fold(0u32, |g, &i| g.gcd(&i));
        if let Some((s, p)) = self.set.tail() {
            g = g.gcd(&s).gcd(&p);
        }
        g
    }
}

fn mul_truncated(a: &[BigUint], b: &[BigUint], len: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `[C_{0,E}, ..., C_{N,E}]` from the truncated fixed point of `y = xφ_E(y)`.
pub fn series_coefficients(set: &DescentSet, n: usize) -> Result<Vec<BigUint>, GenfunError> {
    if n > MAX_SERIES_N {
        return Err(GenfunError::TooManyTerms(n));
    }
    Ok(series_with_iterations(set, n, n + 1))
}

/// Fixed point with an explicit iteration count; `N + 1` iterations are enough.
pub fn series_with_iterations(set: &DescentSet, n: usize, iterations: usize) -> Vec<BigUint> {
    let len = n + 2;
    let members = set.members_upto(len as u32);
    let mut y = vec![BigUint::zero(); len];
    for _ in 0..iterations {
        // φ(y) = 1 + Σ_{i∈E} y^i, with y^i = O(x^i) so only i < len matter
        let mut phi = vec![BigUint::zero(); len];
        phi[0] = BigUint::one();
        let mut power = phi.clone();
        for i in 1..len as u32 {
            power = mul_truncated(&power, &y, len);
            if members.binary_search(&i).is_ok() {
                for (acc, p) in phi.iter_mut().zip(&power) {
                    *acc += p;
                }
            }
        }
        let mut next = vec![BigUint::zero(); len];
        next[1..].clone_from_slice(&phi[..len - 1]);
        y = next;
    }
    y[1..].to_vec()
}

/// Critical point of `φ_E` and the growth constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauGamma {
    pub tau: f64,
    /// `φ'(τ)`.
    pub gamma: f64,
    /// `φ(τ)/τ`, equal to `gamma` at the critical point.
    pub gamma_ratio: f64,
    /// `|φ(τ) − τφ'(τ)|`.
    pub residual: f64,
    /// `|P(τ)|` for `E` of the form `{2k, 2k+2, ...}`, where
    /// `P(x) = (2k−3)x^{2k+2} + (1−2k)x^{2k} + x⁴ − 2x² + 1`.
    pub poly_residual: Option<f64>,
}

/// `P(x)` for the even tail starting at `2k`.
pub fn even_tail_polynomial(k: u32, x: f64) -> f64 {
    let k2 = f64::from(2 * k);
    (k2 - 3.0) * x.powf(k2 + 2.0) + (1.0 - k2) * x.powf(k2) + x.powi(4) - 2.0 * x * x + 1.0
}

fn even_tail_k(set: &DescentSet) -> Option<u32> {
    match set.tail() {
        Some((s, 2)) if set.explicit().is_empty() && s % 2 == 0 && s >= 4 => Some(s / 2),
        _ => None,
    }
}

pub fn solve_tau_gamma(set: &DescentSet) -> Result<TauGamma, GenfunError> {
    let phi = PhiSeries::new(set.clone());
    let h = |x: f64| {
        let (f, d1, _) = phi.eval(x);
        f - x * d1
    };
    let lo = 1e-9;
    let mut hi = if phi.radius().is_finite() { phi.radius() - 1e-9 } else { 2.0 };
    if !phi.radius().is_finite() {
        while h(hi) > 0.0 && hi < 1e6 {
            hi *= 2.0;
        }
    }
    if !(h(lo) > 0.0 && h(hi) < 0.0) {
        return Err(GenfunError::NoRoot { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if h(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-15 * b {
            break;
        }
    }
    let mut tau = 0.5 * (a + b);
    for _ in 0..3 {
        let (_, _, d2) = phi.eval(tau);
        let step = h(tau) / (tau * d2);
        let next = tau + step;
        if !(next > a && next < b) || step == 0.0 {
            break;
        }
        tau = next;
    }
    let (f, d1, _) = phi.eval(tau);
    Ok(TauGamma {
        tau,
        gamma: d1,
        gamma_ratio: f / tau,
        residual: (f - tau * d1).abs(),
        poly_residual: even_tail_k(set).map(|k| even_tail_polynomial(k, tau).abs()),
    })
}

/// One row of the girth table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GirthRow {
    pub g: u32,
    /// Smallest allowed descent; the set is every even number from it on.
    pub e_start: u32,
    pub tau: f64,
    pub gamma: f64,
}

/// Girths paired with the first even descent length they force.
pub const GIRTH_ROWS: [(u32, u32); 4] = [(3, 4), (7, 6), (53, 52), (220, 218)];

pub fn table_31() -> Result<Vec<GirthRow>, GenfunError> {
    GIRTH_ROWS
        .iter()
        .map(|&(g, start)| {
            let tg = solve_tau_gamma(&DescentSet::even_from(start))?;
            Ok(GirthRow { g, e_start: start, tau: tg.tau, gamma: tg.gamma })
        })
        .collect()
}

/// Palette size `⌈(γ + 2)(Δ − 1)⌉` of the acyclic runner.
pub fn acyclic_colors(gamma: f64, delta: u32) -> u64 {
    let raw = (gamma + 2.0) * f64::from(delta - 1);
    // γ = 2 is attained exactly for the girth-3 row; guard float noise
    (raw - 1e-9).ceil() as u64
}

/// Leading term `d·sqrt(φ(τ)/(2πφ''(τ)))·γ^n / n^{3/2}` for `n = t + 1`,
/// zero unless `n ≡ 1 (mod d)`.
pub fn asymptotic_count(set: &DescentSet, t: u64) -> Result<f64, GenfunError> {
    let phi = PhiSeries::new(set.clone());
    let tg = solve_tau_gamma(set)?;
    let d = u64::from(phi.period());
    let n = t + 1;
    if !(n - 1).is_multiple_of(d) {
        return Ok(0.0);
    }
    let (f, _, d2) = phi.eval(tg.tau);
    let nf = n as f64;
    let ln = (d as f64).ln() + 0.5 * (f / (2.0 * std::f64::consts::PI * d2)).ln() + nf * tg.gamma.ln() - 1.5 * nf.ln();
    Ok(ln.exp())
}

pub fn fibonacci(n: u32) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Catalan numbers by `T_{k+1} = T_k · 2(2k+1)/(k+2)`.
pub fn catalan(n: u32) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * (2 * (2 * u64::from(k) + 1)) / (u64::from(k) + 2);
    }
    c
}

/// Number of plane trees with `n ≥ 1` vertices.
pub fn plane_trees(n: u32) -> BigUint {
    assert!(n >= 1);
    catalan(n - 1)
}
