//! Probability bounds for random partial colorings of large projective planes,
//! evaluated in the log domain so they stay finite at orders like `10^250`.

mod feasibility;
mod logreal;

pub use feasibility::{
    feasible, min_feasible_exponent, region_csv, region_scan, FeasibilityChecker, FeasibilityVerdict, RegionPoint,
    Route, Witness,
};
pub use logreal::{LogReal, Order};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use logreal::{ln_binom_upper_real, ln_factorial, ln_shifted};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("feasibility is not monotone on the bracket; raw scan attached")]
    NoTransition { scan: Vec<(f64, bool)> },
}

type Result<T> = std::result::Result<T, BoundsError>;

fn domain(msg: impl Into<String>) -> BoundsError {
    BoundsError::Domain(msg.into())
}

/// Upper-tail Chernoff bound `exp(−a²/(2(np + a/3)))`.
pub fn chernoff_upper(np: f64, a: f64) -> Result<f64> {
    if !(np > 0.0 && a > 0.0) {
        return Err(domain(format!("chernoff needs np > 0 and a > 0, got np={np}, a={a}")));
    }
    Ok((-a * a / (2.0 * (np + a / 3.0))).exp())
}

/// Lower-tail Chernoff bound `exp(−a²/(2np))`.
pub fn chernoff_lower(np: f64, a: f64) -> Result<f64> {
    if !(np > 0.0 && a > 0.0) {
        return Err(domain(format!("chernoff needs np > 0 and a > 0, got np={np}, a={a}")));
    }
    Ok((-a * a / (2.0 * np)).exp())
}

/// Largest exact-path size for [`multinomial_peak_prob`].
pub const EXACT_MULTINOMIAL_MAX: u64 = 60;

/// Probability of the most balanced outcome when `m − k` balls fall uniformly
/// into `c` boxes.
pub fn multinomial_peak_prob(m: u64, k: u64, c: u32) -> Result<LogReal> {
    if m < k || c < 2 {
        return Err(domain(format!("multinomial needs m ≥ k and c ≥ 2, got m={m}, k={k}, c={c}")));
    }
    let total = m - k;
    let parts: Vec<u64> = (0..u64::from(c)).map(|i| (total + i) / u64::from(c)).collect();
    if total <= EXACT_MULTINOMIAL_MAX {
        let fact = |x: u64| (1..=x).fold(BigUint::one(), |acc, i| acc * i);
        let mut den = BigUint::from(c).pow(total as u32);
        for &p in &parts {
            den *= fact(p);
        }
        return Ok(LogReal::from_ln(ln_biguint(&fact(total)) - ln_biguint(&den)));
    }
    let lnmag = ln_gamma(total as f64 + 1.0)
        - parts.iter().map(|&p| ln_gamma(p as f64 + 1.0)).sum::<f64>()
        - total as f64 * f64::from(c).ln();
    Ok(LogReal::from_ln(lnmag))
}

/// Natural log of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit prefix");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of type vectors within `d₁`-distance `distance` of a fixed type,
/// counted as `2^c · C(distance + c, c)`.
pub fn type_vectors_within(distance: u64, c: u32) -> BigUint {
    (BigUint::one() << c) * binom(distance + u64::from(c), u64::from(c))
}

/// Vectors at `d₁`-distance exactly `distance`, counted as `2^c · C(distance + c − 1, c − 1)`.
pub fn type_vectors_at(distance: u64, c: u32) -> BigUint {
    assert!(c >= 1);
    (BigUint::one() << c) * binom(distance + u64::from(c) - 1, u64::from(c) - 1)
}

fn require_order(n: Order) -> Result<()> {
    if n.ln() >= 3f64.ln() - 1e-12 {
        Ok(())
    } else {
        Err(domain(format!("order must be at least 3, got 10^{}", n.log10())))
    }
}

/// `(ln n)^9 / n^{3.5}`.
pub fn dangerous_pair_bound(n: Order) -> Result<LogReal> {
    require_order(n)?;
    Ok(LogReal::from_ln(9.0 * n.ln().ln() - 3.5 * n.ln()))
}

/// `(ln n)^18 / n`.
pub fn triple_bound(n: Order) -> Result<LogReal> {
    require_order(n)?;
    Ok(LogReal::from_ln(18.0 * n.ln().ln() - n.ln()))
}

/// `(ln n)^45 / √n`.
pub fn five_star_bound(n: Order) -> Result<LogReal> {
    require_order(n)?;
    Ok(LogReal::from_ln(45.0 * n.ln().ln() - 0.5 * n.ln()))
}

/// `ln(n + 1 − 11 ln n − √n)`, or `None` when the bracket is not positive.
fn ln_k_bracket(n: Order) -> Option<f64> {
    let r = n.recip();
    let rel = r - 11.0 * n.ln() * r - (-0.5 * n.ln()).exp();
    if rel <= -1.0 {
        None
    } else {
        Some(n.ln() + rel.ln_1p())
    }
}

/// The per-pair factor
/// `K = 2^d · C(22 ln n + d, d) · d^{d/2} / [2π(n + 1 − 11 ln n − √n)]^{(d−1)/2}`.
pub fn k_factor(n: Order, d: u32) -> Result<LogReal> {
    require_order(n)?;
    if d == 0 {
        return Err(domain("d must be at least 1"));
    }
    let bracket = ln_k_bracket(n).ok_or_else(|| domain("n + 1 − 11 ln n − √n is not positive"))?;
    let df = f64::from(d);
    let lnmag = df * std::f64::consts::LN_2 + ln_binom_upper_real(22.0 * n.ln(), d) + 0.5 * df * df.ln()
        - 0.5 * (df - 1.0) * ((2.0 * std::f64::consts::PI).ln() + bracket);
    Ok(LogReal::from_ln(lnmag))
}

/// `ln(n² + n)`.
fn ln_n2_plus_n(n: Order) -> f64 {
    2.0 * n.ln() + n.recip().ln_1p()
}

/// `ln(n² + n + 1)`.
fn ln_num_points(n: Order) -> f64 {
    let r = n.recip();
    2.0 * n.ln() + (r + r * r).ln_1p()
}

/// `ln C(N, k)` for integer `k` with `ln N` given; `None` when some factor `N − i` is not positive.
fn ln_binom_big(ln_big: f64, k: u32) -> Option<f64> {
    let mut acc = 0.0;
    for i in 0..k {
        let rel = -f64::from(i) * (-ln_big).exp();
        if rel <= -1.0 {
            return None;
        }
        acc += ln_shifted(ln_big, f64::from(i));
    }
    Some(acc - ln_factorial(k))
}

/// `P_a = K^{a+1} (n² + n + 1) C(n² + n, a + 1)` with `K` supplied.
pub fn p_a_bound_with_k(n: Order, k: LogReal, a: u32) -> Result<LogReal> {
    require_order(n)?;
    if a == 0 {
        return Err(domain("a must be at least 1"));
    }
    let binom = ln_binom_big(ln_n2_plus_n(n), a + 1).ok_or_else(|| domain("C(n² + n, a + 1) undefined"))?;
    Ok(k.powf(f64::from(a + 1)) * LogReal::from_ln(ln_num_points(n) + binom))
}

/// `P_b = K^{b+1} · 11 ln n · (n² + n + 1) · C(n + 1, b + 1) · (n² + n − (b + 1))^{b+1} / (n + 1)`
/// with `K` supplied.
pub fn p_b_bound_with_k(n: Order, k: LogReal, b: u32) -> Result<LogReal> {
    require_order(n)?;
    if b == 0 {
        return Err(domain("b must be at least 1"));
    }
    let ln_line = n.ln() + n.recip().ln_1p();
    let binom =
        ln_binom_big(ln_line, b + 1).ok_or_else(|| domain(format!("C(n + 1, {}) needs n + 1 ≥ {}", b + 1, b + 1)))?;
    let rest = (ln_n2_plus_n(n) + (-f64::from(b + 1) * (-ln_n2_plus_n(n)).exp()).ln_1p()) * f64::from(b + 1);
    let lnmag = (11.0 * n.ln()).ln() + ln_num_points(n) + binom + rest - ln_line;
    Ok(k.powf(f64::from(b + 1)) * LogReal::from_ln(lnmag))
}

pub fn p_a_bound(n: Order, d: u32, a: u32) -> Result<LogReal> {
    p_a_bound_with_k(n, k_factor(n, d)?, a)
}

pub fn p_b_bound(n: Order, d: u32, b: u32) -> Result<LogReal> {
    p_b_bound_with_k(n, k_factor(n, d)?, b)
}

/// Default upper end of the `m` sweep in [`ec_color_requirement`].
pub const EC_M_MAX: u32 = 400;

/// `min over m in [2, m_max] of (m/(m−1))·(m!·ab·(m−1))^{1/m}`, with the
/// smallest minimizing `m`. Only the product `ab` matters.
pub fn ec_requirement_for_product(ab: f64, m_max: u32) -> (f64, u32) {
    let ln_ab = ab.ln();
    let mut ln_fact = 0.0;
    let mut best = (f64::INFINITY, 0);
    for m in 2..=m_max.max(2) {
        let mf = f64::from(m);
        ln_fact += mf.ln();
        let v = (mf / (mf - 1.0)) * ((ln_fact + ln_ab + (mf - 1.0).ln()) / mf).exp();
        if v < best.0 {
            best = (v, m);
        }
    }
    best
}

pub fn ec_color_requirement(a: u64, b: u64) -> (f64, u32) {
    ec_requirement_for_product(a as f64 * b as f64, EC_M_MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chernoff_examples() {
        assert!((chernoff_upper(1.0, 2.0).unwrap() - (-1.2f64).exp()).abs() < 1e-15);
        assert!((chernoff_lower(1.0, 2.0).unwrap() - (-2.0f64).exp()).abs() < 1e-15);
        assert!(chernoff_upper(0.0, 1.0).is_err());
        assert!(chernoff_lower(1.0, -1.0).is_err());
        assert!((chernoff_upper(5.0, 1e-9).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multinomial_small_exact() {
        let v = multinomial_peak_prob(8, 0, 8).unwrap();
        assert!((v.to_f64() - 40320.0 / 16777216.0).abs() < 1e-15);
        assert_eq!(multinomial_peak_prob(5, 5, 8).unwrap(), LogReal::ONE);
        assert!(multinomial_peak_prob(3, 4, 8).is_err());
    }

    #[test]
    fn multinomial_exact_and_gamma_paths_meet() {
        let exact = multinomial_peak_prob(60, 0, 8).unwrap().lnmag();
        let parts: Vec<f64> = (0..8).map(|i| ((60 + i) / 8) as f64).collect();
        let approx = ln_gamma(61.0) - parts.iter().map(|p| ln_gamma(p + 1.0)).sum::<f64>() - 60.0 * 8f64.ln();
        assert!((exact - approx).abs() < 1e-10);
    }

    #[test]
    fn type_vector_counts() {
        assert_eq!(type_vectors_within(0, 8), BigUint::from(256u32));
        assert_eq!(type_vectors_at(1, 8), BigUint::from(2048u32));
        assert_eq!(type_vectors_within(3, 1), BigUint::from(8u32));
    }

    #[test]
    fn k_at_d_one() {
        let n = Order::new(1e6);
        let k = k_factor(n, 1).unwrap();
        assert!((k.to_f64() - 2.0 * (22.0 * 1e6f64.ln() + 1.0)).abs() < 1e-9);
        assert!(k_factor(Order::new(20.0), 8).is_err());
    }

    #[test]
    fn p_a_zero_k() {
        assert!(p_a_bound_with_k(Order::new(100.0), LogReal::ZERO, 3).unwrap().is_zero());
    }

    #[test]
    fn ec_requirement_small() {
        let (v, m) = ec_color_requirement(1, 1);
        let g2 = 2.0 * 2f64.sqrt();
        assert!(v <= g2 + 1e-12);
        assert!(m >= 2);
        assert_eq!(ec_color_requirement(4, 3), ec_color_requirement(1, 12));
    }
}
