//! Entropy, relative entropy and prefix codes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodingError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("Kraft sum {0} exceeds 1")]
    KraftViolated(String),
    #[error("malformed code: {0}")]
    Malformed(String),
}

/// A finite probability distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self, CodingError> {
        if probs.is_empty() {
            return Err(CodingError::Domain("empty distribution".into()));
        }
        if let Some(&bad) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(CodingError::Domain(format!("probability {bad} is negative or not finite")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(CodingError::Domain(format!("probabilities sum to {total}")));
        }
        Ok(Distribution { probs })
    }

    /// Normalizes non-negative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self, CodingError> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(CodingError::Domain("weights must have a positive finite sum".into()));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(k: usize) -> Self {
        Distribution { probs: vec![1.0 / k as f64; k] }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

fn check_base(base: f64) -> Result<f64, CodingError> {
    if base > 1.0 && base.is_finite() {
        Ok(base.ln())
    } else {
        Err(CodingError::Domain(format!("log base {base} must exceed 1")))
    }
}

/// `−Σ p log p`, with `0 log 0 = 0`.
pub fn entropy(p: &Distribution, base: f64) -> Result<f64, CodingError> {
    let ln_base = check_base(base)?;
    Ok(-p.probs.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>() / ln_base)
}

/// `Σ p log(p/q)`; infinite when `q` vanishes where `p` does not.
pub fn relative_entropy(p: &Distribution, q: &Distribution, base: f64) -> Result<f64, CodingError> {
    let ln_base = check_base(base)?;
    if p.len() != q.len() {
        return Err(CodingError::Domain(format!("supports differ: {} vs {}", p.len(), q.len())));
    }
    let mut acc = 0.0;
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += a * (a / b).ln();
    }
    Ok(acc / ln_base)
}

/// `Σ D^{−l_i}` as an exact rational.
pub fn kraft_sum(lengths: &[u32], d: u32) -> Result<BigRational, CodingError> {
    if d < 2 {
        return Err(CodingError::Domain(format!("alphabet size {d} must be at least 2")));
    }
    if lengths.contains(&0) {
        return Err(CodingError::Domain("codeword lengths must be positive".into()));
    }
    let base = BigInt::from(d);
    Ok(lengths
        .iter()
        .map(|&l| BigRational::new(BigInt::one(), num_traits::pow(base.clone(), l as usize)))
        .fold(BigRational::zero(), |acc, x| acc + x))
}

/// Code over the digits `0..D`, one word per input symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCode {
    d: u32,
    words: Vec<Vec<u32>>,
}

/// JSON form `{D, words: ["0", "10", ...]}` with base-36 digits.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodeRecord {
    #[serde(rename = "D")]
    pub d: u32,
    pub words: Vec<String>,
}

impl PrefixCode {
    /// Checks digits and the prefix-free property.
    pub fn new(d: u32, words: Vec<Vec<u32>>) -> Result<Self, CodingError> {
        if !(2..=36).contains(&d) {
            return Err(CodingError::Malformed(format!("alphabet size {d} outside 2..=36")));
        }
        if words.iter().any(|w| w.is_empty() || w.iter().any(|&x| x >= d)) {
            return Err(CodingError::Malformed("words must be non-empty strings over 0..D".into()));
        }
        let code = PrefixCode { d, words };
        if let Some((i, j)) = code.prefix_violation() {
            return Err(CodingError::Malformed(format!("word {i} is a prefix of word {j}")));
        }
        Ok(code)
    }

    pub fn alphabet(&self) -> u32 {
        self.d
    }

    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.words.iter().map(|w| w.len() as u32).collect()
    }

    /// A pair `(i, j)` where word `i` is a prefix of word `j`.
    pub fn prefix_violation(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.words.len()).collect();
        order.sort_by(|&a, &b| self.words[a].cmp(&self.words[b]));
        // in lexicographic order a word is followed directly by its extensions
        order.windows(2).find(|w| self.words[w[1]].starts_with(&self.words[w[0]])).map(|w| (w[0], w[1]))
    }

    pub fn is_prefix_free(&self) -> bool {
        self.prefix_violation().is_none()
    }

    pub fn word_string(&self, i: usize) -> String {
        self.words[i].iter().map(|&x| char::from_digit(x, 36).expect("digit below 36")).collect()
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord { d: self.d, words: (0..self.words.len()).map(|i| self.word_string(i)).collect() }
    }

    pub fn from_record(record: &CodeRecord) -> Result<Self, CodingError> {
        let words = record
            .words
            .iter()
            .map(|w| {
                w.chars()
                    .map(|c| c.to_digit(36).ok_or_else(|| CodingError::Malformed(format!("bad digit {c:?}"))))
                    .collect::<Result<Vec<u32>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(record.d, words)
    }

    pub fn from_json(text: &str) -> Result<Self, CodingError> {
        let record: CodeRecord = serde_json::from_str(text).map_err(|e| CodingError::Malformed(e.to_string()))?;
        Self::from_record(&record)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("code serializes")
    }
}

/// Canonical prefix code: symbols are taken in nondecreasing length order
/// and each receives the first free branch of its length.
pub fn code_from_lengths(lengths: &[u32], d: u32) -> Result<PrefixCode, CodingError> {
    let sum = kraft_sum(lengths, d)?;
    if sum > BigRational::one() {
        return Err(CodingError::KraftViolated(sum.to_string()));
    }
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&i| (lengths[i], i));
    let mut words = vec![Vec::new(); lengths.len()];
    let mut current: Vec<u32> = Vec::new();
    for (rank, &i) in order.iter().enumerate() {
        if rank > 0 {
            // next branch at the current depth
            let mut pos = current.len();
            loop {
                pos -= 1;
                current[pos] += 1;
                if current[pos] < d {
                    break;
                }
                current[pos] = 0;
                assert!(pos > 0, "Kraft sum ≤ 1 leaves a free branch");
            }
        }
        current.resize(lengths[i] as usize, 0);
        words[i] = current.clone();
    }
    PrefixCode::new(d, words)
}

/// `⌈−log_D p_i⌉`, `None` for zero-probability symbols, and length 1 for a
/// symbol of probability 1.
pub fn shannon_lengths(p: &Distribution, d: u32) -> Result<Vec<Option<u32>>, CodingError> {
    if d < 2 {
        return Err(CodingError::Domain(format!("alphabet size {d} must be at least 2")));
    }
    let ln_d = f64::from(d).ln();
    Ok(p.probs.iter().map(|&x| (x > 0.0).then(|| ((-x.ln() / ln_d - 1e-12).ceil() as u32).max(1))).collect())
}

/// `Σ p_i l_i` over symbols that have a codeword.
pub fn expected_length(p: &Distribution, lengths: &[Option<u32>]) -> Result<f64, CodingError> {
    if lengths.len() != p.len() {
        return Err(CodingError::Domain(format!("{} lengths for {} symbols", lengths.len(), p.len())));
    }
    Ok(p.probs.iter().zip(lengths).filter_map(|(&x, l)| l.map(|l| x * f64::from(l))).sum())
}

/// Binary codeword lengths for the outcomes of one step of an
/// entropy-compression run.
pub fn ec_code_lengths(step_distribution: &Distribution) -> Result<Vec<Option<u32>>, CodingError> {
    shannon_lengths(step_distribution, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(p: &[f64]) -> Distribution {
        Distribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert!((entropy(&dist(&[0.5, 0.25, 0.125, 0.125]), 2.0).unwrap() - 1.75).abs() < 1e-15);
        assert!((entropy(&Distribution::uniform(8), 2.0).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(entropy(&dist(&[1.0, 0.0]), 2.0).unwrap(), 0.0);
        assert!(entropy(&dist(&[1.0]), 1.0).is_err());
    }

    #[test]
    fn relative_entropy_examples() {
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[0.75, 0.25]);
        assert!((relative_entropy(&p, &q, 2.0).unwrap() - (1.0 - 0.5 * 3f64.log2())).abs() < 1e-12);
        assert!((relative_entropy(&q, &p, 2.0).unwrap() - (0.75 * 3f64.log2() - 1.0)).abs() < 1e-12);
        assert_eq!(relative_entropy(&p, &p, 2.0).unwrap(), 0.0);
        assert_eq!(relative_entropy(&p, &dist(&[1.0, 0.0]), 2.0).unwrap(), f64::INFINITY);
        assert_eq!(relative_entropy(&dist(&[1.0, 0.0]), &p, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn invalid_distributions() {
        assert!(Distribution::new(vec![0.5, 0.4]).is_err());
        assert!(Distribution::new(vec![-0.5, 1.5]).is_err());
        assert!(Distribution::new(vec![]).is_err());
    }

    #[test]
    fn kraft_and_codes() {
        assert!(kraft_sum(&[1, 2, 3, 3], 2).unwrap().is_one());
        let code = code_from_lengths(&[1, 2, 3, 3], 2).unwrap();
        let words: Vec<String> = (0..4).map(|i| code.word_string(i)).collect();
        assert_eq!(words, ["0", "10", "110", "111"]);
        assert!(matches!(code_from_lengths(&[1, 1, 1], 2), Err(CodingError::KraftViolated(_))));
        let code = code_from_lengths(&[3, 1, 2], 2).unwrap();
        assert_eq!(code.lengths(), vec![3, 1, 2]);
        assert!(code.is_prefix_free());
        let ternary = code_from_lengths(&[1, 1, 2, 2, 2], 3).unwrap();
        assert!(ternary.is_prefix_free());
        assert!(kraft_sum(&[0], 2).is_err());
    }

    #[test]
    fn binary_code_matches_dyadic_intervals() {
        let code = code_from_lengths(&[1, 2, 3, 3], 2).unwrap();
        let mut start = 0.0;
        for (i, w) in code.words().iter().enumerate() {
            let value: f64 = w.iter().enumerate().map(|(k, &b)| f64::from(b) * 0.5f64.powi(k as i32 + 1)).sum();
            assert_eq!(value, start, "word {i} starts its interval");
            start += 0.5f64.powi(w.len() as i32);
        }
    }

    #[test]
    fn shannon_examples() {
        let p = dist(&[0.5, 0.25, 0.125, 0.125]);
        let l = shannon_lengths(&p, 2).unwrap();
        assert_eq!(l, [Some(1), Some(2), Some(3), Some(3)]);
        assert!((expected_length(&p, &l).unwrap() - 1.75).abs() < 1e-15);
        assert_eq!(shannon_lengths(&Distribution::uniform(3), 2).unwrap(), [Some(2); 3]);
        assert_eq!(shannon_lengths(&dist(&[1.0]), 2).unwrap(), [Some(1)]);
        assert_eq!(shannon_lengths(&dist(&[1.0, 0.0]), 2).unwrap(), [Some(1), None]);
        assert_eq!(ec_code_lengths(&dist(&[0.5, 0.5])).unwrap(), [Some(1), Some(1)]);
        let l = ec_code_lengths(&dist(&[0.75, 0.25])).unwrap();
        assert_eq!(l, [Some(1), Some(2)]);
        assert!((expected_length(&dist(&[0.75, 0.25]), &l).unwrap() - 1.25).abs() < 1e-15);
    }

    #[test]
    fn code_json_round_trip() {
        let code = code_from_lengths(&[2, 2, 2, 3, 3], 2).unwrap();
        assert_eq!(PrefixCode::from_json(&code.to_json()).unwrap(), code);
        assert!(PrefixCode::from_json("{\"D\":2,\"words\":[\"0\",\"01\"]}").is_err());
        assert!(PrefixCode::from_json("{\"D\":2,\"words\":[\"2\"]}").is_err());
    }
}
