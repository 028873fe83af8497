use std::collections::BTreeMap;

use serde::Serialize;

use super::{EcError, RecordEntry};
use crate::dyck::DyckWord;

/// `θ(w) = 1 + Σ_i (w_i − 1)·base^{i−1}` for a word with letters in `[1, base]`.
pub fn theta(word: &[u32], base: u64) -> u64 {
    word.iter().rev().fold(0u64, |acc, &w| acc * base + u64::from(w - 1)) + 1
}

/// The length-`len` word with `θ(w) = l`.
pub fn theta_inverse(l: u64, len: usize, base: u64) -> Vec<u32> {
    let mut rest = l - 1;
    (0..len)
        .map(|_| {
            let digit = rest % base;
            rest /= base;
            digit as u32 + 1
        })
        .collect()
}

/// What [`project_record`] needs to know about the instance.
#[derive(Debug, Clone, PartialEq)]
pub enum RecordTable {
    /// Acyclic edge coloring with maximum degree `delta`.
    Acyclic { delta: u32 },
    /// Variable framework: `d[l]` events per variable with `l` resampled
    /// variables, and `m` bad configurations per event.
    Generic { d: BTreeMap<u32, u64>, m: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Projection {
    /// One digit word per step: `0` followed by the entry's letters.
    pub r_star: Vec<String>,
    /// The words of `r_star` concatenated.
    pub r_bullet: String,
    /// `r_bullet` with every non-zero digit replaced by `1`.
    pub r_circle: String,
}

impl Projection {
    pub fn circle_word(&self) -> DyckWord {
        self.r_circle.parse().expect("mask is binary")
    }
}

fn digit(x: u32) -> char {
    char::from_digit(x, 36).expect("letter below 36")
}

/// Rewrites a record as digit words. A cycle entry `(k, ℓ)` becomes `0`
/// followed by the `2k − 2` letters of `θ⁻¹(ℓ)` over `[1, Δ − 1]`; a
/// variable entry `(α, β, γ)` becomes `0` followed by `α` letters over
/// `[1, b]`, `b = ⌈(d_α·m)^{1/α}⌉`, encoding `(β − 1)·m + γ` the same way.
pub fn project_record(record: &[RecordEntry], table: &RecordTable) -> Result<Projection, EcError> {
    let mut r_star = Vec::with_capacity(record.len());
    for (i, entry) in record.iter().enumerate() {
        let bad = |msg: String| EcError::InvalidRecord(format!("entry {i}: {msg}"));
        let letters: Vec<u32> = match (*entry, table) {
            (RecordEntry::Empty, _) => Vec::new(),
            (RecordEntry::CycleFix { k, l }, RecordTable::Acyclic { delta }) => {
                if k < 2 || *delta < 2 {
                    return Err(bad(format!("cycle half-length {k} with Δ = {delta}")));
                }
                let base = u64::from(delta - 1);
                let len = 2 * k as usize - 2;
                let max = base.checked_pow(len as u32).ok_or_else(|| bad("ℓ range overflows".into()))?;
                if l == 0 || l > max {
                    return Err(bad(format!("ℓ = {l} outside [1, {max}]")));
                }
                theta_inverse(l, len, base)
            }
            (RecordEntry::Triple { alpha, beta, gamma }, RecordTable::Generic { d, m }) => {
                let d_alpha = *d.get(&alpha).ok_or_else(|| bad(format!("no events resample {alpha} variables")))?;
                if alpha == 0 || beta == 0 || u64::from(beta) > d_alpha || gamma == 0 || u64::from(gamma) > *m {
                    return Err(bad(format!("({alpha}, {beta}, {gamma}) outside d = {d_alpha}, m = {m}")));
                }
                let total = d_alpha * m;
                let mut b = ((total as f64).powf(1.0 / f64::from(alpha)).floor() as u64).max(1);
                while b.checked_pow(alpha).is_none_or(|p| p < total) {
                    b += 1;
                }
                if b > 35 {
                    return Err(bad(format!("alphabet of size {b} has no single-digit letters")));
                }
                theta_inverse((u64::from(beta) - 1) * m + u64::from(gamma), alpha as usize, b)
            }
            _ => return Err(bad("entry kind does not match the table".into())),
        };
        let mut word = String::with_capacity(letters.len() + 1);
        word.push('0');
        word.extend(letters.into_iter().map(digit));
        r_star.push(word);
    }
    let r_bullet: String = r_star.concat();
    let r_circle = r_bullet.chars().map(|c| if c == '0' { '0' } else { '1' }).collect();
    Ok(Projection { r_star, r_bullet, r_circle })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_letters() {
        assert_eq!(theta_inverse(4, 4, 3), vec![1, 2, 1, 1]);
        assert_eq!(theta_inverse(15, 4, 3), vec![3, 2, 2, 1]);
        assert_eq!(theta(&[3, 2, 2, 1], 3), 15);
        assert_eq!(theta(&[1, 1], 1), 1);
    }

    #[test]
    fn all_empty() {
        let p = project_record(&[RecordEntry::Empty; 4], &RecordTable::Acyclic { delta: 3 }).unwrap();
        assert_eq!(p.r_circle, "0000");
        assert!(p.circle_word().descents().is_empty());
    }

    #[test]
    fn rejects_out_of_range() {
        let t = RecordTable::Acyclic { delta: 4 };
        assert!(project_record(&[RecordEntry::CycleFix { k: 3, l: 82 }], &t).is_err());
        assert!(project_record(&[RecordEntry::Triple { alpha: 1, beta: 1, gamma: 1 }], &t).is_err());
    }

    #[test]
    fn generic_letters() {
        let t = RecordTable::Generic { d: BTreeMap::from([(3, 4)]), m: 1 };
        let p = project_record(&[RecordEntry::Empty, RecordEntry::Triple { alpha: 3, beta: 4, gamma: 1 }], &t).unwrap();
        assert_eq!(p.r_circle, "00111");
        assert_eq!(p.r_star[1].len(), 4);
    }
}
