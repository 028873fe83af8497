//! Partial Dyck words, descent sets and the plane-tree correspondence.
//!
//! A word over `{0, 1}` is partial Dyck when every prefix has at least as many
//! zeros as ones. A descent is a maximal run of ones.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `t` accepted by [`count_words`] and [`enumerate_words`].
pub const MAX_ENUM_T: u32 = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DyckError {
    #[error("t = {0} exceeds the enumeration cap {MAX_ENUM_T}")]
    BudgetExceeded(u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Allowed descent lengths: an explicit finite set plus an optional
/// arithmetic tail `{start, start + period, ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescentSet {
    explicit: BTreeSet<u32>,
    tail: Option<(u32, u32)>,
}

impl DescentSet {
    pub fn new(explicit: impl IntoIterator<Item = u32>, tail: Option<(u32, u32)>) -> Result<Self, DyckError> {
        let explicit: BTreeSet<u32> = explicit.into_iter().collect();
        if explicit.contains(&0) {
            return Err(DyckError::InvalidInput("descent lengths are positive".into()));
        }
        if let Some((start, period)) = tail {
            if start == 0 || period == 0 {
                return Err(DyckError::InvalidInput("tail start and period must be positive".into()));
            }
        }
        if explicit.is_empty() && tail.is_none() {
            return Err(DyckError::InvalidInput("descent set is empty".into()));
        }
        Ok(DescentSet { explicit, tail })
    }

    /// All positive integers.
    pub fn all() -> Self {
        DescentSet { explicit: BTreeSet::new(), tail: Some((1, 1)) }
    }

    /// Even integers from `start` on; `start` must be even.
    pub fn even_from(start: u32) -> Self {
        assert!(start >= 2 && start.is_multiple_of(2), "even_from needs an even start ≥ 2");
        DescentSet { explicit: BTreeSet::new(), tail: Some((start, 2)) }
    }

    /// `{1}` together with all even integers from 2 on.
    pub fn one_and_evens() -> Self {
        DescentSet { explicit: BTreeSet::from([1]), tail: Some((2, 2)) }
    }

    pub fn finite(items: impl IntoIterator<Item = u32>) -> Result<Self, DyckError> {
        Self::new(items, None)
    }

    pub fn explicit(&self) -> &BTreeSet<u32> {
        &self.explicit
    }

    pub fn tail(&self) -> Option<(u32, u32)> {
        self.tail
    }

    pub fn contains(&self, x: u32) -> bool {
        self.explicit.contains(&x)
            || self.tail.is_some_and(|(start, period)| x >= start && (x - start).is_multiple_of(period))
    }

    /// `min(E \ {1})`, if any.
    pub fn s(&self) -> Option<u32> {
        let from_explicit = self.explicit.iter().copied().find(|&x| x != 1);
        let from_tail = self.tail.map(|(start, period)| if start == 1 { 1 + period } else { start });
        match (from_explicit, from_tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    pub fn max_explicit(&self) -> Option<u32> {
        self.explicit.iter().next_back().copied()
    }

    /// Members no larger than `bound`, ascending.
    pub fn members_upto(&self, bound: u32) -> Vec<u32> {
        (1..=bound).filter(|&x| self.contains(x)).collect()
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.explicit.iter().map(u32::to_string).collect();
        if let Some((start, period)) = self.tail {
            parts.push(match (start, period) {
                (1, 1) => "all".to_string(),
                _ => format!("{period}N+{start}"),
            });
        }
        write!(f, "{}", parts.join("|"))
    }
}

/// Parses `all`, `2N+4` (tail of period 2 from 4), `1|2N+2` and finite lists
/// like `3,5,7` (commas or bars).
impl FromStr for DescentSet {
    type Err = DyckError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || DyckError::InvalidInput(format!("cannot parse descent set {text:?}"));
        let mut explicit = Vec::new();
        let mut tail = None;
        for part in text.split(['|', ',']).map(str::trim) {
            if part.is_empty() {
                return Err(bad());
            }
            if part.eq_ignore_ascii_case("all") {
                tail = Some((1, 1));
            } else if let Some((period, start)) = part.split_once(['N', 'n']) {
                if tail.is_some() {
                    return Err(bad());
                }
                let period: u32 = if period.is_empty() { 1 } else { period.parse().map_err(|_| bad())? };
                let start: u32 = match start.strip_prefix('+') {
                    Some(s) => s.parse().map_err(|_| bad())?,
                    None if start.is_empty() => period,
                    None => return Err(bad()),
                };
                tail = Some((start, period));
            } else {
                explicit.push(part.parse().map_err(|_| bad())?);
            }
        }
        DescentSet::new(explicit, tail)
    }
}

/// A binary word, serialized as an ASCII `0`/`1` string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DyckWord {
    bits: Vec<bool>,
}

impl DyckWord {
    pub fn new(bits: Vec<bool>) -> Self {
        DyckWord { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| !b).count()
    }

    pub fn ones(&self) -> usize {
        self.bits.len() - self.zeros()
    }

    pub fn is_partial_dyck(&self) -> bool {
        is_partial_dyck(&self.bits)
    }

    pub fn is_full_dyck(&self) -> bool {
        self.is_partial_dyck() && self.zeros() == self.ones()
    }

    pub fn descents(&self) -> Vec<usize> {
        descents(&self.bits)
    }
}

impl FromStr for DyckWord {
    type Err = DyckError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        text.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(DyckError::InvalidInput(format!("{other:?} is not a bit"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DyckWord::new)
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn is_partial_dyck(bits: &[bool]) -> bool {
    let mut height: i64 = 0;
    for &b in bits {
        height += if b { -1 } else { 1 };
        if height < 0 {
            return false;
        }
    }
    true
}

/// Lengths of the maximal runs of ones, in order.
pub fn descents(bits: &[bool]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut run = 0;
    for &b in bits {
        if b {
            run += 1;
        } else if run > 0 {
            out.push(run);
            run = 0;
        }
    }
    if run > 0 {
        out.push(run);
    }
    out
}

struct Walker<'a, F: FnMut(&[bool])> {
    zeros: u32,
    ones: u32,
    set: &'a DescentSet,
    word: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[bool])> Walker<'_, F> {
    fn go(&mut self, z: u32, o: u32, run: u32) {
        if z == self.zeros && o == self.ones {
            if run == 0 || self.set.contains(run) {
                (self.visit)(&self.word);
            }
            return;
        }
        if z < self.zeros && (run == 0 || self.set.contains(run)) {
            self.word.push(false);
            self.go(z + 1, o, 0);
            self.word.pop();
        }
        if o < self.ones && o < z {
            self.word.push(true);
            self.go(z, o + 1, run + 1);
            self.word.pop();
        }
    }
}

fn walk(t: u32, r: u32, set: &DescentSet, visit: impl FnMut(&[bool])) -> Result<(), DyckError> {
    if t > MAX_ENUM_T {
        return Err(DyckError::BudgetExceeded(t));
    }
    if r > t {
        return Err(DyckError::InvalidInput(format!("r = {r} exceeds t = {t}")));
    }
    let mut w = Walker { zeros: t, ones: t - r, set, word: Vec::with_capacity(2 * t as usize), visit };
    w.go(0, 0, 0);
    Ok(())
}

/// Number of partial Dyck words with `t` zeros and `t − r` ones whose
/// descents all lie in `set`.
pub fn count_words(t: u32, r: u32, set: &DescentSet) -> Result<BigUint, DyckError> {
    let mut count: u64 = 0;
    walk(t, r, set, |_| count += 1)?;
    Ok(BigUint::from(count))
}

/// The words counted by [`count_words`], in lexicographic order.
pub fn enumerate_words(t: u32, r: u32, set: &DescentSet) -> Result<Vec<DyckWord>, DyckError> {
    let mut out = Vec::new();
    walk(t, r, set, |w| out.push(DyckWord::new(w.to_vec())))?;
    Ok(out)
}

/// Completes a partial word to a full one by appending `(0^{s−1} 1^s)^r`,
/// where `r` is the excess of zeros and `s = min(E \ {1})`.
pub fn pad_injection(word: &DyckWord, set: &DescentSet) -> Result<DyckWord, DyckError> {
    if !word.is_partial_dyck() {
        return Err(DyckError::InvalidInput(format!("{word} is not partial Dyck")));
    }
    if let Some(d) = word.descents().into_iter().find(|&d| !set.contains(d as u32)) {
        return Err(DyckError::InvalidInput(format!("descent {d} of {word} is not allowed")));
    }
    let r = word.zeros() - word.ones();
    if r == 0 {
        return Ok(word.clone());
    }
    let s = set.s().ok_or_else(|| DyckError::InvalidInput("descent set has no element other than 1".into()))? as usize;
    let mut bits = word.bits.clone();
    for _ in 0..r {
        bits.extend(std::iter::repeat_n(false, s - 1));
        bits.extend(std::iter::repeat_n(true, s));
    }
    Ok(DyckWord::new(bits))
}

/// Rooted plane tree stored as its preorder sequence of child counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTree {
    degrees: Vec<usize>,
}

impl PlaneTree {
    /// Validates a preorder child-count sequence.
    pub fn from_preorder_degrees(degrees: Vec<usize>) -> Result<Self, DyckError> {
        let mut open: i64 = 1;
        for (i, &d) in degrees.iter().enumerate() {
            if open <= 0 {
                return Err(DyckError::InvalidInput(format!("sequence closes before vertex {i}")));
            }
            open += d as i64 - 1;
        }
        if open != 0 {
            return Err(DyckError::InvalidInput("degree sequence does not describe one tree".into()));
        }
        Ok(PlaneTree { degrees })
    }

    /// Builds the tree from child lists, root `0`.
    pub fn from_children(children: &[Vec<usize>]) -> Result<Self, DyckError> {
        if children.is_empty() {
            return Err(DyckError::InvalidInput("tree has no vertices".into()));
        }
        let mut degrees = Vec::with_capacity(children.len());
        let mut seen = vec![false; children.len()];
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if v >= children.len() || std::mem::replace(&mut seen[v], true) {
                return Err(DyckError::InvalidInput(format!("vertex {v} repeated or out of range")));
            }
            degrees.push(children[v].len());
            stack.extend(children[v].iter().rev());
        }
        if degrees.len() != children.len() {
            return Err(DyckError::InvalidInput("tree is not connected".into()));
        }
        Self::from_preorder_degrees(degrees)
    }

    pub fn single() -> Self {
        PlaneTree { degrees: vec![0] }
    }

    pub fn preorder_degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn num_vertices(&self) -> usize {
        self.degrees.len()
    }

    /// All plane trees on `k ≥ 1` vertices.
    pub fn all_with_vertices(k: usize) -> Vec<PlaneTree> {
        fn go(k: usize, open: usize, seq: &mut Vec<usize>, out: &mut Vec<PlaneTree>) {
            let left = k - seq.len();
            if left == 0 {
                if open == 0 {
                    out.push(PlaneTree { degrees: seq.clone() });
                }
                return;
            }
            if open == 0 {
                return;
            }
            for d in 0..left {
                // open' = open - 1 + d must be fillable by the remaining left - 1 vertices
                if open - 1 + d > left - 1 {
                    break;
                }
                seq.push(d);
                go(k, open - 1 + d, seq, out);
                seq.pop();
            }
        }
        let mut out = Vec::new();
        if k > 0 {
            go(k, 1, &mut Vec::with_capacity(k), &mut out);
        }
        out
    }
}

/// Preorder walk emitting `0^i 1` for every vertex but the last, where `i`
/// is its number of children, then reversed and complemented.
pub fn tree_to_dyck(tree: &PlaneTree) -> DyckWord {
    let n = tree.degrees.len();
    let mut bits = Vec::with_capacity(2 * (n - 1));
    for &d in &tree.degrees[..n - 1] {
        bits.extend(std::iter::repeat_n(false, d));
        bits.push(true);
    }
    bits.reverse();
    bits.iter_mut().for_each(|b| *b = !*b);
    DyckWord::new(bits)
}

pub fn dyck_to_tree(word: &DyckWord) -> Result<PlaneTree, DyckError> {
    if !word.is_full_dyck() {
        return Err(DyckError::InvalidInput(format!("{word} is not a full Dyck word")));
    }
    let mut bits: Vec<bool> = word.bits.iter().rev().map(|b| !b).collect();
    let mut degrees = Vec::with_capacity(word.len() / 2 + 1);
    let mut run = 0;
    for b in bits.drain(..) {
        if b {
            degrees.push(run);
            run = 0;
        } else {
            run += 1;
        }
    }
    degrees.push(0);
    PlaneTree::from_preorder_degrees(degrees)
}
