//! Line types, bad and dangerous line pairs, and searches for legitimate
//! colorings (every line has its own color-count vector).

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::plane::{PlaneError, ProjectivePlane};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LegitError {
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("point {0} is uncolored")]
    PartialColoring(usize),
    #[error("{c}^{points} colorings exceed the budget {budget}")]
    BudgetExceeded { c: u32, points: usize, budget: u64 },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
}

/// Colors `1..=c` per point, `None` for uncolored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointColoring {
    colors: Vec<Option<u32>>,
    c: u32,
}

impl PointColoring {
    pub fn new(colors: Vec<Option<u32>>, c: u32) -> Result<Self, LegitError> {
        if c == 0 {
            return Err(LegitError::InvalidColoring("color count must be positive".into()));
        }
        if let Some((p, col)) =
            colors.iter().enumerate().find_map(|(p, x)| x.filter(|&v| v == 0 || v > c).map(|v| (p, v)))
        {
            return Err(LegitError::InvalidColoring(format!("point {p} has color {col} outside 1..={c}")));
        }
        Ok(PointColoring { colors, c })
    }

    pub fn total(colors: Vec<u32>, c: u32) -> Result<Self, LegitError> {
        Self::new(colors.into_iter().map(Some).collect(), c)
    }

    pub fn uncolored(points: usize, c: u32) -> Self {
        PointColoring { colors: vec![None; points], c }
    }

    pub fn colors(&self) -> &[Option<u32>] {
        &self.colors
    }

    pub fn num_colors(&self) -> u32 {
        self.c
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// JSON array with `0` for uncolored points.
    pub fn to_json(&self) -> String {
        let flat: Vec<u32> = self.colors.iter().map(|x| x.unwrap_or(0)).collect();
        serde_json::to_string(&flat).expect("array serializes")
    }

    pub fn from_json(text: &str, c: u32) -> Result<Self, LegitError> {
        let flat: Vec<u32> = serde_json::from_str(text).map_err(|e| LegitError::InvalidColoring(e.to_string()))?;
        Self::new(flat.into_iter().map(|x| (x != 0).then_some(x)).collect(), c)
    }

    fn check_plane(&self, plane: &ProjectivePlane) -> Result<(), LegitError> {
        if self.colors.len() != plane.num_points() {
            return Err(LegitError::InvalidColoring(format!(
                "{} colors for {} points",
                self.colors.len(),
                plane.num_points()
            )));
        }
        Ok(())
    }
}

/// Per-color point counts on a line; uncolored points are not counted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LineType {
    pub counts: Vec<u32>,
}

impl LineType {
    /// `d₁` distance.
    pub fn distance(&self, other: &LineType) -> u64 {
        self.counts.iter().zip(&other.counts).map(|(&a, &b)| u64::from(a.abs_diff(b))).sum()
    }
}

fn type_of(points: &[usize], colors: &[Option<u32>], c: u32) -> LineType {
    let mut counts = vec![0; c as usize];
    for &p in points {
        if let Some(col) = colors[p] {
            counts[col as usize - 1] += 1;
        }
    }
    LineType { counts }
}

pub fn line_type(plane: &ProjectivePlane, coloring: &PointColoring, line: usize) -> Result<LineType, LegitError> {
    coloring.check_plane(plane)?;
    Ok(type_of(plane.points_of_line(line)?, &coloring.colors, coloring.c))
}

pub fn line_types(plane: &ProjectivePlane, coloring: &PointColoring) -> Result<Vec<LineType>, LegitError> {
    (0..plane.num_lines()).map(|l| line_type(plane, coloring, l)).collect()
}

/// All pairs of lines with equal types, each once, in lexicographic order.
pub fn find_bad_pairs(plane: &ProjectivePlane, coloring: &PointColoring) -> Result<Vec<(usize, usize)>, LegitError> {
    coloring.check_plane(plane)?;
    if let Some(p) = coloring.colors.iter().position(Option::is_none) {
        return Err(LegitError::PartialColoring(p));
    }
    let types = line_types(plane, coloring)?;
    let mut groups: HashMap<&LineType, Vec<usize>> = HashMap::new();
    for (l, t) in types.iter().enumerate() {
        groups.entry(t).or_default().push(l);
    }
    let mut pairs: Vec<(usize, usize)> = groups
        .values()
        .flat_map(|ls| ls.iter().enumerate().flat_map(move |(i, &a)| ls[i + 1..].iter().map(move |&b| (a, b))))
        .collect();
    pairs.sort_unstable();
    Ok(pairs)
}

pub fn is_legitimate(plane: &ProjectivePlane, coloring: &PointColoring) -> Result<bool, LegitError> {
    Ok(find_bad_pairs(plane, coloring)?.is_empty())
}

/// Threshold `40 ln n` on the `d₁` distance of dangerous pairs.
pub fn dangerous_threshold(order: usize) -> f64 {
    40.0 * (order as f64).ln()
}

/// Pairs of lines whose types are within `40 ln n` of each other.
pub fn dangerous_pairs(plane: &ProjectivePlane, partial: &PointColoring) -> Result<Vec<(usize, usize)>, LegitError> {
    let types = line_types(plane, partial)?;
    let threshold = dangerous_threshold(plane.order());
    let mut out = Vec::new();
    for i in 0..types.len() {
        for j in i + 1..types.len() {
            if types[i].distance(&types[j]) as f64 <= threshold {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PointColoring),
    Exhausted,
}

/// First legitimate coloring in lexicographic order (point 0 most
/// significant, colors ascending), or `Exhausted`.
///
/// When a candidate has a bad pair, every candidate agreeing with it up to
/// the last point where the two lines differ has the same bad pair, so the
/// enumeration jumps past that whole block.
pub fn brute_force_search(plane: &ProjectivePlane, c: u32, budget: u64) -> Result<SearchOutcome, LegitError> {
    let points = plane.num_points();
    let size = (c as u64).checked_pow(points as u32).filter(|&s| s <= budget);
    if c == 0 || size.is_none() {
        return Err(LegitError::BudgetExceeded { c, points, budget });
    }
    let lines: Vec<&[usize]> = (0..plane.num_lines()).map(|l| plane.points_of_line(l)).collect::<Result<_, _>>()?;
    // last point where lines i and j differ, the block boundary for that pair
    let pivot = |i: usize, j: usize| {
        lines[i]
            .iter()
            .chain(lines[j].iter())
            .copied()
            .filter(|p| !(lines[i].contains(p) && lines[j].contains(p)))
            .max()
            .unwrap_or(0)
    };
    let mut colors: Vec<Option<u32>> = vec![Some(1); points];
    let mut last_bad: Option<(usize, usize)> = None;
    let mut seen: HashMap<LineType, usize> = HashMap::with_capacity(lines.len());
    loop {
        let bad =
            last_bad.filter(|&(i, j)| type_of(lines[i], &colors, c) == type_of(lines[j], &colors, c)).or_else(|| {
                seen.clear();
                lines
                    .iter()
                    .enumerate()
                    .find_map(|(l, pts)| seen.insert(type_of(pts, &colors, c), l).map(|prev| (prev, l)))
            });
        let Some((i, j)) = bad else {
            return Ok(SearchOutcome::Found(PointColoring { colors, c }));
        };
        last_bad = Some((i, j));
        // advance the odometer at the pivot position
        let mut pos = pivot(i, j);
        loop {
            let digit = colors[pos].as_mut().expect("search colorings are total");
            if *digit < c {
                *digit += 1;
                break;
            }
            *digit = 1;
            if pos == 0 {
                return Ok(SearchOutcome::Exhausted);
            }
            pos -= 1;
        }
        for x in &mut colors[pos + 1..] {
            *x = Some(1);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RandomOutcome {
    Found { coloring: PointColoring, iterations: u64 },
    GaveUp { iterations: u64 },
}

/// Draws uniform colorings until one is legitimate.
pub fn randomized_search(
    plane: &ProjectivePlane,
    c: u32,
    seed: u64,
    max_iters: u64,
) -> Result<RandomOutcome, LegitError> {
    if c == 0 {
        return Err(LegitError::InvalidColoring("color count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for it in 1..=max_iters {
        let colors: Vec<u32> = (0..plane.num_points()).map(|_| rng.gen_range(1..=c)).collect();
        let coloring = PointColoring::total(colors, c)?;
        if is_legitimate(plane, &coloring)? {
            return Ok(RandomOutcome::Found { coloring, iterations: it });
        }
    }
    Ok(RandomOutcome::GaveUp { iterations: max_iters })
}
