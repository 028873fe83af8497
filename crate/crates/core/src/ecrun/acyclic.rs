//! Acyclic edge coloring by entropy compression.
//!
//! Each step colors the lowest-index uncolored edge `uv` with the `F`-th
//! color (ascending) not forbidden by
//! 1. an edge at `u` or `v`, or
//! 2. an edge `xy` with `ux`, `vy` present and equally colored,
//!
//! where `F` is the next tape value. If `uv` now closes a two-colored cycle,
//! all its edges except the two following `uv` are uncolored and the cycle is
//! written to the record as `(k, ℓ)`.
//!
//! `ℓ` encodes the cycle as a walk from the smaller endpoint of `uv`: at each
//! of the first `2k − 2` vertices the next edge is chosen among the other
//! incident edges sorted by index, and the 1-based choices `w` give
//! `ℓ = θ(w)`. The last edge is forced.

use std::collections::BTreeSet;

use super::graph::{is_acyclic_coloring, Graph};
use super::record::{theta, theta_inverse};
use super::{flatten_state, EcError, RandomTape, RecordEntry, Status, TraceDump, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcyclicRun {
    pub status: Status,
    pub colors: Vec<Option<u32>>,
    pub record: Vec<RecordEntry>,
    pub consumed: Vec<u32>,
    pub steps: Vec<TraceStep>,
}

impl AcyclicRun {
    pub fn dump(&self) -> TraceDump {
        TraceDump { status: self.status, steps: self.steps.clone(), final_state: flatten_state(&self.colors) }
    }
}

/// A two-colored cycle through the edge just colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInfo {
    pub k: u32,
    /// Edges `e_j, e_{i2}, ..., e_{i2k}` oriented so that `i2 < i2k`.
    pub oriented: Vec<usize>,
    /// Edges in walk order from the smaller endpoint of `e_j`, excluding `e_j`.
    pub walk: Vec<usize>,
}

impl CycleInfo {
    fn from_walk(j: usize, walk: Vec<usize>) -> Self {
        let k = (walk.len() as u32).div_ceil(2);
        let mut oriented = Vec::with_capacity(walk.len() + 1);
        oriented.push(j);
        if walk[0] < walk[walk.len() - 1] {
            oriented.extend(walk.iter().copied());
        } else {
            oriented.extend(walk.iter().rev().copied());
        }
        CycleInfo { k, oriented, walk }
    }

    /// The two edges that keep their colors.
    pub fn retained(&self) -> [usize; 2] {
        [self.oriented[1], self.oriented[2]]
    }

    /// Edges uncolored by the fix, `e_j` included.
    pub fn uncolored(&self) -> Vec<usize> {
        let keep = self.retained();
        self.oriented.iter().copied().filter(|e| !keep.contains(e)).collect()
    }
}

fn forbidden_span(g: &Graph) -> u32 {
    2 * (g.max_degree().saturating_sub(1) as u32)
}

/// Colors of `1..=K` allowed for edge `j`, ascending.
pub fn available_colors(g: &Graph, k_colors: u32, colors: &[Option<u32>], j: usize) -> Vec<u32> {
    let (u, v) = g.edge(j);
    let mut banned = BTreeSet::new();
    for &(_, e) in g.incident(u).iter().chain(g.incident(v)) {
        if e != j {
            if let Some(c) = colors[e] {
                banned.insert(c);
            }
        }
    }
    for &(x, ux) in g.incident(u) {
        let Some(a) = colors[ux].filter(|_| x != v) else { continue };
        for &(y, vy) in g.incident(v) {
            if y == u || y == x || colors[vy] != Some(a) {
                continue;
            }
            if let Some(c) = g.edge_between(x, y).and_then(|xy| colors[xy]) {
                banned.insert(c);
            }
        }
    }
    (1..=k_colors).filter(|c| !banned.contains(c)).collect()
}

fn edge_with_color(g: &Graph, colors: &[Option<u32>], x: usize, c: u32, skip: usize) -> Option<(usize, usize)> {
    g.incident(x).iter().copied().find(|&(_, e)| e != skip && colors[e] == Some(c))
}

/// All two-colored cycles through the colored edge `j`, as walks from its
/// smaller endpoint, then the canonical one: shortest, then smallest oriented
/// edge sequence.
pub fn canonical_cycle(g: &Graph, colors: &[Option<u32>], j: usize) -> Option<CycleInfo> {
    let (u, v) = g.edge(j);
    let alpha = colors[j]?;
    let mut best: Option<CycleInfo> = None;
    let mut betas: Vec<u32> = g.incident(v).iter().filter_map(|&(_, e)| colors[e]).filter(|&c| c != alpha).collect();
    betas.sort_unstable();
    for beta in betas {
        let mut path = Vec::new();
        let (mut x, mut prev, mut want) = (v, j, beta);
        let closed = loop {
            let Some((y, e)) = edge_with_color(g, colors, x, want, prev) else { break false };
            path.push(e);
            if y == u {
                break want == beta;
            }
            if path.len() > g.num_edges() {
                break false;
            }
            x = y;
            prev = e;
            want = if want == beta { alpha } else { beta };
        };
        if !closed {
            continue;
        }
        path.reverse();
        let info = CycleInfo::from_walk(j, path);
        let better =
            best.as_ref().is_none_or(|b| (info.oriented.len(), &info.oriented) < (b.oriented.len(), &b.oriented));
        if better {
            best = Some(info);
        }
    }
    best
}

fn min_endpoint(g: &Graph, j: usize) -> (usize, usize) {
    let (a, b) = g.edge(j);
    (a.min(b), a.max(b))
}

/// Choice word of the first `2k − 2` walk edges.
pub fn encode_walk(g: &Graph, j: usize, walk: &[usize]) -> Vec<u32> {
    let (mut x, _) = min_endpoint(g, j);
    let mut prev = j;
    let mut word = Vec::with_capacity(walk.len().saturating_sub(1));
    for &e in &walk[..walk.len() - 1] {
        let others: Vec<usize> = g.incident(x).iter().map(|&(_, f)| f).filter(|&f| f != prev).collect();
        let rank = others.iter().position(|&f| f == e).expect("walk edge is incident");
        word.push(rank as u32 + 1);
        let (a, b) = g.edge(e);
        x = if a == x { b } else { a };
        prev = e;
    }
    word
}

/// Inverse of [`encode_walk`]: the walk edges, or an error if the word does
/// not describe a simple cycle closing at the other endpoint of `e_j`.
pub fn decode_walk(g: &Graph, j: usize, word: &[u32]) -> Result<Vec<usize>, EcError> {
    let bad = |msg: &str| EcError::InconsistentTrace(format!("edge {j}: {msg}"));
    let (start, end) = min_endpoint(g, j);
    let (mut x, mut prev) = (start, j);
    let mut visited = vec![start];
    let mut walk = Vec::with_capacity(word.len() + 1);
    for &w in word {
        let others: Vec<usize> = g.incident(x).iter().map(|&(_, f)| f).filter(|&f| f != prev).collect();
        let e = *others.get(w as usize - 1).ok_or_else(|| bad("walk choice out of range"))?;
        let (a, b) = g.edge(e);
        x = if a == x { b } else { a };
        if x == end || visited.contains(&x) {
            return Err(bad("walk is not a simple cycle"));
        }
        visited.push(x);
        walk.push(e);
        prev = e;
    }
    let last = g.edge_between(x, end).ok_or_else(|| bad("walk does not close"))?;
    walk.push(last);
    Ok(walk)
}

fn base(g: &Graph) -> u64 {
    (g.max_degree().saturating_sub(1) as u64).max(1)
}

fn check_palette(g: &Graph, k_colors: u32) -> Result<u32, EcError> {
    let span = forbidden_span(g);
    if k_colors <= span {
        return Err(EcError::InvalidParameter(format!("K = {k_colors} must exceed 2(Δ − 1) = {span}")));
    }
    Ok(k_colors - span)
}

/// Runs until every edge is colored, the tape runs out, or `max_steps` steps.
pub fn run_acyclic(g: &Graph, k_colors: u32, tape: &mut RandomTape, max_steps: usize) -> Result<AcyclicRun, EcError> {
    let range = check_palette(g, k_colors)?;
    if tape.range() > range {
        return Err(EcError::InvalidParameter(format!("tape range {} exceeds K − 2(Δ − 1) = {range}", tape.range())));
    }
    let mut colors: Vec<Option<u32>> = vec![None; g.num_edges()];
    let mut record = Vec::new();
    let mut steps = Vec::new();
    let start = tape.cursor();
    let mut status = Status::Running;
    for _ in 0..max_steps {
        let Some(j) = colors.iter().position(Option::is_none) else {
            status = Status::Success;
            break;
        };
        let Some(f) = tape.next_value()? else { break };
        let allowed = available_colors(g, k_colors, &colors, j);
        colors[j] = Some(allowed[f as usize - 1]);
        let entry = match canonical_cycle(g, &colors, j) {
            None => RecordEntry::Empty,
            Some(cycle) => {
                let l = theta(&encode_walk(g, j, &cycle.walk), base(g));
                for e in cycle.uncolored() {
                    colors[e] = None;
                }
                RecordEntry::CycleFix { k: cycle.k, l }
            }
        };
        record.push(entry);
        steps.push(TraceStep { assigned: j, tape_value: f, record_entry: entry });
    }
    if status == Status::Running && colors.iter().all(Option::is_some) {
        status = Status::Success;
    }
    if status == Status::Success {
        debug_assert!(is_acyclic_coloring(g, &colors));
    }
    Ok(AcyclicRun { status, colors, record, consumed: tape.entries()[start..tape.cursor()].to_vec(), steps })
}

/// Rebuilds the consumed tape from the record and the final partial coloring.
pub fn reconstruct_acyclic(
    g: &Graph,
    k_colors: u32,
    record: &[RecordEntry],
    final_colors: &[Option<u32>],
) -> Result<Vec<u32>, EcError> {
    let range = check_palette(g, k_colors)?;
    if final_colors.len() != g.num_edges() {
        return Err(EcError::InconsistentTrace(format!("{} colors for {} edges", final_colors.len(), g.num_edges())));
    }
    if final_colors.iter().flatten().any(|&c| c == 0 || c > k_colors) {
        return Err(EcError::InconsistentTrace("final color outside 1..=K".into()));
    }
    // forward: which edge each step colored and which cycle it broke
    let mut uncolored: BTreeSet<usize> = (0..g.num_edges()).collect();
    let mut history: Vec<(usize, Option<CycleInfo>)> = Vec::with_capacity(record.len());
    for (i, entry) in record.iter().enumerate() {
        let j =
            uncolored.pop_first().ok_or_else(|| EcError::InconsistentTrace(format!("step {i} after completion")))?;
        let cycle = match *entry {
            RecordEntry::Empty => None,
            RecordEntry::CycleFix { k, l } => {
                if k < 2 {
                    return Err(EcError::InconsistentTrace(format!("step {i}: cycle half-length {k}")));
                }
                let len = 2 * k as usize - 2;
                let max = base(g).checked_pow(len as u32).unwrap_or(u64::MAX);
                if l == 0 || l > max {
                    return Err(EcError::InconsistentTrace(format!("step {i}: ℓ = {l} outside [1, {max}]")));
                }
                let walk = decode_walk(g, j, &theta_inverse(l, len, base(g)))?;
                let cycle = CycleInfo::from_walk(j, walk);
                for e in cycle.uncolored() {
                    if e != j && !uncolored.insert(e) {
                        return Err(EcError::InconsistentTrace(format!("step {i}: edge {e} uncolored twice")));
                    }
                }
                uncolored.insert(j);
                Some(cycle)
            }
            RecordEntry::Triple { .. } => {
                return Err(EcError::InconsistentTrace(format!("step {i}: variable-framework entry")));
            }
        };
        history.push((j, cycle));
    }
    let final_uncolored: BTreeSet<usize> = (0..g.num_edges()).filter(|&e| final_colors[e].is_none()).collect();
    if final_uncolored != uncolored {
        return Err(EcError::InconsistentTrace("uncolored edges do not match the record".into()));
    }
    // backward: restore each state and read off the tape value
    let mut colors = final_colors.to_vec();
    let mut tape = Vec::with_capacity(record.len());
    for (i, (j, cycle)) in history.iter().enumerate().rev() {
        if let Some(cycle) = cycle {
            let [keep2, keep3] = cycle.retained();
            let (Some(c2), Some(c3)) = (colors[keep2], colors[keep3]) else {
                return Err(EcError::InconsistentTrace(format!("step {i}: retained edges uncolored")));
            };
            for (pos, &e) in cycle.oriented.iter().enumerate() {
                if e == keep2 || e == keep3 {
                    continue;
                }
                if colors[e].is_some() {
                    return Err(EcError::InconsistentTrace(format!("step {i}: cycle edge {e} is colored")));
                }
                colors[e] = Some(if pos % 2 == 0 { c3 } else { c2 });
            }
        }
        let used = colors[*j].ok_or_else(|| EcError::InconsistentTrace(format!("step {i}: edge {j} uncolored")))?;
        colors[*j] = None;
        let allowed = available_colors(g, k_colors, &colors, *j);
        let rank = allowed
            .iter()
            .position(|&c| c == used)
            .ok_or_else(|| EcError::InconsistentTrace(format!("step {i}: color {used} was not available")))?;
        if rank as u32 >= range {
            return Err(EcError::InconsistentTrace(format!("step {i}: tape value {} above {range}", rank + 1)));
        }
        tape.push(rank as u32 + 1);
    }
    if colors.iter().any(Option::is_some) {
        return Err(EcError::InconsistentTrace("initial state is not blank".into()));
    }
    tape.reverse();
    Ok(tape)
}
