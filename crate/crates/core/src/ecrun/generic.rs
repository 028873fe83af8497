//! Variable framework: assign the lowest-index unset variable from its own
//! tape stream; when that completes a bad configuration of an event, unset
//! part of the event's variables and record which event and configuration.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{flatten_state, EcError, RecordEntry, Status, TraceDump, TraceStep};
use crate::dyck::DescentSet;
use crate::genfun::solve_tau_gamma;

/// A bad event on a set of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSpec {
    /// Sorted variable indices.
    pub vars: Vec<usize>,
    /// Bad value vectors, aligned with `vars`.
    pub bad: Vec<Vec<u32>>,
    /// Variables left assigned when the event is triggered by a given
    /// variable; unlisted triggers keep nothing.
    pub kept: BTreeMap<usize, Vec<usize>>,
}

impl EventSpec {
    pub fn new(vars: Vec<usize>, bad: Vec<Vec<u32>>) -> Self {
        EventSpec { vars, bad, kept: BTreeMap::new() }
    }

    fn kept_for(&self, trigger: usize) -> &[usize] {
        self.kept.get(&trigger).map_or(&[], Vec::as_slice)
    }

    /// Variables unset when `trigger` completes a bad configuration.
    pub fn resampled(&self, trigger: usize) -> Vec<usize> {
        let kept = self.kept_for(trigger);
        self.vars.iter().copied().filter(|v| !kept.contains(v)).collect()
    }
}

/// Finite-range variables and bad events with fixed orderings.
#[derive(Debug, Clone)]
pub struct EcInstance {
    ranges: Vec<u32>,
    events: Vec<EventSpec>,
    bad_sets: Vec<HashSet<Vec<u32>>>,
    /// Events containing each variable, ascending.
    by_var: Vec<Vec<usize>>,
}

impl EcInstance {
    /// Validates and indexes an instance. Variable values are `1..=range`.
    pub fn new(ranges: Vec<u32>, mut events: Vec<EventSpec>) -> Result<Self, EcError> {
        let n = ranges.len();
        let bad = |msg: String| EcError::InvalidInstance(msg);
        if ranges.contains(&0) {
            return Err(bad("variable ranges must be positive".into()));
        }
        let mut by_var = vec![Vec::new(); n];
        for (i, ev) in events.iter_mut().enumerate() {
            let sorted: BTreeSet<usize> = ev.vars.iter().copied().collect();
            if sorted.len() != ev.vars.len() || ev.vars.is_empty() || ev.vars.iter().any(|&v| v >= n) {
                return Err(bad(format!("event {i} has repeated, missing or out-of-range variables")));
            }
            ev.vars = sorted.into_iter().collect();
            for cfg in &ev.bad {
                if cfg.len() != ev.vars.len() || cfg.iter().zip(&ev.vars).any(|(&x, &v)| x == 0 || x > ranges[v]) {
                    return Err(bad(format!("event {i} has a malformed bad configuration")));
                }
            }
            ev.bad.sort();
            ev.bad.dedup();
            for (&trigger, kept) in &ev.kept {
                if !ev.vars.contains(&trigger) || kept.contains(&trigger) || kept.iter().any(|k| !ev.vars.contains(k)) {
                    return Err(bad(format!("event {i} keeps variables outside it or its trigger {trigger}")));
                }
            }
            for &v in &ev.vars {
                by_var[v].push(i);
            }
        }
        let bad_sets = events.iter().map(|e| e.bad.iter().cloned().collect()).collect();
        Ok(EcInstance { ranges, events, bad_sets, by_var })
    }

    pub fn num_vars(&self) -> usize {
        self.ranges.len()
    }

    pub fn ranges(&self) -> &[u32] {
        &self.ranges
    }

    pub fn events(&self) -> &[EventSpec] {
        &self.events
    }

    /// Events containing `var` that resample `l` variables when `var` triggers them.
    fn events_with(&self, var: usize, l: u32) -> Vec<usize> {
        self.by_var[var].iter().copied().filter(|&e| self.events[e].resampled(var).len() as u32 == l).collect()
    }

    /// `d_l`: most events sharing a trigger variable with `l` resampled variables.
    pub fn d_table(&self) -> BTreeMap<u32, u64> {
        let mut d: BTreeMap<u32, u64> = BTreeMap::new();
        for var in 0..self.num_vars() {
            let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
            for &e in &self.by_var[var] {
                *counts.entry(self.events[e].resampled(var).len() as u32).or_default() += 1;
            }
            for (l, c) in counts {
                let slot = d.entry(l).or_default();
                *slot = (*slot).max(c);
            }
        }
        d
    }

    /// Bad configurations of `event` matching the assigned `kept` values.
    fn consistent(&self, event: usize, kept: &[usize], state: &[Option<u32>]) -> Vec<usize> {
        let ev = &self.events[event];
        ev.bad
            .iter()
            .enumerate()
            .filter(|(_, cfg)| ev.vars.iter().zip(cfg.iter()).all(|(v, &x)| !kept.contains(v) || state[*v] == Some(x)))
            .map(|(i, _)| i)
            .collect()
    }

    /// `m`: most bad configurations of one event consistent with any values
    /// of the kept variables, over all triggers.
    pub fn m_max(&self) -> u64 {
        let mut best = 0;
        for ev in &self.events {
            for &trigger in &ev.vars {
                let kept = ev.kept_for(trigger);
                let mut groups: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
                for cfg in &ev.bad {
                    let key: Vec<u32> =
                        ev.vars.iter().zip(cfg).filter(|(v, _)| kept.contains(v)).map(|(_, &x)| x).collect();
                    *groups.entry(key).or_default() += 1;
                }
                best = best.max(groups.values().copied().max().unwrap_or(0));
            }
        }
        best
    }

    /// First event (by index) containing `var` whose variables all hold a bad configuration.
    pub fn detect(&self, state: &[Option<u32>], var: usize) -> Option<usize> {
        self.by_var[var].iter().copied().find(|&e| {
            let values: Option<Vec<u32>> = self.events[e].vars.iter().map(|&v| state[v]).collect();
            values.is_some_and(|vals| self.bad_sets[e].contains(&vals))
        })
    }

    /// Every variable set and no event holds.
    pub fn is_solution(&self, state: &[Option<u32>]) -> bool {
        state.len() == self.num_vars()
            && state.iter().all(Option::is_some)
            && (0..self.events.len()).all(|e| {
                let vals: Vec<u32> = self.events[e].vars.iter().map(|&v| state[v].expect("checked")).collect();
                !self.bad_sets[e].contains(&vals)
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericRun {
    pub status: Status,
    pub state: Vec<Option<u32>>,
    pub record: Vec<RecordEntry>,
    /// Values taken from each variable's stream, in order.
    pub consumed: Vec<Vec<u32>>,
    pub steps: Vec<TraceStep>,
}

impl GenericRun {
    pub fn dump(&self) -> TraceDump {
        TraceDump { status: self.status, steps: self.steps.clone(), final_state: flatten_state(&self.state) }
    }
}

/// Runs with one tape stream per variable.
pub fn run_generic(inst: &EcInstance, streams: &[Vec<u32>], max_steps: usize) -> Result<GenericRun, EcError> {
    if streams.len() != inst.num_vars() {
        return Err(EcError::InvalidParameter(format!("{} streams for {} variables", streams.len(), inst.num_vars())));
    }
    let mut state: Vec<Option<u32>> = vec![None; inst.num_vars()];
    let mut cursor = vec![0usize; inst.num_vars()];
    let mut record = Vec::new();
    let mut steps = Vec::new();
    let mut status = Status::Running;
    for _ in 0..max_steps {
        let Some(y) = state.iter().position(Option::is_none) else {
            status = Status::Success;
            break;
        };
        let Some(&value) = streams[y].get(cursor[y]) else { break };
        if value == 0 || value > inst.ranges[y] {
            return Err(EcError::InvalidTapeEntry { position: cursor[y], value, range: inst.ranges[y] });
        }
        cursor[y] += 1;
        state[y] = Some(value);
        let entry = match inst.detect(&state, y) {
            None => RecordEntry::Empty,
            Some(e) => {
                let ev = &inst.events[e];
                let resampled = ev.resampled(y);
                let alpha = resampled.len() as u32;
                let beta =
                    inst.events_with(y, alpha).iter().position(|&x| x == e).expect("event contains y") as u32 + 1;
                let current: Vec<u32> = ev.vars.iter().map(|&v| state[v].expect("event is complete")).collect();
                let cfg = ev.bad.binary_search(&current).expect("detected configuration is bad");
                let gamma = inst
                    .consistent(e, ev.kept_for(y), &state)
                    .iter()
                    .position(|&c| c == cfg)
                    .expect("configuration is consistent with itself") as u32
                    + 1;
                for v in resampled {
                    state[v] = None;
                }
                RecordEntry::Triple { alpha, beta, gamma }
            }
        };
        record.push(entry);
        steps.push(TraceStep { assigned: y, tape_value: value, record_entry: entry });
    }
    if status == Status::Running && state.iter().all(Option::is_some) {
        status = Status::Success;
    }
    let consumed = streams.iter().zip(&cursor).map(|(s, &c)| s[..c].to_vec()).collect();
    Ok(GenericRun { status, state, record, consumed, steps })
}

type Fix = (usize, Vec<usize>, u32);

/// Rebuilds every variable's consumed stream prefix from the record and the final state.
pub fn reconstruct_generic(
    inst: &EcInstance,
    record: &[RecordEntry],
    final_state: &[Option<u32>],
) -> Result<Vec<Vec<u32>>, EcError> {
    let bad = |msg: String| EcError::InconsistentTrace(msg);
    if final_state.len() != inst.num_vars() {
        return Err(bad(format!("{} values for {} variables", final_state.len(), inst.num_vars())));
    }
    let mut unset: BTreeSet<usize> = (0..inst.num_vars()).collect();
    // (trigger, (event, resampled, bad index)) per step
    let mut history: Vec<(usize, Option<Fix>)> = Vec::with_capacity(record.len());
    for (i, entry) in record.iter().enumerate() {
        let y = unset.pop_first().ok_or_else(|| bad(format!("step {i} after completion")))?;
        let fix = match *entry {
            RecordEntry::Empty => None,
            RecordEntry::Triple { alpha, beta, gamma } => {
                let candidates = inst.events_with(y, alpha);
                let e = *candidates
                    .get((beta as usize).wrapping_sub(1))
                    .ok_or_else(|| bad(format!("step {i}: no event {beta} with {alpha} resampled variables")))?;
                let resampled = inst.events[e].resampled(y);
                for &v in &resampled {
                    if v != y && !unset.insert(v) {
                        return Err(bad(format!("step {i}: variable {v} unset twice")));
                    }
                }
                unset.insert(y);
                Some((e, resampled, gamma))
            }
            RecordEntry::CycleFix { .. } => return Err(bad(format!("step {i}: edge-coloring entry"))),
        };
        history.push((y, fix));
    }
    let final_unset: BTreeSet<usize> = (0..inst.num_vars()).filter(|&v| final_state[v].is_none()).collect();
    if final_unset != unset {
        return Err(bad("unset variables do not match the record".into()));
    }
    if final_state.iter().enumerate().any(|(v, x)| x.is_some_and(|x| x == 0 || x > inst.ranges[v])) {
        return Err(bad("final value outside its range".into()));
    }
    let mut state = final_state.to_vec();
    let mut values: Vec<(usize, u32)> = Vec::with_capacity(record.len());
    for (i, (y, fix)) in history.iter().enumerate().rev() {
        if let Some((e, resampled, gamma)) = fix {
            let ev = &inst.events[*e];
            if resampled.iter().any(|&v| state[v].is_some())
                || ev.vars.iter().any(|v| !resampled.contains(v) && state[*v].is_none())
            {
                return Err(bad(format!("step {i}: event {e} variables in the wrong state")));
            }
            let options = inst.consistent(*e, ev.kept_for(*y), &state);
            let cfg = *options
                .get((*gamma as usize).wrapping_sub(1))
                .ok_or_else(|| bad(format!("step {i}: configuration {gamma} of {}", options.len())))?;
            for (&v, &x) in ev.vars.iter().zip(&ev.bad[cfg]) {
                state[v] = Some(x);
            }
            if inst.detect(&state, *y) != Some(*e) {
                return Err(bad(format!("step {i}: event {e} would not have been the one detected")));
            }
        } else if inst.detect(&state, *y).is_some() {
            return Err(bad(format!("step {i}: an event holds after an empty step")));
        }
        let value = state[*y].ok_or_else(|| bad(format!("step {i}: variable {y} unset")))?;
        values.push((*y, value));
        state[*y] = None;
    }
    if state.iter().any(Option::is_some) {
        return Err(bad("initial state is not blank".into()));
    }
    let mut streams = vec![Vec::new(); inst.num_vars()];
    for (y, value) in values.into_iter().rev() {
        streams[y].push(value);
    }
    Ok(streams)
}

/// `⌈γ_E · max_l (d_l·m_l)^{1/l}⌉` for classes `(l, d_l, m_l)`.
pub fn colors_required(set: &DescentSet, classes: &[(u32, u64, u64)]) -> Result<u64, EcError> {
    let tg = solve_tau_gamma(set)?;
    let sup = classes.iter().map(|&(l, d, m)| ((d * m) as f64).powf(1.0 / f64::from(l))).fold(0.0, f64::max);
    Ok((tg.gamma * sup - 1e-9).ceil() as u64)
}

/// [`colors_required`] with `E` the set of resample counts of the instance
/// and its own `d_l` and `m`.
pub fn colors_required_generic(inst: &EcInstance) -> Result<u64, EcError> {
    let d = inst.d_table();
    let set = DescentSet::finite(d.keys().copied())
        .map_err(|e| EcError::InvalidInstance(format!("no resampling classes: {e}")))?;
    let m = inst.m_max();
    let classes: Vec<(u32, u64, u64)> = d.iter().map(|(&l, &dl)| (l, dl, m)).collect();
    colors_required(&set, &classes)
}
