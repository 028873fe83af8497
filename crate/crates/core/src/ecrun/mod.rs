//! Entropy-compression runners that keep a per-step record from which the
//! consumed random tape can be rebuilt exactly.
//!
//! Two runners are provided: acyclic edge coloring ([`run_acyclic`]) and the
//! variable framework ([`run_generic`]) with k-SAT and small-plane coloring
//! instances.

mod acyclic;
mod generic;
mod graph;
mod instances;
mod record;

pub use acyclic::{
    available_colors, canonical_cycle, decode_walk, encode_walk, reconstruct_acyclic, run_acyclic, AcyclicRun,
    CycleInfo,
};
pub use generic::{
    colors_required, colors_required_generic, reconstruct_generic, run_generic, EcInstance, EventSpec, GenericRun,
};
pub use graph::{is_acyclic_coloring, Graph, GraphRecord};
pub use instances::{fano_legit_instance, random_ksat_instance, KSatInstance};
pub use record::{project_record, theta, theta_inverse, Projection, RecordTable};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genfun::GenfunError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EcError {
    #[error("tape entry {value} at position {position} outside [1, {range}]")]
    InvalidTapeEntry { position: usize, value: u32, range: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("record does not match a run: {0}")]
    InconsistentTrace(String),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error(transparent)]
    Genfun(#[from] GenfunError),
}

/// Random values consumed in order, each in `[1, range]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomTape {
    entries: Vec<u32>,
    range: u32,
    #[serde(skip)]
    cursor: usize,
}

impl RandomTape {
    pub fn new(entries: Vec<u32>, range: u32) -> Self {
        RandomTape { entries, range, cursor: 0 }
    }

    /// `len` uniform draws from `[1, range]`.
    pub fn from_seed(seed: u64, len: usize, range: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new((0..len).map(|_| rng.gen_range(1..=range)).collect(), range)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn range(&self) -> u32 {
        self.range
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn consumed(&self) -> &[u32] {
        &self.entries[..self.cursor]
    }

    /// Next entry, `Ok(None)` when exhausted.
    pub fn next_value(&mut self) -> Result<Option<u32>, EcError> {
        let Some(&value) = self.entries.get(self.cursor) else {
            return Ok(None);
        };
        if value == 0 || value > self.range {
            return Err(EcError::InvalidTapeEntry { position: self.cursor, value, range: self.range });
        }
        self.cursor += 1;
        Ok(Some(value))
    }
}

/// What a step wrote to the record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RecordEntry {
    Empty,
    /// A bichromatic `2k`-cycle was broken; `l` encodes the cycle.
    CycleFix {
        k: u32,
        l: u64,
    },
    /// A bad event was resampled: `alpha` variables unset, `beta` picks the
    /// event among those sharing the trigger variable, `gamma` the bad
    /// configuration.
    Triple {
        alpha: u32,
        beta: u32,
        gamma: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    /// Stopped by the step limit or an exhausted tape.
    Running,
}

/// One step of a trace dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Edge or variable assigned at this step.
    pub assigned: usize,
    pub tape_value: u32,
    pub record_entry: RecordEntry,
}

/// JSON trace dump `{status, steps: [...], final_state: [...]}`; `0` marks unassigned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDump {
    pub status: Status,
    pub steps: Vec<TraceStep>,
    pub final_state: Vec<u32>,
}

impl TraceDump {
    pub fn record(&self) -> Vec<RecordEntry> {
        self.steps.iter().map(|s| s.record_entry).collect()
    }

    pub fn state(&self) -> Vec<Option<u32>> {
        self.final_state.iter().map(|&x| (x != 0).then_some(x)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, EcError> {
        serde_json::from_str(text).map_err(|e| EcError::InvalidRecord(e.to_string()))
    }
}

pub(crate) fn flatten_state(state: &[Option<u32>]) -> Vec<u32> {
    state.iter().map(|x| x.unwrap_or(0)).collect()
}
