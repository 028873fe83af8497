use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generic::{EcInstance, EventSpec};
use super::EcError;
use crate::plane::build_plane;

/// Variable values: `1` is false, `2` is true.
pub const FALSE: u32 = 1;
pub const TRUE: u32 = 2;

/// A CNF formula and its variable-framework instance: one event per clause,
/// holding when every literal is false, resampling the whole clause.
#[derive(Debug, Clone)]
pub struct KSatInstance {
    pub num_vars: usize,
    /// Literals `(variable, positive)`.
    pub clauses: Vec<Vec<(usize, bool)>>,
    pub instance: EcInstance,
}

impl KSatInstance {
    pub fn new(num_vars: usize, clauses: Vec<Vec<(usize, bool)>>) -> Result<Self, EcError> {
        let mut events = Vec::with_capacity(clauses.len());
        for clause in &clauses {
            let mut lits = clause.clone();
            lits.sort_unstable();
            let vars: Vec<usize> = lits.iter().map(|&(v, _)| v).collect();
            let falsifying: Vec<u32> = lits.iter().map(|&(_, pos)| if pos { FALSE } else { TRUE }).collect();
            events.push(EventSpec::new(vars, vec![falsifying]));
        }
        let instance = EcInstance::new(vec![2; num_vars], events)?;
        Ok(KSatInstance { num_vars, clauses, instance })
    }

    pub fn satisfies(&self, state: &[Option<u32>]) -> bool {
        state.len() == self.num_vars
            && self
                .clauses
                .iter()
                .all(|clause| clause.iter().any(|&(v, pos)| state[v] == Some(if pos { TRUE } else { FALSE })))
    }
}

fn clause_vars_meet(a: &[(usize, bool)], b: &[(usize, bool)]) -> bool {
    a.iter().any(|(v, _)| b.iter().any(|(w, _)| v == w))
}

/// Random `k`-CNF on `num_vars` variables: up to `attempts` random clauses
/// are proposed and kept only while every clause shares variables with at
/// most `max_meets` others.
pub fn random_ksat_instance(
    num_vars: usize,
    k: usize,
    max_meets: usize,
    attempts: usize,
    seed: u64,
) -> Result<KSatInstance, EcError> {
    if k == 0 || k > num_vars {
        return Err(EcError::InvalidParameter(format!("clause width {k} with {num_vars} variables")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses: Vec<Vec<(usize, bool)>> = Vec::new();
    let mut meets: Vec<usize> = Vec::new();
    for _ in 0..attempts {
        let clause: Vec<(usize, bool)> =
            sample(&mut rng, num_vars, k).into_iter().map(|v| (v, rng.gen_bool(0.5))).collect();
        let hits: Vec<usize> = (0..clauses.len()).filter(|&i| clause_vars_meet(&clauses[i], &clause)).collect();
        if hits.len() <= max_meets && hits.iter().all(|&i| meets[i] < max_meets) {
            for &i in &hits {
                meets[i] += 1;
            }
            meets.push(hits.len());
            clauses.push(clause);
        }
    }
    KSatInstance::new(num_vars, clauses)
}

/// Legitimate coloring of the Fano plane with `c` colors. Each pair of lines
/// is an event on its symmetric difference, which holds when both sides carry
/// the same multiset of colors. The side holding the trigger is resampled and
/// the other side is kept.
pub fn fano_legit_instance(c: u32) -> Result<EcInstance, EcError> {
    if c == 0 || c > 64 {
        return Err(EcError::InvalidParameter(format!("{c} colors")));
    }
    let plane = build_plane(2).expect("order 2 is prime");
    let line = |l: usize| plane.points_of_line(l).expect("line in range").to_vec();
    let mut events = Vec::new();
    for l1 in 0..plane.num_lines() {
        for l2 in l1 + 1..plane.num_lines() {
            let (p1, p2) = (line(l1), line(l2));
            let side1: Vec<usize> = p1.iter().copied().filter(|p| !p2.contains(p)).collect();
            let side2: Vec<usize> = p2.iter().copied().filter(|p| !p1.contains(p)).collect();
            let mut vars: Vec<usize> = side1.iter().chain(&side2).copied().collect();
            vars.sort_unstable();
            let width = vars.len() as u32;
            let mut bad = Vec::new();
            for code in 0..u64::from(c).pow(width) {
                let mut rest = code;
                let cfg: Vec<u32> = (0..width)
                    .map(|_| {
                        let x = (rest % u64::from(c)) as u32 + 1;
                        rest /= u64::from(c);
                        x
                    })
                    .collect();
                let value = |p: usize| cfg[vars.iter().position(|&v| v == p).expect("point in event")];
                let mut a: Vec<u32> = side1.iter().map(|&p| value(p)).collect();
                let mut b: Vec<u32> = side2.iter().map(|&p| value(p)).collect();
                a.sort_unstable();
                b.sort_unstable();
                if a == b {
                    bad.push(cfg);
                }
            }
            let kept: BTreeMap<usize, Vec<usize>> =
                side1.iter().map(|&p| (p, side2.clone())).chain(side2.iter().map(|&p| (p, side1.clone()))).collect();
            events.push(EventSpec { vars, bad, kept });
        }
    }
    EcInstance::new(vec![c; plane.num_points()], events)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ksat_meets_bounded() {
        let ks = random_ksat_instance(30, 3, 2, 200, 7).unwrap();
        assert!(!ks.clauses.is_empty());
        for (i, a) in ks.clauses.iter().enumerate() {
            let meets = ks.clauses.iter().enumerate().filter(|&(j, b)| j != i && clause_vars_meet(a, b)).count();
            assert!(meets <= 2);
        }
        assert_eq!(ks.instance.m_max(), 1);
    }

    #[test]
    fn fano_counts() {
        let inst = fano_legit_instance(12).unwrap();
        assert_eq!(inst.events().len(), 21);
        assert!(inst.events().iter().all(|e| e.vars.len() == 4 && e.bad.len() == 276));
        assert_eq!(inst.m_max(), 2);
        assert_eq!(inst.d_table(), BTreeMap::from([(2, 12)]));
    }
}
