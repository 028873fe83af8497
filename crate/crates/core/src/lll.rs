//! Local Lemma criteria on explicit dependency graphs, and the constants that
//! the standard applications reduce to.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest closed neighborhood enumerated exactly by [`cluster_z`].
pub const MAX_EXACT_NEIGHBORHOOD: usize = 25;

const TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LllError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("closed neighborhood of {vertex} has {size} vertices, more than {MAX_EXACT_NEIGHBORHOOD}")]
    NeighborhoodTooLarge { vertex: usize, size: usize },
    #[error("invalid clique cover: {0}")]
    InvalidCover(String),
    #[error("malformed graph: {0}")]
    Malformed(String),
}

/// Dependency graph with an event probability and optional weight per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct DependencyGraph {
    adj: Vec<Vec<usize>>,
    p: Vec<f64>,
    weights: Option<Vec<f64>>,
}

/// JSON form `{n, edges: [[u, v], ...], p: [...], weights: [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub p: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl DependencyGraph {
    pub fn new(n: usize, edges: &[[usize; 2]], p: Vec<f64>, weights: Option<Vec<f64>>) -> Result<Self, LllError> {
        if p.len() != n {
            return Err(LllError::Malformed(format!("{} probabilities for {n} vertices", p.len())));
        }
        if let Some(&bad) = p.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(LllError::Malformed(format!("probability {bad} outside [0, 1]")));
        }
        if let Some(w) = &weights {
            if w.len() != n {
                return Err(LllError::Malformed(format!("{} weights for {n} vertices", w.len())));
            }
            if let Some(&bad) = w.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                return Err(LllError::Malformed(format!("weight {bad} is not a finite non-negative number")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &[u, v] in edges {
            if u >= n || v >= n {
                return Err(LllError::Malformed(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(LllError::Malformed(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(DependencyGraph { adj, p, weights })
    }

    pub fn from_record(record: GraphRecord) -> Result<Self, LllError> {
        Self::new(record.n, &record.edges, record.p, record.weights)
    }

    pub fn from_json(text: &str) -> Result<Self, LllError> {
        let record: GraphRecord = serde_json::from_str(text).map_err(|e| LllError::Malformed(e.to_string()))?;
        Self::from_record(record)
    }

    pub fn to_record(&self) -> GraphRecord {
        let edges = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| [u, v]))
            .collect();
        GraphRecord { n: self.len(), edges, p: self.p.clone(), weights: self.weights.clone() }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `x` together with its neighbors, sorted.
    pub fn closed_neighborhood(&self, x: usize) -> Vec<usize> {
        let mut s = self.adj[x].clone();
        s.push(x);
        s.sort_unstable();
        s
    }
}

/// `p · (Δ + 1) · e ≤ 1`.
pub fn symmetric_check(p: f64, delta: u64) -> Result<bool, LllError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(LllError::Domain(format!("probability {p} outside [0, 1]")));
    }
    Ok(p * (delta as f64 + 1.0) * std::f64::consts::E <= 1.0 + TOL)
}

/// Outcome of a per-vertex criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    /// First vertex violating the condition.
    pub failing: Option<usize>,
    /// Vertex with the smallest `rhs − p_x`, and that slack.
    pub worst_vertex: Option<usize>,
    pub worst_slack: f64,
    /// Lower bound on the probability that no event occurs, when known.
    pub lower_bound: Option<f64>,
}

fn report(slacks: impl Iterator<Item = (usize, f64)>) -> CheckReport {
    let mut failing = None;
    let mut worst = (None, f64::INFINITY);
    for (x, slack) in slacks {
        if slack < -TOL && failing.is_none() {
            failing = Some(x);
        }
        if slack < worst.1 {
            worst = (Some(x), slack);
        }
    }
    CheckReport { ok: failing.is_none(), failing, worst_vertex: worst.0, worst_slack: worst.1, lower_bound: None }
}

/// `p_x ≤ r_x ∏_{y ∈ Γ(x)} (1 − r_y)` with the graph weights as `r`.
pub fn spencer_check(g: &DependencyGraph) -> Result<CheckReport, LllError> {
    let r = g.weights().ok_or_else(|| LllError::Domain("spencer check needs weights".into()))?;
    if let Some(&bad) = r.iter().find(|x| !(0.0..1.0).contains(*x)) {
        return Err(LllError::Domain(format!("weight {bad} outside [0, 1)")));
    }
    let mut rep = report((0..g.len()).map(|x| {
        let rhs = r[x] * g.neighbors(x).iter().map(|&y| 1.0 - r[y]).product::<f64>();
        (x, rhs - g.p[x])
    }));
    if rep.ok {
        rep.lower_bound = Some(r.iter().map(|ri| 1.0 - ri).product());
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZMode<'a> {
    Exact,
    CliqueCover(&'a [Vec<usize>]),
}

/// Sum of `∏ μ` over independent subsets of `vertices` (bitmask recursion).
fn independent_sum(g: &DependencyGraph, vertices: &[usize], mu: &[f64]) -> f64 {
    let k = vertices.len();
    let conflict: Vec<u32> = (0..k)
        .map(|i| (0..k).filter(|&j| j != i && g.adjacent(vertices[i], vertices[j])).fold(0u32, |m, j| m | (1 << j)))
        .collect();
    fn go(avail: u32, conflict: &[u32], w: &[f64]) -> f64 {
        if avail == 0 {
            return 1.0;
        }
        let i = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << i);
        go(rest, conflict, w) + w[i] * go(rest & !conflict[i], conflict, w)
    }
    let w: Vec<f64> = vertices.iter().map(|&v| mu[v]).collect();
    let all = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    go(all, &conflict, &w)
}

/// Independent-set polynomial of the closed neighborhood of `x` at `μ`,
/// exactly or through the clique-cover product `∏ (1 + Σ_{y ∈ Q} μ_y)`.
pub fn cluster_z(g: &DependencyGraph, x: usize, mu: &[f64], mode: ZMode<'_>) -> Result<f64, LllError> {
    if mu.len() != g.len() {
        return Err(LllError::Domain(format!("{} weights for {} vertices", mu.len(), g.len())));
    }
    let hood = g.closed_neighborhood(x);
    match mode {
        ZMode::Exact => {
            if hood.len() > MAX_EXACT_NEIGHBORHOOD {
                return Err(LllError::NeighborhoodTooLarge { vertex: x, size: hood.len() });
            }
            Ok(independent_sum(g, &hood, mu))
        }
        ZMode::CliqueCover(cliques) => {
            for q in cliques {
                for (i, &u) in q.iter().enumerate() {
                    if u >= g.len() {
                        return Err(LllError::InvalidCover(format!("vertex {u} out of range")));
                    }
                    if let Some(&v) = q[i + 1..].iter().find(|&&v| u == v || !g.adjacent(u, v)) {
                        return Err(LllError::InvalidCover(format!("{u} and {v} are not adjacent")));
                    }
                }
            }
            if let Some(&missing) = hood.iter().find(|v| !cliques.iter().any(|q| q.contains(v))) {
                return Err(LllError::InvalidCover(format!("vertex {missing} is not covered")));
            }
            Ok(cliques.iter().map(|q| 1.0 + q.iter().map(|&y| mu[y]).sum::<f64>()).product())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckMode {
    Exact,
    /// One clique cover per vertex.
    CliqueCover(Vec<Vec<Vec<usize>>>),
}

/// `p_x ≤ μ_x / Z(Γ*(x))` for every vertex.
pub fn cluster_check(g: &DependencyGraph, mu: &[f64], mode: &CheckMode) -> Result<CheckReport, LllError> {
    if let CheckMode::CliqueCover(covers) = mode {
        if covers.len() != g.len() {
            return Err(LllError::InvalidCover(format!("{} covers for {} vertices", covers.len(), g.len())));
        }
    }
    let mut slacks = Vec::with_capacity(g.len());
    for x in 0..g.len() {
        let z = match mode {
            CheckMode::Exact => cluster_z(g, x, mu, ZMode::Exact)?,
            CheckMode::CliqueCover(covers) => cluster_z(g, x, mu, ZMode::CliqueCover(&covers[x]))?,
        };
        slacks.push((x, mu[x] / z - g.p[x]));
    }
    Ok(report(slacks.into_iter()))
}

/// Golden-section search for the minimum of a unimodal function on `[lo, hi]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A constant found by numerical optimization, with the analytic cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimized {
    pub value: f64,
    pub argopt: f64,
    pub analytic_value: f64,
    pub analytic_argopt: f64,
}

/// Constants `C` in the color or size thresholds `C·Δ` of the applications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdTable {
    /// Independent transversals with the cluster criterion: parts of size `4Δ`.
    pub independent_transversal: Optimized,
    /// Latin transversals with the cluster criterion: `k ≤ (n − 1)/(256/27)`.
    pub latin_transversal: Optimized,
    /// Acyclic edge coloring with the cluster criterion: `⌈9.62(Δ − 1)⌉` colors.
    pub acyclic_edge: Optimized,
    /// Independent transversals with the symmetric criterion: `2eΔ`.
    pub symmetric_2e: f64,
    /// Latin transversals with the lopsided symmetric criterion: `k ≤ (n − 1)/4e`.
    pub symmetric_4e: f64,
    /// Acyclic edge coloring with the weighted criterion: `16Δ`.
    pub acyclic_weighted: f64,
}

/// `1 / max_μ μ/(1 + μ)^power` at unit scale, found numerically.
fn transversal_constant(power: i32, tol: f64) -> Optimized {
    let f = |mu: f64| -(mu / (1.0 + mu).powi(power));
    let arg = golden_min(f, 0.0, 10.0, tol);
    let analytic_arg = 1.0 / f64::from(power - 1);
    Optimized {
        value: -1.0 / f(arg),
        argopt: arg,
        analytic_value: -1.0 / f(analytic_arg),
        analytic_argopt: analytic_arg,
    }
}

fn acyclic_objective(a: f64) -> f64 {
    let u = 1.0 + 2.0 * a + a * a / (1.0 - a * a);
    u * u / a
}

fn acyclic_constant(tol: f64) -> Optimized {
    let arg = golden_min(acyclic_objective, 1e-6, 1.0 - 1e-6, tol);
    // stationary point: 2α u'(α) = u(α)
    let g = |a: f64| {
        let u = 1.0 + 2.0 * a + a * a / (1.0 - a * a);
        let du = 2.0 + 2.0 * a / ((1.0 - a * a) * (1.0 - a * a));
        2.0 * a * du - u
    };
    let analytic_arg = bisect(g, 1e-6, 1.0 - 1e-6, 1e-15);
    Optimized {
        value: acyclic_objective(arg),
        argopt: arg,
        analytic_value: acyclic_objective(analytic_arg),
        analytic_argopt: analytic_arg,
    }
}

/// Threshold constants with the optimizer tolerance `tol`.
pub fn thresholds_with_tol(tol: f64) -> ThresholdTable {
    ThresholdTable {
        independent_transversal: transversal_constant(2, tol),
        latin_transversal: transversal_constant(4, tol),
        acyclic_edge: acyclic_constant(tol),
        symmetric_2e: 2.0 * std::f64::consts::E,
        symmetric_4e: 4.0 * std::f64::consts::E,
        acyclic_weighted: 16.0,
    }
}

pub fn thresholds() -> ThresholdTable {
    thresholds_with_tol(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[[usize; 2]], p: f64) -> DependencyGraph {
        DependencyGraph::new(n, edges, vec![p; n], None).unwrap()
    }

    #[test]
    fn symmetric_examples() {
        assert!(symmetric_check(1.0 / (std::f64::consts::E * 4.0), 3).unwrap());
        assert!(!symmetric_check(0.5, 1).unwrap());
        let ln_n = 300.0 * 10f64.ln();
        let p = 100.0 / ln_n.powf(3.5);
        assert!(symmetric_check(p, (160.0 * ln_n) as u64).unwrap());
        assert!(symmetric_check(1.5, 0).is_err());
    }

    #[test]
    fn spencer_examples() {
        let g = DependencyGraph::new(2, &[[0, 1]], vec![0.25, 0.25], Some(vec![0.5, 0.5])).unwrap();
        let rep = spencer_check(&g).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.lower_bound, Some(0.25));

        let g = DependencyGraph::new(3, &[], vec![0.1, 0.2, 0.0], Some(vec![0.1, 0.3, 0.0])).unwrap();
        let rep = spencer_check(&g).unwrap();
        assert!(rep.ok);
        assert!((rep.lower_bound.unwrap() - 0.9 * 0.7).abs() < 1e-15);

        let g = DependencyGraph::new(1, &[], vec![0.1], Some(vec![0.0])).unwrap();
        assert_eq!(spencer_check(&g).unwrap().failing, Some(0));
    }

    #[test]
    fn cluster_z_small_cases() {
        let t = 0.3;
        // star centered at 0: Γ*(1) = {0, 1}, adjacent; use a vertex with independent neighbors
        let path = graph(3, &[[0, 1], [1, 2]], 0.0);
        let z = cluster_z(&path, 0, &[t, t, t], ZMode::Exact).unwrap();
        assert!((z - (1.0 + 2.0 * t)).abs() < 1e-15);

        let tri = graph(3, &[[0, 1], [1, 2], [0, 2]], 0.0);
        let z = cluster_z(&tri, 0, &[t, t, t], ZMode::Exact).unwrap();
        assert!((z - (1.0 + 3.0 * t)).abs() < 1e-15);

        let empty_pair = graph(2, &[], 0.0);
        let z = cluster_z(&empty_pair, 0, &[t, t], ZMode::Exact).unwrap();
        assert!((z - 1.0 - t).abs() < 1e-15);
    }

    #[test]
    fn clique_cover_validation() {
        let tri = graph(3, &[[0, 1], [1, 2], [0, 2]], 0.0);
        let mu = [1.0; 3];
        assert_eq!(cluster_z(&tri, 0, &mu, ZMode::CliqueCover(&[vec![0, 1, 2]])).unwrap(), 4.0);
        assert!(matches!(cluster_z(&tri, 0, &mu, ZMode::CliqueCover(&[vec![0, 1]])), Err(LllError::InvalidCover(_))));
        let path = graph(3, &[[0, 1], [1, 2]], 0.0);
        assert!(matches!(
            cluster_z(&path, 1, &mu, ZMode::CliqueCover(&[vec![0, 1, 2]])),
            Err(LllError::InvalidCover(_))
        ));
    }

    #[test]
    fn cluster_check_triangle() {
        let mu = [1.0; 3];
        let tri = graph(3, &[[0, 1], [1, 2], [0, 2]], 0.25);
        assert!(cluster_check(&tri, &mu, &CheckMode::Exact).unwrap().ok);
        let tri = graph(3, &[[0, 1], [1, 2], [0, 2]], 0.26);
        assert!(!cluster_check(&tri, &mu, &CheckMode::Exact).unwrap().ok);
        let zero = graph(3, &[[0, 1]], 0.0);
        assert!(cluster_check(&zero, &[0.0; 3], &CheckMode::Exact).unwrap().ok);
    }

    #[test]
    fn large_neighborhood_rejected() {
        let edges: Vec<[usize; 2]> = (1..27).map(|v| [0, v]).collect();
        let star = graph(27, &edges, 0.0);
        assert!(matches!(
            cluster_z(&star, 0, &[0.1; 27], ZMode::Exact),
            Err(LllError::NeighborhoodTooLarge { vertex: 0, size: 27 })
        ));
    }

    #[test]
    fn threshold_constants() {
        let t = thresholds();
        assert!((t.independent_transversal.value - 4.0).abs() < 1e-9);
        assert!((t.latin_transversal.value - 256.0 / 27.0).abs() < 1e-9);
        assert!((t.acyclic_edge.value - 9.62).abs() < 0.01);
        assert!((t.acyclic_edge.value - t.acyclic_edge.analytic_value).abs() < 1e-9);
    }
}
