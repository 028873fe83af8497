use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::EcError;

/// Simple undirected graph with indexed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `(neighbor, edge index)`, sorted by edge index.
    incident: Vec<Vec<(usize, usize)>>,
}

/// JSON form `{n, edges: [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, EcError> {
        let mut incident = vec![Vec::new(); n];
        let mut norm = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n || u == v {
                return Err(EcError::InvalidParameter(format!("edge ({u}, {v}) is a loop or out of range")));
            }
            if incident[u].iter().any(|&(w, _)| w == v) {
                return Err(EcError::InvalidParameter(format!("edge ({u}, {v}) repeated")));
            }
            incident[u].push((v, i));
            incident[v].push((u, i));
            norm.push((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: norm, incident })
    }

    pub fn from_record(record: &GraphRecord) -> Result<Self, EcError> {
        let edges: Vec<(usize, usize)> = record.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(record.n, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self, EcError> {
        let record: GraphRecord = serde_json::from_str(text).map_err(|e| EcError::InvalidParameter(e.to_string()))?;
        Self::from_record(&record)
    }

    pub fn to_record(&self) -> GraphRecord {
        GraphRecord { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle is simple for n ≥ 3")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::new(n, &edges).expect("complete graph is simple")
    }

    /// The 3-dimensional cube.
    pub fn cube() -> Self {
        let edges: Vec<(usize, usize)> =
            (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b))).filter(|&(u, v)| u < v)).collect();
        Self::new(8, &edges).expect("cube is simple")
    }

    /// Random graph on `n` vertices: candidate pairs in random order, kept
    /// while both endpoints have degree below `max_degree` and with
    /// probability `density`.
    pub fn random<R: Rng>(n: usize, max_degree: usize, density: f64, rng: &mut R) -> Self {
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        pairs.shuffle(rng);
        let mut deg = vec![0; n];
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if deg[u] < max_degree && deg[v] < max_degree && rng.gen_bool(density) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
        Self::new(n, &edges).expect("generated pairs are distinct")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs at `v`, by edge index.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incident[v]
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incident[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in &self.incident[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = e;
                        queue.push_back(w);
                    } else if parent[u] != e {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// Proper edge coloring without a two-colored cycle. Every edge must be colored.
pub fn is_acyclic_coloring(g: &Graph, colors: &[Option<u32>]) -> bool {
    if colors.len() != g.num_edges() || colors.iter().any(Option::is_none) {
        return false;
    }
    for v in 0..g.num_vertices() {
        let mut seen: Vec<u32> = g.incident(v).iter().map(|&(_, e)| colors[e].expect("checked")).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    let mut palette: Vec<u32> = colors.iter().map(|c| c.expect("checked")).collect();
    palette.sort_unstable();
    palette.dedup();
    // each two-colored subgraph has maximum degree 2; look for a cycle with union-find
    for (i, &a) in palette.iter().enumerate() {
        for &b in &palette[i + 1..] {
            let mut parent: Vec<usize> = (0..g.num_vertices()).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                let mut y = x;
                while p[y] != r {
                    let next = p[y];
                    p[y] = r;
                    y = next;
                }
                r
            }
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                let c = colors[e].expect("checked");
                if c == a || c == b {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        return false;
                    }
                    parent[ru] = rv;
                }
            }
        }
    }
    true
}
