#![allow(dead_code)]

use std::collections::BTreeMap;

use ppcolor::ecrun::{Graph, KSatInstance, RandomTape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random graph with 2 ≤ Δ ≤ 4, palette `K = 4(Δ − 1)` and a tape over `[1, 2(Δ − 1)]`.
pub fn acyclic_case(seed: u64) -> (Graph, u32, RandomTape) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(4..=12);
        let cap = rng.gen_range(2..=4);
        let density = rng.gen_range(0.3..0.9);
        let g = Graph::random(n, cap, density, &mut rng);
        let delta = g.max_degree() as u32;
        if delta < 2 {
            continue;
        }
        let tape = RandomTape::from_seed(rng.gen(), 30 * g.num_edges(), 2 * (delta - 1));
        return (g, 4 * (delta - 1), tape);
    }
}

/// Graph of girth exactly 6 and Δ ≤ 4 grown greedily: random pairs are
/// joined while their distance is at least 5. The palette is the tight
/// `K = 2(Δ − 1) + 2` so that two-colored cycles actually occur.
pub fn girth_six_case(seed: u64) -> (Graph, u32, RandomTape) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(8..=12);
        let cap = rng.gen_range(3..=4);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for _ in 0..20 * n {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u == v || adj[u].len() >= cap || adj[v].len() >= cap || distance(&adj, u, v) < 5 {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
            edges.push((u, v));
        }
        let g = Graph::new(n, &edges).expect("pairs are distinct");
        if g.girth() != Some(6) {
            continue;
        }
        let delta = g.max_degree() as u32;
        let tape = RandomTape::from_seed(rng.gen(), 30 * g.num_edges(), 2);
        return (g, 2 * (delta - 1) + 2, tape);
    }
}

fn distance(adj: &[Vec<usize>], s: usize, t: usize) -> usize {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist[t]
}

/// Random 3-CNF on 30 variables where each clause meets at most two others,
/// with one value stream per variable.
pub fn ksat_case(seed: u64) -> (KSatInstance, Vec<Vec<u32>>) {
    let ks = ppcolor::ecrun::random_ksat_instance(30, 3, 2, 60, seed).expect("valid parameters");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let streams = (0..30).map(|_| (0..40).map(|_| rng.gen_range(1..=2)).collect()).collect();
    (ks, streams)
}

/// Two-colored cycle check by component counting: in a proper coloring each
/// two-color subgraph has degree at most 2, so a component with as many edges
/// as vertices is a cycle.
pub fn has_bichromatic_cycle(g: &Graph, colors: &[u32]) -> bool {
    let mut pairs: Vec<u32> = colors.to_vec();
    pairs.sort_unstable();
    pairs.dedup();
    for (i, &a) in pairs.iter().enumerate() {
        for &b in &pairs[i + 1..] {
            let mut comp = vec![usize::MAX; g.num_vertices()];
            let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                if colors[e] == a || colors[e] == b {
                    adj.entry(u).or_default().push(v);
                    adj.entry(v).or_default().push(u);
                }
            }
            for &start in adj.keys() {
                if comp[start] != usize::MAX {
                    continue;
                }
                let (mut verts, mut degree_sum) = (0, 0);
                let mut stack = vec![start];
                comp[start] = start;
                while let Some(x) = stack.pop() {
                    verts += 1;
                    degree_sum += adj[&x].len();
                    for &y in &adj[&x] {
                        if comp[y] == usize::MAX {
                            comp[y] = start;
                            stack.push(y);
                        }
                    }
                }
                if degree_sum / 2 >= verts {
                    return true;
                }
            }
        }
    }
    false
}

pub fn is_proper(g: &Graph, colors: &[u32]) -> bool {
    (0..g.num_vertices()).all(|v| {
        let mut seen: Vec<u32> = g.incident(v).iter().map(|&(_, e)| colors[e]).collect();
        let before = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == before
    })
}
