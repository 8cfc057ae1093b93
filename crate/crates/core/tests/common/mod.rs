#![allow(dead_code)]

use edgecone::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn from_mask(n: usize, all: &[(usize, usize)], mask: u64) -> Graph {
    let edges: Vec<(usize, usize)> = all
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::with_vertex_count(n, &edges).unwrap()
}

/// Every connected labeled graph on 1..=max_n vertices.
pub fn all_connected(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let all = pairs(n);
        for mask in 0..1u64 << all.len() {
            let g = from_mask(n, &all, mask);
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let all = pairs(n);
    loop {
        let mask = all
            .iter()
            .enumerate()
            .filter(|_| rng.gen_bool(p))
            .fold(0u64, |m, (k, _)| m | 1 << k);
        let g = from_mask(n, &all, mask);
        if g.is_connected() {
            return g;
        }
    }
}

/// `count` random connected graphs on 6 or 7 vertices.
pub fn random_battery(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(6..=7);
            let p = rng.gen_range(0.25..0.75);
            random_connected(&mut rng, n, p)
        })
        .collect()
}

pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b))).collect();
    Graph::with_vertex_count(m + n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).map(|k| (k, (k + 1) % n)).collect();
    Graph::with_vertex_count(n, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|k| (k, k + 1)).collect();
    Graph::with_vertex_count(n, &edges).unwrap()
}

/// Connected bipartite graphs on 6..=8 vertices: random ones plus named families.
pub fn bipartite_supplement(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(6..=8);
        let left = rng.gen_range(1..n);
        let all: Vec<(usize, usize)> = (0..left).flat_map(|a| (left..n).map(move |b| (a, b))).collect();
        let p = rng.gen_range(0.3..0.8);
        let edges: Vec<(usize, usize)> = all.into_iter().filter(|_| rng.gen_bool(p)).collect();
        // relabel so the sides interleave
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let edges: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let g = Graph::with_vertex_count(n, &edges).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    for (m, n) in [(1, 5), (2, 4), (3, 3), (3, 4), (4, 4), (1, 7), (2, 6), (3, 5)] {
        out.push(complete_bipartite(m, n));
    }
    for n in [6, 8] {
        out.push(cycle(n));
    }
    for n in 6..=8 {
        out.push(path(n));
    }
    out
}

/// The graph battery: all connected graphs on at most five vertices and `random`
/// random connected graphs on six or seven.
pub fn battery(random: usize) -> Vec<Graph> {
    let mut out = all_connected(5);
    out.extend(random_battery(random, 0xb477e7));
    out
}
