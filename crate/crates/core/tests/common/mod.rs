//! Shared corpus generators and independent brute-force oracles for the
//! integration suites. Oracles here deliberately avoid the library code
//! paths they are used to check.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use xpk_core::graph::{Graph, VertexSet};

pub fn rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut r = ChaCha12Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
    edges.push((n as u32 - 1, 0));
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| (r * cols + c) as u32;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).unwrap()
}

/// Random spanning tree (random attachment) plus `extra` random non-tree
/// edges: always connected.
pub fn random_connected(rng: &mut ChaCha12Rng, n: usize, extra: usize) -> Graph {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut present = std::collections::HashSet::new();
    for v in 1..n as u32 {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        present.insert((u, v));
    }
    let mut attempts = 0;
    let mut added = 0;
    let max_edges = n * (n - 1) / 2;
    while added < extra && edges.len() < max_edges && attempts < 50 * (extra + 1) {
        attempts += 1;
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            edges.push(key);
            added += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random graph with every degree capped: adds random edges among pairs
/// whose endpoints both still have room, until `m` edges or no room left.
pub fn random_degree_capped(rng: &mut ChaCha12Rng, n: usize, m: usize, cap: usize) -> Graph {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut present = std::collections::HashSet::new();
    let mut deg = vec![0usize; n];
    let mut attempts = 0;
    while edges.len() < m && attempts < 200 * m + 200 {
        attempts += 1;
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v || deg[u as usize] >= cap || deg[v as usize] >= cap {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            edges.push(key);
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// K_k joined to a path on the remaining n-k vertices by one bridge edge.
pub fn clique_plus_path(k: usize, n: usize) -> Graph {
    assert!(n > k);
    let mut edges = Vec::new();
    for u in 0..k as u32 {
        for v in u + 1..k as u32 {
            edges.push((u, v));
        }
    }
    for i in k as u32..n as u32 - 1 {
        edges.push((i, i + 1));
    }
    edges.push((k as u32 - 1, k as u32));
    Graph::from_edges(n, &edges).unwrap()
}

/// Exhaustive minimum conductance over all cuts: boundary / min-side
/// volume, exact as a (num, den) pair. Independent of the sweep-cut code.
pub fn min_conductance_exhaustive(g: &Graph) -> (u64, u64) {
    let n = g.n();
    assert!(n <= 20, "oracle capped");
    let vol_total: u64 = 2 * g.m() as u64;
    let mut best: Option<(u64, u64)> = None;
    for mask in 1u32..(1 << n) - 1 {
        let members: Vec<u32> = (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect();
        let w = VertexSet::new(members);
        let stats = xpk_core::graph::subset_stats(g, &w).unwrap();
        let vol = stats.volume as u64;
        let min_vol = vol.min(vol_total - vol);
        if min_vol == 0 {
            continue;
        }
        let b = stats.boundary as u64;
        let better = match best {
            None => true,
            Some((bb, bv)) => (b as u128) * (bv as u128) < (bb as u128) * (min_vol as u128),
        };
        if better {
            best = Some((b, min_vol));
        }
    }
    best.expect("graphs with n >= 2 have cuts")
}

/// The Petersen graph.
pub fn petersen() -> Graph {
    xpk_core::minors::petersen()
}
