//! Clique-minor search: exact branch-and-bound at toy scale (the oracle)
//! and a seeded contraction heuristic at pipeline scale. A minor model is a
//! family of disjoint connected branch sets with an edge between every pair;
//! contracting each set yields the complete graph.

use crate::graph::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MinorError {
    #[error("exact search capped at n <= {max_n}, t <= {max_t} (got n = {n}, t = {t})")]
    TooLarge { n: usize, t: usize, max_n: usize, max_t: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid minor model: {0}")]
    InvalidModel(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct MinorModel {
    pub branch_sets: Vec<VertexSet>,
}

impl MinorModel {
    pub fn order(&self) -> usize {
        self.branch_sets.len()
    }
}

/// Check the complete-minor model invariants against the host graph:
/// pairwise disjoint branch sets, each spanning a connected subgraph, and
/// at least one edge between every pair.
pub fn validate_clique_model(g: &Graph, model: &MinorModel) -> Result<(), MinorError> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(MinorError::InvalidModel(format!("branch set {i} is empty")));
        }
        for v in set.iter() {
            if v as usize >= g.n() {
                return Err(MinorError::InvalidModel(format!("vertex {v} out of range")));
            }
            if owner[v as usize] != usize::MAX {
                return Err(MinorError::InvalidModel(format!(
                    "vertex {v} appears in branch sets {} and {i}",
                    owner[v as usize]
                )));
            }
            owner[v as usize] = i;
        }
    }
    for (i, set) in model.branch_sets.iter().enumerate() {
        if !set_connected(g, set) {
            return Err(MinorError::InvalidModel(format!("branch set {i} is not connected")));
        }
    }
    for i in 0..model.branch_sets.len() {
        for j in i + 1..model.branch_sets.len() {
            let joined = model.branch_sets[i].iter().any(|u| {
                g.neighbors(u)
                    .iter()
                    .any(|&w| owner[w as usize] == j)
            });
            if !joined {
                return Err(MinorError::InvalidModel(format!(
                    "no edge between branch sets {i} and {j}"
                )));
            }
        }
    }
    Ok(())
}

fn set_connected(g: &Graph, set: &VertexSet) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    let start = set.members()[0];
    let mut stack = vec![start];
    seen[start as usize] = true;
    let mut count = 0;
    while let Some(v) = stack.pop() {
        count += 1;
        for &u in g.neighbors(v) {
            if set.contains(u) && !seen[u as usize] {
                seen[u as usize] = true;
                stack.push(u);
            }
        }
    }
    count == set.len()
}

const EXACT_MAX_N: usize = 12;
const EXACT_MAX_T: usize = 5;

/// Exact complete-minor test by branch-and-bound over vertex-to-branch
/// assignments with first-use symmetry breaking. Returns a validated model
/// or None. Capped at n <= 12, t <= 5.
pub fn clique_minor_exact(g: &Graph, t: usize) -> Result<Option<MinorModel>, MinorError> {
    let n = g.n();
    if n > EXACT_MAX_N || t > EXACT_MAX_T {
        return Err(MinorError::TooLarge { n, t, max_n: EXACT_MAX_N, max_t: EXACT_MAX_T });
    }
    if t == 0 {
        return Ok(Some(MinorModel { branch_sets: Vec::new() }));
    }
    if t > n || g.m() + (t - 1) < t * (t - 1) / 2 + (t - 1) {
        // t branch sets need t*(t-1)/2 joining edges plus intra-set edges
        // beyond singletons; a cheaper sound bound: m >= C(t,2)
        if g.m() < t * (t - 1) / 2 || t > n {
            return Ok(None);
        }
    }
    let adj: Vec<u16> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &u| m | (1 << u)))
        .collect();
    let mut assignment = vec![usize::MAX; n];
    let mut sets: Vec<u16> = Vec::new();
    if search(g, &adj, t, 0, &mut assignment, &mut sets) {
        let branch_sets: Vec<VertexSet> = (0..t)
            .map(|i| {
                VertexSet::new(
                    (0..n as u32)
                        .filter(|&v| assignment[v as usize] == i)
                        .collect(),
                )
            })
            .collect();
        let model = MinorModel { branch_sets };
        validate_clique_model(g, &model)?;
        return Ok(Some(model));
    }
    Ok(None)
}

fn search(
    g: &Graph,
    adj: &[u16],
    t: usize,
    v: usize,
    assignment: &mut [usize],
    sets: &mut Vec<u16>,
) -> bool {
    let n = g.n();
    if sets.len() + (n - v) < t {
        return false; // not enough vertices left to open the remaining sets
    }
    if v == n {
        if sets.len() < t {
            return false;
        }
        // connectivity of every branch set
        for &mask in sets.iter() {
            if !mask_connected(adj, mask) {
                return false;
            }
        }
        // an edge between every pair
        for i in 0..t {
            for j in i + 1..t {
                if !masks_joined(adj, sets[i], sets[j]) {
                    return false;
                }
            }
        }
        return true;
    }
    // leave v unused
    assignment[v] = usize::MAX;
    if search(g, adj, t, v + 1, assignment, sets) {
        return true;
    }
    // put v in an existing set or open the next one (first-use order)
    let open_new = sets.len() < t;
    for i in 0..sets.len() + usize::from(open_new) {
        if i < sets.len() {
            sets[i] |= 1 << v;
            assignment[v] = i;
            if search(g, adj, t, v + 1, assignment, sets) {
                return true;
            }
            sets[i] &= !(1 << v);
        } else {
            sets.push(1 << v);
            assignment[v] = i;
            if search(g, adj, t, v + 1, assignment, sets) {
                return true;
            }
            sets.pop();
        }
    }
    assignment[v] = usize::MAX;
    false
}

fn mask_connected(adj: &[u16], mask: u16) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as u16;
    let mut seen: u16 = 1 << start;
    loop {
        let mut grown = seen;
        let mut bits = seen;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            grown |= adj[v] & mask;
        }
        if grown == seen {
            break;
        }
        seen = grown;
    }
    seen == mask
}

fn masks_joined(adj: &[u16], a: u16, b: u16) -> bool {
    let mut bits = a;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if adj[v] & b != 0 {
            return true;
        }
    }
    false
}

/// Largest order the exact search certifies, scanning t downward from
/// min(n, 5). A t-model contains a (t-1)-model, so the first hit is the max.
pub fn clique_minor_exact_max(g: &Graph) -> Result<usize, MinorError> {
    for t in (1..=g.n().min(EXACT_MAX_T)).rev() {
        if clique_minor_exact(g, t)?.is_some() {
            return Ok(t);
        }
    }
    Ok(0)
}

/// Seeded contraction heuristic: repeatedly contract the edge of the
/// current minor graph that maximizes the resulting minimum degree (ties
/// broken by the seed), stop as soon as the minor graph is complete, and
/// keep the best order over the restarts. The order is a lower bound only.
pub fn clique_minor_greedy(
    g: &Graph,
    seed: u64,
    restarts: u32,
) -> Result<MinorModel, MinorError> {
    if !crate::graph::is_connected(g) {
        return Err(MinorError::Disconnected);
    }
    let mut best: Option<MinorModel> = None;
    for restart in 0..restarts.max(1) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        // the first restart is the pure greedy; later ones take an
        // occasional random contraction to leave its basin
        let model = greedy_run(g, &mut rng, restart > 0);
        if best.as_ref().map_or(true, |b| model.order() > b.order()) {
            best = Some(model);
        }
    }
    let model = best.expect("at least one restart");
    validate_clique_model(g, &model)?;
    Ok(model)
}

// candidate pool cap per contraction step; beyond it a seeded sample of
// edges is scored instead of all of them
const GREEDY_CANDIDATE_CAP: usize = 256;

fn greedy_run(g: &Graph, rng: &mut ChaCha12Rng, explore: bool) -> MinorModel {
    let n = g.n();
    // branch i's member list and its adjacency set over branch ids
    let mut members: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut a: Vec<usize> = g.neighbors(v as u32).iter().map(|&u| u as usize).collect();
            a.sort_unstable();
            a
        })
        .collect();
    let mut order = n;

    loop {
        // complete?
        let mut complete = true;
        'outer: for i in 0..n {
            if alive[i] && adj[i].len() + 1 < order {
                complete = false;
                break 'outer;
            }
        }
        if complete || order <= 1 {
            break;
        }
        // gather candidate edges (i < j)
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            for &j in &adj[i] {
                if i < j {
                    candidates.push((i, j));
                }
            }
        }
        if candidates.len() > GREEDY_CANDIDATE_CAP {
            candidates.shuffle(rng);
            candidates.truncate(GREEDY_CANDIDATE_CAP);
        }
        if explore && rng.gen_ratio(1, 5) {
            let &(i, j) = candidates.choose(rng).expect("candidates nonempty");
            contract(&mut members, &mut alive, &mut adj, i, j);
            order -= 1;
            continue;
        }
        // score: maximize the post-contraction minimum degree; among those,
        // prefer endpoints sharing the fewest neighbors, which loses the
        // fewest parallel edges and preserves the excess a larger complete
        // minor needs
        let mut best_score: Option<(usize, std::cmp::Reverse<usize>)> = None;
        let mut best_edges: Vec<(usize, usize)> = Vec::new();
        for &(i, j) in &candidates {
            let (min_deg, common) = contraction_score(&adj, &alive, i, j);
            let score = (min_deg, std::cmp::Reverse(common));
            if best_score.map_or(true, |b| score > b) {
                best_score = Some(score);
                best_edges.clear();
                best_edges.push((i, j));
            } else if best_score == Some(score) {
                best_edges.push((i, j));
            }
        }
        let &(i, j) = best_edges
            .choose(rng)
            .expect("a non-complete connected minor graph has edges");
        contract(&mut members, &mut alive, &mut adj, i, j);
        order -= 1;
    }

    let branch_sets: Vec<VertexSet> = (0..n)
        .filter(|&i| alive[i])
        .map(|i| VertexSet::new(members[i].clone()))
        .collect();
    MinorModel { branch_sets }
}

/// Merge branch j into branch i and rewire the minor-graph adjacency.
fn contract(
    members: &mut [Vec<u32>],
    alive: &mut [bool],
    adj: &mut [Vec<usize>],
    i: usize,
    j: usize,
) {
    let moved = std::mem::take(&mut members[j]);
    members[i].extend(moved);
    alive[j] = false;
    let j_adj = std::mem::take(&mut adj[j]);
    for &k in &j_adj {
        let pos = adj[k].binary_search(&j).expect("symmetric adjacency");
        adj[k].remove(pos);
        if k != i && adj[k].binary_search(&i).is_err() {
            let pos = adj[k].binary_search(&i).unwrap_err();
            adj[k].insert(pos, i);
            let pos = adj[i].binary_search(&k).unwrap_err();
            adj[i].insert(pos, k);
        }
    }
    if let Ok(pos) = adj[i].binary_search(&j) {
        adj[i].remove(pos);
    }
}

/// (minimum degree after contracting branch edge (i, j), number of common
/// neighbors of i and j), computed without mutating the minor graph.
fn contraction_score(
    adj: &[Vec<usize>],
    alive: &[bool],
    i: usize,
    j: usize,
) -> (usize, usize) {
    let mut merged = 0usize;
    let mut common = 0usize;
    {
        let mut a = adj[i].iter().peekable();
        let mut b = adj[j].iter().peekable();
        // |adj(i) u adj(j)| - {i, j}, tracking the intersection
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    let v = if x <= y { x } else { y };
                    let in_a = x == v;
                    let in_b = y == v;
                    if in_a {
                        a.next();
                    }
                    if in_b {
                        b.next();
                    }
                    if v != i && v != j {
                        merged += 1;
                        if in_a && in_b {
                            common += 1;
                        }
                    }
                }
                (Some(&&x), None) => {
                    if x != i && x != j {
                        merged += 1;
                    }
                    a.next();
                }
                (None, Some(&&y)) => {
                    if y != i && y != j {
                        merged += 1;
                    }
                    b.next();
                }
                (None, None) => break,
            }
        }
    }
    let mut min_deg = merged;
    for (k, a) in adj.iter().enumerate() {
        if !alive[k] || k == i || k == j {
            continue;
        }
        let has_i = a.binary_search(&i).is_ok();
        let has_j = a.binary_search(&j).is_ok();
        let deg = a.len() - usize::from(has_i && has_j);
        min_deg = min_deg.min(deg);
    }
    (min_deg, common)
}

/// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).unwrap()
}
