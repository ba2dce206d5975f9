//! Ground-truth expansion and separator computations on small graphs, by
//! exhaustive bitset enumeration with exact rational arithmetic.

use crate::graph::{Graph, VertexSet};
use crate::rational::Rat;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ExpansionError {
    #[error("graph has {n} vertices, exhaustive search capped at {max}")]
    TooLarge { n: usize, max: usize },
    #[error("graph has {0} vertices, need at least 2")]
    TooSmall(usize),
}

/// Exact vertex expansion: gamma = min over nonempty W with |W| <= n/2 of
/// |N(W)| / |W|, with the set attaining it.
#[derive(Debug, Clone, Serialize)]
pub struct ExpansionProfile {
    #[serde(serialize_with = "crate::rational::serialize_rat")]
    pub gamma: Rat,
    pub worst_set: VertexSet,
}

const EXPANSION_MAX_N: usize = 24;
const SEPARATOR_MAX_N: usize = 16;

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n() as u32)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u32, |acc, &u| acc | (1u32 << u))
        })
        .collect()
}

fn mask_to_set(mask: u32, n: usize) -> VertexSet {
    VertexSet::new((0..n as u32).filter(|&v| mask & (1 << v) != 0).collect())
}

/// True iff the sorted member list of `a` is lexicographically smaller than
/// that of `b` (both interpreted as vertex id sets).
fn lex_smaller(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    a & (1 << diff.trailing_zeros()) != 0
}

/// Exhaustive vertex expansion for n <= 24. Ties go to the smaller witness
/// set, then the lexicographically smaller one.
pub fn vertex_expansion_exact(g: &Graph) -> Result<ExpansionProfile, ExpansionError> {
    let n = g.n();
    if n < 2 {
        return Err(ExpansionError::TooSmall(n));
    }
    if n > EXPANSION_MAX_N {
        return Err(ExpansionError::TooLarge { n, max: EXPANSION_MAX_N });
    }
    let adj = adjacency_masks(g);
    let half = n / 2;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    // best = (ext, size, mask): minimize ext/size exactly
    let mut best: Option<(u32, u32, u32)> = None;
    for mask in 1..=full {
        let size = mask.count_ones();
        if size as usize > half {
            continue;
        }
        let mut nb = 0u32;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            nb |= adj[v as usize];
        }
        let ext = (nb & !mask).count_ones();
        let better = match best {
            None => true,
            Some((be, bs, bm)) => {
                let lhs = (ext as u64) * (bs as u64);
                let rhs = (be as u64) * (size as u64);
                lhs < rhs
                    || (lhs == rhs
                        && (size < bs || (size == bs && lex_smaller(mask, bm))))
            }
        };
        if better {
            best = Some((ext, size, mask));
        }
    }
    let (ext, size, mask) = best.expect("n >= 2 has nonempty subsets");
    Ok(ExpansionProfile {
        gamma: Rat::new(ext as i64, size as i64),
        worst_set: mask_to_set(mask, n),
    })
}

/// A separator: V = A u B u S with no A-B edges and |A|, |B| <= 2n/3.
#[derive(Debug, Clone, Serialize)]
pub struct Separator {
    pub s: VertexSet,
    pub a: VertexSet,
    pub b: VertexSet,
}

/// Exhaustive minimum separator for n <= 16, or None when no valid
/// partition exists (e.g. complete graphs). Enumerates the A side over all
/// subsets; for each A the minimal S is N(A) plus just enough padding from
/// V \ A \ N(A) to push B below 2n/3. Ties: smaller |S|, then smaller |A|,
/// then the numerically smallest A bitmask.
pub fn min_separator_exact(g: &Graph) -> Result<Option<Separator>, ExpansionError> {
    let n = g.n();
    if n < 2 {
        return Err(ExpansionError::TooSmall(n));
    }
    if n > SEPARATOR_MAX_N {
        return Err(ExpansionError::TooLarge { n, max: SEPARATOR_MAX_N });
    }
    let adj = adjacency_masks(g);
    let full: u32 = (1u32 << n) - 1;
    let mut best: Option<(usize, u32, u32, u32, u32)> = None; // (|S|, |A|, a, s, b)
    for a_mask in 1u32..=full {
        let a_size = a_mask.count_ones() as usize;
        if 3 * a_size > 2 * n {
            continue;
        }
        let mut nb = 0u32;
        let mut bits = a_mask;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            nb |= adj[v as usize];
        }
        let s_mask = nb & !a_mask;
        let mut b_mask = full & !a_mask & !s_mask;
        let b_size = b_mask.count_ones() as usize;
        if b_size == 0 {
            continue;
        }
        let mut s_full = s_mask;
        let mut b_final = b_size;
        // move lexicographically smallest B vertices into S until |B| fits
        while 3 * b_final > 2 * n {
            let v = b_mask.trailing_zeros();
            b_mask &= !(1 << v);
            s_full |= 1 << v;
            b_final -= 1;
        }
        let s_size = s_full.count_ones() as usize;
        let better = match best {
            None => true,
            Some((bs, ba, bm, _, _)) => {
                (s_size, a_size, a_mask) < (bs, ba as usize, bm)
            }
        };
        if better {
            best = Some((s_size, a_mask.count_ones(), a_mask, s_full, b_mask));
        }
    }
    Ok(best.map(|(_, _, a, s, b)| Separator {
        s: mask_to_set(s, n),
        a: mask_to_set(a, n),
        b: mask_to_set(b, n),
    }))
}

/// The expansion-based separator floor gamma*n / (3*(gamma+1)), exact.
pub fn separator_lower_bound(gamma: &Rat, n: usize) -> Rat {
    let one = Rat::from_integer(1);
    let three = Rat::from_integer(3);
    *gamma * Rat::from_integer(n as i64) / (three * (*gamma + one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::subset_stats;
    use crate::rational::rat;

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        edges.push((n as u32 - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn k4_expansion_is_one() {
        let p = vertex_expansion_exact(&complete(4)).unwrap();
        assert_eq!(p.gamma, rat(1, 1));
        assert_eq!(p.worst_set.len(), 2);
    }

    #[test]
    fn c8_expansion_is_half() {
        let p = vertex_expansion_exact(&cycle(8)).unwrap();
        assert_eq!(p.gamma, rat(1, 2));
        // lexicographically smallest worst set is the arc {0,1,2,3}
        assert_eq!(p.worst_set.members(), &[0, 1, 2, 3]);
        let s = subset_stats(&cycle(8), &p.worst_set).unwrap();
        assert_eq!(s.ext_neighborhood.len(), 2);
    }

    #[test]
    fn isolated_vertex_gives_zero() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let p = vertex_expansion_exact(&g).unwrap();
        assert_eq!(p.gamma, rat(0, 1));
        assert_eq!(p.worst_set.members(), &[3]);
    }

    #[test]
    fn separator_p3_is_middle() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let sep = min_separator_exact(&g).unwrap().unwrap();
        assert_eq!(sep.s.members(), &[1]);
        assert_eq!(sep.s.len(), 1);
    }

    #[test]
    fn complete_graphs_have_no_separator() {
        assert!(min_separator_exact(&complete(4)).unwrap().is_none());
        assert!(min_separator_exact(&complete(6)).unwrap().is_none());
    }

    #[test]
    fn c6_separator_is_two() {
        let sep = min_separator_exact(&cycle(6)).unwrap().unwrap();
        assert_eq!(sep.s.len(), 2);
        // validate: no A-B edges, sides within 2n/3
        let g = cycle(6);
        for &u in sep.a.members() {
            for &v in sep.b.members() {
                assert!(!g.has_edge(u, v));
            }
        }
        assert!(3 * sep.a.len() <= 12 && 3 * sep.b.len() <= 12);
        assert!(!sep.a.is_empty() && !sep.b.is_empty());
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(separator_lower_bound(&rat(1, 1), 12), rat(2, 1));
        assert_eq!(separator_lower_bound(&rat(0, 1), 100), rat(0, 1));
        assert_eq!(separator_lower_bound(&rat(2, 3), 6), rat(4, 5));
    }
}
