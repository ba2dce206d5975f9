//! Explicit families of forbidden subgraphs over E(K_n), the exact
//! Beck/Client–Waiter criterion sums, and the toy-scale generators for the
//! two families behind the minor pipeline: small high-touch subgraphs
//! (edge count just above eps*n/4, covered by few vertices) and small
//! overdense subgraphs (density just above 1 + eps/8).
//!
//! Both generators freeze the real-valued thresholds to the least violating
//! integer edge count, which makes "G contains no member" agree exactly
//! with the corresponding board property verdict.

use super::board::{edge_endpoints, edge_id, EdgeId};
use super::GameError;
use crate::graph::Graph;
use crate::rational::{floor_times, Rat};
use num::{BigRational, BigInt, One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Family {
    pub n: usize,
    pub tag: String,
    members: Vec<Vec<EdgeId>>,
}

// generator guard: enumeration stops being a toy beyond this many members
const MAX_MEMBERS: usize = 2_000_000;

impl Family {
    pub fn from_edge_ids(
        n: usize,
        tag: impl Into<String>,
        members: Vec<Vec<EdgeId>>,
    ) -> Result<Family, GameError> {
        let count = n * (n - 1) / 2;
        let mut canon = Vec::with_capacity(members.len());
        for (i, member) in members.into_iter().enumerate() {
            if member.is_empty() {
                return Err(GameError::InvalidParams(format!("family member {i} is empty")));
            }
            let mut m = member;
            m.sort_unstable();
            m.dedup();
            if let Some(&e) = m.iter().find(|&&e| e as usize >= count) {
                return Err(GameError::InvalidParams(format!(
                    "family member {i} has edge {e} outside the K_{n} board"
                )));
            }
            canon.push(m);
        }
        Ok(Family { n, tag: tag.into(), members: canon })
    }

    pub fn from_pairs(
        n: usize,
        tag: impl Into<String>,
        members: Vec<Vec<(u32, u32)>>,
    ) -> Result<Family, GameError> {
        for member in &members {
            for &(u, v) in member {
                if u == v {
                    return Err(GameError::InvalidParams(format!("self loop ({u},{u})")));
                }
                if u as usize >= n || v as usize >= n {
                    return Err(GameError::InvalidParams(format!(
                        "edge ({u},{v}) outside the K_{n} board"
                    )));
                }
            }
        }
        let ids = members
            .into_iter()
            .map(|m| m.into_iter().map(|(u, v)| edge_id(u, v, n)).collect())
            .collect();
        Family::from_edge_ids(n, tag, ids)
    }

    pub fn members(&self) -> &[Vec<EdgeId>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All triangles of K_n.
    pub fn triangles(n: usize) -> Family {
        let mut members = Vec::new();
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                for c in b + 1..n as u32 {
                    members.push(vec![
                        edge_id(a, b, n),
                        edge_id(a, c, n),
                        edge_id(b, c, n),
                    ]);
                }
            }
        }
        Family { n, tag: "all-triangles".into(), members }
    }

    /// Toy-scale family of high-touch subgraphs: every edge set of size
    /// floor(eps*n/4)+1 whose vertex cover number is at most floor(delta*n).
    /// A member inside a graph G is exactly a floor(delta*n)-set of
    /// vertices touching more than eps*n/4 edges of G.
    pub fn high_touch_toy(n: usize, eps: &Rat, delta: &Rat) -> Result<Family, GameError> {
        let edge_target = floor_times(&(*eps / Rat::from_integer(4)), n) + 1;
        let cover_cap = floor_times(delta, n);
        let board = n * (n - 1) / 2;
        let mut members = Vec::new();
        if cover_cap > 0 && edge_target <= board {
            let mut subset: Vec<usize> = (0..edge_target).collect();
            loop {
                let edges: Vec<EdgeId> = subset.iter().map(|&i| i as EdgeId).collect();
                if cover_number_at_most(n, &edges, cover_cap) {
                    members.push(edges);
                    if members.len() > MAX_MEMBERS {
                        return Err(GameError::InvalidParams(
                            "family enumeration exceeds the toy-scale cap".into(),
                        ));
                    }
                }
                if !next_combination(&mut subset, board) {
                    break;
                }
            }
        }
        Ok(Family {
            n,
            tag: format!("high-touch(eps={eps}, delta={delta})"),
            members,
        })
    }

    /// Toy-scale family of overdense subgraphs: for every vertex set U with
    /// |U| <= floor(delta*n), every edge subset of K_U of size
    /// floor((1+eps/8)|U|)+1. A member inside G is exactly a small set
    /// spanning more than (1+eps/8)|U| edges.
    pub fn overdense_toy(n: usize, eps: &Rat, delta: &Rat) -> Result<Family, GameError> {
        let u_cap = floor_times(delta, n);
        let mut members = Vec::new();
        let density = Rat::from_integer(1) + *eps / Rat::from_integer(8);
        for u_size in 2..=u_cap.min(n) {
            let edge_target = floor_times(&density, u_size) + 1;
            let pair_count = u_size * (u_size - 1) / 2;
            if edge_target > pair_count {
                continue;
            }
            let mut verts: Vec<usize> = (0..u_size).collect();
            loop {
                // all edge subsets of this vertex set
                let pairs: Vec<EdgeId> = {
                    let mut p = Vec::with_capacity(pair_count);
                    for i in 0..u_size {
                        for j in i + 1..u_size {
                            p.push(edge_id(verts[i] as u32, verts[j] as u32, n));
                        }
                    }
                    p
                };
                let mut pick: Vec<usize> = (0..edge_target).collect();
                loop {
                    members.push(pick.iter().map(|&i| pairs[i]).collect());
                    if members.len() > MAX_MEMBERS {
                        return Err(GameError::InvalidParams(
                            "family enumeration exceeds the toy-scale cap".into(),
                        ));
                    }
                    if !next_combination(&mut pick, pair_count) {
                        break;
                    }
                }
                if !next_combination(&mut verts, n) {
                    break;
                }
            }
        }
        Ok(Family {
            n,
            tag: format!("overdense(eps={eps}, delta={delta})"),
            members,
        })
    }

    /// Index of the first member fully contained in G, if any.
    pub fn member_inside(&self, g: &Graph) -> Option<usize> {
        assert_eq!(g.n(), self.n, "graph and family boards differ");
        self.members.iter().position(|member| {
            member.iter().all(|&e| {
                let (u, v) = edge_endpoints(e, self.n);
                g.has_edge(u, v)
            })
        })
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if idx[i] != i + n - k {
            break;
        }
    }
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Vertex cover number of the subgraph formed by `edges`, tested against a
/// cap by exhaustive search over subsets of the support.
fn cover_number_at_most(n: usize, edges: &[EdgeId], cap: usize) -> bool {
    let mut support: Vec<u32> = Vec::new();
    let pairs: Vec<(u32, u32)> = edges.iter().map(|&e| edge_endpoints(e, n)).collect();
    for &(u, v) in &pairs {
        support.push(u);
        support.push(v);
    }
    support.sort_unstable();
    support.dedup();
    let s = support.len();
    if cap >= s {
        return true; // the support itself covers everything
    }
    // masks over support positions
    let pos = |v: u32| support.binary_search(&v).unwrap();
    let edge_masks: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| (pos(u), pos(v))).collect();
    for mask in 0u32..(1 << s) {
        if (mask.count_ones() as usize) > cap {
            continue;
        }
        if edge_masks
            .iter()
            .all(|&(a, b)| mask & (1 << a) != 0 || mask & (1 << b) != 0)
        {
            return true;
        }
    }
    false
}

/// The blocking-criterion sum sum_H (1+b)^(-|E(H)|), exact. Both biased
/// blocking criteria use the same sum with different thresholds: the Beck
/// criterion needs < 1, the Client–Waiter criterion needs < 1/2.
#[derive(Debug, Clone)]
pub struct CriterionSums {
    pub sum: BigRational,
    pub beck_holds: bool,
    pub cw_holds: bool,
}

impl CriterionSums {
    pub fn sum_f64(&self) -> f64 {
        crate::rational::big_to_f64(&self.sum)
    }
}

pub fn criterion_sums(family: &Family, bias: usize) -> CriterionSums {
    assert!(bias >= 1, "bias must be >= 1");
    let base = BigInt::from(bias as u64 + 1);
    let mut sum = BigRational::zero();
    for member in family.members() {
        let denom = num::pow::pow(base.clone(), member.len());
        sum += BigRational::new(BigInt::one(), denom);
    }
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    CriterionSums {
        beck_holds: sum < one,
        cw_holds: sum < half,
        sum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn triangle_counts() {
        assert_eq!(Family::triangles(4).len(), 4);
        assert_eq!(Family::triangles(5).len(), 10);
    }

    #[test]
    fn criterion_sums_match_hand_counts() {
        // triangles of K4 at bias 1: 4 * 2^-3 = 1/2
        let s = criterion_sums(&Family::triangles(4), 1);
        assert_eq!(s.sum, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(s.beck_holds);
        assert!(!s.cw_holds);

        // triangles of K5 at bias 2: 10 * 3^-3 = 10/27
        let s = criterion_sums(&Family::triangles(5), 2);
        assert_eq!(s.sum, BigRational::new(BigInt::from(10), BigInt::from(27)));
        assert!(s.beck_holds);
        assert!(s.cw_holds);

        // empty family sums to zero
        let empty = Family { n: 4, tag: "empty".into(), members: vec![] };
        let s = criterion_sums(&empty, 3);
        assert!(s.sum.is_zero());
        assert!(s.beck_holds && s.cw_holds);
    }

    #[test]
    fn member_inside_detects_subgraphs() {
        let fam = Family::triangles(5);
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        assert!(fam.member_inside(&g).is_some());
        let h = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(fam.member_inside(&h).is_none());
    }

    #[test]
    fn family_validation() {
        assert!(Family::from_pairs(4, "t", vec![vec![(0, 0)]]).is_err());
        assert!(Family::from_pairs(4, "t", vec![vec![(0, 5)]]).is_err());
        assert!(Family::from_pairs(4, "t", vec![vec![]]).is_err());
        let fam = Family::from_pairs(4, "t", vec![vec![(0, 1), (1, 0)]]).unwrap();
        assert_eq!(fam.members()[0].len(), 1);
    }

    #[test]
    fn high_touch_toy_matches_touch_semantics() {
        // n=4, eps=2, delta=1/4: members have floor(2)+1 = 3 edges covered
        // by one vertex, i.e. stars K_{1,3}
        let fam = Family::high_touch_toy(4, &rat(2, 1), &rat(1, 4)).unwrap();
        assert_eq!(fam.len(), 4);
        for member in fam.members() {
            assert_eq!(member.len(), 3);
        }
    }

    #[test]
    fn overdense_toy_counts() {
        // n=6, delta=2/3 -> |U| <= 4; density 1+eps/8 with eps=1 -> targets
        // floor(1.125*u)+1 edges: u=3 needs 4 > 3 pairs (skip), u=4 needs 5
        // of 6 pairs: C(6,4)=15 vertex sets x C(6,5)=6 subsets = 90
        let fam = Family::overdense_toy(6, &rat(1, 1), &rat(2, 3)).unwrap();
        assert_eq!(fam.len(), 90);
    }

    #[test]
    fn cover_number_cases() {
        // a star is covered by its center
        let star = vec![edge_id(0, 1, 5), edge_id(0, 2, 5), edge_id(0, 3, 5)];
        assert!(cover_number_at_most(5, &star, 1));
        // a triangle needs two vertices
        let tri = vec![edge_id(0, 1, 5), edge_id(1, 2, 5), edge_id(0, 2, 5)];
        assert!(!cover_number_at_most(5, &tri, 1));
        assert!(cover_number_at_most(5, &tri, 2));
    }
}
