//! The board: edges of K_n indexed lexicographically, per-edge ownership,
//! and the move log.

use super::GameError;
use crate::graph::Graph;
use serde::Serialize;

pub type EdgeId = u32;

/// Edge id of (u, v), u != v, on the board K_n: pairs (u, v) with u < v in
/// lexicographic order.
pub fn edge_id(u: u32, v: u32, n: usize) -> EdgeId {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    let n = n as u64;
    let a64 = a as u64;
    (a64 * (2 * n - a64 - 1) / 2 + (b as u64 - a64 - 1)) as EdgeId
}

pub fn edge_endpoints(id: EdgeId, n: usize) -> (u32, u32) {
    let n = n as u64;
    let mut id = id as u64;
    let mut u = 0u64;
    loop {
        let row = n - u - 1;
        if id < row {
            return (u as u32, (u + 1 + id) as u32);
        }
        id -= row;
        u += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoardSize(pub usize);

impl BoardSize {
    pub fn edge_count(&self) -> usize {
        self.0 * (self.0 - 1) / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Owner {
    Free,
    SideA,
    SideB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn owner(&self) -> Owner {
        match self {
            Side::A => Owner::SideA,
            Side::B => Owner::SideB,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GameKind {
    MakerBreaker,
    AvoiderEnforcer,
    ClientWaiter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MoveRecord {
    Claim { round: u32, side: Side, edge: EdgeId },
    Offer { round: u32, edges: Vec<EdgeId> },
}

/// Full game position: board size, bias, rule set, move order, per-edge
/// owners and the ordered move log. The seed is carried for provenance.
#[derive(Debug, Clone, Serialize)]
pub struct GameState {
    pub n: usize,
    pub bias: usize,
    pub kind: GameKind,
    pub first: Side,
    pub seed: u64,
    owners: Vec<Owner>,
    pub history: Vec<MoveRecord>,
    pub rounds_played: u32,
}

impl GameState {
    pub fn new(
        n: usize,
        bias: usize,
        kind: GameKind,
        first: Side,
        seed: u64,
    ) -> Result<GameState, GameError> {
        if n < 2 {
            return Err(GameError::InvalidParams(format!("board needs n >= 2, got {n}")));
        }
        if bias < 1 {
            return Err(GameError::InvalidParams("bias must be >= 1".into()));
        }
        Ok(GameState {
            n,
            bias,
            kind,
            first,
            seed,
            owners: vec![Owner::Free; n * (n - 1) / 2],
            history: Vec::new(),
            rounds_played: 0,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.owners.len()
    }

    pub fn owner(&self, e: EdgeId) -> Owner {
        self.owners[e as usize]
    }

    pub fn free_count(&self) -> usize {
        self.owners.iter().filter(|&&o| o == Owner::Free).count()
    }

    pub fn free_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.owners
            .iter()
            .enumerate()
            .filter(|(_, &o)| o == Owner::Free)
            .map(|(e, _)| e as EdgeId)
    }

    pub fn edges_of(&self, side: Side) -> impl Iterator<Item = EdgeId> + '_ {
        let want = side.owner();
        self.owners
            .iter()
            .enumerate()
            .filter(move |(_, &o)| o == want)
            .map(|(e, _)| e as EdgeId)
    }

    pub fn count_of(&self, side: Side) -> usize {
        self.edges_of(side).count()
    }

    /// The graph of a side's claimed edges, on all n board vertices.
    pub fn graph_of(&self, side: Side) -> Graph {
        let edges: Vec<(u32, u32)> = self
            .edges_of(side)
            .map(|e| edge_endpoints(e, self.n))
            .collect();
        Graph::from_edges(self.n, &edges).expect("board edges are simple")
    }

    pub(super) fn set_owner(&mut self, e: EdgeId, side: Side) {
        debug_assert_eq!(self.owners[e as usize], Owner::Free, "owner flips only from Free");
        self.owners[e as usize] = side.owner();
    }
}
