//! Strategies. Each one is a total function of the visible position, so
//! replays with the same seeds reproduce identical games.
//!
//! The potential strategy keeps the classical weight (1+b)^(-free edges)
//! for every family member not yet hit by its own side; as blocker it kills
//! the heaviest mass per pick, as attacker it walks into it, as Client it
//! takes the offered edge adding the least exposure.

use super::board::{EdgeId, GameState, Owner, Side};
use super::family::Family;
use num::{BigInt, BigRational, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub trait Strategy {
    fn name(&self) -> &'static str;

    /// Pick one free edge to claim (Maker, Breaker, Avoider, Enforcer).
    fn claim(&mut self, state: &GameState, side: Side) -> EdgeId;

    /// As Waiter: put 1..=max_offer free edges on the table.
    fn offer(&mut self, state: &GameState, max_offer: usize) -> Vec<EdgeId>;

    /// As Client: take one of the offered edges.
    fn choose(&mut self, state: &GameState, offered: &[EdgeId]) -> EdgeId;
}

/// Uniformly random play.
pub struct RandomStrategy {
    rng: ChaCha12Rng,
}

impl RandomStrategy {
    pub fn new(seed: u64) -> Self {
        RandomStrategy { rng: ChaCha12Rng::seed_from_u64(seed) }
    }
}

pub fn random_edge_strategy(seed: u64) -> RandomStrategy {
    RandomStrategy::new(seed)
}

impl Strategy for RandomStrategy {
    fn name(&self) -> &'static str {
        "random"
    }

    fn claim(&mut self, state: &GameState, _side: Side) -> EdgeId {
        let free: Vec<EdgeId> = state.free_edges().collect();
        free[self.rng.gen_range(0..free.len())]
    }

    fn offer(&mut self, state: &GameState, max_offer: usize) -> Vec<EdgeId> {
        let free: Vec<EdgeId> = state.free_edges().collect();
        let size = self.rng.gen_range(1..=max_offer.min(free.len()));
        free.choose_multiple(&mut self.rng, size).copied().collect()
    }

    fn choose(&mut self, _state: &GameState, offered: &[EdgeId]) -> EdgeId {
        *offered.choose(&mut self.rng).expect("offer is nonempty")
    }
}

/// Deterministic degree greed: claim the free edge maximizing the sum of
/// this side's current degrees at its endpoints, ties to the smallest edge
/// id. As Waiter it offers the lexicographically first free edges.
pub struct GreedyDegreeStrategy;

pub fn greedy_degree_strategy() -> GreedyDegreeStrategy {
    GreedyDegreeStrategy
}

impl GreedyDegreeStrategy {
    fn degrees(state: &GameState, side: Side) -> Vec<u32> {
        let mut deg = vec![0u32; state.n];
        for e in state.edges_of(side) {
            let (u, v) = super::board::edge_endpoints(e, state.n);
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    fn pick_from(state: &GameState, side: Side, pool: &[EdgeId]) -> EdgeId {
        let deg = Self::degrees(state, side);
        let mut best: Option<(u32, EdgeId)> = None;
        for &e in pool {
            let (u, v) = super::board::edge_endpoints(e, state.n);
            let score = deg[u as usize] + deg[v as usize];
            if best.map_or(true, |(bs, be)| score > bs || (score == bs && e < be)) {
                best = Some((score, e));
            }
        }
        best.expect("pool is nonempty").1
    }
}

impl Strategy for GreedyDegreeStrategy {
    fn name(&self) -> &'static str {
        "greedy-degree"
    }

    fn claim(&mut self, state: &GameState, side: Side) -> EdgeId {
        let free: Vec<EdgeId> = state.free_edges().collect();
        Self::pick_from(state, side, &free)
    }

    fn offer(&mut self, state: &GameState, max_offer: usize) -> Vec<EdgeId> {
        state.free_edges().take(max_offer.max(1)).collect()
    }

    fn choose(&mut self, state: &GameState, offered: &[EdgeId]) -> EdgeId {
        Self::pick_from(state, Side::A, offered)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialMode {
    /// maximize the member mass killed per pick (Breaker, Enforcer)
    Block,
    /// walk into the heaviest members (adversarial Maker)
    Attack,
}

pub struct PotentialStrategy {
    family: Family,
    bias: usize,
    mode: PotentialMode,
}

pub fn potential_blocker_strategy(family: Family, bias: usize) -> PotentialStrategy {
    PotentialStrategy { family, bias, mode: PotentialMode::Block }
}

pub fn potential_attack_strategy(family: Family, bias: usize) -> PotentialStrategy {
    PotentialStrategy { family, bias, mode: PotentialMode::Attack }
}

impl PotentialStrategy {
    /// Weight of every member not containing an edge of `own`, as
    /// (1+b)^(-free(H)), plus the list of members each free edge sits in.
    /// Everything is recomputed from the visible state, so the strategy
    /// carries no hidden state across moves.
    fn edge_masses(&self, state: &GameState, own: Owner) -> Vec<(EdgeId, BigRational)> {
        let base = BigInt::from(self.bias as u64 + 1);
        let mut per_edge: Vec<BigRational> = vec![BigRational::zero(); state.edge_count()];
        let mut touched: Vec<bool> = vec![false; state.edge_count()];
        for member in self.family.members() {
            let mut free = 0usize;
            let mut dead = false;
            for &e in member {
                let o = state.owner(e);
                if o == own {
                    dead = true;
                    break;
                }
                if o == Owner::Free {
                    free += 1;
                }
            }
            if dead || free == 0 {
                // free == 0 means the opponent owns it completely; no pick
                // can change it
                continue;
            }
            let weight = BigRational::new(BigInt::one(), num::pow::pow(base.clone(), free));
            for &e in member {
                if state.owner(e) == Owner::Free {
                    per_edge[e as usize] += &weight;
                    touched[e as usize] = true;
                }
            }
        }
        per_edge
            .into_iter()
            .enumerate()
            .filter(|(e, _)| touched[*e])
            .map(|(e, w)| (e as EdgeId, w))
            .collect()
    }

    fn heaviest_free(&self, state: &GameState, own: Owner, pool: Option<&[EdgeId]>) -> EdgeId {
        let masses = self.edge_masses(state, own);
        let in_pool = |e: EdgeId| pool.map_or(true, |p| p.contains(&e));
        let mut best: Option<(BigRational, EdgeId)> = None;
        for (e, w) in masses {
            if !in_pool(e) {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bw, be)) => w > *bw || (w == *bw && e < *be),
            };
            if better {
                best = Some((w, e));
            }
        }
        match best {
            Some((_, e)) => e,
            // no member is in play; fall back to the first legal edge
            None => match pool {
                Some(p) => p[0],
                None => state.free_edges().next().expect("board not exhausted"),
            },
        }
    }
}

impl Strategy for PotentialStrategy {
    fn name(&self) -> &'static str {
        match self.mode {
            PotentialMode::Block => "potential-block",
            PotentialMode::Attack => "potential-attack",
        }
    }

    fn claim(&mut self, state: &GameState, side: Side) -> EdgeId {
        let own = match self.mode {
            // kill mass over members without an own edge
            PotentialMode::Block => side.owner(),
            // the attacker threatens members untouched by the opponent
            PotentialMode::Attack => match side {
                Side::A => Owner::SideB,
                Side::B => Owner::SideA,
            },
        };
        self.heaviest_free(state, own, None)
    }

    fn offer(&mut self, state: &GameState, max_offer: usize) -> Vec<EdgeId> {
        // adversarial Waiter: put the heaviest edges on the table
        let mut masses = self.edge_masses(state, Owner::SideB);
        masses.sort_by(|(ea, wa), (eb, wb)| wb.cmp(wa).then(ea.cmp(eb)));
        let mut offer: Vec<EdgeId> = masses.iter().take(max_offer).map(|&(e, _)| e).collect();
        if offer.is_empty() {
            offer.extend(state.free_edges().take(max_offer.max(1)));
            offer.truncate(max_offer.max(1));
        }
        offer
    }

    fn choose(&mut self, state: &GameState, offered: &[EdgeId]) -> EdgeId {
        // Client: take the edge adding the least exposure to its own graph
        let masses = self.edge_masses(state, Owner::SideB);
        let mass_of = |e: EdgeId| {
            masses
                .iter()
                .find(|&&(me, _)| me == e)
                .map(|(_, w)| w.clone())
                .unwrap_or_else(BigRational::zero)
        };
        let mut best: Option<(BigRational, EdgeId)> = None;
        for &e in offered {
            let w = mass_of(e);
            let better = match &best {
                None => true,
                Some((bw, be)) => w < *bw || (w == *bw && e < *be),
            };
            if better {
                best = Some((w, e));
            }
        }
        best.expect("offer is nonempty").1
    }
}
