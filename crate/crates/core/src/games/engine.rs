//! The game loop. One round means: in Maker–Breaker and Avoider–Enforcer,
//! both players move in `first` order, side A claiming one edge and side B
//! claiming its full bias (or whatever remains in the last round); in
//! Client–Waiter, Waiter offers between 1 and bias+1 previously unoffered
//! edges, Client keeps exactly one and the rest go to Waiter.
//!
//! Engine-level guarantee for Client–Waiter: Client finishes with at least
//! floor(C(n,2)/(bias+1)) edges no matter how either side plays, because
//! every round hands Client exactly one of at most bias+1 edges.

use super::board::{EdgeId, GameKind, GameState, MoveRecord, Owner, Side};
use super::strategy::Strategy;
use super::GameError;
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct FinishedGame {
    pub state: GameState,
    pub graph_a: Graph,
    pub graph_b: Graph,
}

fn illegal(
    state: &GameState,
    side: Side,
    edge: EdgeId,
    reason: &str,
) -> GameError {
    GameError::IllegalMove {
        side,
        round: state.rounds_played + 1,
        edge,
        reason: reason.to_string(),
        log: state.history.clone(),
    }
}

fn claim_checked(
    state: &mut GameState,
    strat: &mut dyn Strategy,
    side: Side,
) -> Result<(), GameError> {
    let e = strat.claim(state, side);
    if e as usize >= state.edge_count() {
        return Err(illegal(state, side, e, "edge id out of range"));
    }
    if state.owner(e) != Owner::Free {
        return Err(illegal(state, side, e, "edge is not free"));
    }
    state.set_owner(e, side);
    let round = state.rounds_played + 1;
    state.history.push(MoveRecord::Claim { round, side, edge: e });
    Ok(())
}

fn quota(state: &GameState, side: Side) -> usize {
    match side {
        Side::A => 1,
        Side::B => state.bias,
    }
}

/// Run up to `max_rounds` rounds (all of them when None). Returns the state
/// after the board is exhausted or the round budget is spent.
pub fn play_rounds(
    mut state: GameState,
    strat_a: &mut dyn Strategy,
    strat_b: &mut dyn Strategy,
    max_rounds: Option<u32>,
) -> Result<GameState, GameError> {
    loop {
        if state.free_count() == 0 {
            return Ok(state);
        }
        if let Some(cap) = max_rounds {
            if state.rounds_played >= cap {
                return Ok(state);
            }
        }
        match state.kind {
            GameKind::MakerBreaker | GameKind::AvoiderEnforcer => {
                let order = match state.first {
                    Side::A => [Side::A, Side::B],
                    Side::B => [Side::B, Side::A],
                };
                for side in order {
                    let q = quota(&state, side).min(state.free_count());
                    for _ in 0..q {
                        let strat: &mut dyn Strategy = match side {
                            Side::A => strat_a,
                            Side::B => strat_b,
                        };
                        claim_checked(&mut state, strat, side)?;
                    }
                }
            }
            GameKind::ClientWaiter => {
                let max_offer = (state.bias + 1).min(state.free_count());
                let offer = strat_b.offer(&state, max_offer);
                if offer.is_empty() || offer.len() > max_offer {
                    let e = offer.first().copied().unwrap_or(0);
                    return Err(illegal(&state, Side::B, e, "offer size out of range"));
                }
                let mut sorted = offer.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != offer.len() {
                    return Err(illegal(&state, Side::B, offer[0], "offer repeats an edge"));
                }
                for &e in &offer {
                    if e as usize >= state.edge_count() || state.owner(e) != Owner::Free {
                        return Err(illegal(&state, Side::B, e, "offered edge is not free"));
                    }
                }
                let round = state.rounds_played + 1;
                state
                    .history
                    .push(MoveRecord::Offer { round, edges: offer.clone() });
                let chosen = strat_a.choose(&state, &offer);
                if !offer.contains(&chosen) {
                    return Err(illegal(&state, Side::A, chosen, "choice not among the offer"));
                }
                state.set_owner(chosen, Side::A);
                state
                    .history
                    .push(MoveRecord::Claim { round, side: Side::A, edge: chosen });
                for &e in &offer {
                    if e != chosen {
                        state.set_owner(e, Side::B);
                        state
                            .history
                            .push(MoveRecord::Claim { round, side: Side::B, edge: e });
                    }
                }
            }
        }
        state.rounds_played += 1;
    }
}

/// Run the game to exhaustion of the board and return both final graphs.
pub fn play_game(
    state: GameState,
    strat_a: &mut dyn Strategy,
    strat_b: &mut dyn Strategy,
) -> Result<FinishedGame, GameError> {
    let state = play_rounds(state, strat_a, strat_b, None)?;
    let graph_a = state.graph_of(Side::A);
    let graph_b = state.graph_of(Side::B);
    Ok(FinishedGame { state, graph_a, graph_b })
}
