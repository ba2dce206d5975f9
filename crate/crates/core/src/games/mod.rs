//! Biased positional games on the edge set of K_n: Maker–Breaker,
//! Avoider–Enforcer and Client–Waiter, with potential-based strategies,
//! exact blocking-criterion sums, the locally-sparse-board checks and the
//! full random-Maker minor pipeline.
//!
//! Side A always denotes the one-edge-per-round player (Maker, Avoider,
//! Client) and side B the biased player (Breaker, Enforcer, Waiter).

mod board;
mod engine;
mod family;
mod pipeline;
mod strategy;

pub use board::{edge_endpoints, edge_id, BoardSize, EdgeId, GameKind, GameState, MoveRecord, Owner, Side};
pub use engine::{play_game, play_rounds, FinishedGame};
pub use family::{criterion_sums, CriterionSums, Family};
pub use pipeline::{
    calibrated_delta, check_sparse_board, maker_minor_pipeline, BoardCheck, MakerMinorReport,
    MinorStage, DELTA_TABLE_VERSION,
};
pub use strategy::{
    greedy_degree_strategy, potential_attack_strategy, potential_blocker_strategy,
    random_edge_strategy, GreedyDegreeStrategy, PotentialMode, PotentialStrategy, RandomStrategy,
    Strategy,
};

use crate::graph::GraphError;
use crate::sparsity::SparsityError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("bias {bias} exceeds the cap (1-eps)*n/2 = {max}")]
    BiasTooLarge { bias: usize, max: f64 },
    #[error("illegal move by {side:?} in round {round}: {reason} (edge {edge}); see attached log")]
    IllegalMove {
        side: Side,
        round: u32,
        edge: EdgeId,
        reason: String,
        log: Vec<MoveRecord>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sparsity(#[from] SparsityError),
}
