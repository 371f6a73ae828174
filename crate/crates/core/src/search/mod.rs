//! UCT and PN-MCTS.
//!
//! The baseline adds one random child per expansion and selects with UCB1.
//! Every PN-MCTS variant expands all children at once, evaluates their proof
//! numbers immediately, and keeps a [`LayeredProof`] on every node; the
//! [`Enhancements`] flags then decide whether those proofs drive final move
//! selection (F), solved-subtree skipping (S) and the rank bonus in selection (U).

pub mod config;
pub mod select;
pub mod tree;

use thiserror::Error;

use crate::game::{Game, MoveId};
use crate::pn::LayeredProof;
use crate::scalar::Scalar;

pub use config::{Algorithm, Budget, ConfigError, Enhancements, LayerMode, SearchConfig};
pub use select::{
    best_children, final_move_selection, pn_rank, pn_rank_into, select_child, solved_predicate, uct_pn_score, ucb1_score,
    ChildStats, SelectScratch,
};
pub use tree::{Expansion, NodeId, SearchNode, Searcher};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("position is terminal: no legal moves")]
    NoLegalMoves,
    #[error("root has no children to choose from")]
    NoChildren,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Game-theoretic status of the root as far as the proofs tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSolved {
    No,
    Win,
    Draw,
    Loss,
}

impl RootSolved {
    pub fn from_proof(proof: &LayeredProof) -> RootSolved {
        if proof.is_proven_win() {
            RootSolved::Win
        } else if proof.is_proven_loss() {
            RootSolved::Loss
        } else if proof.is_proven_draw() {
            RootSolved::Draw
        } else {
            RootSolved::No
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChildReport<F> {
    pub move_id: MoveId,
    pub notation: String,
    pub visits: u32,
    pub value: F,
    pub proof: LayeredProof,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport<F> {
    pub chosen: MoveId,
    pub simulations: u64,
    /// Mean root value from the root player's point of view.
    pub root_value: F,
    pub root_solved: RootSolved,
    pub children: Vec<ChildReport<F>>,
}

/// Runs one search from `position` and picks a move.
pub fn search<G: Game, F: Scalar>(
    game: &G,
    position: &G::Position,
    config: &SearchConfig<F>,
) -> Result<SearchReport<F>, SearchError> {
    let mut searcher = Searcher::new(game, position.clone(), config.clone())?;
    searcher.run();
    searcher.report()
}
