//! Monte-Carlo Tree Search guided by proof numbers.
//!
//! * [`game`]: the two-player game contract, plus [`games`] with Lines of Action,
//!   Awari, Knightthrough and explicit test trees.
//! * [`pn`]: proof and disproof numbers and the AND/OR combination rules.
//! * [`pns`]: a standalone best-first proof-number solver.
//! * [`search`]: UCT and PN-MCTS with the final-move, solver and UCT-PN enhancements.
//!
//! Search statistics are generic over the float type; the aliases below fix it.

pub mod game;
pub mod games;
pub mod pn;
pub mod pns;
pub mod scalar;
pub mod search;

pub use game::{perft, Game, GameError, MoveId, Outcome, Player};
pub use pn::{Layer, LayeredProof, NodeKind, PnValue, ProofPair};
pub use scalar::Scalar;
pub use search::{search, Algorithm, Budget, Enhancements, LayerMode, RootSolved, SearchError};

pub type SearchConfig64 = search::SearchConfig<f64>;
pub type SearchConfig32 = search::SearchConfig<f32>;
pub type SearchReport64 = search::SearchReport<f64>;
pub type SearchReport32 = search::SearchReport<f32>;
pub type Searcher64<'g, G> = search::Searcher<'g, G, f64>;
pub type Searcher32<'g, G> = search::Searcher<'g, G, f32>;
