//! Match play, statistics and experiment drivers for PN-MCTS agents.

pub mod agent;
pub mod cli;
pub mod csv_io;
pub mod error;
pub mod experiments;
pub mod games;
pub mod matches;
pub mod stats;

pub use agent::{load_agent, Agent, AgentFile};
pub use error::{HarnessError, Result};
pub use experiments::{measure_overhead, sweep, OverheadReport, SweepParameter, SweepRow};
pub use games::{AnyGame, GameSpec};
pub use matches::{derive_seed, play_match, run_match, run_series, run_series_with, MatchRecord, MatchResult, Series};
pub use stats::{confidence_margin, SeriesStats};
