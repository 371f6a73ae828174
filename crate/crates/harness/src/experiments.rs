//! Overhead measurement and one-parameter sweeps.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use pnmcts_core::search::config::parse_real;
use pnmcts_core::search::Budget;
use pnmcts_core::Game;

use crate::agent::Agent;
use crate::error::{HarnessError, Result};
use crate::matches::{run_series, MatchRecord};
use crate::stats::SeriesStats;

/// Simulation throughput of a PN-MCTS agent relative to an MCTS agent under the
/// same wall-clock budget, measured over the first half of each game.
#[derive(Clone, Debug, PartialEq)]
pub struct OverheadReport {
    pub game: String,
    pub pn_agent: String,
    pub mcts_agent: String,
    pub games: u64,
    pub budget_ms: u64,
    pub pn_moves: u64,
    pub pn_sims: u64,
    pub mcts_moves: u64,
    pub mcts_sims: u64,
    pub seed: u64,
}

impl OverheadReport {
    pub fn pn_sims_per_move(&self) -> f64 {
        self.pn_sims as f64 / self.pn_moves as f64
    }

    pub fn mcts_sims_per_move(&self) -> f64 {
        self.mcts_sims as f64 / self.mcts_moves as f64
    }

    pub fn ratio(&self) -> f64 {
        self.pn_sims_per_move() / self.mcts_sims_per_move()
    }

    /// Sums the first-half counters of a series in which the PN agent is side A.
    pub fn from_records(records: &[MatchRecord], budget_ms: u64, seed: u64) -> Result<OverheadReport> {
        let first = records
            .first()
            .ok_or_else(|| HarnessError::Invalid("no games to measure".into()))?;
        let mut report = OverheadReport {
            game: first.game.clone(),
            pn_agent: first.agent_a.clone(),
            mcts_agent: first.agent_b.clone(),
            games: records.len() as u64,
            budget_ms,
            pn_moves: 0,
            pn_sims: 0,
            mcts_moves: 0,
            mcts_sims: 0,
            seed,
        };
        for r in records {
            let (a, b) = r.first_half_moves();
            report.pn_moves += a;
            report.mcts_moves += b;
            report.pn_sims += r.sims_a_h1;
            report.mcts_sims += r.sims_b_h1;
        }
        if report.pn_moves == 0 || report.mcts_moves == 0 || report.mcts_sims == 0 {
            return Err(HarnessError::Invalid(
                "games too short to measure first-half throughput".into(),
            ));
        }
        Ok(report)
    }
}

/// Plays `n` side-swapped games with both agents on `budget` per move.
pub fn measure_overhead<G: Game>(
    game: &G,
    pn: &Agent,
    mcts: &Agent,
    n: usize,
    budget: Duration,
    seed: u64,
) -> Result<OverheadReport> {
    let pn = pn.clone().with_budget(Budget::WallClock(budget));
    let mcts = mcts.clone().with_budget(Budget::WallClock(budget));
    let series = run_series(game, &pn, &mcts, n, seed)?;
    OverheadReport::from_records(&series.records, budget.as_millis() as u64, seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParameter {
    CPn,
    Contempt,
    /// Per-move milliseconds for both agents.
    Time,
}

impl FromStr for SweepParameter {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<SweepParameter> {
        match s {
            "c_pn" => Ok(SweepParameter::CPn),
            "contempt" => Ok(SweepParameter::Contempt),
            "time" | "ms" => Ok(SweepParameter::Time),
            _ => Err(HarnessError::Invalid(format!(
                "unknown sweep parameter `{s}` (expected c_pn, contempt or time)"
            ))),
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParameter::CPn => "c_pn",
            SweepParameter::Contempt => "contempt",
            SweepParameter::Time => "time",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub parameter: SweepParameter,
    pub value: String,
    pub stats: SeriesStats,
}

impl SweepParameter {
    /// Applies `value` to the swept agent, and for `time` to the opponent too.
    pub fn apply(self, value: &str, agent: &mut Agent, opponent: &mut Agent) -> Result<()> {
        let bad = || HarnessError::Invalid(format!("bad {self} value `{value}`"));
        match self {
            SweepParameter::CPn => agent.config.c_pn = parse_real(value).ok_or_else(bad)?,
            SweepParameter::Contempt => agent.config.contempt = parse_real(value).ok_or_else(bad)?,
            SweepParameter::Time => {
                let ms: u64 = value.trim().parse().map_err(|_| bad())?;
                let budget = Budget::WallClock(Duration::from_millis(ms));
                agent.config.budget = budget;
                opponent.config.budget = budget;
            }
        }
        agent.label = agent.config.label();
        opponent.label = opponent.config.label();
        Ok(())
    }
}

/// One series of `n` games per value. Every value reuses `seed`, so rows differ only
/// through the parameter.
pub fn sweep<G: Game>(
    game: &G,
    parameter: SweepParameter,
    values: &[String],
    agent: &Agent,
    opponent: &Agent,
    n: usize,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    values
        .iter()
        .map(|value| {
            let (mut a, mut b) = (agent.clone(), opponent.clone());
            parameter.apply(value, &mut a, &mut b)?;
            let series = run_series(game, &a, &b, n, seed)?;
            Ok(SweepRow {
                parameter,
                value: value.clone(),
                stats: series.stats,
            })
        })
        .collect()
}
