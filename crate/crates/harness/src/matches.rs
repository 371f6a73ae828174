//! Single matches and side-swapped series between two agents.

use std::fmt;
use std::str::FromStr;

use pnmcts_core::{search, Game, Outcome, Player};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agent::Agent;
use crate::error::{HarnessError, Result};
use crate::stats::SeriesStats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchResult {
    AWin,
    BWin,
    Draw,
}

impl MatchResult {
    /// Points for agent A.
    pub fn score(self) -> f64 {
        match self {
            MatchResult::AWin => 1.0,
            MatchResult::Draw => 0.5,
            MatchResult::BWin => 0.0,
        }
    }
}

impl fmt::Display for MatchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchResult::AWin => "AWin",
            MatchResult::BWin => "BWin",
            MatchResult::Draw => "Draw",
        })
    }
}

impl FromStr for MatchResult {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<MatchResult> {
        match s {
            "AWin" => Ok(MatchResult::AWin),
            "BWin" => Ok(MatchResult::BWin),
            "Draw" => Ok(MatchResult::Draw),
            _ => Err(HarnessError::Invalid(format!("bad match result `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchRecord {
    pub game: String,
    pub agent_a: String,
    pub agent_b: String,
    pub a_first: bool,
    pub result: MatchResult,
    pub plies: u32,
    /// Simulations A ran on its moves within the first `plies / 2` plies.
    pub sims_a_h1: u64,
    pub sims_b_h1: u64,
    pub seed: u64,
}

impl MatchRecord {
    /// Moves each side made within the first half of the game, `(a, b)`.
    pub fn first_half_moves(&self) -> (u64, u64) {
        let half = u64::from(self.plies / 2);
        let first_mover = half.div_ceil(2);
        let second_mover = half / 2;
        if self.a_first {
            (first_mover, second_mover)
        } else {
            (second_mover, first_mover)
        }
    }
}

/// A well-mixed seed for item `index` of a stream keyed by `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(index);
    rng.next_u64()
}

/// Plays one game and also returns the final position.
pub fn play_match<G: Game>(
    game: &G,
    a: &Agent,
    b: &Agent,
    a_first: bool,
    seed: u64,
) -> Result<(MatchRecord, G::Position)> {
    let a_player = if a_first { Player::P1 } else { Player::P2 };
    let mut pos = game.initial_position();
    // (mover is A, simulations) for every ply played
    let mut moves: Vec<(bool, u64)> = Vec::new();
    while !game.outcome(&pos).is_terminal() {
        let is_a = game.player_to_move(&pos) == a_player;
        let agent = if is_a { a } else { b };
        let mut config = agent.config.clone();
        config.seed = derive_seed(derive_seed(seed, moves.len() as u64), agent.config.seed);
        let report = search::<G, f64>(game, &pos, &config)?;
        moves.push((is_a, report.simulations));
        pos = game.apply(&pos, report.chosen)?;
    }
    let result = match game.outcome(&pos) {
        Outcome::Win(p) if p == a_player => MatchResult::AWin,
        Outcome::Win(_) => MatchResult::BWin,
        _ => MatchResult::Draw,
    };
    let half = moves.len() / 2;
    let sims = |side: bool| moves[..half].iter().filter(|m| m.0 == side).map(|m| m.1).sum();
    let record = MatchRecord {
        game: game.name().to_string(),
        agent_a: a.label.clone(),
        agent_b: b.label.clone(),
        a_first,
        result,
        plies: moves.len() as u32,
        sims_a_h1: sims(true),
        sims_b_h1: sims(false),
        seed,
    };
    Ok((record, pos))
}

pub fn run_match<G: Game>(game: &G, a: &Agent, b: &Agent, a_first: bool, seed: u64) -> Result<MatchRecord> {
    play_match(game, a, b, a_first, seed).map(|(record, _)| record)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub records: Vec<MatchRecord>,
    pub stats: SeriesStats,
}

/// `n` games with A moving first in the even-numbered ones. Game `i` is seeded with
/// `derive_seed(base_seed, i)`.
pub fn run_series<G: Game>(game: &G, a: &Agent, b: &Agent, n: usize, base_seed: u64) -> Result<Series> {
    run_series_with(game, a, b, n, base_seed, |_| {})
}

/// Like [`run_series`], calling `on_record` after each game.
pub fn run_series_with<G: Game>(
    game: &G,
    a: &Agent,
    b: &Agent,
    n: usize,
    base_seed: u64,
    mut on_record: impl FnMut(&MatchRecord),
) -> Result<Series> {
    if n % 2 != 0 {
        return Err(HarnessError::OddSeries(n));
    }
    let mut records = Vec::with_capacity(n);
    for i in 0..n {
        let record = run_match(game, a, b, i % 2 == 0, derive_seed(base_seed, i as u64))?;
        on_record(&record);
        records.push(record);
    }
    let stats = SeriesStats::from_records(series_label(a, b), &records);
    Ok(Series { records, stats })
}

pub fn series_label(a: &Agent, b: &Agent) -> String {
    format!("{} vs {}", a.label, b.label)
}
