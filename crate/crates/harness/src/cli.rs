//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use pnmcts_core::pns::PnsTree;
use pnmcts_core::search::Budget;
use pnmcts_core::{perft, Game, Layer, MoveId};

use crate::agent::{load_agent, Agent};
use crate::csv_io;
use crate::experiments::{measure_overhead, sweep, SweepParameter};
use crate::games::GameSpec;
use crate::matches::{run_match, run_series_with};
use crate::with_game;

#[derive(Debug, Parser)]
#[command(name = "pnmcts", version, about = "Play, measure and solve with PN-MCTS agents")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Shared {
    /// loa7, loa8, awari, knightthrough or tree:<file>; may come from an agent file instead.
    #[arg(long)]
    pub game: Option<String>,
    /// Agent A: a config file or inline flags such as `FSU,c_pn=0.5`.
    #[arg(long, default_value = "FSU")]
    pub agent_a: String,
    /// Agent B, same forms as agent A.
    #[arg(long, default_value = "uct")]
    pub agent_b: String,
    /// Per-move budget for both agents: iters:<k> or ms:<k>.
    #[arg(long)]
    pub budget: Option<Budget>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one game.
    Match {
        #[command(flatten)]
        shared: Shared,
        /// Let agent B move first.
        #[arg(long)]
        b_first: bool,
    },
    /// Play a side-swapped series and report A's score.
    Series {
        #[command(flatten)]
        shared: Shared,
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Also write the one-line summary CSV here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Run one series per value of a parameter of agent A.
    Sweep {
        #[command(flatten)]
        shared: Shared,
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// c_pn, contempt or time (per-move ms for both agents).
        #[arg(long)]
        parameter: SweepParameter,
        /// Comma-separated values, e.g. `0,0.5,1,1e6`.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
    },
    /// Compare simulations per move of agent A (PN-MCTS) and agent B (MCTS).
    Overhead {
        #[command(flatten)]
        shared: Shared,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Run proof-number search on a position.
    Solve {
        #[arg(long)]
        game: String,
        /// Serialized position; defaults to the initial one.
        #[arg(long)]
        position: Option<String>,
        /// 1 proves a win, 2 proves at least a draw.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        layer: u8,
        /// Node-expansion budget.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Count leaf nodes of the move tree to a fixed depth.
    Perft {
        #[arg(long)]
        game: String,
        #[arg(long)]
        position: Option<String>,
        #[arg(long)]
        depth: u32,
    },
}

struct Setup {
    game: GameSpec,
    a: Agent,
    b: Agent,
}

fn setup(shared: &Shared) -> anyhow::Result<Setup> {
    let fa = load_agent(&shared.agent_a).context("agent A")?;
    let fb = load_agent(&shared.agent_b).context("agent B")?;
    let game = match (&shared.game, fa.game, fb.game) {
        (Some(g), _, _) => g.parse()?,
        (None, Some(ga), Some(gb)) if ga != gb => bail!("agent files name different games: {ga} and {gb}"),
        (None, Some(g), _) | (None, None, Some(g)) => g,
        (None, None, None) => bail!("no game given; pass --game or set `game` in an agent file"),
    };
    let (mut a, mut b) = (fa.agent, fb.agent);
    if let Some(budget) = shared.budget {
        a = a.with_budget(budget);
        b = b.with_budget(budget);
    }
    Ok(Setup { game, a, b })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Match { shared, b_first } => {
            let s = setup(&shared)?;
            let record = with_game!(&s.game.load()?, g => run_match(g, &s.a, &s.b, !b_first, shared.seed))?;
            writeln!(
                out,
                "{} {} vs {}: {} in {} plies",
                record.game, record.agent_a, record.agent_b, record.result, record.plies
            )?;
            if let Some(path) = &shared.out {
                csv_io::write_records(path, std::slice::from_ref(&record))?;
            }
        }
        Command::Series { shared, n, summary } => {
            let s = setup(&shared)?;
            let mut played = 0;
            let series = with_game!(&s.game.load()?, g => run_series_with(g, &s.a, &s.b, n, shared.seed, |r| {
                played += 1;
                eprintln!("game {played}/{n}: {} ({} plies)", r.result, r.plies);
            }))?;
            let st = &series.stats;
            writeln!(
                out,
                "{}: {} games, +{} ={} -{}, score {}%",
                st.label,
                st.n,
                st.wins,
                st.draws,
                st.losses,
                st.percent()
            )?;
            if let Some(path) = &shared.out {
                csv_io::write_records(path, &series.records)?;
            }
            if let Some(path) = &summary {
                csv_io::write_series(path, std::slice::from_ref(&series.stats))?;
            }
        }
        Command::Sweep {
            shared,
            n,
            parameter,
            values,
        } => {
            let s = setup(&shared)?;
            let rows = with_game!(&s.game.load()?, g => sweep(g, parameter, &values, &s.a, &s.b, n, shared.seed))?;
            writeln!(out, "{} vs {}, {n} games per value", s.a.label, s.b.label)?;
            for row in &rows {
                writeln!(out, "{} = {:>8}: {}%", row.parameter, row.value, row.stats.percent())?;
            }
            if let Some(path) = &shared.out {
                csv_io::write_sweep(path, &rows)?;
            }
        }
        Command::Overhead { shared, n } => {
            let s = setup(&shared)?;
            let budget = match shared.budget.unwrap_or(Budget::WallClock(Duration::from_secs(1))) {
                Budget::WallClock(d) => d,
                Budget::Iterations(_) => bail!("overhead needs a wall-clock budget (ms:<k>)"),
            };
            let report = with_game!(&s.game.load()?, g => measure_overhead(g, &s.a, &s.b, n, budget, shared.seed))?;
            writeln!(
                out,
                "{} vs {} on {}: {:.1} vs {:.1} simulations per move, ratio {:.3}",
                report.pn_agent,
                report.mcts_agent,
                report.game,
                report.pn_sims_per_move(),
                report.mcts_sims_per_move(),
                report.ratio()
            )?;
            if let Some(path) = &shared.out {
                csv_io::write_overhead(path, &report)?;
            }
        }
        Command::Solve {
            game,
            position,
            layer,
            budget,
        } => {
            let layer = if layer == 1 { Layer::First } else { Layer::Second };
            let spec: GameSpec = game.parse()?;
            with_game!(&spec.load()?, g => solve_command(g, position.as_deref(), layer, budget, out))?;
        }
        Command::Perft { game, position, depth } => {
            let spec: GameSpec = game.parse()?;
            let count = with_game!(&spec.load()?, g => {
                let pos = match &position {
                    Some(text) => g.parse(text)?,
                    None => g.initial_position(),
                };
                perft(g, &pos, depth)
            });
            writeln!(out, "{count}")?;
        }
    }
    Ok(())
}

fn solve_command<G: Game>(
    game: &G,
    position: Option<&str>,
    layer: Layer,
    budget: u64,
    out: &mut dyn Write,
) -> anyhow::Result<()> {
    let pos = match position {
        Some(text) => game.parse(text)?,
        None => game.initial_position(),
    };
    let mut tree = PnsTree::new(game, pos.clone(), layer);
    let result = tree.solve(budget);
    writeln!(out, "status: {:?}", result.status)?;
    writeln!(out, "nodes expanded: {}", result.nodes_expanded)?;
    match tree.principal_move() {
        Some(i) => writeln!(out, "principal move: {}", game.notation_of(&pos, MoveId(i as u32))?)?,
        None => writeln!(out, "principal move: none")?,
    }
    Ok(())
}
