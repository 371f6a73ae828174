//! CSV output for match records, series summaries, sweeps and overhead runs, plus
//! readers for the first two.

use std::io::{Read, Write};
use std::path::Path;

use csv::{Reader, StringRecord, Writer};

use crate::error::{HarnessError, Result};
use crate::experiments::{OverheadReport, SweepRow};
use crate::matches::MatchRecord;
use crate::stats::SeriesStats;

pub const RECORD_HEADER: [&str; 9] = [
    "game", "agent_a", "agent_b", "a_first", "result", "plies", "sims_a_h1", "sims_b_h1", "seed",
];
pub const SERIES_HEADER: [&str; 7] = ["label", "n", "wins", "draws", "losses", "p", "margin"];
pub const SWEEP_HEADER: [&str; 8] = ["parameter", "value", "n", "wins", "draws", "losses", "p", "margin"];
pub const OVERHEAD_HEADER: [&str; 14] = [
    "game",
    "pn_agent",
    "mcts_agent",
    "games",
    "budget_ms",
    "pn_moves_h1",
    "pn_sims_h1",
    "mcts_moves_h1",
    "mcts_sims_h1",
    "pn_sims_per_move",
    "mcts_sims_per_move",
    "ratio",
    "seed",
    "method",
];

const OVERHEAD_METHOD: &str = "first-half simulations per move, both sides on the same wall-clock budget";

fn stats_fields(s: &SeriesStats) -> [String; 6] {
    [
        s.n.to_string(),
        s.wins.to_string(),
        s.draws.to_string(),
        s.losses.to_string(),
        s.p.to_string(),
        s.margin.to_string(),
    ]
}

pub fn write_records_to<W: Write>(out: W, records: &[MatchRecord]) -> csv::Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record([
            r.game.clone(),
            r.agent_a.clone(),
            r.agent_b.clone(),
            r.a_first.to_string(),
            r.result.to_string(),
            r.plies.to_string(),
            r.sims_a_h1.to_string(),
            r.sims_b_h1.to_string(),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_series_to<W: Write>(out: W, rows: &[SeriesStats]) -> csv::Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(SERIES_HEADER)?;
    for s in rows {
        let mut row = vec![s.label.clone()];
        row.extend(stats_fields(s));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_to<W: Write>(out: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        let mut row = vec![r.parameter.to_string(), r.value.clone()];
        row.extend(stats_fields(&r.stats));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_overhead_to<W: Write>(out: W, r: &OverheadReport) -> csv::Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(OVERHEAD_HEADER)?;
    w.write_record([
        r.game.clone(),
        r.pn_agent.clone(),
        r.mcts_agent.clone(),
        r.games.to_string(),
        r.budget_ms.to_string(),
        r.pn_moves.to_string(),
        r.pn_sims.to_string(),
        r.mcts_moves.to_string(),
        r.mcts_sims.to_string(),
        r.pn_sims_per_move().to_string(),
        r.mcts_sims_per_move().to_string(),
        r.ratio().to_string(),
        r.seed.to_string(),
        OVERHEAD_METHOD.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

fn create(path: &Path) -> Result<std::fs::File> {
    std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))
}

pub fn write_records(path: &Path, records: &[MatchRecord]) -> Result<()> {
    write_records_to(create(path)?, records).map_err(|e| HarnessError::csv(path, e))
}

pub fn write_series(path: &Path, rows: &[SeriesStats]) -> Result<()> {
    write_series_to(create(path)?, rows).map_err(|e| HarnessError::csv(path, e))
}

pub fn write_sweep(path: &Path, rows: &[SweepRow]) -> Result<()> {
    write_sweep_to(create(path)?, rows).map_err(|e| HarnessError::csv(path, e))
}

pub fn write_overhead(path: &Path, report: &OverheadReport) -> Result<()> {
    write_overhead_to(create(path)?, report).map_err(|e| HarnessError::csv(path, e))
}

/// Reads rows after checking the header; `parse_row` sees each row with its 1-based
/// data index.
fn read_rows<R: Read, T>(
    input: R,
    path: &Path,
    header: &[&str],
    parse_row: impl Fn(&StringRecord) -> std::result::Result<T, String>,
) -> Result<Vec<T>> {
    let mut reader = Reader::from_reader(input);
    let found = reader.headers().map_err(|e| HarnessError::csv(path, e))?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(HarnessError::Malformed {
            path: path.to_path_buf(),
            row: 0,
            message: format!("expected header `{}`", header.join(",")),
        });
    }
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| HarnessError::csv(path, e))?;
        out.push(parse_row(&row).map_err(|message| HarnessError::Malformed {
            path: path.to_path_buf(),
            row: i + 1,
            message,
        })?);
    }
    Ok(out)
}

fn field<T: std::str::FromStr>(row: &StringRecord, i: usize, name: &str) -> std::result::Result<T, String> {
    let raw = row.get(i).ok_or_else(|| format!("missing `{name}`"))?;
    raw.parse().map_err(|_| format!("bad `{name}` value `{raw}`"))
}

pub fn read_records_from<R: Read>(input: R, path: &Path) -> Result<Vec<MatchRecord>> {
    read_rows(input, path, &RECORD_HEADER, |row| {
        Ok(MatchRecord {
            game: field(row, 0, "game")?,
            agent_a: field(row, 1, "agent_a")?,
            agent_b: field(row, 2, "agent_b")?,
            a_first: field(row, 3, "a_first")?,
            result: field(row, 4, "result")?,
            plies: field(row, 5, "plies")?,
            sims_a_h1: field(row, 6, "sims_a_h1")?,
            sims_b_h1: field(row, 7, "sims_b_h1")?,
            seed: field(row, 8, "seed")?,
        })
    })
}

pub fn read_series_from<R: Read>(input: R, path: &Path) -> Result<Vec<SeriesStats>> {
    read_rows(input, path, &SERIES_HEADER, |row| {
        Ok(SeriesStats {
            label: field(row, 0, "label")?,
            n: field(row, 1, "n")?,
            wins: field(row, 2, "wins")?,
            draws: field(row, 3, "draws")?,
            losses: field(row, 4, "losses")?,
            p: field(row, 5, "p")?,
            margin: field(row, 6, "margin")?,
        })
    })
}

fn open(path: &Path) -> Result<std::fs::File> {
    std::fs::File::open(path).map_err(|e| HarnessError::io(path, e))
}

pub fn read_records(path: &Path) -> Result<Vec<MatchRecord>> {
    read_records_from(open(path)?, path)
}

pub fn read_series(path: &Path) -> Result<Vec<SeriesStats>> {
    read_series_from(open(path)?, path)
}
