//! Agents: a search configuration plus a display label.
//!
//! An agent is given either inline (`uct`, `FSU`, `FxU,c_pn=0.5,layers=double`) or
//! as a path to a config file of `key = value` lines. Files may also name the game
//! with `game` and `board_size`.

use std::path::Path;

use pnmcts_core::search::{Budget, SearchConfig};

use crate::error::{HarnessError, Result};
use crate::games::GameSpec;

#[derive(Clone, Debug, PartialEq)]
pub struct Agent {
    pub label: String,
    pub config: SearchConfig<f64>,
}

impl Agent {
    pub fn new(config: SearchConfig<f64>) -> Agent {
        Agent {
            label: config.label(),
            config,
        }
    }

    pub fn uct() -> Agent {
        Agent::new(SearchConfig::uct())
    }

    /// Inline form: a flags word (or `uct`) optionally followed by `,key=value` pairs.
    pub fn parse_inline(spec: &str) -> Result<Agent> {
        let mut config = SearchConfig::default();
        for (i, token) in spec.split(',').map(str::trim).enumerate() {
            match token.split_once('=') {
                Some((key, value)) => config.set(key.trim(), value.trim())?,
                None if i == 0 => config.set("flags", token)?,
                None => return Err(HarnessError::Invalid(format!("expected key=value, got `{token}`"))),
            }
        }
        Ok(Agent::new(config))
    }

    /// Replaces the per-move budget and refreshes the label.
    pub fn with_budget(mut self, budget: Budget) -> Agent {
        self.config.budget = budget;
        self.label = self.config.label();
        self
    }
}

/// An agent read from a file, with the game it names if any.
#[derive(Clone, Debug, PartialEq)]
pub struct AgentFile {
    pub agent: Agent,
    pub game: Option<GameSpec>,
}

pub fn parse_agent_file(text: &str, path: &Path) -> Result<AgentFile> {
    let mut config = SearchConfig::default();
    let mut game: Option<GameSpec> = None;
    let mut board_size: Option<u32> = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |message: String| HarnessError::Malformed {
            path: path.to_path_buf(),
            row: i + 1,
            message,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| malformed(format!("expected key = value, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "game" => game = Some(value.parse()?),
            "board_size" => {
                board_size = Some(value.parse().map_err(|_| malformed(format!("bad board size `{value}`")))?)
            }
            _ => config.set(key, value).map_err(|e| malformed(e.to_string()))?,
        }
    }
    let game = match (game, board_size) {
        (Some(g), Some(size)) => Some(g.with_board_size(size)?),
        (Some(g), None) => Some(g),
        (None, Some(_)) => {
            return Err(HarnessError::Invalid(format!(
                "{}: board_size given without game",
                path.display()
            )))
        }
        (None, None) => None,
    };
    Ok(AgentFile {
        agent: Agent::new(config),
        game,
    })
}

/// Reads `spec` as a config file when such a file exists, otherwise as inline flags.
pub fn load_agent(spec: &str) -> Result<AgentFile> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        parse_agent_file(&text, path)
    } else {
        Ok(AgentFile {
            agent: Agent::parse_inline(spec)?,
            game: None,
        })
    }
}
