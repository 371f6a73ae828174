//! Game selection by name for the command line and agent files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use pnmcts_core::games::{Awari, Knightthrough, Loa, TreeGame};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameSpec {
    Loa7,
    Loa8,
    Awari,
    Knightthrough,
    Tree(PathBuf),
}

impl FromStr for GameSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<GameSpec> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("tree:") {
            return Ok(GameSpec::Tree(PathBuf::from(path)));
        }
        match s.to_ascii_lowercase().as_str() {
            "loa7" | "loa7x7" => Ok(GameSpec::Loa7),
            "loa" | "loa8" | "loa8x8" => Ok(GameSpec::Loa8),
            "awari" => Ok(GameSpec::Awari),
            "knightthrough" => Ok(GameSpec::Knightthrough),
            _ => Err(HarnessError::UnknownGame(s.to_string())),
        }
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameSpec::Loa7 => write!(f, "loa7"),
            GameSpec::Loa8 => write!(f, "loa8"),
            GameSpec::Awari => write!(f, "awari"),
            GameSpec::Knightthrough => write!(f, "knightthrough"),
            GameSpec::Tree(p) => write!(f, "tree:{}", p.display()),
        }
    }
}

impl GameSpec {
    /// LOA board size from a `game = loa` / `board_size = 7` pair in an agent file.
    pub fn with_board_size(self, size: u32) -> Result<GameSpec> {
        match (self, size) {
            (GameSpec::Loa7 | GameSpec::Loa8, 7) => Ok(GameSpec::Loa7),
            (GameSpec::Loa7 | GameSpec::Loa8, 8) => Ok(GameSpec::Loa8),
            (game @ (GameSpec::Awari | GameSpec::Knightthrough), 6 | 8) if game.native_size() == size => Ok(game),
            (game, size) => Err(HarnessError::Invalid(format!("board size {size} does not fit {game}"))),
        }
    }

    fn native_size(&self) -> u32 {
        match self {
            GameSpec::Loa7 => 7,
            GameSpec::Awari => 6,
            _ => 8,
        }
    }

    pub fn load(&self) -> Result<AnyGame> {
        Ok(match self {
            GameSpec::Loa7 => AnyGame::Loa(Loa::new(7)),
            GameSpec::Loa8 => AnyGame::Loa(Loa::new(8)),
            GameSpec::Awari => AnyGame::Awari(Awari::new()),
            GameSpec::Knightthrough => AnyGame::Knightthrough(Knightthrough::new()),
            GameSpec::Tree(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
                AnyGame::Tree(TreeGame::from_text(&text)?)
            }
        })
    }
}


/// A loaded game of any supported kind; use [`with_game!`](crate::with_game) to run
/// generic code on it.
#[derive(Clone, Debug)]
pub enum AnyGame {
    Loa(Loa),
    Awari(Awari),
    Knightthrough(Knightthrough),
    Tree(TreeGame),
}

/// Binds the concrete game inside an [`AnyGame`] and evaluates `$body` with it.
#[macro_export]
macro_rules! with_game {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            $crate::games::AnyGame::Loa($g) => $body,
            $crate::games::AnyGame::Awari($g) => $body,
            $crate::games::AnyGame::Knightthrough($g) => $body,
            $crate::games::AnyGame::Tree($g) => $body,
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in ["loa7", "loa8", "awari", "knightthrough", "tree:x.txt"] {
            assert_eq!(name.parse::<GameSpec>().unwrap().to_string(), name);
        }
        assert!("chess".parse::<GameSpec>().is_err());
    }

    #[test]
    fn board_size_picks_loa_variant() {
        assert_eq!(GameSpec::Loa8.with_board_size(7).unwrap(), GameSpec::Loa7);
        assert!(GameSpec::Loa8.with_board_size(9).is_err());
        assert_eq!(GameSpec::Awari.with_board_size(6).unwrap(), GameSpec::Awari);
    }
}
