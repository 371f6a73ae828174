//! The two-player zero-sum game contract every environment and search is written against.

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    #[inline]
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Player::P1 => 0,
            Player::P2 => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Player::P1 => '1',
            Player::P2 => '2',
        }
    }

    pub fn from_symbol(c: &str) -> Option<Player> {
        match c {
            "1" => Some(Player::P1),
            "2" => Some(Player::P2),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Win(Player),
    Draw,
    Ongoing,
}

impl Outcome {
    #[inline]
    pub fn is_terminal(self) -> bool {
        self != Outcome::Ongoing
    }

    /// Playout reward for `player`: +1 win, 0 draw, -1 loss. Ongoing scores 0.
    #[inline]
    pub fn reward_for(self, player: Player) -> i8 {
        match self {
            Outcome::Win(p) if p == player => 1,
            Outcome::Win(_) => -1,
            Outcome::Draw | Outcome::Ongoing => 0,
        }
    }
}

/// Index of a move within the canonical legal-move list of a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveId(pub u32);

impl MoveId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for MoveId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("illegal move {index}: position has {available} legal moves")]
    IllegalMove { index: u32, available: usize },
    #[error("unknown move notation `{0}`")]
    UnknownMove(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid position `{text}`: {message}")]
    InvalidPosition { text: String, message: String },
}

impl GameError {
    pub(crate) fn invalid(text: &str, message: impl Into<String>) -> GameError {
        GameError::InvalidPosition {
            text: text.to_string(),
            message: message.into(),
        }
    }
}

/// Rules of a deterministic, perfect-information, two-player game.
///
/// Positions are immutable values: `play` returns a fresh position and never
/// touches its input. Move lists come out in a fixed canonical order so that
/// seeded searches are reproducible.
pub trait Game: Send + Sync {
    type Position: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;
    type Move: Copy + PartialEq + Eq + Debug + Send + Sync;

    fn name(&self) -> &str;

    /// Ply count at which an unfinished game is stopped.
    fn max_plies(&self) -> u32;

    fn initial_position(&self) -> Self::Position;

    fn player_to_move(&self, pos: &Self::Position) -> Player;

    fn ply(&self, pos: &Self::Position) -> u32;

    fn outcome(&self, pos: &Self::Position) -> Outcome;

    /// Moves allowed by the movement rules, ignoring termination. Clears `out` first.
    fn pseudo_moves(&self, pos: &Self::Position, out: &mut Vec<Self::Move>);

    /// Applies a move taken from `pseudo_moves` without validation.
    fn play(&self, pos: &Self::Position, mv: Self::Move) -> Self::Position;

    fn serialize(&self, pos: &Self::Position) -> String;

    fn parse(&self, text: &str) -> Result<Self::Position, GameError>;

    fn move_notation(&self, pos: &Self::Position, mv: Self::Move) -> String;

    /// Canonical legal moves; empty exactly when the position is terminal.
    fn generate_moves(&self, pos: &Self::Position, out: &mut Vec<Self::Move>) {
        if self.outcome(pos).is_terminal() {
            out.clear();
        } else {
            self.pseudo_moves(pos, out);
        }
    }

    fn legal_moves(&self, pos: &Self::Position) -> Vec<Self::Move> {
        let mut out = Vec::new();
        self.generate_moves(pos, &mut out);
        out
    }

    fn legal_move_ids(&self, pos: &Self::Position) -> Vec<MoveId> {
        (0..self.legal_moves(pos).len() as u32).map(MoveId).collect()
    }

    fn apply(&self, pos: &Self::Position, id: MoveId) -> Result<Self::Position, GameError> {
        let moves = self.legal_moves(pos);
        match moves.get(id.index()) {
            Some(&mv) => Ok(self.play(pos, mv)),
            None => Err(GameError::IllegalMove {
                index: id.0,
                available: moves.len(),
            }),
        }
    }

    fn notation_of(&self, pos: &Self::Position, id: MoveId) -> Result<String, GameError> {
        let moves = self.legal_moves(pos);
        match moves.get(id.index()) {
            Some(&mv) => Ok(self.move_notation(pos, mv)),
            None => Err(GameError::IllegalMove {
                index: id.0,
                available: moves.len(),
            }),
        }
    }

    fn parse_move(&self, pos: &Self::Position, notation: &str) -> Result<MoveId, GameError> {
        self.legal_moves(pos)
            .iter()
            .position(|&mv| self.move_notation(pos, mv) == notation)
            .map(|i| MoveId(i as u32))
            .ok_or_else(|| GameError::UnknownMove(notation.to_string()))
    }
}

/// Number of leaves of the legal-move tree at exactly `depth` plies.
/// Terminal positions before `depth` contribute nothing.
pub fn perft<G: Game>(game: &G, pos: &G::Position, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = game.legal_moves(pos);
    if depth == 1 {
        return moves.len() as u64;
    }
    moves
        .iter()
        .map(|&mv| perft(game, &game.play(pos, mv), depth - 1))
        .sum()
}
