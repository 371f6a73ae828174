//! Awari: 2×6 sowing game with 4 counters per hole.
//!
//! Holes 0..6 belong to P1 and 6..12 to P2; sowing runs toward increasing
//! index (counter-clockwise), skipping the origin hole on full laps.
//! Captures happen when the last counter lands in the opponent's row and makes
//! 2 or 3, and chain backwards through contiguous opponent holes holding 2 or 3.
//! Counters left on the board at the end are not awarded to anyone.

use crate::game::{Game, GameError, Outcome, Player};

pub const HOLES: usize = 12;
pub const TOTAL_COUNTERS: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AwariPosition {
    pub holes: [u8; HOLES],
    pub captured: [u8; 2],
    pub to_move: Player,
    pub ply: u32,
}

impl AwariPosition {
    pub fn counters_in_play(&self) -> u32 {
        self.holes.iter().map(|&h| h as u32).sum::<u32>()
            + self.captured[0] as u32
            + self.captured[1] as u32
    }
}

/// Absolute index of the hole to sow from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AwariMove(pub u8);

#[inline]
fn row(player: Player) -> std::ops::Range<usize> {
    match player {
        Player::P1 => 0..6,
        Player::P2 => 6..12,
    }
}

#[derive(Clone, Debug)]
pub struct Awari {
    max_plies: u32,
}

impl Default for Awari {
    fn default() -> Self {
        Awari { max_plies: 200 }
    }
}

impl Awari {
    pub fn new() -> Awari {
        Awari::default()
    }

    pub fn with_max_plies(mut self, max_plies: u32) -> Awari {
        self.max_plies = max_plies;
        self
    }

    /// Sows from `hole`, rejecting empty holes and holes outside the mover's row.
    pub fn sow(&self, pos: &AwariPosition, hole: usize) -> Result<AwariPosition, GameError> {
        if hole >= HOLES || !row(pos.to_move).contains(&hole) || pos.holes[hole] == 0 {
            return Err(GameError::IllegalMove {
                index: hole as u32,
                available: self.legal_moves(pos).len(),
            });
        }
        Ok(self.play(pos, AwariMove(hole as u8)))
    }
}

impl Game for Awari {
    type Position = AwariPosition;
    type Move = AwariMove;

    fn name(&self) -> &str {
        "awari"
    }

    fn max_plies(&self) -> u32 {
        self.max_plies
    }

    fn initial_position(&self) -> AwariPosition {
        AwariPosition {
            holes: [4; HOLES],
            captured: [0, 0],
            to_move: Player::P1,
            ply: 0,
        }
    }

    fn player_to_move(&self, pos: &AwariPosition) -> Player {
        pos.to_move
    }

    fn ply(&self, pos: &AwariPosition) -> u32 {
        pos.ply
    }

    fn outcome(&self, pos: &AwariPosition) -> Outcome {
        let all_small = pos.holes.iter().all(|&h| h <= 1);
        let mover_stuck = row(pos.to_move).all(|h| pos.holes[h] == 0);
        if !(all_small || mover_stuck || pos.ply >= self.max_plies) {
            return Outcome::Ongoing;
        }
        let [a, b] = pos.captured;
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => Outcome::Win(Player::P1),
            std::cmp::Ordering::Less => Outcome::Win(Player::P2),
            std::cmp::Ordering::Equal => Outcome::Draw,
        }
    }

    fn pseudo_moves(&self, pos: &AwariPosition, out: &mut Vec<AwariMove>) {
        out.clear();
        out.extend(
            row(pos.to_move)
                .filter(|&h| pos.holes[h] > 0)
                .map(|h| AwariMove(h as u8)),
        );
    }

    fn play(&self, pos: &AwariPosition, mv: AwariMove) -> AwariPosition {
        let origin = mv.0 as usize;
        let mut next = *pos;
        let mut seeds = next.holes[origin];
        next.holes[origin] = 0;
        let mut idx = origin;
        while seeds > 0 {
            idx = (idx + 1) % HOLES;
            if idx == origin {
                continue;
            }
            next.holes[idx] += 1;
            seeds -= 1;
        }
        let opp_row = row(pos.to_move.opponent());
        let mut gained = 0u8;
        while opp_row.contains(&idx) && matches!(next.holes[idx], 2 | 3) {
            gained += next.holes[idx];
            next.holes[idx] = 0;
            if idx == opp_row.start {
                break;
            }
            idx -= 1;
        }
        next.captured[pos.to_move.index()] += gained;
        next.to_move = pos.to_move.opponent();
        next.ply += 1;
        next
    }

    fn serialize(&self, pos: &AwariPosition) -> String {
        let holes: Vec<String> = pos.holes.iter().map(|h| h.to_string()).collect();
        format!(
            "awari:{}:{}:{},{}:{}",
            holes.join(","),
            pos.to_move.symbol(),
            pos.captured[0],
            pos.captured[1],
            pos.ply
        )
    }

    fn parse(&self, text: &str) -> Result<AwariPosition, GameError> {
        let fields: Vec<&str> = text.trim().split(':').collect();
        if fields.len() != 5 || fields[0] != "awari" {
            return Err(GameError::invalid(text, "expected awari:<holes>:<to-move>:<captures>:<ply>"));
        }
        let parse_u8 = |s: &str| {
            s.trim()
                .parse::<u8>()
                .map_err(|_| GameError::invalid(text, format!("bad count `{s}`")))
        };
        let holes_v = fields[1].split(',').map(parse_u8).collect::<Result<Vec<_>, _>>()?;
        let holes: [u8; HOLES] = holes_v
            .try_into()
            .map_err(|_| GameError::invalid(text, "expected 12 holes"))?;
        let to_move = Player::from_symbol(fields[2])
            .ok_or_else(|| GameError::invalid(text, "side to move must be 1 or 2"))?;
        let caps = fields[3].split(',').map(parse_u8).collect::<Result<Vec<_>, _>>()?;
        let captured: [u8; 2] = caps
            .try_into()
            .map_err(|_| GameError::invalid(text, "expected two capture counts"))?;
        let ply = fields[4]
            .parse()
            .map_err(|_| GameError::invalid(text, "bad ply count"))?;
        let pos = AwariPosition {
            holes,
            captured,
            to_move,
            ply,
        };
        if pos.counters_in_play() != TOTAL_COUNTERS {
            return Err(GameError::invalid(text, "counters must sum to 48"));
        }
        Ok(pos)
    }

    fn move_notation(&self, _pos: &AwariPosition, mv: AwariMove) -> String {
        format!("h{}", mv.0)
    }
}
