//! Lines of Action on a 7×7 or 8×8 board.
//!
//! Boards are stored as two bitboards in an 8-wide layout (`square = row * 8 + col`),
//! so both sizes share the same shift arithmetic. Row 0 is rank 1. Black (P1)
//! starts on the first and last rows, White (P2) on the outer files.

use crate::game::{Game, GameError, Outcome, Player};

const DIRECTIONS: [(i32, i32); 8] = [
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
];

const FILE_A: u64 = 0x0101_0101_0101_0101;
const FILE_H: u64 = FILE_A << 7;

/// Who wins when a move leaves both sides connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimultaneousConnection {
    MoverWins,
    OpponentWins,
    Draw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LoaPosition {
    pub black: u64,
    pub white: u64,
    pub to_move: Player,
    pub ply: u32,
}

impl LoaPosition {
    #[inline]
    pub fn pieces(&self, player: Player) -> u64 {
        match player {
            Player::P1 => self.black,
            Player::P2 => self.white,
        }
    }

    pub fn piece_count(&self, player: Player) -> u32 {
        self.pieces(player).count_ones()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoaMove {
    pub from: u8,
    pub to: u8,
}

#[derive(Clone, Debug)]
pub struct Loa {
    size: usize,
    name: String,
    max_plies: u32,
    simultaneous: SimultaneousConnection,
    board_mask: u64,
    /// `lines[axis][square]`: every board square on that line, including `square`.
    lines: [[u64; 64]; 4],
    /// `rays[dir][square]`: squares strictly beyond `square` in direction `dir`.
    rays: [[u64; 64]; 8],
}

#[inline]
fn bit(sq: usize) -> u64 {
    1u64 << sq
}

#[inline]
fn king_spread(b: u64) -> u64 {
    let h = b | ((b << 1) & !FILE_A) | ((b >> 1) & !FILE_H);
    h | (h << 8) | (h >> 8)
}

/// True when the set is a single 8-connected group. Zero or one piece counts as connected.
#[inline]
pub fn is_connected(pieces: u64) -> bool {
    if pieces.count_ones() <= 1 {
        return true;
    }
    let mut fill = pieces & pieces.wrapping_neg();
    loop {
        let next = king_spread(fill) & pieces;
        if next == fill {
            return fill == pieces;
        }
        fill = next;
    }
}

impl Loa {
    pub fn new(size: usize) -> Loa {
        assert!(size == 7 || size == 8, "LOA board size must be 7 or 8");
        let on_board = |r: i32, c: i32| r >= 0 && c >= 0 && r < size as i32 && c < size as i32;
        let mut board_mask = 0u64;
        for r in 0..size {
            for c in 0..size {
                board_mask |= bit(r * 8 + c);
            }
        }
        let mut rays = [[0u64; 64]; 8];
        for (d, &(dr, dc)) in DIRECTIONS.iter().enumerate() {
            for r in 0..size as i32 {
                for c in 0..size as i32 {
                    let (mut rr, mut cc) = (r + dr, c + dc);
                    let mut ray = 0u64;
                    while on_board(rr, cc) {
                        ray |= bit((rr * 8 + cc) as usize);
                        rr += dr;
                        cc += dc;
                    }
                    rays[d][(r * 8 + c) as usize] = ray;
                }
            }
        }
        let mut lines = [[0u64; 64]; 4];
        for axis in 0..4 {
            for r in 0..size {
                for c in 0..size {
                    let sq = r * 8 + c;
                    lines[axis][sq] = rays[axis][sq] | rays[axis + 4][sq] | bit(sq);
                }
            }
        }
        Loa {
            size,
            name: format!("loa{size}"),
            max_plies: 300,
            simultaneous: SimultaneousConnection::MoverWins,
            board_mask,
            lines,
            rays,
        }
    }

    pub fn with_max_plies(mut self, max_plies: u32) -> Loa {
        self.max_plies = max_plies;
        self
    }

    pub fn with_simultaneous(mut self, rule: SimultaneousConnection) -> Loa {
        self.simultaneous = rule;
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn starting_pieces(&self) -> u32 {
        2 * (self.size as u32 - 2)
    }

    #[inline]
    fn target(&self, sq: usize, dir: usize, dist: u32) -> Option<usize> {
        let (dr, dc) = DIRECTIONS[dir];
        let r = (sq / 8) as i32 + dr * dist as i32;
        let c = (sq % 8) as i32 + dc * dist as i32;
        let n = self.size as i32;
        if r < 0 || c < 0 || r >= n || c >= n {
            None
        } else {
            Some((r * 8 + c) as usize)
        }
    }

    #[inline]
    fn move_ok(&self, sq: usize, dir: usize, own: u64, opp: u64) -> Option<usize> {
        let occ = own | opp;
        let dist = (occ & self.lines[dir % 4][sq]).count_ones();
        let t = self.target(sq, dir, dist)?;
        if own & bit(t) != 0 {
            return None;
        }
        let between = self.rays[dir][sq] & !self.rays[dir][t] & !bit(t);
        if between & opp != 0 {
            return None;
        }
        Some(t)
    }

    fn for_each_move(&self, pos: &LoaPosition, mut f: impl FnMut(LoaMove) -> bool) {
        let own = pos.pieces(pos.to_move);
        let opp = pos.pieces(pos.to_move.opponent());
        let mut rest = own;
        while rest != 0 {
            let sq = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for dir in 0..8 {
                if let Some(t) = self.move_ok(sq, dir, own, opp) {
                    if !f(LoaMove {
                        from: sq as u8,
                        to: t as u8,
                    }) {
                        return;
                    }
                }
            }
        }
    }

    pub fn has_move(&self, pos: &LoaPosition) -> bool {
        let mut found = false;
        self.for_each_move(pos, |_| {
            found = true;
            false
        });
        found
    }

    fn square_name(&self, sq: usize) -> String {
        let file = (b'a' + (sq % 8) as u8) as char;
        format!("{}{}", file, sq / 8 + 1)
    }

    fn winner_if_both_connected(&self, last_mover: Player) -> Outcome {
        match self.simultaneous {
            SimultaneousConnection::MoverWins => Outcome::Win(last_mover),
            SimultaneousConnection::OpponentWins => Outcome::Win(last_mover.opponent()),
            SimultaneousConnection::Draw => Outcome::Draw,
        }
    }
}

impl Game for Loa {
    type Position = LoaPosition;
    type Move = LoaMove;

    fn name(&self) -> &str {
        &self.name
    }

    fn max_plies(&self) -> u32 {
        self.max_plies
    }

    fn initial_position(&self) -> LoaPosition {
        let n = self.size;
        let mut black = 0;
        let mut white = 0;
        for i in 1..n - 1 {
            black |= bit(i) | bit((n - 1) * 8 + i);
            white |= bit(i * 8) | bit(i * 8 + n - 1);
        }
        LoaPosition {
            black,
            white,
            to_move: Player::P1,
            ply: 0,
        }
    }

    fn player_to_move(&self, pos: &LoaPosition) -> Player {
        pos.to_move
    }

    fn ply(&self, pos: &LoaPosition) -> u32 {
        pos.ply
    }

    fn outcome(&self, pos: &LoaPosition) -> Outcome {
        let black = is_connected(pos.black);
        let white = is_connected(pos.white);
        match (black, white) {
            (true, true) => self.winner_if_both_connected(pos.to_move.opponent()),
            (true, false) => Outcome::Win(Player::P1),
            (false, true) => Outcome::Win(Player::P2),
            (false, false) => {
                if pos.ply >= self.max_plies {
                    Outcome::Draw
                } else if !self.has_move(pos) {
                    Outcome::Win(pos.to_move.opponent())
                } else {
                    Outcome::Ongoing
                }
            }
        }
    }

    fn pseudo_moves(&self, pos: &LoaPosition, out: &mut Vec<LoaMove>) {
        out.clear();
        self.for_each_move(pos, |m| {
            out.push(m);
            true
        });
    }

    fn play(&self, pos: &LoaPosition, mv: LoaMove) -> LoaPosition {
        let from = bit(mv.from as usize);
        let to = bit(mv.to as usize);
        let (mut own, mut opp) = (pos.pieces(pos.to_move), pos.pieces(pos.to_move.opponent()));
        own = (own & !from) | to;
        opp &= !to;
        let (black, white) = match pos.to_move {
            Player::P1 => (own, opp),
            Player::P2 => (opp, own),
        };
        LoaPosition {
            black,
            white,
            to_move: pos.to_move.opponent(),
            ply: pos.ply + 1,
        }
    }

    fn serialize(&self, pos: &LoaPosition) -> String {
        let rows: Vec<String> = (0..self.size)
            .rev()
            .map(|r| {
                (0..self.size)
                    .map(|c| {
                        let b = bit(r * 8 + c);
                        if pos.black & b != 0 {
                            'b'
                        } else if pos.white & b != 0 {
                            'w'
                        } else {
                            '.'
                        }
                    })
                    .collect()
            })
            .collect();
        format!(
            "{}:{}:{}:-:{}",
            self.name,
            rows.join("/"),
            pos.to_move.symbol(),
            pos.ply
        )
    }

    fn parse(&self, text: &str) -> Result<LoaPosition, GameError> {
        let fields: Vec<&str> = text.trim().split(':').collect();
        if fields.len() != 5 {
            return Err(GameError::invalid(text, "expected 5 ':'-separated fields"));
        }
        if fields[0] != self.name {
            return Err(GameError::invalid(text, format!("expected game `{}`", self.name)));
        }
        let rows: Vec<&str> = fields[1].split('/').collect();
        if rows.len() != self.size {
            return Err(GameError::invalid(text, format!("expected {} rows", self.size)));
        }
        let (mut black, mut white) = (0u64, 0u64);
        for (i, row) in rows.iter().enumerate() {
            let r = self.size - 1 - i;
            if row.chars().count() != self.size {
                return Err(GameError::invalid(text, format!("row {} has wrong length", i + 1)));
            }
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    'b' => black |= bit(r * 8 + c),
                    'w' => white |= bit(r * 8 + c),
                    '.' => {}
                    other => {
                        return Err(GameError::invalid(text, format!("bad cell `{other}`")))
                    }
                }
            }
        }
        debug_assert_eq!((black | white) & !self.board_mask, 0);
        let limit = self.starting_pieces();
        if black.count_ones() > limit || white.count_ones() > limit {
            return Err(GameError::invalid(text, "too many pieces"));
        }
        let to_move = Player::from_symbol(fields[2])
            .ok_or_else(|| GameError::invalid(text, "side to move must be 1 or 2"))?;
        if fields[3] != "-" {
            return Err(GameError::invalid(text, "captures field must be `-`"));
        }
        let ply = fields[4]
            .parse()
            .map_err(|_| GameError::invalid(text, "bad ply count"))?;
        Ok(LoaPosition {
            black,
            white,
            to_move,
            ply,
        })
    }

    fn move_notation(&self, pos: &LoaPosition, mv: LoaMove) -> String {
        let capture = pos.pieces(pos.to_move.opponent()) & bit(mv.to as usize) != 0;
        format!(
            "{}{}{}",
            self.square_name(mv.from as usize),
            if capture { 'x' } else { '-' },
            self.square_name(mv.to as usize)
        )
    }
}
