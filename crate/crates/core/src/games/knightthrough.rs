//! Knightthrough: Breakthrough with knights on an 8×8 board.
//!
//! P1 starts on rows 0-1 and races toward row 7, P2 starts on rows 6-7 and
//! races toward row 0. Knights only make the four jumps that gain rank.

use crate::game::{Game, GameError, Outcome, Player};

const ROW_0: u64 = 0xff;
const ROW_7: u64 = 0xff << 56;

/// Jump offsets (row, col) for P1; P2 mirrors the row component.
const JUMPS: [(i32, i32); 4] = [(1, -2), (2, -1), (2, 1), (1, 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KnightthroughPosition {
    pub knights: [u64; 2],
    pub to_move: Player,
    pub ply: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnightMove {
    pub from: u8,
    pub to: u8,
}

#[derive(Clone, Debug)]
pub struct Knightthrough {
    max_plies: u32,
    /// `targets[player][square]`, in the fixed order of `JUMPS`.
    targets: [[[Option<u8>; 4]; 64]; 2],
}

impl Default for Knightthrough {
    fn default() -> Self {
        Knightthrough::new()
    }
}

impl Knightthrough {
    pub fn new() -> Knightthrough {
        let mut targets = [[[None; 4]; 64]; 2];
        for (p, sign) in [(0usize, 1i32), (1, -1)] {
            for sq in 0..64i32 {
                let (r, c) = (sq / 8, sq % 8);
                for (j, &(dr, dc)) in JUMPS.iter().enumerate() {
                    let (rr, cc) = (r + sign * dr, c + dc);
                    if (0..8).contains(&rr) && (0..8).contains(&cc) {
                        targets[p][sq as usize][j] = Some((rr * 8 + cc) as u8);
                    }
                }
            }
        }
        Knightthrough {
            max_plies: 300,
            targets,
        }
    }

    pub fn with_max_plies(mut self, max_plies: u32) -> Knightthrough {
        self.max_plies = max_plies;
        self
    }

    fn square_name(sq: u8) -> String {
        format!("{}{}", (b'a' + sq % 8) as char, sq / 8 + 1)
    }
}

impl Game for Knightthrough {
    type Position = KnightthroughPosition;
    type Move = KnightMove;

    fn name(&self) -> &str {
        "knightthrough"
    }

    fn max_plies(&self) -> u32 {
        self.max_plies
    }

    fn initial_position(&self) -> KnightthroughPosition {
        KnightthroughPosition {
            knights: [0xffff, 0xffff << 48],
            to_move: Player::P1,
            ply: 0,
        }
    }

    fn player_to_move(&self, pos: &KnightthroughPosition) -> Player {
        pos.to_move
    }

    fn ply(&self, pos: &KnightthroughPosition) -> u32 {
        pos.ply
    }

    fn outcome(&self, pos: &KnightthroughPosition) -> Outcome {
        let [p1, p2] = pos.knights;
        if p1 & ROW_7 != 0 || p2 == 0 {
            return Outcome::Win(Player::P1);
        }
        if p2 & ROW_0 != 0 || p1 == 0 {
            return Outcome::Win(Player::P2);
        }
        if pos.ply >= self.max_plies {
            return Outcome::Draw;
        }
        // A side without any forward jump loses, as in Lines of Action.
        let own = pos.knights[pos.to_move.index()];
        let table = &self.targets[pos.to_move.index()];
        let mut rest = own;
        while rest != 0 {
            let sq = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if table[sq].iter().flatten().any(|&t| own & (1u64 << t) == 0) {
                return Outcome::Ongoing;
            }
        }
        Outcome::Win(pos.to_move.opponent())
    }

    fn pseudo_moves(&self, pos: &KnightthroughPosition, out: &mut Vec<KnightMove>) {
        out.clear();
        let own = pos.knights[pos.to_move.index()];
        let table = &self.targets[pos.to_move.index()];
        let mut rest = own;
        while rest != 0 {
            let sq = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for &t in table[sq].iter().flatten() {
                if own & (1u64 << t) == 0 {
                    out.push(KnightMove {
                        from: sq as u8,
                        to: t,
                    });
                }
            }
        }
    }

    fn play(&self, pos: &KnightthroughPosition, mv: KnightMove) -> KnightthroughPosition {
        let me = pos.to_move.index();
        let from = 1u64 << mv.from;
        let to = 1u64 << mv.to;
        let mut knights = pos.knights;
        knights[me] = (knights[me] & !from) | to;
        knights[1 - me] &= !to;
        KnightthroughPosition {
            knights,
            to_move: pos.to_move.opponent(),
            ply: pos.ply + 1,
        }
    }

    fn serialize(&self, pos: &KnightthroughPosition) -> String {
        let rows: Vec<String> = (0..8)
            .rev()
            .map(|r| {
                (0..8)
                    .map(|c| {
                        let b = 1u64 << (r * 8 + c);
                        if pos.knights[0] & b != 0 {
                            'n'
                        } else if pos.knights[1] & b != 0 {
                            'N'
                        } else {
                            '.'
                        }
                    })
                    .collect()
            })
            .collect();
        format!("knightthrough:{}:{}:-:{}", rows.join("/"), pos.to_move.symbol(), pos.ply)
    }

    fn parse(&self, text: &str) -> Result<KnightthroughPosition, GameError> {
        let fields: Vec<&str> = text.trim().split(':').collect();
        if fields.len() != 5 || fields[0] != "knightthrough" {
            return Err(GameError::invalid(
                text,
                "expected knightthrough:<rows>:<to-move>:-:<ply>",
            ));
        }
        let rows: Vec<&str> = fields[1].split('/').collect();
        if rows.len() != 8 {
            return Err(GameError::invalid(text, "expected 8 rows"));
        }
        let mut knights = [0u64; 2];
        for (i, row) in rows.iter().enumerate() {
            if row.chars().count() != 8 {
                return Err(GameError::invalid(text, format!("row {} has wrong length", i + 1)));
            }
            let r = 7 - i;
            for (c, ch) in row.chars().enumerate() {
                let b = 1u64 << (r * 8 + c);
                match ch {
                    'n' => knights[0] |= b,
                    'N' => knights[1] |= b,
                    '.' => {}
                    other => {
                        return Err(GameError::invalid(text, format!("bad cell `{other}`")))
                    }
                }
            }
        }
        if knights.iter().any(|k| k.count_ones() > 16) {
            return Err(GameError::invalid(text, "more than 16 knights"));
        }
        let to_move = Player::from_symbol(fields[2])
            .ok_or_else(|| GameError::invalid(text, "side to move must be 1 or 2"))?;
        if fields[3] != "-" {
            return Err(GameError::invalid(text, "captures field must be `-`"));
        }
        let ply = fields[4]
            .parse()
            .map_err(|_| GameError::invalid(text, "bad ply count"))?;
        Ok(KnightthroughPosition {
            knights,
            to_move,
            ply,
        })
    }

    fn move_notation(&self, pos: &KnightthroughPosition, mv: KnightMove) -> String {
        let capture = pos.knights[pos.to_move.opponent().index()] & (1u64 << mv.to) != 0;
        format!(
            "{}{}{}",
            Self::square_name(mv.from),
            if capture { 'x' } else { '-' },
            Self::square_name(mv.to)
        )
    }
}
