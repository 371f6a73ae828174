//! Move generation and outcomes checked against slow, grid-based reimplementations.

use std::collections::{BTreeSet, HashSet};

use pnmcts_core::games::{Awari, AwariPosition, Knightthrough, KnightthroughPosition, Loa, LoaPosition, TreeGame, TreeGameSpec, TreeNode};
use pnmcts_core::{perft, Game, Outcome, Player};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------- naive Lines of Action ----------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Cell {
    Empty,
    Black,
    White,
}

#[derive(Clone, Debug)]
struct NaiveLoa {
    n: i32,
    grid: Vec<Vec<Cell>>,
    black_to_move: bool,
    ply: u32,
}

impl NaiveLoa {
    fn initial(n: i32) -> NaiveLoa {
        let mut grid = vec![vec![Cell::Empty; n as usize]; n as usize];
        for i in 1..n - 1 {
            grid[0][i as usize] = Cell::Black;
            grid[(n - 1) as usize][i as usize] = Cell::Black;
            grid[i as usize][0] = Cell::White;
            grid[i as usize][(n - 1) as usize] = Cell::White;
        }
        NaiveLoa {
            n,
            grid,
            black_to_move: true,
            ply: 0,
        }
    }

    fn from_engine(n: i32, pos: &LoaPosition) -> NaiveLoa {
        let mut grid = vec![vec![Cell::Empty; n as usize]; n as usize];
        for r in 0..n {
            for c in 0..n {
                let bit = 1u64 << (r * 8 + c);
                if pos.black & bit != 0 {
                    grid[r as usize][c as usize] = Cell::Black;
                } else if pos.white & bit != 0 {
                    grid[r as usize][c as usize] = Cell::White;
                }
            }
        }
        NaiveLoa {
            n,
            grid,
            black_to_move: pos.to_move == Player::P1,
            ply: pos.ply,
        }
    }

    fn at(&self, r: i32, c: i32) -> Option<Cell> {
        if r < 0 || c < 0 || r >= self.n || c >= self.n {
            None
        } else {
            Some(self.grid[r as usize][c as usize])
        }
    }

    fn own(&self) -> Cell {
        if self.black_to_move {
            Cell::Black
        } else {
            Cell::White
        }
    }

    fn pseudo_moves(&self) -> BTreeSet<(i32, i32, i32, i32)> {
        let own = self.own();
        let mut out = BTreeSet::new();
        for r in 0..self.n {
            for c in 0..self.n {
                if self.at(r, c) != Some(own) {
                    continue;
                }
                for dr in -1..=1 {
                    for dc in -1..=1 {
                        if dr == 0 && dc == 0 {
                            continue;
                        }
                        let mut count = 1;
                        for sign in [1, -1] {
                            let mut k = 1;
                            while let Some(cell) = self.at(r + sign * dr * k, c + sign * dc * k) {
                                if cell != Cell::Empty {
                                    count += 1;
                                }
                                k += 1;
                            }
                        }
                        let (tr, tc) = (r + dr * count, c + dc * count);
                        let Some(target) = self.at(tr, tc) else { continue };
                        if target == own {
                            continue;
                        }
                        let blocked = (1..count).any(|k| {
                            let cell = self.at(r + dr * k, c + dc * k).unwrap();
                            cell != Cell::Empty && cell != own
                        });
                        if !blocked {
                            out.insert((r, c, tr, tc));
                        }
                    }
                }
            }
        }
        out
    }

    fn connected(&self, who: Cell) -> bool {
        let cells: Vec<(i32, i32)> = (0..self.n)
            .flat_map(|r| (0..self.n).map(move |c| (r, c)))
            .filter(|&(r, c)| self.at(r, c) == Some(who))
            .collect();
        if cells.len() <= 1 {
            return true;
        }
        let mut seen = HashSet::new();
        let mut stack = vec![cells[0]];
        seen.insert(cells[0]);
        while let Some((r, c)) = stack.pop() {
            for dr in -1..=1 {
                for dc in -1..=1 {
                    let next = (r + dr, c + dc);
                    if self.at(next.0, next.1) == Some(who) && seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
        }
        seen.len() == cells.len()
    }

    fn outcome(&self, max_plies: u32) -> Outcome {
        let black = self.connected(Cell::Black);
        let white = self.connected(Cell::White);
        let last_mover = if self.black_to_move { Player::P2 } else { Player::P1 };
        match (black, white) {
            (true, true) => return Outcome::Win(last_mover),
            (true, false) => return Outcome::Win(Player::P1),
            (false, true) => return Outcome::Win(Player::P2),
            _ => {}
        }
        if self.ply >= max_plies {
            return Outcome::Draw;
        }
        if self.pseudo_moves().is_empty() {
            let mover = if self.black_to_move { Player::P1 } else { Player::P2 };
            return Outcome::Win(mover.opponent());
        }
        Outcome::Ongoing
    }

    fn play(&self, (r, c, tr, tc): (i32, i32, i32, i32)) -> NaiveLoa {
        let mut next = self.clone();
        next.grid[tr as usize][tc as usize] = self.own();
        next.grid[r as usize][c as usize] = Cell::Empty;
        next.black_to_move = !self.black_to_move;
        next.ply += 1;
        next
    }

    fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        if self.outcome(u32::MAX).is_terminal() {
            return 0;
        }
        self.pseudo_moves().into_iter().map(|m| self.play(m).perft(depth - 1)).sum()
    }
}

fn engine_loa_moves(g: &Loa, pos: &LoaPosition) -> BTreeSet<(i32, i32, i32, i32)> {
    g.legal_moves(pos)
        .iter()
        .map(|m| {
            let (f, t) = (m.from as i32, m.to as i32);
            (f / 8, f % 8, t / 8, t % 8)
        })
        .collect()
}

#[test]
fn loa_initial_move_counts_match_naive_enumeration() {
    for n in [7, 8] {
        let g = Loa::new(n as usize);
        let naive = NaiveLoa::initial(n);
        let pos = g.initial_position();
        assert_eq!(engine_loa_moves(&g, &pos), naive.pseudo_moves(), "size {n}");
    }
}

#[test]
fn loa_perft_matches_naive_generator() {
    for n in [7, 8] {
        let g = Loa::new(n as usize);
        let naive = NaiveLoa::initial(n);
        for depth in 0..=3 {
            assert_eq!(perft(&g, &g.initial_position(), depth), naive.perft(depth), "size {n} depth {depth}");
        }
    }
}

#[test]
fn loa_random_positions_agree_with_naive_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [7, 8] {
        let g = Loa::new(n as usize);
        for _ in 0..200 {
            let mut pos = g.initial_position();
            loop {
                let naive = NaiveLoa::from_engine(n, &pos);
                assert_eq!(g.outcome(&pos), naive.outcome(g.max_plies()), "{}", g.serialize(&pos));
                let moves = g.legal_moves(&pos);
                if moves.is_empty() {
                    break;
                }
                assert_eq!(engine_loa_moves(&g, &pos), naive.pseudo_moves());
                let before = pos.black.count_ones() + pos.white.count_ones();
                let mv = moves[rng.gen_range(0..moves.len())];
                let capture = pos.pieces(pos.to_move.opponent()) & (1u64 << mv.to) != 0;
                pos = g.play(&pos, mv);
                let after = pos.black.count_ones() + pos.white.count_ones();
                assert_eq!(after + capture as u32, before, "pieces only disappear on captures");
            }
        }
    }
}

#[test]
fn loa_simultaneous_connection_goes_to_the_mover() {
    // Positions where one move connects both sides are rare; sample random games
    // and let the naive connectivity checker spot them.
    let g = Loa::new(7);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut found = 0;
    for _ in 0..3000 {
        let mut pos = g.initial_position();
        while !g.outcome(&pos).is_terminal() {
            let moves = g.legal_moves(&pos);
            let mv = moves[rng.gen_range(0..moves.len())];
            let mover = pos.to_move;
            pos = g.play(&pos, mv);
            let naive = NaiveLoa::from_engine(7, &pos);
            if naive.connected(Cell::Black) && naive.connected(Cell::White) {
                assert_eq!(g.outcome(&pos), Outcome::Win(mover));
                found += 1;
            }
        }
        if found >= 3 {
            break;
        }
    }
    assert!(found > 0, "no simultaneous connection sampled");
}

// ---------- naive Awari ----------

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct NaiveAwari {
    holes: Vec<u32>,
    stores: [u32; 2],
    mover: usize,
    ply: u32,
}

impl NaiveAwari {
    fn initial() -> NaiveAwari {
        NaiveAwari {
            holes: vec![4; 12],
            stores: [0, 0],
            mover: 0,
            ply: 0,
        }
    }

    fn from_engine(pos: &AwariPosition) -> NaiveAwari {
        NaiveAwari {
            holes: pos.holes.iter().map(|&h| h as u32).collect(),
            stores: [pos.captured[0] as u32, pos.captured[1] as u32],
            mover: pos.to_move.index(),
            ply: pos.ply,
        }
    }

    fn own_row(&self, player: usize) -> std::ops::Range<usize> {
        player * 6..player * 6 + 6
    }

    fn outcome(&self, cap: u32) -> Outcome {
        let finished = self.holes.iter().all(|&h| h <= 1)
            || self.own_row(self.mover).all(|i| self.holes[i] == 0)
            || self.ply >= cap;
        if !finished {
            return Outcome::Ongoing;
        }
        match self.stores[0].cmp(&self.stores[1]) {
            std::cmp::Ordering::Greater => Outcome::Win(Player::P1),
            std::cmp::Ordering::Less => Outcome::Win(Player::P2),
            std::cmp::Ordering::Equal => Outcome::Draw,
        }
    }

    fn moves(&self) -> Vec<usize> {
        self.own_row(self.mover).filter(|&i| self.holes[i] > 0).collect()
    }

    fn play(&self, hole: usize) -> NaiveAwari {
        let mut next = self.clone();
        let mut seeds = next.holes[hole];
        next.holes[hole] = 0;
        let mut at = hole;
        while seeds > 0 {
            at = (at + 1) % 12;
            if at == hole {
                continue;
            }
            next.holes[at] += 1;
            seeds -= 1;
        }
        let opp = 1 - self.mover;
        while next.own_row(opp).contains(&at) && (next.holes[at] == 2 || next.holes[at] == 3) {
            next.stores[self.mover] += next.holes[at];
            next.holes[at] = 0;
            if at == opp * 6 {
                break;
            }
            at -= 1;
        }
        next.mover = opp;
        next.ply += 1;
        next
    }

    fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        if self.outcome(u32::MAX).is_terminal() {
            return 0;
        }
        self.moves().into_iter().map(|m| self.play(m).perft(depth - 1)).sum()
    }
}

#[test]
fn awari_perft_matches_naive_generator() {
    let g = Awari::new();
    for depth in 0..=4 {
        assert_eq!(perft(&g, &g.initial_position(), depth), NaiveAwari::initial().perft(depth), "depth {depth}");
    }
    assert_eq!(perft(&g, &g.initial_position(), 1), 6);
}

#[test]
fn awari_random_games_agree_with_naive_rules() {
    let g = Awari::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let mut pos = g.initial_position();
        loop {
            let naive = NaiveAwari::from_engine(&pos);
            assert_eq!(g.outcome(&pos), naive.outcome(g.max_plies()));
            let moves = g.legal_moves(&pos);
            let naive_moves = if naive.outcome(g.max_plies()).is_terminal() { vec![] } else { naive.moves() };
            assert_eq!(moves.iter().map(|m| m.0 as usize).collect::<Vec<_>>(), naive_moves);
            if moves.is_empty() {
                break;
            }
            let mv = moves[rng.gen_range(0..moves.len())];
            pos = g.play(&pos, mv);
            assert_eq!(NaiveAwari::from_engine(&pos), naive.play(mv.0 as usize));
        }
    }
}

#[test]
fn awari_conservation_over_many_playouts() {
    let g = Awari::new();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut moves = Vec::new();
    for _ in 0..100_000 {
        let mut pos = g.initial_position();
        loop {
            g.generate_moves(&pos, &mut moves);
            if moves.is_empty() {
                break;
            }
            pos = g.play(&pos, moves[rng.gen_range(0..moves.len())]);
            assert_eq!(pos.counters_in_play(), 48);
        }
    }
}

#[test]
fn awari_moves_exist_exactly_when_ongoing_to_depth_four() {
    let g = Awari::new();
    let mut frontier = vec![g.initial_position()];
    for _ in 0..=4 {
        let mut next = Vec::new();
        for pos in &frontier {
            let moves = g.legal_moves(pos);
            assert_eq!(moves.is_empty(), g.outcome(pos).is_terminal());
            next.extend(moves.iter().map(|&m| g.play(pos, m)));
        }
        frontier = next;
    }
}

// ---------- naive Knightthrough ----------

#[derive(Clone, Debug)]
struct NaiveKnights {
    grid: [[u8; 8]; 8], // 0 empty, 1 P1, 2 P2
    mover: u8,
    ply: u32,
}

impl NaiveKnights {
    fn initial() -> NaiveKnights {
        let mut grid = [[0u8; 8]; 8];
        for c in 0..8 {
            grid[0][c] = 1;
            grid[1][c] = 1;
            grid[6][c] = 2;
            grid[7][c] = 2;
        }
        NaiveKnights { grid, mover: 1, ply: 0 }
    }

    fn from_engine(pos: &KnightthroughPosition) -> NaiveKnights {
        let mut grid = [[0u8; 8]; 8];
        for sq in 0..64 {
            if pos.knights[0] >> sq & 1 == 1 {
                grid[sq / 8][sq % 8] = 1;
            }
            if pos.knights[1] >> sq & 1 == 1 {
                grid[sq / 8][sq % 8] = 2;
            }
        }
        NaiveKnights {
            grid,
            mover: pos.to_move.index() as u8 + 1,
            ply: pos.ply,
        }
    }

    fn moves(&self) -> BTreeSet<(usize, usize)> {
        let forward = if self.mover == 1 { 1 } else { -1 };
        let mut out = BTreeSet::new();
        for r in 0..8i32 {
            for c in 0..8i32 {
                if self.grid[r as usize][c as usize] != self.mover {
                    continue;
                }
                for (dr, dc) in [(1, 2), (2, 1), (-1, 2), (-2, 1), (1, -2), (2, -1), (-1, -2), (-2, -1)] {
                    if dr * forward <= 0 {
                        continue;
                    }
                    let (tr, tc) = (r + dr, c + dc);
                    if !(0..8).contains(&tr) || !(0..8).contains(&tc) {
                        continue;
                    }
                    if self.grid[tr as usize][tc as usize] == self.mover {
                        continue;
                    }
                    out.insert(((r * 8 + c) as usize, (tr * 8 + tc) as usize));
                }
            }
        }
        out
    }

    fn count(&self, who: u8) -> usize {
        self.grid.iter().flatten().filter(|&&x| x == who).count()
    }

    fn outcome(&self, cap: u32) -> Outcome {
        if self.grid[7].contains(&1) || self.count(2) == 0 {
            return Outcome::Win(Player::P1);
        }
        if self.grid[0].contains(&2) || self.count(1) == 0 {
            return Outcome::Win(Player::P2);
        }
        if self.ply >= cap {
            return Outcome::Draw;
        }
        if self.moves().is_empty() {
            return Outcome::Win(if self.mover == 1 { Player::P2 } else { Player::P1 });
        }
        Outcome::Ongoing
    }

    fn play(&self, (from, to): (usize, usize)) -> NaiveKnights {
        let mut next = self.clone();
        next.grid[to / 8][to % 8] = self.mover;
        next.grid[from / 8][from % 8] = 0;
        next.mover = 3 - self.mover;
        next.ply += 1;
        next
    }

    fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        if self.outcome(u32::MAX).is_terminal() {
            return 0;
        }
        self.moves().into_iter().map(|m| self.play(m).perft(depth - 1)).sum()
    }
}

fn engine_knight_moves(g: &Knightthrough, pos: &KnightthroughPosition) -> BTreeSet<(usize, usize)> {
    g.legal_moves(pos).iter().map(|m| (m.from as usize, m.to as usize)).collect()
}

#[test]
fn knightthrough_initial_moves_and_perft_match_naive_generator() {
    let g = Knightthrough::new();
    let pos = g.initial_position();
    assert_eq!(engine_knight_moves(&g, &pos), NaiveKnights::initial().moves());
    for depth in 0..=3 {
        assert_eq!(perft(&g, &pos, depth), NaiveKnights::initial().perft(depth), "depth {depth}");
    }
}

#[test]
fn knightthrough_random_games_agree_and_only_move_forward() {
    let g = Knightthrough::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let mut pos = g.initial_position();
        loop {
            let naive = NaiveKnights::from_engine(&pos);
            assert_eq!(g.outcome(&pos), naive.outcome(g.max_plies()));
            let moves = g.legal_moves(&pos);
            if moves.is_empty() {
                break;
            }
            assert_eq!(engine_knight_moves(&g, &pos), naive.moves());
            let mv = moves[rng.gen_range(0..moves.len())];
            let (from_row, to_row) = (mv.from as i32 / 8, mv.to as i32 / 8);
            match pos.to_move {
                Player::P1 => assert!(to_row > from_row),
                Player::P2 => assert!(to_row < from_row),
            }
            let opp = pos.to_move.opponent().index();
            let opp_before = pos.knights[opp].count_ones();
            let captured = pos.knights[opp] >> mv.to & 1;
            pos = g.play(&pos, mv);
            assert_eq!(pos.knights[opp].count_ones() + captured as u32, opp_before);
        }
    }
}

// ---------- tree game ----------

fn naive_tree_perft(spec: &TreeGameSpec, node: u32, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    match &spec.nodes()[node as usize] {
        TreeNode::Leaf(_) => 0,
        TreeNode::Node(children) => children.iter().map(|&c| naive_tree_perft(spec, c, depth - 1)).sum(),
    }
}

#[test]
fn tree_perft_matches_direct_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let spec = TreeGameSpec::random(&mut rng, 6, 4);
        let g = TreeGame::new(spec.clone());
        for depth in 0..=3 {
            assert_eq!(perft(&g, &g.initial_position(), depth), naive_tree_perft(&spec, 0, depth));
        }
    }
}

#[test]
fn tree_spec_round_trips_through_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let spec = TreeGameSpec::random_sized(&mut rng, 1000);
        assert!(spec.len() >= 1000);
        // node ids are renumbered by the parser, so compare the canonical text
        let text = spec.to_text();
        let parsed = TreeGameSpec::parse(&text).unwrap();
        assert_eq!(parsed.len(), spec.len());
        assert_eq!(parsed.to_text(), text);
        assert_eq!(TreeGameSpec::parse(&parsed.to_text()).unwrap(), parsed);
    }
}

// ---------- contract properties shared by every game ----------

fn contract_checks<G: Game>(g: &G, games: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..games {
        let mut pos = g.initial_position();
        assert_eq!(g.player_to_move(&pos), Player::P1);
        assert_eq!(g.outcome(&pos), Outcome::Ongoing);
        loop {
            let text = g.serialize(&pos);
            assert_eq!(g.parse(&text).unwrap(), pos, "{text}");
            checked += 1;
            let moves = g.legal_moves(&pos);
            assert_eq!(moves.is_empty(), g.outcome(&pos).is_terminal());
            if moves.is_empty() {
                assert!(g.ply(&pos) <= g.max_plies());
                break;
            }
            let i = rng.gen_range(0..moves.len());
            let id = pnmcts_core::MoveId(i as u32);
            let notation = g.notation_of(&pos, id).unwrap();
            assert_eq!(g.parse_move(&pos, &notation).unwrap(), id);
            let next = g.apply(&pos, id).unwrap();
            assert_eq!(g.ply(&next), g.ply(&pos) + 1);
            assert_eq!(g.player_to_move(&next), g.player_to_move(&pos).opponent());
            assert_ne!(g.serialize(&next), text);
            pos = next;
        }
    }
    checked
}

#[test]
fn serialization_round_trips_and_contract_holds() {
    // each run covers well over 10,000 positions
    assert!(contract_checks(&Loa::new(8), 150, 1) >= 10_000);
    assert!(contract_checks(&Loa::new(7), 150, 2) >= 10_000);
    assert!(contract_checks(&Awari::new(), 300, 3) >= 10_000);
    assert!(contract_checks(&Knightthrough::new(), 400, 4) >= 10_000);
}

#[test]
fn ply_cap_ends_games_in_a_draw_unless_decided() {
    let g = Loa::new(8).with_max_plies(10);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pos = g.initial_position();
    while !g.outcome(&pos).is_terminal() {
        let moves = g.legal_moves(&pos);
        pos = g.play(&pos, moves[rng.gen_range(0..moves.len())]);
    }
    assert!(pos.ply <= 10);
    if pos.ply == 10 && !NaiveLoa::from_engine(8, &pos).connected(Cell::Black) && !NaiveLoa::from_engine(8, &pos).connected(Cell::White) {
        assert_eq!(g.outcome(&pos), Outcome::Draw);
    }
}

#[test]
fn illegal_move_index_is_rejected() {
    let g = Awari::new();
    let pos = g.initial_position();
    assert!(g.apply(&pos, pnmcts_core::MoveId(6)).is_err());
    assert!(g.apply(&pos, pnmcts_core::MoveId(5)).is_ok());
}
