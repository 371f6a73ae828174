//! Explicit game trees written as s-expressions, used as deterministic fixtures.
//!
//! ```text
//! tree := "(L " ("W" | "D" | "L") ")" | "(N " tree+ ")"
//! ```
//!
//! Leaf labels are relative to the root player (P1). Players alternate by depth.

use std::fmt::Write as _;

use rand::Rng;

use crate::game::{Game, GameError, Outcome, Player};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    W,
    D,
    L,
}

impl Label {
    fn outcome(self) -> Outcome {
        match self {
            Label::W => Outcome::Win(Player::P1),
            Label::D => Outcome::Draw,
            Label::L => Outcome::Win(Player::P2),
        }
    }

    fn symbol(self) -> char {
        match self {
            Label::W => 'W',
            Label::D => 'D',
            Label::L => 'L',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeNode {
    Leaf(Label),
    Node(Vec<u32>),
}

/// A parsed tree; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGameSpec {
    nodes: Vec<TreeNode>,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            _src: src,
        }
    }

    fn error(&self, message: impl Into<String>) -> GameError {
        GameError::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<(), GameError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn tree(&mut self, nodes: &mut Vec<TreeNode>) -> Result<u32, GameError> {
        self.expect('(')?;
        self.skip_ws();
        let id = nodes.len() as u32;
        match self.bump() {
            Some('L') => {
                self.skip_ws();
                let label = match self.peek() {
                    Some('W') => Label::W,
                    Some('D') => Label::D,
                    Some('L') => Label::L,
                    _ => return Err(self.error("expected leaf label W, D or L")),
                };
                self.bump();
                self.expect(')')?;
                nodes.push(TreeNode::Leaf(label));
            }
            Some('N') => {
                nodes.push(TreeNode::Node(Vec::new()));
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some('(') => children.push(self.tree(nodes)?),
                        Some(')') => {
                            self.bump();
                            break;
                        }
                        Some(c) => return Err(self.error(format!("unexpected `{c}`"))),
                        None => return Err(self.error("unterminated node")),
                    }
                }
                if children.is_empty() {
                    return Err(self.error("internal node without children"));
                }
                nodes[id as usize] = TreeNode::Node(children);
            }
            Some(c) => return Err(self.error(format!("expected `L` or `N`, found `{c}`"))),
            None => return Err(self.error("unexpected end of input")),
        }
        Ok(id)
    }
}

impl TreeGameSpec {
    pub fn parse(text: &str) -> Result<TreeGameSpec, GameError> {
        let mut p = Parser::new(text);
        let mut nodes = Vec::new();
        p.tree(&mut nodes)?;
        p.skip_ws();
        if p.peek().is_some() {
            return Err(p.error("trailing input after tree"));
        }
        Ok(TreeGameSpec { nodes })
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn height(&self) -> u32 {
        fn go(nodes: &[TreeNode], id: u32) -> u32 {
            match &nodes[id as usize] {
                TreeNode::Leaf(_) => 0,
                TreeNode::Node(ch) => 1 + ch.iter().map(|&c| go(nodes, c)).max().unwrap_or(0),
            }
        }
        go(&self.nodes, 0)
    }

    pub fn to_text(&self) -> String {
        fn go(nodes: &[TreeNode], id: u32, out: &mut String) {
            match &nodes[id as usize] {
                TreeNode::Leaf(l) => {
                    let _ = write!(out, "(L {})", l.symbol());
                }
                TreeNode::Node(ch) => {
                    out.push_str("(N");
                    for &c in ch {
                        out.push(' ');
                        go(nodes, c, out);
                    }
                    out.push(')');
                }
            }
        }
        let mut s = String::new();
        go(&self.nodes, 0, &mut s);
        s
    }

    /// Random tree with internal root, depth at most `max_depth` and 1..=`max_branching`
    /// children per internal node.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_depth: u32, max_branching: u32) -> TreeGameSpec {
        fn build<R: Rng + ?Sized>(
            rng: &mut R,
            nodes: &mut Vec<TreeNode>,
            depth: u32,
            max_depth: u32,
            max_branching: u32,
        ) -> u32 {
            let id = nodes.len() as u32;
            let internal = depth == 0 || (depth < max_depth && rng.gen_bool(0.75));
            if !internal {
                let label = [Label::W, Label::D, Label::L][rng.gen_range(0..3)];
                nodes.push(TreeNode::Leaf(label));
                return id;
            }
            nodes.push(TreeNode::Node(Vec::new()));
            let k = rng.gen_range(1..=max_branching.max(1));
            let children = (0..k)
                .map(|_| build(rng, nodes, depth + 1, max_depth, max_branching))
                .collect();
            nodes[id as usize] = TreeNode::Node(children);
            id
        }
        let mut nodes = Vec::new();
        build(rng, &mut nodes, 0, max_depth.max(1), max_branching);
        TreeGameSpec { nodes }
    }

    /// Random tree grown leaf by leaf until it holds at least `min_nodes` nodes.
    pub fn random_sized<R: Rng + ?Sized>(rng: &mut R, min_nodes: usize) -> TreeGameSpec {
        let mut nodes = vec![TreeNode::Leaf(Label::D)];
        let mut leaves = vec![0u32];
        while nodes.len() < min_nodes {
            let pick = rng.gen_range(0..leaves.len());
            let leaf = leaves.swap_remove(pick);
            let k = rng.gen_range(1..=4);
            let mut children = Vec::with_capacity(k);
            for _ in 0..k {
                let id = nodes.len() as u32;
                let label = [Label::W, Label::D, Label::L][rng.gen_range(0..3)];
                nodes.push(TreeNode::Leaf(label));
                children.push(id);
                leaves.push(id);
            }
            nodes[leaf as usize] = TreeNode::Node(children);
        }
        TreeGameSpec { nodes }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreePosition {
    pub node: u32,
    pub ply: u32,
}

#[derive(Clone, Debug)]
pub struct TreeGame {
    spec: TreeGameSpec,
    height: u32,
}

impl TreeGame {
    pub fn new(spec: TreeGameSpec) -> TreeGame {
        let height = spec.height();
        TreeGame { spec, height }
    }

    pub fn from_text(text: &str) -> Result<TreeGame, GameError> {
        Ok(TreeGame::new(TreeGameSpec::parse(text)?))
    }

    pub fn spec(&self) -> &TreeGameSpec {
        &self.spec
    }
}

impl Game for TreeGame {
    type Position = TreePosition;
    /// Child node id.
    type Move = u32;

    fn name(&self) -> &str {
        "tree"
    }

    fn max_plies(&self) -> u32 {
        self.height
    }

    fn initial_position(&self) -> TreePosition {
        TreePosition { node: 0, ply: 0 }
    }

    fn player_to_move(&self, pos: &TreePosition) -> Player {
        if pos.ply % 2 == 0 {
            Player::P1
        } else {
            Player::P2
        }
    }

    fn ply(&self, pos: &TreePosition) -> u32 {
        pos.ply
    }

    fn outcome(&self, pos: &TreePosition) -> Outcome {
        match &self.spec.nodes[pos.node as usize] {
            TreeNode::Leaf(l) => l.outcome(),
            TreeNode::Node(_) => Outcome::Ongoing,
        }
    }

    fn pseudo_moves(&self, pos: &TreePosition, out: &mut Vec<u32>) {
        out.clear();
        if let TreeNode::Node(ch) = &self.spec.nodes[pos.node as usize] {
            out.extend_from_slice(ch);
        }
    }

    fn play(&self, pos: &TreePosition, mv: u32) -> TreePosition {
        TreePosition {
            node: mv,
            ply: pos.ply + 1,
        }
    }

    fn serialize(&self, pos: &TreePosition) -> String {
        format!(
            "tree:{}:{}:-:{}",
            pos.node,
            self.player_to_move(pos).symbol(),
            pos.ply
        )
    }

    fn parse(&self, text: &str) -> Result<TreePosition, GameError> {
        let fields: Vec<&str> = text.trim().split(':').collect();
        if fields.len() != 5 || fields[0] != "tree" {
            return Err(GameError::invalid(text, "expected tree:<node>:<to-move>:-:<ply>"));
        }
        let node: u32 = fields[1]
            .parse()
            .map_err(|_| GameError::invalid(text, "bad node id"))?;
        if node as usize >= self.spec.nodes.len() {
            return Err(GameError::invalid(text, "node id out of range"));
        }
        let ply: u32 = fields[4]
            .parse()
            .map_err(|_| GameError::invalid(text, "bad ply count"))?;
        let pos = TreePosition { node, ply };
        if Player::from_symbol(fields[2]) != Some(self.player_to_move(&pos)) {
            return Err(GameError::invalid(text, "side to move disagrees with ply parity"));
        }
        Ok(pos)
    }

    fn move_notation(&self, pos: &TreePosition, mv: u32) -> String {
        match &self.spec.nodes[pos.node as usize] {
            TreeNode::Node(ch) => match ch.iter().position(|&c| c == mv) {
                Some(i) => format!("c{i}"),
                None => format!("n{mv}"),
            },
            TreeNode::Leaf(_) => format!("n{mv}"),
        }
    }
}
