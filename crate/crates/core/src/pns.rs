//! Best-first proof-number search over an explicit AND/OR tree.
//!
//! The search proves one objective for the player to move at the root: a win
//! (first layer) or a non-loss (second layer). Ties between equally promising
//! children go to the lowest child index, so runs are fully deterministic.

use thiserror::Error;

use crate::game::{Game, Player};
use crate::pn::{combine, leaf_eval, Layer, NodeKind, ProofPair};

pub type NodeId = u32;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PnsError {
    #[error("the root is already solved")]
    AlreadySolved,
    #[error("node {0} is already expanded")]
    AlreadyExpanded(NodeId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Proven,
    Disproven,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub nodes_expanded: u64,
}

#[derive(Clone, Debug)]
pub struct PnsNode<P> {
    pub position: P,
    pub kind: NodeKind,
    pub proof: ProofPair,
    /// Contiguous child range `(first, count)` once expanded.
    children: Option<(NodeId, u32)>,
}

impl<P> PnsNode<P> {
    pub fn is_expanded(&self) -> bool {
        self.children.is_some()
    }
}

pub struct PnsTree<'g, G: Game> {
    game: &'g G,
    root_player: Player,
    layer: Layer,
    nodes: Vec<PnsNode<G::Position>>,
    expansions: u64,
    moves: Vec<G::Move>,
}

impl<'g, G: Game> PnsTree<'g, G> {
    pub fn new(game: &'g G, position: G::Position, layer: Layer) -> Self {
        let root_player = game.player_to_move(&position);
        let proof = leaf_eval(game.outcome(&position), root_player, layer);
        let root = PnsNode {
            kind: NodeKind::Or,
            proof,
            position,
            children: None,
        };
        PnsTree {
            game,
            root_player,
            layer,
            nodes: vec![root],
            expansions: 0,
            moves: Vec::new(),
        }
    }

    pub fn root_player(&self) -> Player {
        self.root_player
    }

    pub fn layer(&self) -> Layer {
        self.layer
    }

    pub fn root_proof(&self) -> ProofPair {
        self.nodes[0].proof
    }

    pub fn node(&self, id: NodeId) -> &PnsNode<G::Position> {
        &self.nodes[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.expansions
    }

    pub fn children(&self, id: NodeId) -> std::ops::Range<NodeId> {
        match self.nodes[id as usize].children {
            Some((first, count)) => first..first + count,
            None => 0..0,
        }
    }

    fn status(&self) -> SolveStatus {
        let p = self.root_proof();
        if p.is_proven() {
            SolveStatus::Proven
        } else if p.is_disproven() {
            SolveStatus::Disproven
        } else {
            SolveStatus::Unknown
        }
    }

    /// Path from the root to the most-proving leaf: min pn at OR nodes, min dpn at AND nodes.
    pub fn select_most_proving(&self) -> Result<Vec<NodeId>, PnsError> {
        if self.root_proof().is_solved() {
            return Err(PnsError::AlreadySolved);
        }
        let mut path = vec![0];
        let mut id = 0;
        while self.nodes[id as usize].is_expanded() {
            let node = &self.nodes[id as usize];
            let key = |c: NodeId| {
                let p = self.nodes[c as usize].proof;
                match node.kind {
                    NodeKind::Or => p.pn,
                    NodeKind::And => p.dpn,
                }
            };
            // min_by_key keeps the first of equal keys
            id = self.children(id).min_by_key(|&c| key(c)).expect("expanded nodes have children");
            path.push(id);
        }
        Ok(path)
    }

    /// Expands the last node of `path` with immediate evaluation of its children and
    /// updates proofs back up the path, stopping once a pair is unchanged.
    pub fn expand_and_evaluate(&mut self, path: &[NodeId]) -> Result<(), PnsError> {
        let leaf = *path.last().expect("path is never empty");
        if self.nodes[leaf as usize].is_expanded() {
            return Err(PnsError::AlreadyExpanded(leaf));
        }
        let mut moves = std::mem::take(&mut self.moves);
        let parent_pos = self.nodes[leaf as usize].position.clone();
        self.game.generate_moves(&parent_pos, &mut moves);
        let first = self.nodes.len() as NodeId;
        for &mv in &moves {
            let position = self.game.play(&parent_pos, mv);
            let kind = NodeKind::for_mover(self.game.player_to_move(&position), self.root_player);
            let proof = leaf_eval(self.game.outcome(&position), self.root_player, self.layer);
            self.nodes.push(PnsNode {
                position,
                kind,
                proof,
                children: None,
            });
        }
        let count = moves.len() as u32;
        self.moves = moves;
        self.expansions += 1;
        if count == 0 {
            return Ok(());
        }
        self.nodes[leaf as usize].children = Some((first, count));
        for &id in path.iter().rev() {
            let updated = combine(
                self.nodes[id as usize].kind,
                self.children(id).map(|c| self.nodes[c as usize].proof),
            )
            .expect("expanded nodes have children");
            let node = &mut self.nodes[id as usize];
            if updated == node.proof {
                break;
            }
            node.proof = updated;
        }
        Ok(())
    }

    /// Runs select/expand until the root is solved or `node_budget` expansions were spent.
    pub fn solve(&mut self, node_budget: u64) -> SolveResult {
        while !self.root_proof().is_solved() && self.expansions < node_budget {
            let path = self.select_most_proving().expect("root is unsolved");
            self.expand_and_evaluate(&path).expect("most-proving node is a leaf");
        }
        SolveResult {
            status: self.status(),
            nodes_expanded: self.expansions,
        }
    }

    /// Index of the first root child proving the objective, if the root is proven.
    pub fn principal_move(&self) -> Option<usize> {
        if !self.root_proof().is_proven() {
            return None;
        }
        self.children(0)
            .position(|c| self.nodes[c as usize].proof.is_proven())
    }
}

/// One-shot solve of `position` for the side to move.
pub fn solve<G: Game>(game: &G, position: &G::Position, layer: Layer, node_budget: u64) -> SolveResult {
    PnsTree::new(game, position.clone(), layer).solve(node_budget)
}
