//! The search tree and the select / expand / playout / backpropagate loop.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{Game, MoveId, Outcome, Player};
use crate::pn::{layered_leaf_eval, update_layered, LayeredProof, NodeKind};
use crate::scalar::Scalar;
use crate::search::config::{Budget, SearchConfig};
use crate::search::select::{final_move_selection, select_child, solved_predicate, ChildStats, SelectScratch};
use crate::search::{ChildReport, RootSolved, SearchError, SearchReport};

pub type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    Unexpanded,
    /// Some but not all children exist (baseline only).
    Partial,
    Full,
}

#[derive(Clone, Debug)]
pub struct SearchNode<P, M, F> {
    pub position: P,
    /// Index into the parent's legal move list, plus the move itself. `None` at the root.
    pub from_parent: Option<(MoveId, M)>,
    pub outcome: Outcome,
    pub to_move: Player,
    /// The player whose move led here; `value_sum` is from their point of view.
    pub moved_by: Player,
    pub kind: NodeKind,
    pub visits: u32,
    pub value_sum: F,
    pub proof: LayeredProof,
    pub expansion: Expansion,
    pub children: Vec<NodeId>,
    untried: Vec<(MoveId, M)>,
}

impl<P, M, F: Scalar> SearchNode<P, M, F> {
    pub fn mean(&self) -> F {
        if self.visits == 0 {
            F::zero()
        } else {
            self.value_sum / F::of(self.visits as f64)
        }
    }

    fn stats(&self) -> ChildStats<F> {
        ChildStats {
            visits: self.visits,
            value_sum: self.value_sum,
            proof: self.proof,
        }
    }
}

type Node<G, F> = SearchNode<<G as Game>::Position, <G as Game>::Move, F>;

/// One search tree. A fresh one is built for every move decision.
pub struct Searcher<'g, G: Game, F: Scalar> {
    game: &'g G,
    config: SearchConfig<F>,
    root_player: Player,
    nodes: Vec<Node<G, F>>,
    rng: ChaCha8Rng,
    simulations: u64,
    path: Vec<NodeId>,
    stats: Vec<ChildStats<F>>,
    scratch: SelectScratch<F>,
    moves: Vec<G::Move>,
}

impl<'g, G: Game, F: Scalar> Searcher<'g, G, F> {
    pub fn new(game: &'g G, position: G::Position, config: SearchConfig<F>) -> Result<Self, SearchError> {
        config.validate()?;
        let outcome = game.outcome(&position);
        if outcome.is_terminal() {
            return Err(SearchError::NoLegalMoves);
        }
        let root_player = game.player_to_move(&position);
        let root = SearchNode {
            position,
            from_parent: None,
            outcome,
            to_move: root_player,
            moved_by: root_player.opponent(),
            kind: NodeKind::Or,
            visits: 0,
            value_sum: F::zero(),
            proof: LayeredProof::UNKNOWN,
            expansion: Expansion::Unexpanded,
            children: Vec::new(),
            untried: Vec::new(),
        };
        Ok(Searcher {
            game,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            config,
            root_player,
            nodes: vec![root],
            simulations: 0,
            path: Vec::new(),
            stats: Vec::new(),
            scratch: SelectScratch::default(),
            moves: Vec::new(),
        })
    }

    pub fn config(&self) -> &SearchConfig<F> {
        &self.config
    }

    pub fn root_player(&self) -> Player {
        self.root_player
    }

    pub fn nodes(&self) -> &[Node<G, F>] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node<G, F> {
        &self.nodes[id as usize]
    }

    pub fn root(&self) -> &Node<G, F> {
        &self.nodes[0]
    }

    /// Completed backpropagations so far.
    pub fn simulations(&self) -> u64 {
        self.simulations
    }

    /// Root-to-leaf path of the last iteration.
    pub fn last_path(&self) -> &[NodeId] {
        &self.path
    }

    /// True when the solver flag is on and the root is solved, so searching further is pointless.
    pub fn is_settled(&self) -> bool {
        self.config.effective_flags().solver && solved_predicate(&self.nodes[0].proof, self.config.layers)
    }

    /// Mean root value from the root player's point of view.
    pub fn root_value(&self) -> F {
        -self.nodes[0].mean()
    }

    /// Runs iterations until the budget is spent or the root is settled. At least one
    /// iteration always runs.
    pub fn run(&mut self) {
        let start = Instant::now();
        loop {
            self.iterate();
            if self.is_settled() {
                break;
            }
            let done = match self.config.budget {
                Budget::Iterations(n) => self.simulations >= n,
                Budget::WallClock(limit) => start.elapsed() >= limit,
            };
            if done {
                break;
            }
        }
    }

    /// One select / expand / playout / backpropagate cycle.
    pub fn iterate(&mut self) {
        self.path.clear();
        self.path.push(0);
        let mut id: NodeId = 0;
        loop {
            let node = &self.nodes[id as usize];
            if node.outcome.is_terminal() {
                break;
            }
            if node.expansion == Expansion::Full {
                id = self.select(id);
                self.path.push(id);
            } else {
                id = self.expand(id);
                self.path.push(id);
                break;
            }
        }
        let outcome = {
            let node = &self.nodes[id as usize];
            if node.outcome.is_terminal() {
                node.outcome
            } else {
                playout_with(self.game, node.position.clone(), &mut self.rng, &mut self.moves)
            }
        };
        self.backpropagate(outcome);
    }

    fn select(&mut self, id: NodeId) -> NodeId {
        let node = &self.nodes[id as usize];
        self.stats.clear();
        self.stats
            .extend(node.children.iter().map(|&c| self.nodes[c as usize].stats()));
        let i = select_child(
            &self.stats,
            node.visits,
            node.kind,
            &self.config,
            &mut self.rng,
            &mut self.scratch,
        );
        node.children[i]
    }

    /// Grows the tree below `id` and returns the node the playout starts from.
    fn expand(&mut self, id: NodeId) -> NodeId {
        let proofs = self.config.maintains_proofs();
        if self.nodes[id as usize].expansion == Expansion::Unexpanded {
            let mut moves = std::mem::take(&mut self.moves);
            self.game.generate_moves(&self.nodes[id as usize].position, &mut moves);
            debug_assert!(!moves.is_empty(), "non-terminal positions have moves");
            if proofs {
                let first = self.nodes.len() as NodeId;
                for (i, &mv) in moves.iter().enumerate() {
                    let child = self.make_node(id, MoveId(i as u32), mv);
                    self.nodes.push(child);
                }
                let node = &mut self.nodes[id as usize];
                node.children = (first..first + moves.len() as NodeId).collect();
                node.expansion = Expansion::Full;
                self.moves = moves;
                self.update_proofs();
                let node = &self.nodes[id as usize];
                return node.children[self.rng.gen_range(0..node.children.len())];
            }
            let node = &mut self.nodes[id as usize];
            node.untried = moves
                .iter()
                .enumerate()
                .map(|(i, &mv)| (MoveId(i as u32), mv))
                .collect();
            node.expansion = Expansion::Partial;
            self.moves = moves;
        }
        // baseline: add one untried child chosen uniformly at random
        let node = &mut self.nodes[id as usize];
        let pick = self.rng.gen_range(0..node.untried.len());
        let (move_id, mv) = node.untried.swap_remove(pick);
        if node.untried.is_empty() {
            node.expansion = Expansion::Full;
        }
        let child = self.make_node(id, move_id, mv);
        let child_id = self.nodes.len() as NodeId;
        self.nodes.push(child);
        self.nodes[id as usize].children.push(child_id);
        child_id
    }

    fn make_node(&self, parent: NodeId, move_id: MoveId, mv: G::Move) -> Node<G, F> {
        let parent = &self.nodes[parent as usize];
        let position = self.game.play(&parent.position, mv);
        let outcome = self.game.outcome(&position);
        let to_move = self.game.player_to_move(&position);
        let proof = if self.config.maintains_proofs() {
            layered_leaf_eval(outcome, self.root_player)
        } else {
            LayeredProof::UNKNOWN
        };
        SearchNode {
            position,
            from_parent: Some((move_id, mv)),
            outcome,
            to_move,
            moved_by: parent.to_move,
            kind: NodeKind::for_mover(to_move, self.root_player),
            visits: 0,
            value_sum: F::zero(),
            proof,
            expansion: Expansion::Unexpanded,
            children: Vec::new(),
            untried: Vec::new(),
        }
    }

    /// Recomputes proofs from the end of the current path to the root, stopping at the
    /// first node whose pair is unchanged.
    fn update_proofs(&mut self) {
        for &id in self.path.iter().rev() {
            let node = &self.nodes[id as usize];
            let updated = update_layered(
                node.kind,
                node.children.iter().map(|&c| self.nodes[c as usize].proof),
            )
            .expect("expanded nodes have children");
            let node = &mut self.nodes[id as usize];
            if updated == node.proof {
                break;
            }
            node.proof = updated;
        }
    }

    fn backpropagate(&mut self, outcome: Outcome) {
        for &id in &self.path {
            let node = &mut self.nodes[id as usize];
            node.visits += 1;
            node.value_sum = node.value_sum + F::of(outcome.reward_for(node.moved_by) as f64);
        }
        self.simulations += 1;
    }

    /// Chooses the move to play and summarizes the root.
    pub fn report(&mut self) -> Result<SearchReport<F>, SearchError> {
        let root = &self.nodes[0];
        self.stats.clear();
        self.stats
            .extend(root.children.iter().map(|&c| self.nodes[c as usize].stats()));
        let root_value = -root.mean();
        let i = final_move_selection(&self.stats, root_value, &self.config, &mut self.rng)?;
        let children = root
            .children
            .iter()
            .map(|&c| {
                let child = &self.nodes[c as usize];
                let (move_id, mv) = child.from_parent.expect("children have a move");
                ChildReport {
                    move_id,
                    notation: self.game.move_notation(&root.position, mv),
                    visits: child.visits,
                    value: child.mean(),
                    proof: child.proof,
                }
            })
            .collect::<Vec<_>>();
        let root_solved = if self.config.maintains_proofs() {
            RootSolved::from_proof(&root.proof)
        } else {
            RootSolved::No
        };
        Ok(SearchReport {
            chosen: children[i].move_id,
            simulations: self.simulations,
            root_value,
            root_solved,
            children,
        })
    }
}

/// Plays uniformly random legal moves until the game ends.
pub fn playout<G: Game, R: Rng + ?Sized>(game: &G, position: &G::Position, rng: &mut R) -> Outcome {
    playout_with(game, position.clone(), rng, &mut Vec::new())
}

fn playout_with<G: Game, R: Rng + ?Sized>(
    game: &G,
    mut position: G::Position,
    rng: &mut R,
    moves: &mut Vec<G::Move>,
) -> Outcome {
    loop {
        let outcome = game.outcome(&position);
        if outcome.is_terminal() {
            return outcome;
        }
        game.pseudo_moves(&position, moves);
        let mv = moves[rng.gen_range(0..moves.len())];
        position = game.play(&position, mv);
    }
}
