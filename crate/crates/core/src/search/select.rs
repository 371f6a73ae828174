//! Selection formulas: UCB1, proof-number ranks, UCT-PN, the solver
//! exclusion rule and final move selection.

use rand::Rng;

use crate::pn::{LayeredProof, NodeKind, PnValue};
use crate::scalar::Scalar;
use crate::search::config::{LayerMode, SearchConfig};
use crate::search::SearchError;

/// The statistics selection needs about one child.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChildStats<F> {
    pub visits: u32,
    /// Sum of rewards from the point of view of the player who chose this child.
    pub value_sum: F,
    pub proof: LayeredProof,
}

impl<F: Scalar> ChildStats<F> {
    #[inline]
    pub fn mean(&self) -> F {
        if self.visits == 0 {
            F::zero()
        } else {
            self.value_sum / F::of(self.visits as f64)
        }
    }
}

/// `v + C * sqrt(ln(n_p) / n_i)`; unvisited children score +inf.
#[inline]
pub fn ucb1_score<F: Scalar>(child: &ChildStats<F>, parent_visits: u32, c: F) -> F {
    if child.visits == 0 {
        return F::infinity();
    }
    let n = F::of(child.visits as f64);
    let exploration = if c == F::zero() {
        F::zero()
    } else {
        c * (F::of(parent_visits.max(1) as f64).ln() / n).sqrt()
    };
    child.value_sum / n + exploration
}

/// Sort key of a child under proof-number-search preference at a node of `kind`.
#[inline]
fn rank_key(proof: &LayeredProof, kind: NodeKind, layers: LayerMode) -> (PnValue, PnValue) {
    let (primary, secondary) = match kind {
        NodeKind::Or => (proof.first.pn, proof.second.pn),
        NodeKind::And => (proof.first.dpn, proof.second.dpn),
    };
    match layers {
        LayerMode::Single => (primary, PnValue::ZERO),
        LayerMode::Double => (primary, secondary),
    }
}

/// Competition ranks (1 = best; ties share the rank of their first position).
pub fn pn_rank(children: &[LayeredProof], kind: NodeKind, layers: LayerMode) -> Vec<u32> {
    let mut ranks = Vec::new();
    let mut order = Vec::new();
    pn_rank_into(children.iter(), kind, layers, &mut order, &mut ranks);
    ranks
}

/// Allocation-free variant of [`pn_rank`]; returns the highest rank.
pub fn pn_rank_into<'a, I>(
    children: I,
    kind: NodeKind,
    layers: LayerMode,
    order: &mut Vec<(PnValue, PnValue, u32)>,
    ranks: &mut Vec<u32>,
) -> u32
where
    I: Iterator<Item = &'a LayeredProof>,
{
    order.clear();
    order.extend(children.enumerate().map(|(i, p)| {
        let (a, b) = rank_key(p, kind, layers);
        (a, b, i as u32)
    }));
    order.sort_unstable();
    ranks.clear();
    ranks.resize(order.len(), 0);
    let mut max_rank = 0;
    let mut prev = None;
    for (pos, &(a, b, i)) in order.iter().enumerate() {
        if prev != Some((a, b)) {
            max_rank = pos as u32 + 1;
            prev = Some((a, b));
        }
        ranks[i as usize] = max_rank;
    }
    max_rank
}

/// UCB1 plus `C_pn * (1 - rank / max_rank)`.
#[inline]
pub fn uct_pn_score<F: Scalar>(
    child: &ChildStats<F>,
    parent_visits: u32,
    rank: u32,
    max_rank: u32,
    config: &SearchConfig<F>,
) -> F {
    let base = ucb1_score(child, parent_visits, config.c);
    if base.is_infinite() || config.c_pn == F::zero() {
        return base;
    }
    let bonus = F::one() - F::of(rank as f64) / F::of(max_rank.max(1) as f64);
    base + config.c_pn * bonus
}

/// Whether a subtree counts as solved for the solver exclusion rule.
#[inline]
pub fn solved_predicate(proof: &LayeredProof, layers: LayerMode) -> bool {
    match layers {
        LayerMode::Single => proof.first.is_solved(),
        LayerMode::Double => proof.second.is_solved(),
    }
}

/// Scratch buffers reused across selection steps.
#[derive(Default, Debug)]
pub struct SelectScratch<F> {
    order: Vec<(PnValue, PnValue, u32)>,
    ranks: Vec<u32>,
    best: Vec<usize>,
    scores: Vec<F>,
}

/// Indices of all children that maximize the selection score: UCB1, or UCT-PN when
/// the U flag is on, with solved children skipped once their visits exceed the
/// threshold (unless that would skip every child).
pub fn best_children<'s, F: Scalar>(
    children: &[ChildStats<F>],
    parent_visits: u32,
    kind: NodeKind,
    config: &SearchConfig<F>,
    scratch: &'s mut SelectScratch<F>,
) -> &'s [usize] {
    debug_assert!(!children.is_empty());
    let flags = config.effective_flags();
    let max_rank = if flags.uct_pn {
        pn_rank_into(
            children.iter().map(|c| &c.proof),
            kind,
            config.layers,
            &mut scratch.order,
            &mut scratch.ranks,
        )
    } else {
        0
    };
    let excluded = |c: &ChildStats<F>| {
        flags.solver && c.visits > config.t_threshold && solved_predicate(&c.proof, config.layers)
    };
    let all_excluded = flags.solver && children.iter().all(excluded);

    scratch.scores.clear();
    let mut best_score = F::neg_infinity();
    for (i, child) in children.iter().enumerate() {
        let score = if !all_excluded && excluded(child) {
            F::nan()
        } else if flags.uct_pn {
            uct_pn_score(child, parent_visits, scratch.ranks[i], max_rank, config)
        } else {
            ucb1_score(child, parent_visits, config.c)
        };
        scratch.scores.push(score);
        if score >= best_score {
            best_score = score;
        }
    }
    scratch.best.clear();
    scratch.best.extend(
        scratch
            .scores
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == best_score)
            .map(|(i, _)| i),
    );
    debug_assert!(!scratch.best.is_empty());
    &scratch.best
}

/// In-tree child selection: one of [`best_children`], chosen uniformly at random.
pub fn select_child<F: Scalar, R: Rng + ?Sized>(
    children: &[ChildStats<F>],
    parent_visits: u32,
    kind: NodeKind,
    config: &SearchConfig<F>,
    rng: &mut R,
    scratch: &mut SelectScratch<F>,
) -> usize {
    let best = best_children(children, parent_visits, kind, config, scratch);
    best[rng.gen_range(0..best.len())]
}

/// Index of the child to play after the search.
///
/// 1. With F on, the first child proven a win on the first layer.
/// 2. With F on in double-layer mode, a proven draw when `root_value < contempt`.
/// 3. Otherwise the most visited child, ties broken at random.
pub fn final_move_selection<F: Scalar, R: Rng + ?Sized>(
    children: &[ChildStats<F>],
    root_value: F,
    config: &SearchConfig<F>,
    rng: &mut R,
) -> Result<usize, SearchError> {
    if children.is_empty() {
        return Err(SearchError::NoChildren);
    }
    let flags = config.effective_flags();
    if flags.final_move {
        if let Some(i) = children.iter().position(|c| c.proof.first.is_proven()) {
            return Ok(i);
        }
        if config.layers == LayerMode::Double && root_value < config.contempt {
            if let Some(i) = children.iter().position(|c| c.proof.is_proven_draw()) {
                return Ok(i);
            }
        }
    }
    let most = children.iter().map(|c| c.visits).max().expect("non-empty");
    let tied: Vec<usize> = children
        .iter()
        .enumerate()
        .filter(|(_, c)| c.visits == most)
        .map(|(i, _)| i)
        .collect();
    Ok(tied[rng.gen_range(0..tied.len())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pn::ProofPair;
    use crate::search::config::Enhancements;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pn(n: u64) -> PnValue {
        PnValue::finite(n)
    }

    fn proof_with_pn(first: PnValue, second: PnValue) -> LayeredProof {
        LayeredProof {
            first: ProofPair::new(first, PnValue::ONE),
            second: ProofPair::new(second, PnValue::ONE),
        }
    }

    fn stats(visits: u32, value_sum: f64, proof: LayeredProof) -> ChildStats<f64> {
        ChildStats {
            visits,
            value_sum,
            proof,
        }
    }

    #[test]
    fn ucb1_examples() {
        let c = std::f64::consts::SQRT_2;
        // parent_visits = e is not an integer; check the formula at ln(n_p) = 1 directly.
        let child = stats(1, 0.5, LayeredProof::UNKNOWN);
        let expected = 0.5 + c * (1.0f64 / 1.0).sqrt();
        assert!((expected - 1.9142).abs() < 1e-4);
        let s3 = ucb1_score(&child, 3, c);
        assert!((s3 - (0.5 + c * 3f64.ln().sqrt())).abs() < 1e-12);
        assert!(ucb1_score(&stats(0, 0.0, LayeredProof::UNKNOWN), 10, c).is_infinite());
        assert_eq!(ucb1_score(&stats(4, 2.0, LayeredProof::UNKNOWN), 10, 0.0), 0.5);
    }

    #[test]
    fn rank_examples() {
        let inf = PnValue::INFINITY;
        let p = |a| proof_with_pn(a, PnValue::ONE);
        assert_eq!(pn_rank(&[p(pn(1)), p(pn(3)), p(inf)], NodeKind::Or, LayerMode::Single), vec![1, 2, 3]);
        assert_eq!(pn_rank(&[p(pn(2)), p(pn(2)), p(pn(5))], NodeKind::Or, LayerMode::Single), vec![1, 1, 3]);
        let d = [proof_with_pn(pn(2), pn(3)), proof_with_pn(pn(2), pn(1))];
        assert_eq!(pn_rank(&d, NodeKind::Or, LayerMode::Double), vec![2, 1]);
        assert_eq!(pn_rank(&d, NodeKind::Or, LayerMode::Single), vec![1, 1]);
    }

    #[test]
    fn and_nodes_rank_by_disproof_numbers() {
        let mk = |dpn| LayeredProof {
            first: ProofPair::new(PnValue::ONE, pn(dpn)),
            second: ProofPair::UNKNOWN,
        };
        assert_eq!(pn_rank(&[mk(4), mk(1), mk(2)], NodeKind::And, LayerMode::Single), vec![3, 1, 2]);
    }

    #[test]
    fn rank_bonus_values() {
        let cfg = SearchConfig::<f64>::default();
        let child = stats(2, 0.0, LayeredProof::UNKNOWN);
        let base = ucb1_score(&child, 10, cfg.c);
        let bonus: Vec<f64> = (1..=3).map(|r| uct_pn_score(&child, 10, r, 3, &cfg) - base).collect();
        assert!((bonus[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((bonus[1] - 1.0 / 3.0).abs() < 1e-12);
        assert!(bonus[2].abs() < 1e-12);
        assert_eq!(uct_pn_score(&child, 10, 1, 1, &cfg), base);
    }

    #[test]
    fn solved_predicate_modes() {
        let win = LayeredProof {
            first: ProofPair::PROVEN,
            second: ProofPair::PROVEN,
        };
        assert!(solved_predicate(&win, LayerMode::Single));
        assert!(solved_predicate(&win, LayerMode::Double));
        let not_win = LayeredProof {
            first: ProofPair::DISPROVEN,
            second: ProofPair::UNKNOWN,
        };
        assert!(solved_predicate(&not_win, LayerMode::Single));
        assert!(!solved_predicate(&not_win, LayerMode::Double));
        let loss = LayeredProof {
            first: ProofPair::DISPROVEN,
            second: ProofPair::DISPROVEN,
        };
        assert!(solved_predicate(&loss, LayerMode::Double));
    }

    #[test]
    fn solver_excludes_only_above_threshold() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut scratch = SelectScratch::default();
        let cfg = SearchConfig::<f64>::pn_mcts("xSx".parse().unwrap());
        let solved = LayeredProof {
            first: ProofPair::DISPROVEN,
            second: ProofPair::DISPROVEN,
        };
        // child 0 looks great but is solved with 6 visits (> T = 5)
        let kids = [stats(6, 6.0, solved), stats(6, -3.0, LayeredProof::UNKNOWN)];
        for _ in 0..20 {
            assert_eq!(select_child(&kids, 12, NodeKind::Or, &cfg, &mut rng, &mut scratch), 1);
        }
        // with 3 visits it is still selectable and wins on value
        let kids = [stats(3, 3.0, solved), stats(3, -3.0, LayeredProof::UNKNOWN)];
        assert_eq!(select_child(&kids, 6, NodeKind::Or, &cfg, &mut rng, &mut scratch), 0);
        // everything excluded: fall back to plain selection
        let kids = [stats(6, 6.0, solved), stats(6, -3.0, solved)];
        assert_eq!(select_child(&kids, 12, NodeKind::Or, &cfg, &mut rng, &mut scratch), 0);
    }

    #[test]
    fn unvisited_children_come_first() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut scratch = SelectScratch::default();
        let cfg = SearchConfig::<f64>::uct();
        let kids = [stats(10, 10.0, LayeredProof::UNKNOWN), stats(0, 0.0, LayeredProof::UNKNOWN)];
        assert_eq!(select_child(&kids, 10, NodeKind::Or, &cfg, &mut rng, &mut scratch), 1);
    }

    #[test]
    fn final_selection_priorities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let won = LayeredProof {
            first: ProofPair::PROVEN,
            second: ProofPair::PROVEN,
        };
        let drawn = LayeredProof {
            first: ProofPair::DISPROVEN,
            second: ProofPair::PROVEN,
        };
        let u = LayeredProof::UNKNOWN;
        let f = SearchConfig::<f64>::pn_mcts(Enhancements::ALL);
        let kids = [stats(500, 100.0, u), stats(10, 1.0, won)];
        assert_eq!(final_move_selection(&kids, 0.0, &f, &mut rng).unwrap(), 1);
        let no_f = SearchConfig::<f64>::pn_mcts("xSU".parse().unwrap());
        assert_eq!(final_move_selection(&kids, 0.0, &no_f, &mut rng).unwrap(), 0);

        let double = f.clone().with_layers(LayerMode::Double).with_contempt(0.0);
        let kids = [stats(500, 100.0, u), stats(10, 0.0, drawn)];
        assert_eq!(final_move_selection(&kids, -0.3, &double, &mut rng).unwrap(), 1);
        assert_eq!(final_move_selection(&kids, 0.2, &double, &mut rng).unwrap(), 0);
        let sentinel = double.clone().with_contempt(f64::NEG_INFINITY);
        assert_eq!(final_move_selection(&kids, -1.0, &sentinel, &mut rng).unwrap(), 0);
        assert_eq!(final_move_selection(&[], 0.0, &f, &mut rng), Err(SearchError::NoChildren));
    }
}
