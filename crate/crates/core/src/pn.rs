//! Proof and disproof numbers over the extended naturals, and their AND/OR
//! combination rules, for one or two proof layers.
//!
//! Layer one proves "the root player wins". Layer two proves "the root player
//! does not lose", which separates drawn subtrees from lost ones.

use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::game::{Outcome, Player};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PnError {
    #[error("cannot combine an empty set of children")]
    EmptyChildren,
}

/// A finite count or infinity. Addition saturates to infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PnValue(u32);

impl PnValue {
    pub const ZERO: PnValue = PnValue(0);
    pub const ONE: PnValue = PnValue(1);
    pub const INFINITY: PnValue = PnValue(u32::MAX);

    /// Finite value; counts that do not fit saturate to infinity.
    pub fn finite(n: u64) -> PnValue {
        if n >= u32::MAX as u64 {
            PnValue::INFINITY
        } else {
            PnValue(n as u32)
        }
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self == PnValue::INFINITY
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The count, or `None` for infinity.
    pub fn get(self) -> Option<u32> {
        (!self.is_infinite()).then_some(self.0)
    }
}

impl Add for PnValue {
    type Output = PnValue;

    #[inline]
    fn add(self, rhs: PnValue) -> PnValue {
        match self.0.checked_add(rhs.0) {
            Some(v) if v != u32::MAX => PnValue(v),
            _ => PnValue::INFINITY,
        }
    }
}

impl std::iter::Sum for PnValue {
    fn sum<I: Iterator<Item = PnValue>>(iter: I) -> PnValue {
        iter.fold(PnValue::ZERO, Add::add)
    }
}

impl fmt::Debug for PnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProofPair {
    pub pn: PnValue,
    pub dpn: PnValue,
}

impl ProofPair {
    pub const PROVEN: ProofPair = ProofPair {
        pn: PnValue::ZERO,
        dpn: PnValue::INFINITY,
    };
    pub const DISPROVEN: ProofPair = ProofPair {
        pn: PnValue::INFINITY,
        dpn: PnValue::ZERO,
    };
    pub const UNKNOWN: ProofPair = ProofPair {
        pn: PnValue::ONE,
        dpn: PnValue::ONE,
    };

    pub fn new(pn: PnValue, dpn: PnValue) -> ProofPair {
        ProofPair { pn, dpn }
    }

    #[inline]
    pub fn is_proven(self) -> bool {
        self.pn.is_zero()
    }

    #[inline]
    pub fn is_disproven(self) -> bool {
        self.dpn.is_zero()
    }

    #[inline]
    pub fn is_solved(self) -> bool {
        self.is_proven() || self.is_disproven()
    }

    /// pn = 0 forces dpn = inf, dpn = 0 forces pn = inf.
    pub fn is_consistent(self) -> bool {
        (!self.pn.is_zero() || self.dpn.is_infinite())
            && (!self.dpn.is_zero() || self.pn.is_infinite())
    }
}

impl fmt::Display for ProofPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pn, self.dpn)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layer {
    /// Objective: the root player wins.
    First,
    /// Objective: the root player does not lose.
    Second,
}

impl Layer {
    pub fn from_number(n: u32) -> Option<Layer> {
        match n {
            1 => Some(Layer::First),
            2 => Some(Layer::Second),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LayeredProof {
    pub first: ProofPair,
    pub second: ProofPair,
}

impl LayeredProof {
    pub const UNKNOWN: LayeredProof = LayeredProof {
        first: ProofPair::UNKNOWN,
        second: ProofPair::UNKNOWN,
    };

    pub fn layer(&self, layer: Layer) -> ProofPair {
        match layer {
            Layer::First => self.first,
            Layer::Second => self.second,
        }
    }

    pub fn is_proven_win(&self) -> bool {
        self.first.is_proven()
    }

    pub fn is_proven_draw(&self) -> bool {
        self.first.is_disproven() && self.second.is_proven()
    }

    pub fn is_proven_loss(&self) -> bool {
        self.second.is_disproven()
    }

    /// Both layers consistent, and a win implies a non-loss, a loss implies a non-win.
    pub fn is_consistent(&self) -> bool {
        self.first.is_consistent()
            && self.second.is_consistent()
            && (!self.first.is_proven() || self.second.is_proven())
            && (!self.second.is_disproven() || self.first.is_disproven())
    }
}

/// OR where the root player moves, AND where the opponent moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Or,
    And,
}

impl NodeKind {
    #[inline]
    pub fn for_mover(to_move: Player, root_player: Player) -> NodeKind {
        if to_move == root_player {
            NodeKind::Or
        } else {
            NodeKind::And
        }
    }
}

pub fn leaf_eval(outcome: Outcome, root_player: Player, layer: Layer) -> ProofPair {
    match (outcome, layer) {
        (Outcome::Ongoing, _) => ProofPair::UNKNOWN,
        (Outcome::Win(p), _) if p == root_player => ProofPair::PROVEN,
        (Outcome::Win(_), _) => ProofPair::DISPROVEN,
        (Outcome::Draw, Layer::First) => ProofPair::DISPROVEN,
        (Outcome::Draw, Layer::Second) => ProofPair::PROVEN,
    }
}

pub fn layered_leaf_eval(outcome: Outcome, root_player: Player) -> LayeredProof {
    LayeredProof {
        first: leaf_eval(outcome, root_player, Layer::First),
        second: leaf_eval(outcome, root_player, Layer::Second),
    }
}

/// OR: min of pn, sum of dpn. AND: sum of pn, min of dpn.
pub fn combine<I>(kind: NodeKind, children: I) -> Result<ProofPair, PnError>
where
    I: IntoIterator<Item = ProofPair>,
{
    let mut iter = children.into_iter();
    let first = iter.next().ok_or(PnError::EmptyChildren)?;
    Ok(match kind {
        NodeKind::Or => iter.fold(first, |acc, c| ProofPair {
            pn: acc.pn.min(c.pn),
            dpn: acc.dpn + c.dpn,
        }),
        NodeKind::And => iter.fold(first, |acc, c| ProofPair {
            pn: acc.pn + c.pn,
            dpn: acc.dpn.min(c.dpn),
        }),
    })
}

/// `combine` applied to each layer independently.
pub fn update_layered<I>(kind: NodeKind, children: I) -> Result<LayeredProof, PnError>
where
    I: IntoIterator<Item = LayeredProof>,
{
    let mut iter = children.into_iter();
    let first = iter.next().ok_or(PnError::EmptyChildren)?;
    let step = |acc: ProofPair, c: ProofPair| match kind {
        NodeKind::Or => ProofPair {
            pn: acc.pn.min(c.pn),
            dpn: acc.dpn + c.dpn,
        },
        NodeKind::And => ProofPair {
            pn: acc.pn + c.pn,
            dpn: acc.dpn.min(c.dpn),
        },
    };
    Ok(iter.fold(first, |acc, c| LayeredProof {
        first: step(acc.first, c.first),
        second: step(acc.second, c.second),
    }))
}
