//! Concrete rule sets.

pub mod awari;
pub mod knightthrough;
pub mod loa;
pub mod tree;

pub use awari::{Awari, AwariMove, AwariPosition};
pub use knightthrough::{KnightMove, Knightthrough, KnightthroughPosition};
pub use loa::{Loa, LoaMove, LoaPosition, SimultaneousConnection};
pub use tree::{Label, TreeGame, TreeGameSpec, TreeNode, TreePosition};
