//! Acceptance conditions over transition systems, Zielonka trees, the alternating
//! cycle decomposition (ACD) and the Muller to parity transformations built on them.
//!
//! The crate is organised bottom-up:
//!
//! * [`system`] and [`condition`] hold the domain types (graphs, runs, acceptance
//!   conditions) together with validation, evaluation on loops and the product
//!   with a deterministic automaton.
//! * [`loops`] computes strongly connected components, alternating subloops and
//!   brute-force loop enumerations used as oracles.
//! * [`zielonka`] builds the Zielonka tree of a Muller condition and the parity
//!   automaton read off its branches.
//! * [`acd`] builds the alternating cycle decomposition of a system and the
//!   parity system obtained from it, with the projection morphism back.
//! * [`morphism`], [`relabel`] and [`games`] consume the decomposition.
//! * [`format`] and [`dot`] are the text and graphics surfaces.

pub mod acd;
pub mod condition;
pub mod dot;
mod error;
pub mod format;
pub mod games;
pub mod loops;
pub mod morphism;
pub mod relabel;
pub mod system;
pub mod tree;
pub mod zielonka;

use std::collections::BTreeSet;

pub use crate::acd::{Acd, AcdStats, AcdTransform, Polarity};
pub use crate::condition::{AcceptanceCondition, Pair};
pub use crate::error::{Error, Result};
pub use crate::morphism::Morphism;
pub use crate::system::{Edge, Player, Run, SystemBuilder, TransitionSystem};
pub use crate::zielonka::{ZielonkaTree, ZtAutomaton};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Colour = usize;

/// Sets of vertex, edge or colour ids. Ordered lexicographically, which is also
/// the tie-break used for canonical sibling order.
pub type IdSet = BTreeSet<usize>;

/// Budgets for the exponential parts of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest strongly connected component (in edges) that brute-force loop
    /// enumeration will accept.
    pub loop_cap: usize,
    /// Largest number of distinct sets a worklist exploration may visit.
    pub explore_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            loop_cap: 20,
            explore_cap: 200_000,
        }
    }
}

/// Canonical order for siblings: larger sets first, then lexicographic.
pub fn canonical_cmp(a: &IdSet, b: &IdSet) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}
