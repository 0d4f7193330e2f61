//! Reconfiguration of induced subgraph isomorphisms.
//!
//! A host graph `G`, a pattern `H` and two vertex sets of `G` that each
//! induce a copy of `H`: can one be turned into the other by moving `k`
//! tokens at a time (jumping anywhere, or sliding along edges) so that every
//! intermediate set still induces `H`? Independent-set reconfiguration is
//! the case where `H` has no edges.
//!
//! The crate has an exhaustive solver ([`bruteforce`]), a solver that runs in
//! time polynomial for fixed `mu = |V(H)| - k` ([`xp`]), the hardness
//! gadgets ([`reductions`]), conversion of multi-token sliding to single
//! steps on even-hole-free graphs ([`rules::kts_sequence_to_ts`]), and
//! desk-scale graph-class checks ([`analysis`]).

pub mod analysis;
pub mod bits;
pub mod bruteforce;
pub mod error;
pub mod graph;
pub mod io;
pub mod iso;
pub mod reductions;
pub mod rules;
pub mod xp;

pub use error::{Error, Result};
pub use graph::{Graph, Relabeling, Vertex, VertexSet};
pub use iso::{BacktrackOracle, IsisOracle};
pub use rules::{ReconfigInstance, ReconfigSequence, Rule, RuleKind, Verification};
