//! Workflow nets, process trees, and the translation between them.
//!
//! The centre piece is [`reduce::reduce_to_tree`]: an iterative pattern
//! reduction that decides whether a Workflow net is structurally equivalent
//! to a process tree and, if so, constructs a language-equal tree. Around it
//! sit the inverse translation ([`translate::tree_to_wfnet`]), a bounded
//! language-equivalence oracle ([`oracle`]), a seeded random tree generator
//! ([`generate`]) and the external formats ([`serial`]).

pub mod generate;
pub mod oracle;
pub mod petri;
pub mod reduce;
pub mod serial;
pub mod translate;
pub mod tree;

pub use petri::{Label, LabeledNet, Marking, PlaceId, TransitionId, WorkflowNet};
pub use tree::{Operator, ProcessTree, TraceSet};
