//! Pattern reduction: detect operator fragments (choice, sequence,
//! concurrency, loop) in a tree-labelled working net and replace each by a
//! single transition carrying the combined tree, until one transition remains
//! or no pattern matches.

mod patterns;

pub use patterns::{
    find_and_pattern, find_loop_pattern, find_seq_pattern, find_xor_pattern, PatternMatch,
};

use indexmap::IndexSet;
use thiserror::Error;

use crate::petri::{Label, LabeledNet, PlaceId, TransitionId, WorkflowNet};
use crate::tree::{canonicalize, Operator, ProcessTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    /// The net changed since the match was detected.
    #[error("stale match: the net changed since the pattern was detected")]
    StaleMatch,
}

/// One applied reduction: the match, the fresh transition with its combined
/// label, and the places the reduction deleted (non-empty only for sequences).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub pattern: PatternMatch,
    pub new_transition: TransitionId,
    pub new_label: ProcessTree,
    pub removed_places: IndexSet<PlaceId>,
}

/// Result of [`reduce_to_tree`]: a canonical tree with the step log, or the
/// irreducible residual working net.
#[derive(Debug, Clone)]
pub enum ReductionOutcome {
    Tree { tree: ProcessTree, steps: Vec<ReductionStep> },
    Irreducible { residual: WorkflowNet<ProcessTree>, steps: Vec<ReductionStep> },
}

impl ReductionOutcome {
    pub fn steps(&self) -> &[ReductionStep] {
        match self {
            ReductionOutcome::Tree { steps, .. } => steps,
            ReductionOutcome::Irreducible { steps, .. } => steps,
        }
    }

    pub fn tree(&self) -> Option<&ProcessTree> {
        match self {
            ReductionOutcome::Tree { tree, .. } => Some(tree),
            ReductionOutcome::Irreducible { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReduceOptions {
    /// Enforce the two extra concurrency conditions (shared producer pre-sets
    /// and shared consumer post-sets). Off by default: the running example
    /// itself violates a literal reading of them.
    pub strict_and: bool,
}

/// Applies `pattern` to `net`: members removed, a fresh transition labelled
/// `⊕(member labels)` inserted, arcs inherited per operator kind, and for
/// sequences the intermediate places deleted. Fails with [`ReduceError::StaleMatch`]
/// if any member's surroundings differ from the detected snapshot.
pub fn apply_reduction(
    net: &LabeledNet<ProcessTree>,
    pattern: &PatternMatch,
) -> Result<(LabeledNet<ProcessTree>, ReductionStep), ReduceError> {
    apply_with_label(net, pattern, None)
}

/// Like [`apply_reduction`] but with a caller-provided transition id and
/// label, used to replay (possibly tampered) step logs faithfully.
pub(crate) fn apply_with_label(
    net: &LabeledNet<ProcessTree>,
    pattern: &PatternMatch,
    replay: Option<(&TransitionId, &ProcessTree)>,
) -> Result<(LabeledNet<ProcessTree>, ReductionStep), ReduceError> {
    for (member, (pre, post)) in pattern.members.iter().zip(&pattern.member_boundaries) {
        if !net.contains_transition(member) {
            return Err(ReduceError::StaleMatch);
        }
        if net.transition_preset(member).unwrap() != pre
            || net.transition_postset(member).unwrap() != post
        {
            return Err(ReduceError::StaleMatch);
        }
    }

    let labels: Vec<ProcessTree> = pattern
        .members
        .iter()
        .map(|m| net.label(m).unwrap().clone())
        .collect();
    let new_label = match replay {
        Some((_, label)) => label.clone(),
        None => ProcessTree::Operator(pattern.kind, labels),
    };
    let new_transition = match replay {
        Some((id, _)) => id.clone(),
        None => fresh_transition_id(net),
    };

    let mut next = net.clone();
    for member in &pattern.members {
        next.remove_transition(member).unwrap();
    }

    // Only sequence reductions delete places: the members' intermediate ones.
    let mut removed_places = IndexSet::new();
    if pattern.kind == Operator::Seq {
        let boundaries = &pattern.member_boundaries;
        for (pre, _) in &boundaries[1..] {
            removed_places.extend(pre.iter().cloned());
        }
        for p in &removed_places {
            next.remove_place(p).unwrap();
        }
    }

    let (inherit_pre, inherit_post): (IndexSet<PlaceId>, IndexSet<PlaceId>) = match pattern.kind {
        // First member's pre-set, last member's post-set.
        Operator::Seq => (
            pattern.member_boundaries.first().unwrap().0.clone(),
            pattern.member_boundaries.last().unwrap().1.clone(),
        ),
        // Union of the members' pre- and post-sets.
        Operator::Xor | Operator::And => {
            let mut pre = IndexSet::new();
            let mut post = IndexSet::new();
            for (p, q) in &pattern.member_boundaries {
                pre.extend(p.iter().cloned());
                post.extend(q.iter().cloned());
            }
            (pre, post)
        }
        // The do-part's boundary.
        Operator::Loop => pattern.member_boundaries[0].clone(),
    };

    next.add_transition(new_transition.clone(), new_label.clone())
        .map_err(|_| ReduceError::StaleMatch)?;
    for p in &inherit_pre {
        next.add_arc_pt(p, &new_transition).unwrap();
    }
    for p in &inherit_post {
        next.add_arc_tp(&new_transition, p).unwrap();
    }

    let step = ReductionStep { pattern: pattern.clone(), new_transition, new_label, removed_places };
    Ok((next, step))
}

fn fresh_transition_id(net: &LabeledNet<ProcessTree>) -> TransitionId {
    (0..)
        .map(|k| TransitionId::new(format!("n{k}")))
        .find(|id| !net.contains_transition(id))
        .unwrap()
}

/// Lifts the plain labels of a WF-net to singleton trees.
pub fn lift(wfnet: &WorkflowNet<Label>) -> LabeledNet<ProcessTree> {
    wfnet.net().map_labels(|_, label| ProcessTree::Leaf(label.clone()))
}

/// Runs the reduction loop: detectors are scanned in the fixed order choice,
/// sequence, concurrency, loop, transitions in net order, and the first match
/// is applied; on a fixpoint with exactly one transition wired source-to-sink
/// the canonical tree is returned, otherwise the residual net.
pub fn reduce_to_tree(wfnet: &WorkflowNet<Label>, options: &ReduceOptions) -> ReductionOutcome {
    let mut net = lift(wfnet);
    let source = wfnet.source().clone();
    let sink = wfnet.sink().clone();
    let transition_budget = net.transition_count();
    let mut steps: Vec<ReductionStep> = Vec::new();

    loop {
        let found = find_xor_pattern(&net)
            .or_else(|| find_seq_pattern(&net))
            .or_else(|| find_and_pattern(&net, options.strict_and))
            .or_else(|| find_loop_pattern(&net, &source));
        let Some(pattern) = found else { break };
        let (next, step) =
            apply_reduction(&net, &pattern).expect("a freshly detected match cannot be stale");
        net = next;
        steps.push(step);
        // Each binary reduction removes exactly one transition net-wide.
        assert!(
            steps.len() < transition_budget,
            "reduction must terminate within |T| - 1 steps"
        );
    }

    if net.transition_count() == 1 && net.place_count() == 2 {
        let only = net.transitions().next().unwrap().clone();
        let pre = net.transition_preset(&only).unwrap();
        let post = net.transition_postset(&only).unwrap();
        if pre.len() == 1 && pre[0] == source && post.len() == 1 && post[0] == sink {
            let tree = canonicalize(net.label(&only).unwrap());
            return ReductionOutcome::Tree { tree, steps };
        }
    }

    let residual = WorkflowNet::new(net, source, sink)
        .expect("pattern reduction preserves the workflow-net conditions");
    ReductionOutcome::Irreducible { residual, steps }
}
