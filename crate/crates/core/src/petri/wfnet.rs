use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::net::{LabeledNet, PlaceId, TransitionId};

/// A violation of one of the Workflow-net conditions: a unique source place,
/// a unique sink place, and every node on a path from source to sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WfViolation {
    UnknownSource(PlaceId),
    UnknownSink(PlaceId),
    SourceEqualsSink(PlaceId),
    SourceHasPreset(PlaceId),
    SinkHasPostset(PlaceId),
    /// Some place other than the declared source has an empty pre-set.
    ExtraSourcePlace(PlaceId),
    /// Some place other than the declared sink has an empty post-set.
    ExtraSinkPlace(PlaceId),
    PlaceNotOnPath(PlaceId),
    TransitionNotOnPath(TransitionId),
}

impl fmt::Display for WfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WfViolation::UnknownSource(p) => write!(f, "declared source {p} is not a place"),
            WfViolation::UnknownSink(p) => write!(f, "declared sink {p} is not a place"),
            WfViolation::SourceEqualsSink(p) => write!(f, "source and sink are the same place {p}"),
            WfViolation::SourceHasPreset(p) => write!(f, "source {p} has a non-empty pre-set"),
            WfViolation::SinkHasPostset(p) => write!(f, "sink {p} has a non-empty post-set"),
            WfViolation::ExtraSourcePlace(p) => {
                write!(f, "place {p} also has an empty pre-set; the source is not unique")
            }
            WfViolation::ExtraSinkPlace(p) => {
                write!(f, "place {p} also has an empty post-set; the sink is not unique")
            }
            WfViolation::PlaceNotOnPath(p) => {
                write!(f, "place {p} is not on a path from source to sink")
            }
            WfViolation::TransitionNotOnPath(t) => {
                write!(f, "transition {t} is not on a path from source to sink")
            }
        }
    }
}

/// Outcome of [`validate_workflow_net`]; `violations` is empty iff valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WfVerdict {
    pub violations: Vec<WfViolation>,
}

impl WfVerdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a workflow net: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct NotAWorkflowNet {
    pub violations: Vec<WfViolation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Place(usize),
    Transition(usize),
}

/// Checks the Workflow-net conditions for `net` with the declared `source`
/// and `sink`. The path condition is implemented as: every node is
/// forward-reachable from the source and backward-reachable from the sink in
/// the arc graph.
pub fn validate_workflow_net<L>(
    net: &LabeledNet<L>,
    source: &PlaceId,
    sink: &PlaceId,
) -> WfVerdict {
    let mut violations = Vec::new();
    if !net.contains_place(source) {
        violations.push(WfViolation::UnknownSource(source.clone()));
    }
    if !net.contains_place(sink) {
        violations.push(WfViolation::UnknownSink(sink.clone()));
    }
    if !violations.is_empty() {
        return WfVerdict { violations };
    }
    if source == sink {
        violations.push(WfViolation::SourceEqualsSink(source.clone()));
        return WfVerdict { violations };
    }

    if !net.place_preset(source).unwrap().is_empty() {
        violations.push(WfViolation::SourceHasPreset(source.clone()));
    }
    if !net.place_postset(sink).unwrap().is_empty() {
        violations.push(WfViolation::SinkHasPostset(sink.clone()));
    }
    for p in net.places() {
        if p != source && net.place_preset(p).unwrap().is_empty() {
            violations.push(WfViolation::ExtraSourcePlace(p.clone()));
        }
        if p != sink && net.place_postset(p).unwrap().is_empty() {
            violations.push(WfViolation::ExtraSinkPlace(p.clone()));
        }
    }

    let forward = reach(net, source, Direction::Forward);
    let backward = reach(net, sink, Direction::Backward);
    for (i, p) in net.places().enumerate() {
        let node = Node::Place(i);
        if !forward.contains(&node) || !backward.contains(&node) {
            violations.push(WfViolation::PlaceNotOnPath(p.clone()));
        }
    }
    for (i, t) in net.transitions().enumerate() {
        let node = Node::Transition(i);
        if !forward.contains(&node) || !backward.contains(&node) {
            violations.push(WfViolation::TransitionNotOnPath(t.clone()));
        }
    }

    WfVerdict { violations }
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Backward,
}

fn reach<L>(net: &LabeledNet<L>, start: &PlaceId, dir: Direction) -> HashSet<Node> {
    let place_idx: indexmap::IndexMap<&PlaceId, usize> =
        net.places().enumerate().map(|(i, p)| (p, i)).collect();
    let trans_idx: indexmap::IndexMap<&TransitionId, usize> =
        net.transitions().enumerate().map(|(i, t)| (t, i)).collect();

    let mut seen = HashSet::new();
    let mut stack = vec![Node::Place(place_idx[start])];
    seen.insert(stack[0]);
    let places: Vec<&PlaceId> = net.places().collect();
    let transitions: Vec<&TransitionId> = net.transitions().collect();
    while let Some(node) = stack.pop() {
        match node {
            Node::Place(i) => {
                let p = places[i];
                let next = match dir {
                    Direction::Forward => net.place_postset(p).unwrap(),
                    Direction::Backward => net.place_preset(p).unwrap(),
                };
                for t in next {
                    let n = Node::Transition(trans_idx[t]);
                    if seen.insert(n) {
                        stack.push(n);
                    }
                }
            }
            Node::Transition(i) => {
                let t = transitions[i];
                let next = match dir {
                    Direction::Forward => net.transition_postset(t).unwrap(),
                    Direction::Backward => net.transition_preset(t).unwrap(),
                };
                for p in next {
                    let n = Node::Place(place_idx[p]);
                    if seen.insert(n) {
                        stack.push(n);
                    }
                }
            }
        }
    }
    seen
}

/// A labelled net with designated source and sink places, validated at
/// construction, so a value of this type is always a structural WF-net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkflowNet<L> {
    net: LabeledNet<L>,
    source: PlaceId,
    sink: PlaceId,
}

impl<L> WorkflowNet<L> {
    pub fn new(net: LabeledNet<L>, source: PlaceId, sink: PlaceId) -> Result<Self, NotAWorkflowNet> {
        let verdict = validate_workflow_net(&net, &source, &sink);
        if verdict.is_valid() {
            Ok(WorkflowNet { net, source, sink })
        } else {
            Err(NotAWorkflowNet { violations: verdict.violations })
        }
    }

    pub fn net(&self) -> &LabeledNet<L> {
        &self.net
    }

    pub fn source(&self) -> &PlaceId {
        &self.source
    }

    pub fn sink(&self) -> &PlaceId {
        &self.sink
    }

    pub fn initial_marking(&self) -> super::Marking {
        super::Marking::of([self.source.clone()])
    }

    pub fn final_marking(&self) -> super::Marking {
        super::Marking::of([self.sink.clone()])
    }

    pub fn into_parts(self) -> (LabeledNet<L>, PlaceId, PlaceId) {
        (self.net, self.source, self.sink)
    }
}
