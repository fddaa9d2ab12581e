use std::collections::HashSet;

use super::net::{Label, Marking, TransitionId};
use super::reachability::{explore, Caps, CompiledNet, Exhaustion};
use super::wfnet::WorkflowNet;

/// Why a WF-net is not sound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoundnessViolation {
    /// A reachable marking assigns more than one token to some place.
    NotSafe(Marking),
    /// A reachable marking from which the final marking cannot be reached.
    CannotComplete(Marking),
    /// A transition never enabled in any reachable marking.
    DeadTransition(TransitionId),
}

impl std::fmt::Display for SoundnessViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SoundnessViolation::NotSafe(m) => write!(f, "not safe: marking {m} is reachable"),
            SoundnessViolation::CannotComplete(m) => {
                write!(f, "final marking unreachable from {m}")
            }
            SoundnessViolation::DeadTransition(t) => write!(f, "transition {t} is dead"),
        }
    }
}

/// Three-valued soundness verdict. `Inconclusive` means a cap was hit before
/// any of the three conditions could be decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoundnessVerdict {
    Sound,
    Unsound(SoundnessViolation),
    Inconclusive(Exhaustion),
}

impl SoundnessVerdict {
    pub fn is_sound(&self) -> bool {
        matches!(self, SoundnessVerdict::Sound)
    }

    pub fn violation(&self) -> Option<&SoundnessViolation> {
        match self {
            SoundnessVerdict::Unsound(v) => Some(v),
            _ => None,
        }
    }
}

impl std::fmt::Display for SoundnessVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SoundnessVerdict::Sound => write!(f, "sound"),
            SoundnessVerdict::Unsound(v) => write!(f, "unsound: {v}"),
            SoundnessVerdict::Inconclusive(e) => write!(f, "inconclusive: {e}"),
        }
    }
}

/// Decides soundness of `wfnet` by exhaustive exploration from `[source]`:
/// safety first (reported on the first marking with any count above 1), then
/// the option to complete, then dead transitions.
pub fn check_soundness(wfnet: &WorkflowNet<Label>, caps: &Caps) -> SoundnessVerdict {
    check_soundness_generic(wfnet, caps)
}

/// Label-generic variant; soundness only depends on the net structure.
pub fn check_soundness_generic<L>(wfnet: &WorkflowNet<L>, caps: &Caps) -> SoundnessVerdict {
    let compiled = CompiledNet::new(wfnet.net());
    let initial = compiled.compact(&wfnet.initial_marking());
    let exploration = explore(&compiled, initial, caps, false);

    // An unsafe marking decides the verdict even if exploration was cut short
    // afterwards.
    if let Some(idx) = exploration.first_unsafe {
        return SoundnessVerdict::Unsound(SoundnessViolation::NotSafe(
            compiled.expand(&exploration.states[idx as usize]),
        ));
    }
    if let Some(exhaustion) = exploration.exhaustion {
        return SoundnessVerdict::Inconclusive(exhaustion);
    }

    // Option to complete: reverse search from [sink] restricted to the
    // forward-reachable set; every reachable marking must be covered.
    let final_marking = compiled.compact(&wfnet.final_marking());
    let mut covered: HashSet<u32> = HashSet::new();
    let mut stack: Vec<u32> = Vec::new();
    if let Some(&final_idx) = exploration.index.get(&final_marking) {
        covered.insert(final_idx);
        stack.push(final_idx);
    }
    while let Some(idx) = stack.pop() {
        let marking = &exploration.states[idx as usize];
        for t in 0..compiled.transitions.len() {
            // The reverse image under arc weight 1 is unique; restricting it
            // to the forward-reachable set keeps the search exact.
            if let Some(prev) = compiled.unfire_at(marking, t, caps.max_token_per_place) {
                if let Some(&prev_idx) = exploration.index.get(&prev) {
                    if covered.insert(prev_idx) {
                        stack.push(prev_idx);
                    }
                }
            }
        }
    }
    for (idx, marking) in exploration.states.iter().enumerate() {
        if !covered.contains(&(idx as u32)) {
            return SoundnessVerdict::Unsound(SoundnessViolation::CannotComplete(
                compiled.expand(marking),
            ));
        }
    }

    for (t, seen) in exploration.enabled_seen.iter().enumerate() {
        if !seen {
            return SoundnessVerdict::Unsound(SoundnessViolation::DeadTransition(
                compiled.transitions[t].clone(),
            ));
        }
    }

    SoundnessVerdict::Sound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petri::{LabeledNet, PlaceId};

    fn act(s: &str) -> Label {
        Label::activity(s).unwrap()
    }

    fn wf(net: LabeledNet<Label>, source: &str, sink: &str) -> WorkflowNet<Label> {
        WorkflowNet::new(net, PlaceId::new(source), PlaceId::new(sink)).unwrap()
    }

    #[test]
    fn single_transition_net_is_sound() {
        let mut net = LabeledNet::new();
        let pi = net.add_place("p_i").unwrap();
        let po = net.add_place("p_o").unwrap();
        let t = net.add_transition("t", act("a")).unwrap();
        net.add_arc_pt(&pi, &t).unwrap();
        net.add_arc_tp(&t, &po).unwrap();
        let verdict = check_soundness(&wf(net, "p_i", "p_o"), &Caps::default());
        assert_eq!(verdict, SoundnessVerdict::Sound);
    }

    #[test]
    fn choice_then_join_deadlocks() {
        // p_i -> a -> q1 | p_i -> b -> q2; {q1,q2} -> c -> p_o
        let mut net = LabeledNet::new();
        let pi = net.add_place("p_i").unwrap();
        let q1 = net.add_place("q1").unwrap();
        let q2 = net.add_place("q2").unwrap();
        let po = net.add_place("p_o").unwrap();
        let a = net.add_transition("a", act("a")).unwrap();
        let b = net.add_transition("b", act("b")).unwrap();
        let c = net.add_transition("c", act("c")).unwrap();
        net.add_arc_pt(&pi, &a).unwrap();
        net.add_arc_tp(&a, &q1).unwrap();
        net.add_arc_pt(&pi, &b).unwrap();
        net.add_arc_tp(&b, &q2).unwrap();
        net.add_arc_pt(&q1, &c).unwrap();
        net.add_arc_pt(&q2, &c).unwrap();
        net.add_arc_tp(&c, &po).unwrap();
        let wfnet = wf(net, "p_i", "p_o");
        let verdict = check_soundness(&wfnet, &Caps::default());
        // The final marking is unreachable from everywhere here, so the first
        // witness in discovery order is the initial marking itself.
        assert_eq!(
            verdict,
            SoundnessVerdict::Unsound(SoundnessViolation::CannotComplete(Marking::of(["p_i"])))
        );
        // The dead marking [q1] is reachable and stuck short of completion.
        let graph = crate::petri::explore_state_space(
            wfnet.net(),
            &wfnet.initial_marking(),
            &Caps::default(),
        );
        assert!(graph.contains(&Marking::of(["q1"])));
        assert!(wfnet.net().enabled(&Marking::of(["q1"])).is_empty());
    }

    #[test]
    fn unsafe_net_reported() {
        // t produces two tokens into q via two paths that can both be taken.
        let mut net = LabeledNet::new();
        let pi = net.add_place("p_i").unwrap();
        let q = net.add_place("q").unwrap();
        let r = net.add_place("r").unwrap();
        let po = net.add_place("p_o").unwrap();
        let a = net.add_transition("a", act("a")).unwrap();
        let b = net.add_transition("b", act("b")).unwrap();
        let c = net.add_transition("c", act("c")).unwrap();
        net.add_arc_pt(&pi, &a).unwrap();
        net.add_arc_tp(&a, &q).unwrap();
        net.add_arc_tp(&a, &r).unwrap();
        net.add_arc_pt(&r, &b).unwrap();
        net.add_arc_tp(&b, &q).unwrap();
        net.add_arc_pt(&q, &c).unwrap();
        net.add_arc_tp(&c, &po).unwrap();
        let verdict = check_soundness(&wf(net, "p_i", "p_o"), &Caps::default());
        match verdict {
            SoundnessVerdict::Unsound(SoundnessViolation::NotSafe(m)) => {
                assert_eq!(m.count(&PlaceId::new("q")), 2);
            }
            other => panic!("expected NotSafe, got {other:?}"),
        }
    }

    #[test]
    fn cap_yields_inconclusive() {
        let mut net = LabeledNet::new();
        let pi = net.add_place("p_i").unwrap();
        let q = net.add_place("q").unwrap();
        let po = net.add_place("p_o").unwrap();
        let a = net.add_transition("a", act("a")).unwrap();
        let b = net.add_transition("b", act("b")).unwrap();
        net.add_arc_pt(&pi, &a).unwrap();
        net.add_arc_tp(&a, &q).unwrap();
        net.add_arc_pt(&q, &b).unwrap();
        net.add_arc_tp(&b, &po).unwrap();
        let caps = Caps { max_states: 1, max_token_per_place: 8 };
        let verdict = check_soundness(&wf(net, "p_i", "p_o"), &caps);
        assert_eq!(verdict, SoundnessVerdict::Inconclusive(Exhaustion::MaxStates { limit: 1 }));
    }
}
