use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use indexmap::IndexMap;
use smallvec::SmallVec;

use super::net::{LabeledNet, Marking, PlaceId, TransitionId};

/// FNV-1a over the raw bytes; markings are short sorted u32 slices, for which
/// this is considerably faster than the default hasher.
#[derive(Default)]
pub(crate) struct FnvHasher(u64);

impl Hasher for FnvHasher {
    fn write(&mut self, bytes: &[u8]) {
        const PRIME: u64 = 0x100000001b3;
        let mut hash = if self.0 == 0 { 0xcbf29ce484222325 } else { self.0 };
        for &b in bytes {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(PRIME);
        }
        self.0 = hash;
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

pub(crate) type FastMap<K, V> = HashMap<K, V, BuildHasherDefault<FnvHasher>>;

/// Exploration caps. Safety violations surface as soon as a count of 2
/// appears during soundness checking, so the token cap only guards
/// exploration of nets that are not workflow-shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_states: usize,
    pub max_token_per_place: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_states: 1_000_000, max_token_per_place: 8 }
    }
}

/// Caps for language enumeration: visited search states and collected traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCaps {
    pub max_states: usize,
    pub max_traces: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps { max_states: 1_000_000, max_traces: 200_000 }
    }
}

/// Why an exploration stopped before it was complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exhaustion {
    MaxStates { limit: usize },
    TokenCap { place: PlaceId, limit: u32 },
}

impl std::fmt::Display for Exhaustion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exhaustion::MaxStates { limit } => write!(f, "state cap of {limit} markings exceeded"),
            Exhaustion::TokenCap { place, limit } => {
                write!(f, "place {place} exceeded the token cap of {limit}")
            }
        }
    }
}

/// Breadth-first reachability graph. `exhaustion` is `None` exactly when the
/// graph is complete.
#[derive(Debug, Clone)]
pub struct ReachabilityGraph {
    /// Markings in discovery order; index 0 is the initial marking.
    pub markings: Vec<Marking>,
    /// Edges `(from, fired transition, to)` over marking indices.
    pub edges: Vec<(usize, TransitionId, usize)>,
    pub exhaustion: Option<Exhaustion>,
}

impl ReachabilityGraph {
    pub fn is_complete(&self) -> bool {
        self.exhaustion.is_none()
    }

    pub fn contains(&self, marking: &Marking) -> bool {
        self.markings.iter().any(|m| m == marking)
    }
}

/// A marking over place indices, sorted, one entry per token.
pub(crate) type CompactMarking = SmallVec<[u32; 8]>;

/// Index-based view of a net for state-space work. Public `Marking`s and ids
/// are translated at the boundary only.
pub(crate) struct CompiledNet {
    pub places: Vec<PlaceId>,
    pub transitions: Vec<TransitionId>,
    /// Per transition: sorted pre-place indices.
    pub pre: Vec<Vec<u32>>,
    /// Per transition: sorted post-place indices.
    pub post: Vec<Vec<u32>>,
    place_index: IndexMap<PlaceId, u32>,
}

impl CompiledNet {
    pub fn new<L>(net: &LabeledNet<L>) -> Self {
        let places: Vec<PlaceId> = net.places().cloned().collect();
        let place_index: IndexMap<PlaceId, u32> =
            places.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let transitions: Vec<TransitionId> = net.transitions().cloned().collect();
        let mut pre = Vec::with_capacity(transitions.len());
        let mut post = Vec::with_capacity(transitions.len());
        for t in &transitions {
            let mut pre_t: Vec<u32> =
                net.transition_preset(t).unwrap().iter().map(|p| place_index[p]).collect();
            pre_t.sort_unstable();
            pre.push(pre_t);
            let mut post_t: Vec<u32> =
                net.transition_postset(t).unwrap().iter().map(|p| place_index[p]).collect();
            post_t.sort_unstable();
            post.push(post_t);
        }
        CompiledNet { places, transitions, pre, post, place_index }
    }

    pub fn compact(&self, marking: &Marking) -> CompactMarking {
        let mut out = CompactMarking::new();
        for (p, c) in marking.iter() {
            let idx = self.place_index[p];
            for _ in 0..c {
                out.push(idx);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn expand(&self, marking: &CompactMarking) -> Marking {
        let mut out = Marking::empty();
        for &i in marking {
            out.add(self.places[i as usize].clone(), 1);
        }
        out
    }

    pub fn enabled_at(&self, marking: &CompactMarking, t: usize) -> bool {
        // Pre-places are distinct (arc multiplicity 1), so presence suffices.
        self.pre[t].iter().all(|p| marking.binary_search(p).is_ok())
    }

    /// Fires transition `t`; the caller must have checked enabledness.
    pub fn fire_at(&self, marking: &CompactMarking, t: usize) -> CompactMarking {
        let mut next = marking.clone();
        for p in &self.pre[t] {
            let pos = next.binary_search(p).expect("fired disabled transition");
            next.remove(pos);
        }
        for p in &self.post[t] {
            let pos = next.binary_search(p).unwrap_or_else(|e| e);
            next.insert(pos, *p);
        }
        next
    }

    /// Reverse firing: markings `m` with `fire(m, t) = marking`, if the arc
    /// counts admit one within the token cap.
    pub fn unfire_at(
        &self,
        marking: &CompactMarking,
        t: usize,
        max_token_per_place: u32,
    ) -> Option<CompactMarking> {
        let mut prev = marking.clone();
        for p in &self.post[t] {
            let pos = prev.binary_search(p).ok()?;
            prev.remove(pos);
        }
        for p in &self.pre[t] {
            let pos = prev.binary_search(p).unwrap_or_else(|e| e);
            prev.insert(pos, *p);
            let count = count_of(&prev, *p);
            if count > max_token_per_place {
                return None;
            }
        }
        Some(prev)
    }
}

pub(crate) fn count_of(marking: &CompactMarking, place: u32) -> u32 {
    marking.iter().filter(|&&p| p == place).count() as u32
}

/// Result of the raw breadth-first exploration shared by the public graph
/// builder, the soundness checker and the language enumerator.
pub(crate) struct Exploration {
    pub states: Vec<CompactMarking>,
    pub index: FastMap<CompactMarking, u32>,
    pub edges: Vec<(u32, u32, u32)>,
    pub exhaustion: Option<Exhaustion>,
    /// Transitions observed enabled at some reachable marking.
    pub enabled_seen: Vec<bool>,
    /// First marking (in discovery order) with a place count above 1, if any.
    pub first_unsafe: Option<u32>,
}

pub(crate) fn explore(
    compiled: &CompiledNet,
    initial: CompactMarking,
    caps: &Caps,
    record_edges: bool,
) -> Exploration {
    let mut states: Vec<CompactMarking> = vec![initial.clone()];
    let mut index: FastMap<CompactMarking, u32> = FastMap::default();
    index.insert(initial, 0);
    let mut edges = Vec::new();
    let mut enabled_seen = vec![false; compiled.transitions.len()];
    let mut first_unsafe = None;
    let mut exhaustion = None;

    if states[0].windows(2).any(|w| w[0] == w[1]) {
        first_unsafe = Some(0);
    }

    let mut cursor = 0usize;
    'bfs: while cursor < states.len() {
        let current = states[cursor].clone();
        for t in 0..compiled.transitions.len() {
            if !compiled.enabled_at(&current, t) {
                continue;
            }
            enabled_seen[t] = true;
            let next = compiled.fire_at(&current, t);
            for p in &compiled.post[t] {
                let count = count_of(&next, *p);
                if count > caps.max_token_per_place {
                    exhaustion = Some(Exhaustion::TokenCap {
                        place: compiled.places[*p as usize].clone(),
                        limit: caps.max_token_per_place,
                    });
                    break 'bfs;
                }
            }
            let next_idx = match index.get(&next) {
                Some(&idx) => idx,
                None => {
                    if states.len() >= caps.max_states {
                        exhaustion = Some(Exhaustion::MaxStates { limit: caps.max_states });
                        break 'bfs;
                    }
                    let idx = states.len() as u32;
                    if first_unsafe.is_none() && next.windows(2).any(|w| w[0] == w[1]) {
                        first_unsafe = Some(idx);
                    }
                    states.push(next.clone());
                    index.insert(next, idx);
                    idx
                }
            };
            if record_edges {
                edges.push((cursor as u32, t as u32, next_idx));
            }
        }
        cursor += 1;
    }

    Exploration { states, index, edges, exhaustion, enabled_seen, first_unsafe }
}

/// Breadth-first state space of `net` from `initial`, stopping with an
/// exhaustion report when a cap is exceeded.
pub fn explore_state_space<L>(
    net: &LabeledNet<L>,
    initial: &Marking,
    caps: &Caps,
) -> ReachabilityGraph {
    let compiled = CompiledNet::new(net);
    let exploration = explore(&compiled, compiled.compact(initial), caps, true);
    ReachabilityGraph {
        markings: exploration.states.iter().map(|m| compiled.expand(m)).collect(),
        edges: exploration
            .edges
            .into_iter()
            .map(|(a, t, b)| (a as usize, compiled.transitions[t as usize].clone(), b as usize))
            .collect(),
        exhaustion: exploration.exhaustion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petri::Label;

    fn act(s: &str) -> Label {
        Label::activity(s).unwrap()
    }

    #[test]
    fn single_transition_net_has_two_markings() {
        let mut net = LabeledNet::new();
        let pi = net.add_place("p_i").unwrap();
        let po = net.add_place("p_o").unwrap();
        let t = net.add_transition("t", act("a")).unwrap();
        net.add_arc_pt(&pi, &t).unwrap();
        net.add_arc_tp(&t, &po).unwrap();
        let graph = explore_state_space(&net, &Marking::of(["p_i"]), &Caps::default());
        assert!(graph.is_complete());
        assert_eq!(graph.markings.len(), 2);
        assert!(graph.contains(&Marking::of(["p_o"])));
        assert_eq!(graph.edges, vec![(0, t, 1)]);
    }

    #[test]
    fn token_cap_reports_overmarked_place() {
        // p -> t -> {p, q}: q grows without bound.
        let mut net = LabeledNet::new();
        let p = net.add_place("p").unwrap();
        let q = net.add_place("q").unwrap();
        let t = net.add_transition("t", act("a")).unwrap();
        net.add_arc_pt(&p, &t).unwrap();
        net.add_arc_tp(&t, &p).unwrap();
        net.add_arc_tp(&t, &q).unwrap();
        let caps = Caps { max_states: 1000, max_token_per_place: 1 };
        let graph = explore_state_space(&net, &Marking::of(["p"]), &caps);
        assert_eq!(graph.exhaustion, Some(Exhaustion::TokenCap { place: q, limit: 1 }));
    }

    #[test]
    fn state_cap_reports_exhaustion() {
        let mut net = LabeledNet::new();
        let p = net.add_place("p").unwrap();
        let q = net.add_place("q").unwrap();
        let r = net.add_place("r").unwrap();
        let t1 = net.add_transition("t1", act("a")).unwrap();
        let t2 = net.add_transition("t2", act("b")).unwrap();
        net.add_arc_pt(&p, &t1).unwrap();
        net.add_arc_tp(&t1, &q).unwrap();
        net.add_arc_pt(&q, &t2).unwrap();
        net.add_arc_tp(&t2, &r).unwrap();
        let caps = Caps { max_states: 2, max_token_per_place: 8 };
        let graph = explore_state_space(&net, &Marking::of(["p"]), &caps);
        assert_eq!(graph.exhaustion, Some(Exhaustion::MaxStates { limit: 2 }));
    }
}
