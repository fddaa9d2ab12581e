use std::collections::HashSet;

use indexmap::IndexSet;

use crate::petri::{LabeledNet, Marking, PlaceId, TransitionId};
use crate::tree::Operator;

/// A detected operator pattern: the member transitions in reduction order,
/// the places of the matched fragment, and the fragment's boundary markings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatch {
    pub kind: Operator,
    pub members: Vec<TransitionId>,
    pub fragment_places: IndexSet<PlaceId>,
    pub initial_boundary: Marking,
    pub final_boundary: Marking,
    /// Pre/post snapshot per member, used to detect stale matches.
    pub(crate) member_boundaries: Vec<(IndexSet<PlaceId>, IndexSet<PlaceId>)>,
}

fn marking_of(places: &IndexSet<PlaceId>) -> Marking {
    Marking::of(places.iter().cloned())
}

/// Candidate partners sorted by net transition order, the scan order used by
/// every detector.
fn by_net_order<L>(
    net: &LabeledNet<L>,
    candidates: impl IntoIterator<Item = TransitionId>,
) -> Vec<TransitionId> {
    let mut seen = IndexSet::new();
    for t in candidates {
        seen.insert(t);
    }
    let mut out: Vec<TransitionId> = seen.into_iter().collect();
    out.sort_by_key(|t| net.transition_position(t));
    out
}

/// First pair `(t1, t2)` where `t1` uniquely and exclusively enables `t2`:
/// `t1• = •t2`, every intermediate place has `•p = {t1}` and `p• = {t2}`, and
/// the post-sets are disjoint (no self-loop).
pub fn find_seq_pattern<L>(net: &LabeledNet<L>) -> Option<PatternMatch> {
    for t1 in net.transitions() {
        let post1 = net.transition_postset(t1).unwrap();
        if post1.is_empty() {
            continue;
        }
        let consumers = net.place_postset(&post1[0]).unwrap();
        if consumers.len() != 1 {
            continue;
        }
        let t2 = &consumers[0];
        if t2 == t1 {
            continue;
        }
        let pre2 = net.transition_preset(t2).unwrap();
        if pre2 != post1 {
            continue;
        }
        let unique = post1.iter().all(|p| {
            let producers = net.place_preset(p).unwrap();
            let consumers = net.place_postset(p).unwrap();
            producers.len() == 1
                && &producers[0] == t1
                && consumers.len() == 1
                && &consumers[0] == t2
        });
        if !unique {
            continue;
        }
        let post2 = net.transition_postset(t2).unwrap();
        if post1.iter().any(|p| post2.contains(p)) {
            continue;
        }
        let pre1 = net.transition_preset(t1).unwrap();
        let mut fragment_places = pre1.clone();
        fragment_places.extend(post1.iter().cloned());
        fragment_places.extend(post2.iter().cloned());
        return Some(PatternMatch {
            kind: Operator::Seq,
            members: vec![t1.clone(), t2.clone()],
            fragment_places,
            initial_boundary: marking_of(pre1),
            final_boundary: marking_of(post2),
            member_boundaries: vec![(pre1.clone(), post1.clone()), (pre2.clone(), post2.clone())],
        });
    }
    None
}

/// First pair with equal pre-sets, equal post-sets and no self-loop.
pub fn find_xor_pattern<L>(net: &LabeledNet<L>) -> Option<PatternMatch> {
    for t1 in net.transitions() {
        let pre1 = net.transition_preset(t1).unwrap();
        let post1 = net.transition_postset(t1).unwrap();
        if pre1.is_empty() || post1.is_empty() || pre1 == post1 {
            continue;
        }
        let candidates = by_net_order(net, net.place_postset(&pre1[0]).unwrap().iter().cloned());
        for t2 in &candidates {
            if t2 == t1 {
                continue;
            }
            let pre2 = net.transition_preset(t2).unwrap();
            let post2 = net.transition_postset(t2).unwrap();
            if pre2 != pre1 || post2 != post1 {
                continue;
            }
            let mut fragment_places = pre1.clone();
            fragment_places.extend(post1.iter().cloned());
            return Some(PatternMatch {
                kind: Operator::Xor,
                members: vec![t1.clone(), t2.clone()],
                fragment_places,
                initial_boundary: marking_of(pre1),
                final_boundary: marking_of(post1),
                member_boundaries: vec![
                    (pre1.clone(), post1.clone()),
                    (pre2.clone(), post2.clone()),
                ],
            });
        }
    }
    None
}

/// First pair satisfying the concurrency conditions: disjoint pre- and
/// post-sets uniquely wired to their member, all pre-set places sharing one
/// producer set that excludes the members, and symmetrically for post-sets.
/// With `strict` the producers must additionally share their own pre-sets and
/// the consumers their own post-sets.
pub fn find_and_pattern<L>(net: &LabeledNet<L>, strict: bool) -> Option<PatternMatch> {
    for t1 in net.transitions() {
        let pre1 = net.transition_preset(t1).unwrap();
        let post1 = net.transition_postset(t1).unwrap();
        if pre1.is_empty() || post1.is_empty() {
            continue;
        }
        if !exclusively_wired(net, t1, pre1, post1) {
            continue;
        }
        let producers = net.place_preset(&pre1[0]).unwrap().clone();
        if !pre1.iter().all(|p| net.place_preset(p).unwrap() == &producers) {
            continue;
        }
        if producers.contains(t1) {
            continue;
        }
        let consumers = net.place_postset(&post1[0]).unwrap().clone();
        if !post1.iter().all(|p| net.place_postset(p).unwrap() == &consumers) {
            continue;
        }
        if consumers.contains(t1) {
            continue;
        }

        // Partner pre-set places must share the same producers, so candidates
        // are the consumers of the producers' output places.
        let mut raw: Vec<TransitionId> = Vec::new();
        if producers.is_empty() {
            raw.extend(net.transitions().cloned());
        } else {
            for u in &producers {
                for p in net.transition_postset(u).unwrap() {
                    raw.extend(net.place_postset(p).unwrap().iter().cloned());
                }
            }
        }
        for t2 in &by_net_order(net, raw) {
            if t2 == t1 {
                continue;
            }
            let pre2 = net.transition_preset(t2).unwrap();
            let post2 = net.transition_postset(t2).unwrap();
            if pre2.is_empty() || post2.is_empty() {
                continue;
            }
            if pre1.iter().any(|p| pre2.contains(p)) || post1.iter().any(|p| post2.contains(p)) {
                continue;
            }
            if !exclusively_wired(net, t2, pre2, post2) {
                continue;
            }
            if !pre2.iter().all(|p| net.place_preset(p).unwrap() == &producers) {
                continue;
            }
            if !post2.iter().all(|p| net.place_postset(p).unwrap() == &consumers) {
                continue;
            }
            if producers.contains(t2) || consumers.contains(t2) {
                continue;
            }
            if strict {
                let enabler_presets_equal = producers.iter().all(|u| {
                    net.transition_preset(u).unwrap()
                        == net.transition_preset(&producers[0]).unwrap()
                });
                let consumer_postsets_equal = consumers.iter().all(|d| {
                    net.transition_postset(d).unwrap()
                        == net.transition_postset(&consumers[0]).unwrap()
                });
                if !enabler_presets_equal || !consumer_postsets_equal {
                    continue;
                }
            }
            let mut initial = pre1.clone();
            initial.extend(pre2.iter().cloned());
            let mut final_ = post1.clone();
            final_.extend(post2.iter().cloned());
            let mut fragment_places = initial.clone();
            fragment_places.extend(final_.iter().cloned());
            return Some(PatternMatch {
                kind: Operator::And,
                members: vec![t1.clone(), t2.clone()],
                fragment_places,
                initial_boundary: marking_of(&initial),
                final_boundary: marking_of(&final_),
                member_boundaries: vec![
                    (pre1.clone(), post1.clone()),
                    (pre2.clone(), post2.clone()),
                ],
            });
        }
    }
    None
}

/// Pre-set places feed only `t`, post-set places are fed only by `t`.
fn exclusively_wired<L>(
    net: &LabeledNet<L>,
    t: &TransitionId,
    pre: &IndexSet<PlaceId>,
    post: &IndexSet<PlaceId>,
) -> bool {
    pre.iter().all(|p| {
        let consumers = net.place_postset(p).unwrap();
        consumers.len() == 1 && &consumers[0] == t
    }) && post.iter().all(|p| {
        let producers = net.place_preset(p).unwrap();
        producers.len() == 1 && &producers[0] == t
    })
}

/// First pair with `•t1 = t2•`, `t1• = •t2` and disjoint pre/post sets. The
/// member order fixes the do-part: the transition whose pre-set stays
/// reachable from the source when both members are removed from the arc
/// graph; ties keep scan order.
///
/// The do-part must additionally be wired exclusively: its pre-set places
/// feed only it and its post-set places are fed only by it. Without this a
/// half-reduced choice of do-alternatives matches as a loop and the
/// reduction changes the language.
pub fn find_loop_pattern<L>(net: &LabeledNet<L>, source: &PlaceId) -> Option<PatternMatch> {
    for t1 in net.transitions() {
        let pre1 = net.transition_preset(t1).unwrap();
        let post1 = net.transition_postset(t1).unwrap();
        if pre1.is_empty() || post1.is_empty() {
            continue;
        }
        if pre1.iter().any(|p| post1.contains(p)) {
            continue;
        }
        let candidates = by_net_order(net, net.place_preset(&pre1[0]).unwrap().iter().cloned());
        for t2 in &candidates {
            if t2 == t1 {
                continue;
            }
            let pre2 = net.transition_preset(t2).unwrap();
            let post2 = net.transition_postset(t2).unwrap();
            if post2 != pre1 || pre2 != post1 {
                continue;
            }
            let reachable = places_reachable_excluding(net, source, &[t1.clone(), t2.clone()]);
            let t1_entered = pre1.iter().any(|p| reachable.contains(p));
            let t2_entered = pre2.iter().any(|p| reachable.contains(p));
            let (do_part, redo_part) = if t2_entered && !t1_entered {
                (t2.clone(), t1.clone())
            } else {
                (t1.clone(), t2.clone())
            };
            let do_pre = net.transition_preset(&do_part).unwrap().clone();
            let do_post = net.transition_postset(&do_part).unwrap().clone();
            let do_exclusive = do_pre.iter().all(|p| {
                let consumers = net.place_postset(p).unwrap();
                consumers.len() == 1 && consumers[0] == do_part
            }) && do_post.iter().all(|p| {
                let producers = net.place_preset(p).unwrap();
                producers.len() == 1 && producers[0] == do_part
            });
            if !do_exclusive {
                continue;
            }
            let redo_pre = net.transition_preset(&redo_part).unwrap().clone();
            let redo_post = net.transition_postset(&redo_part).unwrap().clone();
            let mut fragment_places = do_pre.clone();
            fragment_places.extend(do_post.iter().cloned());
            return Some(PatternMatch {
                kind: Operator::Loop,
                members: vec![do_part, redo_part],
                fragment_places,
                initial_boundary: marking_of(&do_pre),
                final_boundary: marking_of(&do_post),
                member_boundaries: vec![(do_pre, do_post), (redo_pre, redo_post)],
            });
        }
    }
    None
}

/// Places reachable from `source` in the directed arc graph with the given
/// transitions removed.
fn places_reachable_excluding<L>(
    net: &LabeledNet<L>,
    source: &PlaceId,
    excluded: &[TransitionId],
) -> HashSet<PlaceId> {
    let mut reachable: HashSet<PlaceId> = HashSet::new();
    if !net.contains_place(source) {
        return reachable;
    }
    reachable.insert(source.clone());
    let mut stack = vec![source.clone()];
    while let Some(p) = stack.pop() {
        for t in net.place_postset(&p).unwrap() {
            if excluded.contains(t) {
                continue;
            }
            for q in net.transition_postset(t).unwrap() {
                if reachable.insert(q.clone()) {
                    stack.push(q.clone());
                }
            }
        }
    }
    reachable
}
