//! Round-trip identities of the external formats on random artifacts, plus
//! the language-preservation property of the canonical form.

mod common;

use common::w1;
use proptest::prelude::*;
use wf2pt_core::generate::{sample_tree, GeneratorConfig};
use wf2pt_core::petri::{EnumCaps, PlaceId, TransitionId};
use wf2pt_core::serial::{read_pnml, read_tree_text, write_pnml, write_tree_text};
use wf2pt_core::translate::{tree_to_wfnet, TranslationVariant};
use wf2pt_core::tree::{
    canonicalize, enumerate_tree_language, shuffle, ProcessTree, TraceSet, DEFAULT_TRACE_CAP,
};

#[test]
fn w1_pnml_roundtrip_is_identity() {
    let original = w1();
    let text = write_pnml(&original);
    let read = read_pnml(&text).unwrap();
    assert_eq!(read, original);
    // And the reread file renders identically.
    assert_eq!(write_pnml(&read), text);
}

#[test]
fn hand_written_w1_pnml_matches_the_fixture() {
    // Labels come from name/text children; structure from arcs.
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/w1.pnml"
    ))
    .unwrap();
    let net = read_pnml(&text).unwrap();
    assert_eq!(net.net().place_count(), 7);
    assert_eq!(net.net().transition_count(), 8);
    assert_eq!(net.source(), &PlaceId::new("p_i"));
    assert_eq!(net.sink(), &PlaceId::new("p_o"));
    let labels: Vec<String> = net
        .net()
        .transitions()
        .map(|t| match net.net().label(t).unwrap() {
            wf2pt_core::petri::Label::Activity(a) => a.clone(),
            wf2pt_core::petri::Label::Silent => "tau".into(),
        })
        .collect();
    assert_eq!(labels, vec!["a", "b", "c", "d", "e", "f", "g", "h"]);
    assert_eq!(net, w1());
}

fn tree_strategy() -> impl Strategy<Value = ProcessTree> {
    (any::<u64>(), 2u32..=10).prop_map(|(seed, high)| {
        let config = GeneratorConfig::new((2, (2 + high) / 2, high.max(2)), seed).unwrap();
        sample_tree(&config)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tree_text_roundtrip(tree in tree_strategy()) {
        let text = write_tree_text(&tree);
        prop_assert_eq!(read_tree_text(&text).unwrap(), tree);
    }

    #[test]
    fn pnml_roundtrip(tree in tree_strategy(), tau_bounded in any::<bool>()) {
        let variant = if tau_bounded { TranslationVariant::TauBounded } else { TranslationVariant::Minimal };
        let net = tree_to_wfnet(&tree, variant);
        let read = read_pnml(&write_pnml(&net)).unwrap();
        prop_assert_eq!(read, net);
    }

    #[test]
    fn canonicalization_preserves_bounded_language(tree in tree_strategy()) {
        let canonical = canonicalize(&tree);
        for k in [0usize, 2, 4] {
            prop_assert_eq!(
                enumerate_tree_language(&tree, k).unwrap(),
                enumerate_tree_language(&canonical, k).unwrap(),
                "k = {}", k
            );
        }
    }

    #[test]
    fn canonicalization_is_idempotent(tree in tree_strategy()) {
        let once = canonicalize(&tree);
        prop_assert_eq!(canonicalize(&once), once);
    }

    #[test]
    fn xor_child_order_never_changes_the_language(tree_a in tree_strategy(), tree_b in tree_strategy()) {
        let forward = ProcessTree::binary(wf2pt_core::tree::Operator::Xor, tree_a.clone(), tree_b.clone());
        let backward = ProcessTree::binary(wf2pt_core::tree::Operator::Xor, tree_b, tree_a);
        prop_assert_eq!(
            enumerate_tree_language(&forward, 4).unwrap(),
            enumerate_tree_language(&backward, 4).unwrap()
        );
    }
}

fn small_trace_set_strategy() -> impl Strategy<Value = TraceSet> {
    proptest::collection::vec(
        proptest::collection::vec(prop_oneof!["a", "b", "c"].prop_map(String::from), 0..3),
        0..3,
    )
    .prop_map(|traces| traces.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shuffle_is_commutative(a in small_trace_set_strategy(), b in small_trace_set_strategy()) {
        let ab = shuffle(&[a.clone(), b.clone()], DEFAULT_TRACE_CAP).unwrap();
        let ba = shuffle(&[b, a], DEFAULT_TRACE_CAP).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn shuffle_is_associative(
        a in small_trace_set_strategy(),
        b in small_trace_set_strategy(),
        c in small_trace_set_strategy(),
    ) {
        let left = shuffle(&[shuffle(&[a.clone(), b.clone()], DEFAULT_TRACE_CAP).unwrap(), c.clone()], DEFAULT_TRACE_CAP).unwrap();
        let right = shuffle(&[a, shuffle(&[b, c], DEFAULT_TRACE_CAP).unwrap()], DEFAULT_TRACE_CAP).unwrap();
        prop_assert_eq!(left, right);
    }
}

/// Independent repetition-bounded loop unroller: concatenates explicit
/// `do (redo do)^i` blocks for i up to `max_reps`, then filters by length.
fn unrolled_loop_language(
    do_child: &ProcessTree,
    redo_child: &ProcessTree,
    k: usize,
    max_reps: usize,
) -> TraceSet {
    let do_lang = enumerate_tree_language(do_child, k).unwrap();
    let redo_lang = enumerate_tree_language(redo_child, k).unwrap();
    let mut out = TraceSet::new();
    let mut current: Vec<Vec<String>> = do_lang.iter().cloned().collect();
    for trace in &current {
        if trace.len() <= k {
            out.insert(trace.clone());
        }
    }
    for _ in 0..max_reps {
        let mut next = Vec::new();
        for prefix in &current {
            for redo in redo_lang.iter() {
                for again in do_lang.iter() {
                    let mut t = prefix.clone();
                    t.extend(redo.iter().cloned());
                    t.extend(again.iter().cloned());
                    if t.len() <= k {
                        out.insert(t.clone());
                        next.push(t);
                    }
                }
            }
        }
        next.sort();
        next.dedup();
        if next.is_empty() {
            break;
        }
        current = next;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Loop enumeration is complete: nothing of length <= k is missed,
    // checked against the independent unroller with repetition bound k + 2.
    #[test]
    fn loop_enumeration_matches_the_unroller(seed in any::<u64>(), k in 0usize..5) {
        let config = GeneratorConfig::new((1, 2, 3), seed).unwrap();
        let do_child = sample_tree(&config);
        let redo_config = GeneratorConfig::new((1, 2, 3), seed.wrapping_add(1)).unwrap();
        let redo_child = sample_tree(&redo_config);
        let tree = ProcessTree::binary(wf2pt_core::tree::Operator::Loop, do_child.clone(), redo_child.clone());
        let enumerated = enumerate_tree_language(&tree, k).unwrap();
        let unrolled = unrolled_loop_language(&do_child, &redo_child, k, k + 2);
        prop_assert_eq!(enumerated, unrolled);
    }
}

#[test]
fn net_language_caps_are_reported() {
    let w1 = w1();
    let caps = EnumCaps { max_states: 5, max_traces: 200_000 };
    assert!(wf2pt_core::petri::enumerate_net_language(&w1, 5, &caps).is_err());
}

#[test]
fn transition_ids_survive_roundtrip_escaping() {
    use wf2pt_core::petri::{Label, LabeledNet, WorkflowNet};
    let mut net = LabeledNet::new();
    let pi = net.add_place("p&i").unwrap();
    let po = net.add_place("p<o>").unwrap();
    let t = net
        .add_transition(TransitionId::new("t\"1"), Label::activity("say 'hi' & <go>").unwrap())
        .unwrap();
    net.add_arc_pt(&pi, &t).unwrap();
    net.add_arc_tp(&t, &po).unwrap();
    let original = WorkflowNet::new(net, pi, po).unwrap();
    let read = read_pnml(&write_pnml(&original)).unwrap();
    assert_eq!(read, original);
}
