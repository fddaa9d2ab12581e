//! Pattern detectors exercised on the intermediate nets of the running
//! example and on hand-built counterexamples.

mod common;

use common::w1;
use indexmap::IndexSet;
use wf2pt_core::petri::{LabeledNet, PlaceId, TransitionId};
use wf2pt_core::reduce::{
    apply_reduction, find_and_pattern, find_loop_pattern, find_seq_pattern, find_xor_pattern, lift,
};
use wf2pt_core::serial::read_tree_text;
use wf2pt_core::translate::{tree_to_wfnet, TranslationVariant};
use wf2pt_core::tree::{Operator, ProcessTree};

fn t(s: &str) -> TransitionId {
    TransitionId::new(s)
}

fn tree(s: &str) -> ProcessTree {
    read_tree_text(s).unwrap()
}

/// The working net after the two choice reductions: `t'2 = X(b,c)` between
/// `p1` and `p3`, `t'1 = X(g,h)` between `p5` and `p_o`.
fn after_choices() -> LabeledNet<ProcessTree> {
    let mut net = LabeledNet::new();
    for p in ["p_i", "p1", "p2", "p3", "p4", "p5", "p_o"] {
        net.add_place(p).unwrap();
    }
    let add = |net: &mut LabeledNet<ProcessTree>, id: &str, label: &str, pre: &[&str], post: &[&str]| {
        let tid = net.add_transition(id, tree(label)).unwrap();
        for p in pre {
            net.add_arc_pt(&PlaceId::new(*p), &tid).unwrap();
        }
        for p in post {
            net.add_arc_tp(&tid, &PlaceId::new(*p)).unwrap();
        }
    };
    add(&mut net, "t1", "a", &["p_i"], &["p1", "p2"]);
    add(&mut net, "t_2p", "X(b,c)", &["p1"], &["p3"]);
    add(&mut net, "t4", "d", &["p2"], &["p4"]);
    add(&mut net, "t5", "e", &["p3", "p4"], &["p5"]);
    add(&mut net, "t6", "f", &["p5"], &["p1", "p2"]);
    add(&mut net, "t_1p", "X(g,h)", &["p5"], &["p_o"]);
    net
}

#[test]
fn xor_detector_finds_the_first_choice_in_w1() {
    let net = lift(&w1());
    let m = find_xor_pattern(&net).unwrap();
    assert_eq!(m.members, vec![t("t2"), t("t3")]);
    assert_eq!(m.kind, Operator::Xor);
    assert_eq!(m.initial_boundary, wf2pt_core::petri::Marking::of(["p1"]));
}

#[test]
fn xor_detector_finds_the_second_choice_after_the_first_is_reduced() {
    let net = lift(&w1());
    let first = find_xor_pattern(&net).unwrap();
    let (net, _) = apply_reduction(&net, &first).unwrap();
    let second = find_xor_pattern(&net).unwrap();
    assert_eq!(second.members, vec![t("t7"), t("t8")]);
}

#[test]
fn xor_needs_equal_postsets() {
    // Shared pre-set but different post-sets: the deadlock net's a and b.
    let net = lift(&common::deadlock_net());
    assert_eq!(find_xor_pattern(&net), None);
}

#[test]
fn and_detector_matches_the_parallel_construct() {
    let net = after_choices();
    let m = find_and_pattern(&net, false).unwrap();
    assert_eq!(m.members, vec![t("t_2p"), t("t4")]);
    assert_eq!(
        m.fragment_places,
        IndexSet::from([PlaceId::new("p1"), PlaceId::new("p2"), PlaceId::new("p3"), PlaceId::new("p4")])
    );
}

#[test]
fn strict_and_rejects_the_running_example() {
    // The producers t1 and t6 of {p1, p2} have different pre-sets, so the
    // literal shared-enabler conditions fail on the paper's own example.
    let net = after_choices();
    assert_eq!(find_and_pattern(&net, true), None);
}

#[test]
fn and_detector_ignores_sequences() {
    let wfnet = tree_to_wfnet(&tree("->(a,b)"), TranslationVariant::Minimal);
    let net = lift(&wfnet);
    assert_eq!(find_and_pattern(&net, false), None);
}

#[test]
fn seq_detector_matches_after_the_parallel_reduction() {
    let net = after_choices();
    let and = find_and_pattern(&net, false).unwrap();
    let (net, step) = apply_reduction(&net, &and).unwrap();
    let m = find_seq_pattern(&net).unwrap();
    assert_eq!(m.members, vec![step.new_transition.clone(), t("t5")]);
    assert_eq!(
        m.initial_boundary,
        wf2pt_core::petri::Marking::of(["p1", "p2"])
    );
    // Applying it deletes the intermediate places p3 and p4.
    let (_, seq_step) = apply_reduction(&net, &m).unwrap();
    assert_eq!(
        seq_step.removed_places,
        IndexSet::from([PlaceId::new("p3"), PlaceId::new("p4")])
    );
    assert_eq!(
        seq_step.new_label,
        ProcessTree::binary(Operator::Seq, step.new_label.clone(), tree("e"))
    );
}

#[test]
fn no_seq_match_on_choice_shapes() {
    let wfnet = tree_to_wfnet(&tree("X(b,c)"), TranslationVariant::Minimal);
    assert_eq!(find_seq_pattern(&lift(&wfnet)), None);
}

#[test]
fn loop_detector_matches_with_the_do_part_oriented_by_reachability() {
    let net = after_choices();
    let and = find_and_pattern(&net, false).unwrap();
    let (net, _) = apply_reduction(&net, &and).unwrap();
    let seq = find_seq_pattern(&net).unwrap();
    let (net, seq_step) = apply_reduction(&net, &seq).unwrap();
    let m = find_loop_pattern(&net, &PlaceId::new("p_i")).unwrap();
    // Do-part is the composite transition fed from the source side; the redo
    // is t6 labelled f.
    assert_eq!(m.members, vec![seq_step.new_transition.clone(), t("t6")]);
    let (net, loop_step) = apply_reduction(&net, &m).unwrap();
    assert_eq!(
        loop_step.new_label,
        ProcessTree::binary(Operator::Loop, seq_step.new_label.clone(), tree("f"))
    );
    assert!(net.contains_place(&PlaceId::new("p1")));
    assert!(net.contains_place(&PlaceId::new("p2")));
    assert!(net.contains_place(&PlaceId::new("p5")));
}

#[test]
fn self_loop_shape_is_not_a_loop_pattern() {
    // Two transitions sharing a place in both directions.
    let mut net: LabeledNet<ProcessTree> = LabeledNet::new();
    let q = net.add_place("q").unwrap();
    let r = net.add_place("r").unwrap();
    let t1 = net.add_transition("t1", tree("a")).unwrap();
    let t2 = net.add_transition("t2", tree("b")).unwrap();
    // t1: {q} -> {q, r} style overlap: pre and post intersect.
    net.add_arc_pt(&q, &t1).unwrap();
    net.add_arc_tp(&t1, &q).unwrap();
    net.add_arc_tp(&t1, &r).unwrap();
    net.add_arc_pt(&r, &t2).unwrap();
    net.add_arc_tp(&t2, &q).unwrap();
    assert_eq!(find_loop_pattern(&net, &q), None);
}

#[test]
fn stripped_loop_gadget_matches_as_a_loop() {
    let wfnet = tree_to_wfnet(&tree("*(a,b)"), TranslationVariant::Minimal);
    let net = lift(&wfnet);
    let m = find_loop_pattern(&net, wfnet.source()).unwrap();
    let labels: Vec<&ProcessTree> = m.members.iter().map(|t| net.label(t).unwrap()).collect();
    assert_eq!(labels, vec![&tree("a"), &tree("b")]);
}

#[test]
fn xor_reduction_reproduces_the_first_round() {
    let net = lift(&w1());
    let m = find_xor_pattern(&net).unwrap();
    let (reduced, step) = apply_reduction(&net, &m).unwrap();
    assert_eq!(step.new_label, tree("X(b,c)"));
    assert_eq!(reduced.transition_count(), 7);
    // The fresh transition inherits {p1} -> {p3}.
    let pre = reduced.transition_preset(&step.new_transition).unwrap();
    let post = reduced.transition_postset(&step.new_transition).unwrap();
    assert_eq!(pre.iter().collect::<Vec<_>>(), vec![&PlaceId::new("p1")]);
    assert_eq!(post.iter().collect::<Vec<_>>(), vec![&PlaceId::new("p3")]);
    // All seven places survive a choice reduction.
    assert_eq!(reduced.place_count(), 7);
}
