//! Shared fixtures: the running-example WF-net W1 and its process tree.

use wf2pt_core::petri::{Label, LabeledNet, PlaceId, WorkflowNet};
use wf2pt_core::serial::read_tree_text;
use wf2pt_core::tree::ProcessTree;

pub fn act(s: &str) -> Label {
    Label::activity(s).unwrap()
}

/// The running-example net: a sequence of `a`, a loop whose body runs a
/// choice between `b` and `c` concurrently with `d` followed by `e` and whose
/// redo is `f`, then a choice between `g` and `h`.
///
/// Places `p_i, p1..p5, p_o`; transitions `t1..t8` labelled `a..h`.
pub fn w1() -> WorkflowNet<Label> {
    let mut net = LabeledNet::new();
    let p_i = net.add_place("p_i").unwrap();
    let p1 = net.add_place("p1").unwrap();
    let p2 = net.add_place("p2").unwrap();
    let p3 = net.add_place("p3").unwrap();
    let p4 = net.add_place("p4").unwrap();
    let p5 = net.add_place("p5").unwrap();
    let p_o = net.add_place("p_o").unwrap();
    let t1 = net.add_transition("t1", act("a")).unwrap();
    let t2 = net.add_transition("t2", act("b")).unwrap();
    let t3 = net.add_transition("t3", act("c")).unwrap();
    let t4 = net.add_transition("t4", act("d")).unwrap();
    let t5 = net.add_transition("t5", act("e")).unwrap();
    let t6 = net.add_transition("t6", act("f")).unwrap();
    let t7 = net.add_transition("t7", act("g")).unwrap();
    let t8 = net.add_transition("t8", act("h")).unwrap();

    net.add_arc_pt(&p_i, &t1).unwrap();
    net.add_arc_tp(&t1, &p1).unwrap();
    net.add_arc_tp(&t1, &p2).unwrap();
    net.add_arc_pt(&p1, &t2).unwrap();
    net.add_arc_tp(&t2, &p3).unwrap();
    net.add_arc_pt(&p1, &t3).unwrap();
    net.add_arc_tp(&t3, &p3).unwrap();
    net.add_arc_pt(&p2, &t4).unwrap();
    net.add_arc_tp(&t4, &p4).unwrap();
    net.add_arc_pt(&p3, &t5).unwrap();
    net.add_arc_pt(&p4, &t5).unwrap();
    net.add_arc_tp(&t5, &p5).unwrap();
    net.add_arc_pt(&p5, &t6).unwrap();
    net.add_arc_tp(&t6, &p1).unwrap();
    net.add_arc_tp(&t6, &p2).unwrap();
    net.add_arc_pt(&p5, &t7).unwrap();
    net.add_arc_tp(&t7, &p_o).unwrap();
    net.add_arc_pt(&p5, &t8).unwrap();
    net.add_arc_tp(&t8, &p_o).unwrap();

    WorkflowNet::new(net, p_i, p_o).unwrap()
}

/// Canonical text of the tree describing the same language as [`w1`].
pub const W1_TREE_TEXT: &str = "->(a,*(->(+(X(b,c),d),e),f),X(g,h))";

pub fn w1_tree() -> ProcessTree {
    read_tree_text(W1_TREE_TEXT).unwrap()
}

/// The "choice then join" deadlock net: `p_i -> a -> q1 | p_i -> b -> q2`,
/// `{q1, q2} -> c -> p_o`. Valid WF-net, not sound.
pub fn deadlock_net() -> WorkflowNet<Label> {
    let mut net = LabeledNet::new();
    let p_i = net.add_place("p_i").unwrap();
    let q1 = net.add_place("q1").unwrap();
    let q2 = net.add_place("q2").unwrap();
    let p_o = net.add_place("p_o").unwrap();
    let a = net.add_transition("a", act("a")).unwrap();
    let b = net.add_transition("b", act("b")).unwrap();
    let c = net.add_transition("c", act("c")).unwrap();
    net.add_arc_pt(&p_i, &a).unwrap();
    net.add_arc_tp(&a, &q1).unwrap();
    net.add_arc_pt(&p_i, &b).unwrap();
    net.add_arc_tp(&b, &q2).unwrap();
    net.add_arc_pt(&q1, &c).unwrap();
    net.add_arc_pt(&q2, &c).unwrap();
    net.add_arc_tp(&c, &p_o).unwrap();
    WorkflowNet::new(net, p_i, p_o).unwrap()
}

/// Sound and language-equal to `->(a,b,c)` yet structurally irreducible:
/// `p_i -> a -> {q1,q2}; q1 -> b -> q3; {q2,q3} -> c -> p_o`.
pub fn irreducible_net() -> WorkflowNet<Label> {
    let mut net = LabeledNet::new();
    let p_i = net.add_place("p_i").unwrap();
    let q1 = net.add_place("q1").unwrap();
    let q2 = net.add_place("q2").unwrap();
    let q3 = net.add_place("q3").unwrap();
    let p_o = net.add_place("p_o").unwrap();
    let a = net.add_transition("a", act("a")).unwrap();
    let b = net.add_transition("b", act("b")).unwrap();
    let c = net.add_transition("c", act("c")).unwrap();
    net.add_arc_pt(&p_i, &a).unwrap();
    net.add_arc_tp(&a, &q1).unwrap();
    net.add_arc_tp(&a, &q2).unwrap();
    net.add_arc_pt(&q1, &b).unwrap();
    net.add_arc_tp(&b, &q3).unwrap();
    net.add_arc_pt(&q2, &c).unwrap();
    net.add_arc_pt(&q3, &c).unwrap();
    net.add_arc_tp(&c, &p_o).unwrap();
    WorkflowNet::new(net, p_i, p_o).unwrap()
}

#[allow(dead_code)]
pub fn place(s: &str) -> PlaceId {
    PlaceId::new(s)
}
