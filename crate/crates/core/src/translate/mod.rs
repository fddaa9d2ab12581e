//! Translation of process trees to WF-nets, boundary stripping, and the
//! unfolding of tree-labelled nets back into plain labelled nets.

use indexmap::IndexSet;

use crate::petri::{Label, LabeledNet, PlaceId, TransitionId, WorkflowNet};
use crate::tree::{Operator, ProcessTree};

/// How silent transitions are introduced around operator gadgets.
///
/// `TauBounded` wraps every operator block in fresh silent start and end
/// transitions. `Minimal` introduces them only where the gadget needs them —
/// the concurrency split/join and the loop entry/exit — and merges children's
/// boundary places everywhere else, so it never produces larger nets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationVariant {
    Minimal,
    TauBounded,
}

impl TranslationVariant {
    pub const ALL: [TranslationVariant; 2] =
        [TranslationVariant::Minimal, TranslationVariant::TauBounded];
}

impl std::fmt::Display for TranslationVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TranslationVariant::Minimal => f.write_str("minimal"),
            TranslationVariant::TauBounded => f.write_str("tau-bounded"),
        }
    }
}

/// A boundary-stripped net: the image of a WF-net with source, sink and their
/// arcs removed, remembering which transitions used to touch them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetFragment {
    pub net: LabeledNet<Label>,
    /// Former post-set of the source place.
    pub entry: IndexSet<TransitionId>,
    /// Former pre-set of the sink place.
    pub exit: IndexSet<TransitionId>,
}

/// Translates a process tree into a WF-net whose visible language equals the
/// tree language. Node identifiers derive from the path of each subtree, so
/// equal inputs produce identical nets.
pub fn tree_to_wfnet(tree: &ProcessTree, variant: TranslationVariant) -> WorkflowNet<Label> {
    let mut builder = Builder { net: LabeledNet::new(), variant };
    let source = builder.place("p_i");
    let sink = builder.place("p_o");
    builder.translate(tree, "r", &source, &sink);
    WorkflowNet::new(builder.net, source, sink)
        .expect("tree gadgets compose into a structural WF-net")
}

struct Builder {
    net: LabeledNet<Label>,
    variant: TranslationVariant,
}

impl Builder {
    fn place(&mut self, id: impl Into<PlaceId>) -> PlaceId {
        self.net.add_place(id).expect("path-derived place ids are unique")
    }

    fn transition(&mut self, id: impl Into<TransitionId>, label: Label) -> TransitionId {
        self.net.add_transition(id, label).expect("path-derived transition ids are unique")
    }

    fn arc_pt(&mut self, p: &PlaceId, t: &TransitionId) {
        self.net.add_arc_pt(p, t).expect("gadgets never duplicate arcs");
    }

    fn arc_tp(&mut self, t: &TransitionId, p: &PlaceId) {
        self.net.add_arc_tp(t, p).expect("gadgets never duplicate arcs");
    }

    /// Emits the gadget for `tree` between the `entry` and `exit` places.
    fn translate(&mut self, tree: &ProcessTree, path: &str, entry: &PlaceId, exit: &PlaceId) {
        match tree {
            ProcessTree::Leaf(label) => {
                let t = self.transition(format!("t_{path}"), label.clone());
                self.arc_pt(entry, &t);
                self.arc_tp(&t, exit);
            }
            ProcessTree::Operator(Operator::Seq, children) => {
                let (first, last) = if self.variant == TranslationVariant::TauBounded {
                    let start = self.transition(format!("ts_{path}"), Label::Silent);
                    let end = self.transition(format!("te_{path}"), Label::Silent);
                    let first = self.place(format!("p_{path}_s"));
                    let last = self.place(format!("p_{path}_e"));
                    self.arc_pt(entry, &start);
                    self.arc_tp(&start, &first);
                    self.arc_pt(&last, &end);
                    self.arc_tp(&end, exit);
                    (first, last)
                } else {
                    (entry.clone(), exit.clone())
                };
                let mut current = first;
                for (i, child) in children.iter().enumerate() {
                    let next = if i + 1 == children.len() {
                        last.clone()
                    } else {
                        self.place(format!("p_{path}_{i}"))
                    };
                    self.translate(child, &format!("{path}.{i}"), &current, &next);
                    current = next;
                }
            }
            ProcessTree::Operator(Operator::Xor, children) => {
                let (inner_entry, inner_exit) = if self.variant == TranslationVariant::TauBounded {
                    let start = self.transition(format!("ts_{path}"), Label::Silent);
                    let end = self.transition(format!("te_{path}"), Label::Silent);
                    let inner_entry = self.place(format!("p_{path}_s"));
                    let inner_exit = self.place(format!("p_{path}_e"));
                    self.arc_pt(entry, &start);
                    self.arc_tp(&start, &inner_entry);
                    self.arc_pt(&inner_exit, &end);
                    self.arc_tp(&end, exit);
                    (inner_entry, inner_exit)
                } else {
                    (entry.clone(), exit.clone())
                };
                for (i, child) in children.iter().enumerate() {
                    self.translate(child, &format!("{path}.{i}"), &inner_entry, &inner_exit);
                }
            }
            ProcessTree::Operator(Operator::And, children) => {
                // The split and join double as the tau-bounded start/end.
                let split = self.transition(format!("ts_{path}"), Label::Silent);
                let join = self.transition(format!("te_{path}"), Label::Silent);
                self.arc_pt(entry, &split);
                self.arc_tp(&join, exit);
                for (i, child) in children.iter().enumerate() {
                    let child_in = self.place(format!("p_{path}_{i}_in"));
                    let child_out = self.place(format!("p_{path}_{i}_out"));
                    self.arc_tp(&split, &child_in);
                    self.arc_pt(&child_out, &join);
                    self.translate(child, &format!("{path}.{i}"), &child_in, &child_out);
                }
            }
            ProcessTree::Operator(Operator::Loop, children) => {
                // A distinct entry place keeps the WF-net source free of
                // incoming redo arcs even when the loop is the root.
                let enter = self.transition(format!("ts_{path}"), Label::Silent);
                let exit_t = self.transition(format!("te_{path}"), Label::Silent);
                let do_in = self.place(format!("p_{path}_in"));
                let do_out = self.place(format!("p_{path}_out"));
                self.arc_pt(entry, &enter);
                self.arc_tp(&enter, &do_in);
                self.arc_pt(&do_out, &exit_t);
                self.arc_tp(&exit_t, exit);
                self.translate(&children[0], &format!("{path}.0"), &do_in, &do_out);
                // Redo runs from the do-exit back to the do-entry.
                self.translate(&children[1], &format!("{path}.1"), &do_out, &do_in);
            }
        }
    }
}

/// Removes source and sink (and their arcs) from a WF-net, recording the
/// source's consumers as entry transitions and the sink's producers as exits.
pub fn strip_boundary(wfnet: &WorkflowNet<Label>) -> NetFragment {
    let entry = wfnet.net().place_postset(wfnet.source()).unwrap().clone();
    let exit = wfnet.net().place_preset(wfnet.sink()).unwrap().clone();
    let mut net = wfnet.net().clone();
    net.remove_place(wfnet.source()).unwrap();
    net.remove_place(wfnet.sink()).unwrap();
    NetFragment { net, entry, exit }
}

/// Unfolds a tree-labelled net: every transition is replaced by the
/// boundary-stripped minimal-variant WF-net of its label, the host arcs
/// re-targeted to the fragment's entry and exit transitions. Host places are
/// preserved; fragment node ids are prefixed with the host transition id.
pub fn unfold(ptree_net: &LabeledNet<ProcessTree>) -> LabeledNet<Label> {
    let mut out: LabeledNet<Label> = LabeledNet::new();
    for p in ptree_net.places() {
        out.add_place(p.clone()).expect("host places are unique");
    }
    for host in ptree_net.transitions() {
        let tree = ptree_net.label(host).unwrap();
        let fragment = strip_boundary(&tree_to_wfnet(tree, TranslationVariant::Minimal));
        let fresh_place = |id: &PlaceId| PlaceId::new(format!("{host}::{id}"));
        let fresh_trans = |id: &TransitionId| TransitionId::new(format!("{host}::{id}"));
        for p in fragment.net.places() {
            out.add_place(fresh_place(p)).expect("prefixed fragment ids are unique");
        }
        for t in fragment.net.transitions() {
            out.add_transition(fresh_trans(t), fragment.net.label(t).unwrap().clone())
                .expect("prefixed fragment ids are unique");
            for p in fragment.net.transition_preset(t).unwrap() {
                out.add_arc_pt(&fresh_place(p), &fresh_trans(t)).unwrap();
            }
            for p in fragment.net.transition_postset(t).unwrap() {
                out.add_arc_tp(&fresh_trans(t), &fresh_place(p)).unwrap();
            }
        }
        for p in ptree_net.transition_preset(host).unwrap() {
            for t in &fragment.entry {
                out.add_arc_pt(p, &fresh_trans(t)).unwrap();
            }
        }
        for p in ptree_net.transition_postset(host).unwrap() {
            for t in &fragment.exit {
                out.add_arc_tp(&fresh_trans(t), p).unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petri::{check_soundness, Caps};
    use crate::tree::ProcessTree;

    fn act(s: &str) -> ProcessTree {
        ProcessTree::activity(s).unwrap()
    }

    #[test]
    fn leaf_gadget_is_a_single_transition() {
        let net = tree_to_wfnet(&act("a"), TranslationVariant::Minimal);
        assert_eq!(net.net().place_count(), 2);
        assert_eq!(net.net().transition_count(), 1);
        assert_eq!(net.net().arc_count(), 2);
    }

    #[test]
    fn minimal_xor_shares_boundary_places() {
        let tree = ProcessTree::binary(Operator::Xor, act("b"), act("c"));
        let net = tree_to_wfnet(&tree, TranslationVariant::Minimal);
        assert_eq!(net.net().place_count(), 2);
        assert_eq!(net.net().transition_count(), 2);
        let postset = net.net().place_postset(net.source()).unwrap();
        assert_eq!(postset.len(), 2);
    }

    #[test]
    fn stripped_leaf_has_equal_entry_and_exit() {
        let fragment = strip_boundary(&tree_to_wfnet(&act("a"), TranslationVariant::Minimal));
        assert_eq!(fragment.net.place_count(), 0);
        assert_eq!(fragment.entry, fragment.exit);
        assert_eq!(fragment.entry.len(), 1);
    }

    #[test]
    fn stripped_xor_keeps_no_places() {
        let tree = ProcessTree::binary(Operator::Xor, act("b"), act("c"));
        let fragment = strip_boundary(&tree_to_wfnet(&tree, TranslationVariant::Minimal));
        assert_eq!(fragment.net.place_count(), 0);
        assert_eq!(fragment.net.transition_count(), 2);
    }

    #[test]
    fn stripped_parallel_keeps_internal_places() {
        let tree = ProcessTree::binary(Operator::And, act("a"), act("b"));
        let fragment = strip_boundary(&tree_to_wfnet(&tree, TranslationVariant::Minimal));
        assert_eq!(fragment.net.place_count(), 4);
        assert_eq!(fragment.net.transition_count(), 4); // split, join, a, b
        assert_eq!(fragment.entry.len(), 1);
        assert_eq!(fragment.exit.len(), 1);
    }

    #[test]
    fn loop_as_root_keeps_source_clean() {
        let tree = ProcessTree::binary(Operator::Loop, act("a"), act("b"));
        let net = tree_to_wfnet(&tree, TranslationVariant::Minimal);
        assert!(net.net().place_preset(net.source()).unwrap().is_empty());
        assert_eq!(check_soundness(&net, &Caps::default()), crate::petri::SoundnessVerdict::Sound);
    }

    #[test]
    fn tau_bounded_is_at_least_as_large() {
        let tree = ProcessTree::binary(
            Operator::Seq,
            ProcessTree::binary(Operator::Xor, act("a"), act("b")),
            act("c"),
        );
        let minimal = tree_to_wfnet(&tree, TranslationVariant::Minimal);
        let bounded = tree_to_wfnet(&tree, TranslationVariant::TauBounded);
        assert!(bounded.net().size() > minimal.net().size());
    }

    #[test]
    fn leaf_labelled_net_unfolds_to_same_shape() {
        let mut ptn: LabeledNet<ProcessTree> = LabeledNet::new();
        let pi = ptn.add_place("p_i").unwrap();
        let q = ptn.add_place("q").unwrap();
        let po = ptn.add_place("p_o").unwrap();
        let t1 = ptn.add_transition("t1", act("a")).unwrap();
        let t2 = ptn.add_transition("t2", act("b")).unwrap();
        ptn.add_arc_pt(&pi, &t1).unwrap();
        ptn.add_arc_tp(&t1, &q).unwrap();
        ptn.add_arc_pt(&q, &t2).unwrap();
        ptn.add_arc_tp(&t2, &po).unwrap();
        let unfolded = unfold(&ptn);
        assert_eq!(unfolded.place_count(), 3);
        assert_eq!(unfolded.transition_count(), 2);
        assert_eq!(unfolded.arc_count(), 4);
    }
}
