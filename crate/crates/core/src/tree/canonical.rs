use crate::petri::Label;
use crate::serial::write_tree_text;

use super::{Operator, ProcessTree};

/// Normalizes a tree to its canonical form. The rules, applied bottom-up to a
/// fixpoint, preserve the bounded language:
///
/// 1. nested children of the same associative kind (→, ×, ∧) are flattened
///    into the parent;
/// 2. τ children of → and ∧ are dropped (ε is neutral for concatenation and
///    shuffle); τ children of × and ↻ are kept, they change the language;
/// 3. →/×/∧ nodes left with a single child collapse to that child, and with
///    no child at all collapse to τ;
/// 4. children of the commutative operators × and ∧ are sorted by their
///    canonical textual serialization;
/// 5. a loop whose do-child is a loop pulls the inner redo up as a choice
///    alternative: `↻(↻(D,r1),r2) = ↻(D,×(r1,r2))` — binary reductions may
///    absorb the redo alternatives of one loop one at a time, and this rule
///    makes every absorption order converge.
pub fn canonicalize(tree: &ProcessTree) -> ProcessTree {
    match tree {
        ProcessTree::Leaf(_) => tree.clone(),
        ProcessTree::Operator(Operator::Loop, children) => {
            let mut do_child = canonicalize(&children[0]);
            let mut redo_alternatives = vec![canonicalize(&children[1])];
            while let ProcessTree::Operator(Operator::Loop, inner) = do_child {
                let mut inner = inner;
                redo_alternatives.push(inner.pop().unwrap());
                do_child = inner.pop().unwrap();
            }
            let redo = if redo_alternatives.len() == 1 {
                redo_alternatives.pop().unwrap()
            } else {
                canonicalize(&ProcessTree::Operator(Operator::Xor, redo_alternatives))
            };
            ProcessTree::Operator(Operator::Loop, vec![do_child, redo])
        }
        ProcessTree::Operator(kind, children) => {
            let mut flat = Vec::with_capacity(children.len());
            for child in children {
                let child = canonicalize(child);
                match child {
                    ProcessTree::Operator(k, grandchildren) if k == *kind => {
                        flat.extend(grandchildren);
                    }
                    ProcessTree::Leaf(Label::Silent)
                        if matches!(kind, Operator::Seq | Operator::And) =>
                    {
                        // dropped: ε contributes nothing here
                    }
                    other => flat.push(other),
                }
            }
            match flat.len() {
                0 => ProcessTree::silent(),
                1 => flat.pop().unwrap(),
                _ => {
                    if matches!(kind, Operator::Xor | Operator::And) {
                        flat.sort_by_cached_key(write_tree_text);
                    }
                    ProcessTree::Operator(*kind, flat)
                }
            }
        }
    }
}

/// Structural equality of canonical forms; by canonicalization being
/// language-preserving this is a sound (not complete) language-equality test.
pub fn trees_language_equal_canonical(a: &ProcessTree, b: &ProcessTree) -> bool {
    canonicalize(a) == canonicalize(b)
}
