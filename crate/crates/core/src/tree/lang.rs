use std::collections::BTreeSet;

use crate::petri::{EnumError, Label};

use super::{Operator, ProcessTree};

/// A sequence of activity names.
pub type Trace = Vec<String>;

/// Default cap on enumerated trace sets; exceeding it is an explicit error,
/// never silent truncation.
pub const DEFAULT_TRACE_CAP: usize = 200_000;

/// A finite, deduplicated set of traces with deterministic iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TraceSet {
    traces: BTreeSet<Trace>,
}

impl TraceSet {
    pub fn new() -> Self {
        TraceSet::default()
    }

    pub fn singleton(trace: Trace) -> Self {
        let mut s = TraceSet::new();
        s.insert(trace);
        s
    }

    /// The set containing only the empty trace.
    pub fn epsilon() -> Self {
        TraceSet::singleton(Vec::new())
    }

    pub fn insert(&mut self, trace: Trace) -> bool {
        self.traces.insert(trace)
    }

    pub fn contains(&self, trace: &Trace) -> bool {
        self.traces.contains(trace)
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Trace> {
        self.traces.iter()
    }

    pub fn union(&mut self, other: &TraceSet) {
        for t in &other.traces {
            self.traces.insert(t.clone());
        }
    }

    /// First trace of the symmetric difference, in set order, with the side
    /// it belongs to (`true` = present in `self`).
    pub fn first_difference(&self, other: &TraceSet) -> Option<(Trace, bool)> {
        let mine = self.traces.difference(&other.traces).next();
        let theirs = other.traces.difference(&self.traces).next();
        match (mine, theirs) {
            (None, None) => None,
            (Some(t), None) => Some((t.clone(), true)),
            (None, Some(t)) => Some((t.clone(), false)),
            (Some(a), Some(b)) => {
                if a <= b {
                    Some((a.clone(), true))
                } else {
                    Some((b.clone(), false))
                }
            }
        }
    }
}

impl IntoIterator for TraceSet {
    type Item = Trace;
    type IntoIter = std::collections::btree_set::IntoIter<Trace>;

    fn into_iter(self) -> Self::IntoIter {
        self.traces.into_iter()
    }
}

impl FromIterator<Trace> for TraceSet {
    fn from_iter<I: IntoIterator<Item = Trace>>(iter: I) -> Self {
        TraceSet { traces: iter.into_iter().collect() }
    }
}

/// Renders a trace in the ⟨a,b,c⟩ form used for counterexamples.
pub fn format_trace(trace: &Trace) -> String {
    format!("⟨{}⟩", trace.join(","))
}

fn interleavings(left: &Trace, right: &Trace, max_len: usize, out: &mut BTreeSet<Trace>) {
    if left.len() + right.len() > max_len {
        return;
    }
    // Depth-first merge over index pairs.
    fn go(
        left: &Trace,
        right: &Trace,
        i: usize,
        j: usize,
        acc: &mut Trace,
        out: &mut BTreeSet<Trace>,
    ) {
        if i == left.len() && j == right.len() {
            out.insert(acc.clone());
            return;
        }
        if i < left.len() {
            acc.push(left[i].clone());
            go(left, right, i + 1, j, acc, out);
            acc.pop();
        }
        if j < right.len() {
            acc.push(right[j].clone());
            go(left, right, i, j + 1, acc, out);
            acc.pop();
        }
    }
    let mut acc = Vec::with_capacity(left.len() + right.len());
    go(left, right, 0, 0, &mut acc, out);
}

fn shuffle_pair(
    a: &TraceSet,
    b: &TraceSet,
    max_len: usize,
    cap: usize,
) -> Result<TraceSet, EnumError> {
    let mut out = BTreeSet::new();
    for x in a.iter() {
        for y in b.iter() {
            interleavings(x, y, max_len, &mut out);
            if out.len() > cap {
                return Err(EnumError::ResultSetCapExceeded { limit: cap });
            }
        }
    }
    Ok(TraceSet { traces: out })
}

/// All order-preserving interleavings across the operand sets. Associative
/// and commutative as a set operation.
pub fn shuffle(sets: &[TraceSet], cap: usize) -> Result<TraceSet, EnumError> {
    match sets {
        [] => Ok(TraceSet::epsilon()),
        [first, rest @ ..] => {
            let mut acc = first.clone();
            for s in rest {
                acc = shuffle_pair(&acc, s, usize::MAX, cap)?;
            }
            Ok(acc)
        }
    }
}

fn concat_pair(
    a: &TraceSet,
    b: &TraceSet,
    max_len: usize,
    cap: usize,
) -> Result<TraceSet, EnumError> {
    let mut out = TraceSet::new();
    for x in a.iter() {
        for y in b.iter() {
            if x.len() + y.len() > max_len {
                continue;
            }
            let mut t = x.clone();
            t.extend(y.iter().cloned());
            out.insert(t);
            if out.len() > cap {
                return Err(EnumError::ResultSetCapExceeded { limit: cap });
            }
        }
    }
    Ok(out)
}

/// Enumerates `{ σ ∈ L(tree) : |σ| ≤ max_length }`. Length pruning is applied
/// at every composition step, which is exact because every operator only
/// extends its operands. Loop enumeration extends traces by one redo-do round
/// until a fixpoint, so it terminates even when both children admit ε.
pub fn enumerate_tree_language(
    tree: &ProcessTree,
    max_length: usize,
) -> Result<TraceSet, EnumError> {
    enumerate_tree_language_capped(tree, max_length, DEFAULT_TRACE_CAP)
}

pub fn enumerate_tree_language_capped(
    tree: &ProcessTree,
    max_length: usize,
    cap: usize,
) -> Result<TraceSet, EnumError> {
    match tree {
        ProcessTree::Leaf(Label::Silent) => Ok(TraceSet::epsilon()),
        ProcessTree::Leaf(Label::Activity(name)) => {
            if max_length >= 1 {
                Ok(TraceSet::singleton(vec![name.clone()]))
            } else {
                Ok(TraceSet::new())
            }
        }
        ProcessTree::Operator(Operator::Seq, children) => {
            let mut acc = TraceSet::epsilon();
            for child in children {
                if acc.is_empty() {
                    return Ok(acc);
                }
                let next = enumerate_tree_language_capped(child, max_length, cap)?;
                acc = concat_pair(&acc, &next, max_length, cap)?;
            }
            Ok(acc)
        }
        ProcessTree::Operator(Operator::Xor, children) => {
            let mut acc = TraceSet::new();
            for child in children {
                acc.union(&enumerate_tree_language_capped(child, max_length, cap)?);
                if acc.len() > cap {
                    return Err(EnumError::ResultSetCapExceeded { limit: cap });
                }
            }
            Ok(acc)
        }
        ProcessTree::Operator(Operator::And, children) => {
            let mut acc = TraceSet::epsilon();
            for child in children {
                if acc.is_empty() {
                    return Ok(acc);
                }
                let next = enumerate_tree_language_capped(child, max_length, cap)?;
                acc = shuffle_pair(&acc, &next, max_length, cap)?;
            }
            Ok(acc)
        }
        ProcessTree::Operator(Operator::Loop, children) => {
            let do_lang = enumerate_tree_language_capped(&children[0], max_length, cap)?;
            let redo_lang = enumerate_tree_language_capped(&children[1], max_length, cap)?;
            let round = concat_pair(&redo_lang, &do_lang, max_length, cap)?;
            let mut acc = do_lang.clone();
            let mut frontier = do_lang;
            while !frontier.is_empty() {
                let extended = concat_pair(&frontier, &round, max_length, cap)?;
                let mut fresh = TraceSet::new();
                for t in extended {
                    if !acc.contains(&t) {
                        fresh.insert(t);
                    }
                }
                for t in fresh.iter() {
                    acc.insert(t.clone());
                    if acc.len() > cap {
                        return Err(EnumError::ResultSetCapExceeded { limit: cap });
                    }
                }
                frontier = fresh;
            }
            Ok(acc)
        }
    }
}
