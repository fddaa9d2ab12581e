//! Process trees: recursive values whose leaves are activities or τ and whose
//! internal nodes are the control-flow operators →, ×, ∧ and ↻.

mod canonical;
mod lang;

pub use canonical::{canonicalize, trees_language_equal_canonical};
pub use lang::{
    enumerate_tree_language, enumerate_tree_language_capped, format_trace, shuffle, Trace,
    TraceSet, DEFAULT_TRACE_CAP,
};

use thiserror::Error;

use crate::petri::Label;

/// The four process-tree operators: sequence, exclusive choice, concurrency
/// and loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Seq,
    Xor,
    And,
    Loop,
}

impl Operator {
    /// Operator symbol used by the textual formats.
    pub fn symbol(self) -> &'static str {
        match self {
            Operator::Seq => "->",
            Operator::Xor => "X",
            Operator::And => "+",
            Operator::Loop => "*",
        }
    }
}

impl std::fmt::Display for Operator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("operator {0} requires at least one child")]
    EmptyOperator(Operator),
    #[error("the loop operator has exactly two children, got {0}")]
    LoopArity(usize),
}

/// A process tree: an activity leaf, a silent leaf, or an operator over an
/// ordered, non-empty list of subtrees. Loops have exactly two children, the
/// do-child and the redo-child.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProcessTree {
    Leaf(Label),
    Operator(Operator, Vec<ProcessTree>),
}

impl ProcessTree {
    pub fn activity(name: impl Into<String>) -> Result<ProcessTree, crate::petri::LabelError> {
        Ok(ProcessTree::Leaf(Label::activity(name)?))
    }

    pub fn silent() -> ProcessTree {
        ProcessTree::Leaf(Label::Silent)
    }

    pub fn operator(kind: Operator, children: Vec<ProcessTree>) -> Result<ProcessTree, TreeError> {
        if children.is_empty() {
            return Err(TreeError::EmptyOperator(kind));
        }
        if kind == Operator::Loop && children.len() != 2 {
            return Err(TreeError::LoopArity(children.len()));
        }
        Ok(ProcessTree::Operator(kind, children))
    }

    /// Binary operator node; every operator accepts two children.
    pub fn binary(kind: Operator, left: ProcessTree, right: ProcessTree) -> ProcessTree {
        ProcessTree::Operator(kind, vec![left, right])
    }

    /// Checks the structural invariants recursively.
    pub fn validate(&self) -> Result<(), TreeError> {
        match self {
            ProcessTree::Leaf(_) => Ok(()),
            ProcessTree::Operator(kind, children) => {
                if children.is_empty() {
                    return Err(TreeError::EmptyOperator(*kind));
                }
                if *kind == Operator::Loop && children.len() != 2 {
                    return Err(TreeError::LoopArity(children.len()));
                }
                children.iter().try_for_each(ProcessTree::validate)
            }
        }
    }

    /// Number of tree nodes.
    pub fn node_count(&self) -> usize {
        match self {
            ProcessTree::Leaf(_) => 1,
            ProcessTree::Operator(_, children) => {
                1 + children.iter().map(ProcessTree::node_count).sum::<usize>()
            }
        }
    }

    /// Number of activity leaves (τ leaves excluded).
    pub fn activity_count(&self) -> usize {
        match self {
            ProcessTree::Leaf(Label::Activity(_)) => 1,
            ProcessTree::Leaf(Label::Silent) => 0,
            ProcessTree::Operator(_, children) => {
                children.iter().map(ProcessTree::activity_count).sum()
            }
        }
    }
}

impl std::fmt::Display for ProcessTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::serial::write_tree_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_arity_enforced() {
        let a = ProcessTree::activity("a").unwrap();
        let b = ProcessTree::activity("b").unwrap();
        let c = ProcessTree::activity("c").unwrap();
        assert_eq!(
            ProcessTree::operator(Operator::Loop, vec![a.clone(), b.clone(), c]),
            Err(TreeError::LoopArity(3))
        );
        assert!(ProcessTree::operator(Operator::Loop, vec![a, b]).is_ok());
    }

    #[test]
    fn operators_need_children() {
        assert_eq!(
            ProcessTree::operator(Operator::Seq, vec![]),
            Err(TreeError::EmptyOperator(Operator::Seq))
        );
    }
}
