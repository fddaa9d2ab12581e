//! Bounded language-equivalence checking between WF-nets and process trees,
//! three-valued: a capped enumeration never produces an equal/unequal verdict.

use crate::petri::{
    check_soundness_generic, enumerate_net_language, Caps, EnumCaps, EnumError, Label,
    SoundnessVerdict, WorkflowNet,
};
use crate::reduce::{apply_with_label, lift, ReductionStep};
use crate::translate::unfold;
use crate::tree::{enumerate_tree_language_capped, format_trace, ProcessTree, Trace, TraceSet};

/// Either side of an equivalence query.
#[derive(Debug, Clone, Copy)]
pub enum ModelRef<'a> {
    Net(&'a WorkflowNet<Label>),
    Tree(&'a ProcessTree),
}

impl<'a> From<&'a WorkflowNet<Label>> for ModelRef<'a> {
    fn from(net: &'a WorkflowNet<Label>) -> Self {
        ModelRef::Net(net)
    }
}

impl<'a> From<&'a ProcessTree> for ModelRef<'a> {
    fn from(tree: &'a ProcessTree) -> Self {
        ModelRef::Tree(tree)
    }
}

/// Verdict of [`bounded_language_equal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// A witness trace present in exactly one side.
    NotEqual { witness: Trace, in_left: bool },
    /// An enumeration hit a cap; no claim is made either way.
    Inconclusive(EnumError),
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

impl std::fmt::Display for Equivalence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Equivalence::Equal => write!(f, "equal"),
            Equivalence::NotEqual { witness, in_left } => write!(
                f,
                "not equal: {} only in the {} operand",
                format_trace(witness),
                if *in_left { "left" } else { "right" }
            ),
            Equivalence::Inconclusive(reason) => write!(f, "inconclusive: {reason}"),
        }
    }
}

fn enumerate(model: ModelRef, k: usize, caps: &EnumCaps) -> Result<TraceSet, EnumError> {
    match model {
        ModelRef::Net(net) => enumerate_net_language(net, k, caps),
        ModelRef::Tree(tree) => enumerate_tree_language_capped(tree, k, caps.max_traces),
    }
}

/// Compares the complete-trace sets of the two models up to length `k`.
pub fn bounded_language_equal<'a, 'b>(
    left: impl Into<ModelRef<'a>>,
    right: impl Into<ModelRef<'b>>,
    k: usize,
    caps: &EnumCaps,
) -> Equivalence {
    let left = match enumerate(left.into(), k, caps) {
        Ok(set) => set,
        Err(e) => return Equivalence::Inconclusive(e),
    };
    let right = match enumerate(right.into(), k, caps) {
        Ok(set) => set,
        Err(e) => return Equivalence::Inconclusive(e),
    };
    match left.first_difference(&right) {
        None => Equivalence::Equal,
        Some((witness, in_left)) => Equivalence::NotEqual { witness, in_left },
    }
}

/// Caps used by [`verify_step_log`]: language enumeration plus the state
/// space explored per soundness check.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleCaps {
    pub language: EnumCaps,
    pub soundness: Caps,
}

/// Verdict of a step-log replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepLogVerdict {
    Verified,
    /// The replayed step at this index changed the unfolded bounded language
    /// or the soundness verdict.
    Violation { step: usize, detail: String },
    Inconclusive { step: usize, detail: String },
}

impl StepLogVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, StepLogVerdict::Verified)
    }
}

/// Replays `steps` on `input`, unfolding the working net before and after
/// each step and asserting that the bounded language (at length `k`) and the
/// soundness verdict are preserved step by step.
pub fn verify_step_log(
    input: &WorkflowNet<Label>,
    steps: &[ReductionStep],
    k: usize,
    caps: &OracleCaps,
) -> StepLogVerdict {
    let source = input.source().clone();
    let sink = input.sink().clone();
    let mut current = lift(input);

    let evaluate = |net: &crate::petri::LabeledNet<ProcessTree>,
                    step: usize|
     -> Result<(TraceSet, bool), StepLogVerdict> {
        let unfolded = unfold(net);
        let wfnet = match WorkflowNet::new(unfolded, source.clone(), sink.clone()) {
            Ok(w) => w,
            Err(e) => {
                return Err(StepLogVerdict::Violation {
                    step,
                    detail: format!("unfolded net is not a WF-net: {e}"),
                })
            }
        };
        let language = enumerate_net_language(&wfnet, k, &caps.language)
            .map_err(|e| StepLogVerdict::Inconclusive { step, detail: e.to_string() })?;
        match check_soundness_generic(&wfnet, &caps.soundness) {
            SoundnessVerdict::Inconclusive(e) => {
                Err(StepLogVerdict::Inconclusive { step, detail: e.to_string() })
            }
            verdict => Ok((language, verdict.is_sound())),
        }
    };

    let (mut language, mut sound) = match evaluate(&current, 0) {
        Ok(v) => v,
        Err(verdict) => return verdict,
    };

    for (i, step) in steps.iter().enumerate() {
        let replayed =
            apply_with_label(&current, &step.pattern, Some((&step.new_transition, &step.new_label)));
        current = match replayed {
            Ok((net, _)) => net,
            Err(e) => {
                return StepLogVerdict::Violation { step: i, detail: e.to_string() };
            }
        };
        let (next_language, next_sound) = match evaluate(&current, i) {
            Ok(v) => v,
            Err(verdict) => return verdict,
        };
        if next_language != language {
            let witness = language.first_difference(&next_language).unwrap().0;
            return StepLogVerdict::Violation {
                step: i,
                detail: format!(
                    "bounded language changed, witness {}",
                    format_trace(&witness)
                ),
            };
        }
        if next_sound != sound {
            return StepLogVerdict::Violation {
                step: i,
                detail: format!("soundness changed from {sound} to {next_sound}"),
            };
        }
        language = next_language;
        sound = next_sound;
    }
    StepLogVerdict::Verified
}
