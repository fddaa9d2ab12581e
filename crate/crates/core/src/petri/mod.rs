//! Petri-net structures generic over the transition label domain, plus
//! firing semantics, reachability, WF-net validation and soundness checking.

mod language;
mod net;
mod reachability;
mod soundness;
mod wfnet;

pub use language::{enumerate_net_language, EnumError};
pub use net::{
    FiringError, Label, LabelError, LabeledNet, Marking, NetError, PlaceId, TransitionId,
    SILENT_TOKEN,
};
pub use reachability::{explore_state_space, Caps, EnumCaps, Exhaustion, ReachabilityGraph};
pub use soundness::{check_soundness, check_soundness_generic, SoundnessVerdict, SoundnessViolation};
pub use wfnet::{validate_workflow_net, NotAWorkflowNet, WfVerdict, WfViolation, WorkflowNet};
