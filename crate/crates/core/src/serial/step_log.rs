use std::fmt::Write as _;

use crate::reduce::ReductionStep;
use crate::serial::write_tree_text;

/// Renders a reduction step log, one line per step:
///
/// ```text
/// <op-symbol> members=[ids] new=<id> label=<tree-text>
/// ```
pub fn write_step_log(steps: &[ReductionStep]) -> String {
    let mut out = String::new();
    for step in steps {
        let members: Vec<&str> =
            step.pattern.members.iter().map(|t| t.as_str()).collect();
        let _ = writeln!(
            out,
            "{} members=[{}] new={} label={}",
            step.pattern.kind.symbol(),
            members.join(","),
            step.new_transition,
            write_tree_text(&step.new_label),
        );
    }
    out
}
