use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use super::net::Label;
use super::reachability::{CompiledNet, EnumCaps};
use super::wfnet::WorkflowNet;
use crate::tree::{Trace, TraceSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("state cap of {limit} search states exceeded")]
    StateSpaceExhausted { limit: usize },
    #[error("result cap of {limit} traces exceeded")]
    ResultSetCapExceeded { limit: usize },
}

/// Enumerates `{ ℓ(σ)↓Σ : σ fires [source] to [sink], |ℓ(σ)↓Σ| ≤ k }`, i.e.
/// the visible labels of complete firing sequences, silent labels projected
/// away. The search deduplicates (marking, visible prefix) states so silent
/// cycles terminate.
pub fn enumerate_net_language(
    wfnet: &WorkflowNet<Label>,
    max_visible_length: usize,
    caps: &EnumCaps,
) -> Result<TraceSet, EnumError> {
    let compiled = CompiledNet::new(wfnet.net());
    // Visible alphabet indices per transition; u16::MAX marks silent.
    const SILENT: u16 = u16::MAX;
    let mut alphabet: Vec<&str> = Vec::new();
    let mut symbol_of: Vec<u16> = Vec::new();
    for t in &compiled.transitions {
        match wfnet.net().label(t).unwrap() {
            Label::Silent => symbol_of.push(SILENT),
            Label::Activity(name) => {
                let idx = match alphabet.iter().position(|a| a == name) {
                    Some(i) => i,
                    None => {
                        alphabet.push(name);
                        alphabet.len() - 1
                    }
                };
                symbol_of.push(idx as u16);
            }
        }
    }

    let initial = compiled.compact(&wfnet.initial_marking());
    let final_marking = compiled.compact(&wfnet.final_marking());

    type State = (super::reachability::CompactMarking, Vec<u16>);
    let mut seen: HashSet<State> = HashSet::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    let mut results: HashSet<Vec<u16>> = HashSet::new();

    let start = (initial, Vec::new());
    if start.0 == final_marking {
        results.insert(Vec::new());
    }
    seen.insert(start.clone());
    queue.push_back(start);

    while let Some((marking, prefix)) = queue.pop_front() {
        for t in 0..compiled.transitions.len() {
            if !compiled.enabled_at(&marking, t) {
                continue;
            }
            let symbol = symbol_of[t];
            let mut next_prefix = prefix.clone();
            if symbol != SILENT {
                if prefix.len() >= max_visible_length {
                    continue;
                }
                next_prefix.push(symbol);
            }
            let next_marking = compiled.fire_at(&marking, t);
            let state = (next_marking, next_prefix);
            if !seen.contains(&state) {
                if seen.len() >= caps.max_states {
                    return Err(EnumError::StateSpaceExhausted { limit: caps.max_states });
                }
                if state.0 == final_marking {
                    if results.len() >= caps.max_traces {
                        return Err(EnumError::ResultSetCapExceeded { limit: caps.max_traces });
                    }
                    results.insert(state.1.clone());
                }
                seen.insert(state.clone());
                queue.push_back(state);
            }
        }
    }

    let mut out = TraceSet::new();
    for trace in results {
        let resolved: Trace = trace.iter().map(|&s| alphabet[s as usize].to_string()).collect();
        out.insert(resolved);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petri::{LabeledNet, PlaceId};

    #[test]
    fn silent_only_net_yields_empty_trace() {
        let mut net = LabeledNet::new();
        let pi = net.add_place("p_i").unwrap();
        let po = net.add_place("p_o").unwrap();
        let t = net.add_transition("t", Label::Silent).unwrap();
        net.add_arc_pt(&pi, &t).unwrap();
        net.add_arc_tp(&t, &po).unwrap();
        let wfnet = WorkflowNet::new(net, PlaceId::new("p_i"), PlaceId::new("p_o")).unwrap();
        let lang = enumerate_net_language(&wfnet, 3, &EnumCaps::default()).unwrap();
        assert_eq!(lang.len(), 1);
        assert!(lang.contains(&Vec::new()));
    }

    #[test]
    fn silent_cycle_terminates() {
        // p_i -> tau -> q, q -> tau -> q (cycle), q -> a -> p_o
        let mut net = LabeledNet::new();
        let pi = net.add_place("p_i").unwrap();
        let q = net.add_place("q").unwrap();
        let po = net.add_place("p_o").unwrap();
        let t0 = net.add_transition("t0", Label::Silent).unwrap();
        let cycle = net.add_transition("cycle", Label::Silent).unwrap();
        let a = net.add_transition("a", Label::activity("a").unwrap()).unwrap();
        net.add_arc_pt(&pi, &t0).unwrap();
        net.add_arc_tp(&t0, &q).unwrap();
        net.add_arc_pt(&q, &cycle).unwrap();
        net.add_arc_tp(&cycle, &q).unwrap();
        net.add_arc_pt(&q, &a).unwrap();
        net.add_arc_tp(&a, &po).unwrap();
        let wfnet = WorkflowNet::new(net, pi, po).unwrap();
        let lang = enumerate_net_language(&wfnet, 2, &EnumCaps::default()).unwrap();
        assert_eq!(lang.len(), 1);
        assert!(lang.contains(&vec!["a".to_string()]));
    }
}
