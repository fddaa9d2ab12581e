//! PNML subset: one `net` element with `place`, `transition` and `arc`
//! children (a `page` wrapper is accepted). A transition's label comes from
//! its `name/text` child; a transition with no name element, an empty name,
//! or the text `tau` is silent. Source and sink are inferred as the unique
//! empty-pre-set and empty-post-set places and cross-checked against an
//! optional `initialMarking` of 1 on the source. Unknown elements are ignored
//! with a warning. `write ∘ read` is the identity on the subset modulo
//! attribute order.

use std::fmt::Write as _;

use roxmltree::{Document, Node};
use thiserror::Error;

use crate::petri::{Label, LabeledNet, NetError, PlaceId, TransitionId, SILENT_TOKEN};
use crate::petri::{WfViolation, WorkflowNet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PnmlError {
    #[error("malformed XML: {0}")]
    MalformedXml(String),
    #[error("unsupported PNML feature: {0}")]
    UnsupportedFeature(String),
    #[error("not a workflow net: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    NotAWorkflowNet(Vec<WfViolation>),
}

impl From<NetError> for PnmlError {
    fn from(e: NetError) -> Self {
        PnmlError::MalformedXml(e.to_string())
    }
}

fn text_of(node: Node) -> Option<String> {
    node.children()
        .find(|c| c.has_tag_name("text"))
        .and_then(|t| t.text())
        .map(|s| s.trim().to_string())
}

fn attr<'a>(node: Node<'a, 'a>, name: &str) -> Result<&'a str, PnmlError> {
    node.attribute(name).ok_or_else(|| {
        PnmlError::MalformedXml(format!("<{}> element without {name} attribute", node.tag_name().name()))
    })
}

pub fn read_pnml(input: &str) -> Result<WorkflowNet<Label>, PnmlError> {
    let doc = Document::parse(input).map_err(|e| PnmlError::MalformedXml(e.to_string()))?;
    let nets: Vec<Node> =
        doc.descendants().filter(|n| n.is_element() && n.tag_name().name() == "net").collect();
    let net_node = match nets.len() {
        0 => return Err(PnmlError::MalformedXml("no <net> element".into())),
        1 => nets[0],
        n => return Err(PnmlError::UnsupportedFeature(format!("{n} <net> elements, expected 1"))),
    };

    let mut net: LabeledNet<Label> = LabeledNet::new();
    let mut marked_places: Vec<(PlaceId, u32)> = Vec::new();
    let mut arcs: Vec<(String, String)> = Vec::new();

    collect(net_node, &mut net, &mut marked_places, &mut arcs)?;

    for (source, target) in arcs {
        let sp = PlaceId::new(&source);
        let tp = PlaceId::new(&target);
        let st = TransitionId::new(&source);
        let tt = TransitionId::new(&target);
        match (net.contains_place(&sp), net.contains_transition(&tt)) {
            (true, true) => net.add_arc_pt(&sp, &tt)?,
            _ => match (net.contains_transition(&st), net.contains_place(&tp)) {
                (true, true) => net.add_arc_tp(&st, &tp)?,
                _ => {
                    return Err(PnmlError::MalformedXml(format!(
                        "arc {source} -> {target} does not connect a declared place and transition"
                    )))
                }
            },
        }
    }

    // Infer the boundary from the arc structure.
    let sources: Vec<PlaceId> =
        net.places().filter(|p| net.place_preset(p).unwrap().is_empty()).cloned().collect();
    let sinks: Vec<PlaceId> =
        net.places().filter(|p| net.place_postset(p).unwrap().is_empty()).cloned().collect();
    if sources.len() != 1 {
        let violations = sources.into_iter().map(WfViolation::ExtraSourcePlace).collect();
        return Err(PnmlError::NotAWorkflowNet(violations));
    }
    if sinks.len() != 1 {
        let violations = sinks.into_iter().map(WfViolation::ExtraSinkPlace).collect();
        return Err(PnmlError::NotAWorkflowNet(violations));
    }
    let source = sources.into_iter().next().unwrap();
    let sink = sinks.into_iter().next().unwrap();

    for (place, tokens) in &marked_places {
        if *place != source || *tokens != 1 {
            return Err(PnmlError::MalformedXml(format!(
                "initialMarking of {tokens} on {place}, expected a single token on the source {source}"
            )));
        }
    }

    WorkflowNet::new(net, source, sink).map_err(|e| PnmlError::NotAWorkflowNet(e.violations))
}

fn collect(
    node: Node,
    net: &mut LabeledNet<Label>,
    marked: &mut Vec<(PlaceId, u32)>,
    arcs: &mut Vec<(String, String)>,
) -> Result<(), PnmlError> {
    for child in node.children().filter(|c| c.is_element()) {
        match child.tag_name().name() {
            "place" => {
                let id = net.add_place(attr(child, "id")?)?;
                if let Some(m) = child.children().find(|c| c.has_tag_name("initialMarking")) {
                    let tokens: u32 = text_of(m)
                        .unwrap_or_default()
                        .parse()
                        .map_err(|_| PnmlError::MalformedXml(format!("bad initialMarking on {id}")))?;
                    if tokens > 0 {
                        marked.push((id.clone(), tokens));
                    }
                }
            }
            "transition" => {
                let id = attr(child, "id")?;
                let label = match child.children().find(|c| c.has_tag_name("name")).and_then(text_of)
                {
                    None => Label::Silent,
                    Some(text) if text.is_empty() || text == SILENT_TOKEN => Label::Silent,
                    Some(text) => Label::Activity(text),
                };
                net.add_transition(id, label)?;
            }
            "arc" => {
                if let Some(inscription) =
                    child.children().find(|c| c.has_tag_name("inscription")).and_then(text_of)
                {
                    if inscription.parse::<u32>() != Ok(1) {
                        return Err(PnmlError::UnsupportedFeature(format!(
                            "arc weight {inscription} (only weight 1 is supported)"
                        )));
                    }
                }
                arcs.push((attr(child, "source")?.to_string(), attr(child, "target")?.to_string()));
            }
            "page" => collect(child, net, marked, arcs)?,
            "name" => {} // net name, irrelevant
            other => log::warn!("ignoring unsupported PNML element <{other}>"),
        }
    }
    Ok(())
}

fn escape(text: &str, out: &mut String) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
}

pub fn write_pnml(wfnet: &WorkflowNet<Label>) -> String {
    let net = wfnet.net();
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n");
    out.push_str("  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n");
    out.push_str("    <page id=\"page1\">\n");
    for place in net.places() {
        out.push_str("      <place id=\"");
        escape(place.as_str(), &mut out);
        out.push('"');
        if place == wfnet.source() {
            out.push_str(">\n        <initialMarking><text>1</text></initialMarking>\n      </place>\n");
        } else {
            out.push_str("/>\n");
        }
    }
    for trans in net.transitions() {
        out.push_str("      <transition id=\"");
        escape(trans.as_str(), &mut out);
        out.push('"');
        match net.label(trans).unwrap() {
            Label::Silent => out.push_str("/>\n"),
            Label::Activity(name) => {
                out.push_str(">\n        <name><text>");
                escape(name, &mut out);
                out.push_str("</text></name>\n      </transition>\n");
            }
        }
    }
    for (i, (from, to)) in net.arcs().enumerate() {
        let _ = write!(out, "      <arc id=\"arc{i}\" source=\"");
        escape(&from, &mut out);
        out.push_str("\" target=\"");
        escape(&to, &mut out);
        out.push_str("\"/>\n");
    }
    out.push_str("    </page>\n  </net>\n</pnml>\n");
    out
}
