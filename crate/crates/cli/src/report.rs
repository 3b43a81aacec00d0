//! JSON reports for command results.

use finspace::discovery::{AntichainResult, FamilyClass, LearnedPoset, Source};
use finspace::graphs::{GraphError, HasseDiagram};
use finspace::homotopy::CoreReport;
use finspace::FiniteSpace;
use serde_json::{json, Value};

use crate::json::SpaceDoc;

fn sorted_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Vec<[&'a str; 2]> {
    let mut v: Vec<[&str; 2]> = pairs.into_iter().map(|(a, b)| [a, b]).collect();
    v.sort();
    v
}

/// Cover pairs `[cause, effect]` of a T0 space.
pub fn hasse_pairs(space: &FiniteSpace) -> Result<Value, GraphError> {
    let h = HasseDiagram::from_space(space)?;
    Ok(json!(sorted_pairs(h.edge_labels())))
}

pub fn core_report(input: &FiniteSpace, report: &CoreReport) -> Value {
    json!({
        "input_size": input.len(),
        "core_size": report.core.len(),
        "core": SpaceDoc::from_space(&report.core),
        "removals": report
            .removal_trace
            .iter()
            .map(|r| json!({ "element": r.element, "kind": r.kind.as_str() }))
            .collect::<Vec<_>>(),
    })
}

pub fn learned_report(learned: &LearnedPoset) -> Result<Value, GraphError> {
    let mut evidence: Vec<Value> = learned
        .evidence
        .iter()
        .map(|e| match e.source {
            Source::Intervention(i) => json!({ "above": e.above, "below": e.below, "intervention": i }),
            Source::Support(k) => json!({ "above": e.above, "below": e.below, "support": k }),
        })
        .collect();
    evidence.sort_by_key(|v| v.to_string());
    Ok(json!({
        "poset": SpaceDoc::from_space(&learned.space),
        "hasse": hasse_pairs(&learned.space)?,
        "evidence": evidence,
        "interventions": learned.interventions,
        "tests": learned.tests,
        "low_power": sorted_pairs(learned.low_power.iter().map(|(a, b)| (a.as_str(), b.as_str()))),
        "warnings": learned.warnings,
    }))
}

pub fn antichain_report(r: &AntichainResult) -> Value {
    let labels = r.dag.vertices();
    let levels: Vec<Vec<&str>> = r
        .levels
        .iter()
        .map(|l| {
            let mut v: Vec<&str> = l.iter().map(|i| labels[i].as_str()).collect();
            v.sort();
            v
        })
        .collect();
    json!({
        "edges": sorted_pairs(r.dag.edge_labels()),
        "levels": levels,
        "interventions": r.interventions,
        "tests": r.tests,
    })
}

pub fn family_report(class: &FamilyClass) -> Value {
    let f = class.flags;
    json!({
        "label": class.label.as_str(),
        "flags": {
            "trivial": f.trivial,
            "singleton_closed": f.singleton_closed,
            "partition": f.partition,
            "strongly_separating": f.strongly_separating,
            "separating": f.separating,
        },
    })
}
