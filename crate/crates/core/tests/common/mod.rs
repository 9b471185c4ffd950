#![allow(dead_code)]

use proptest::prelude::*;
use scikg::domain::{create_paper, describe_freely, ContributionSpec, PaperSpec, TripleSpec};
use scikg::embeddings::EmbeddingTable;
use scikg::graph::{Datatype, Graph, NodeId};

/// Predicate labels for random stores. `unknownword` has no vector.
pub const LABELS: &[&str] = &[
    "uses", "employs", "utilizes", "method", "approach", "result", "has result", "dataset", "metric", "unknownword",
];

pub const VECTORS: &str = "\
uses 1 0 0 0
employs 0.95 0.3122498999 0 0
utilizes 0.9 0.2 0.3 0.1
method 0.2 0 0.9797958971 0
approach 0.25 0.1 0.95 0.1
result 0 0 0.1 1
dataset 0.3 0.9 0 0.2
metric 0.1 0.5 0.2 0.8
has 0.05 0.05 0.05 0.05
";

pub fn fixture_table() -> EmbeddingTable<f64> {
    EmbeddingTable::parse(VECTORS).unwrap()
}

pub fn uses_employs() -> (Graph, NodeId, NodeId) {
    let mut g = Graph::new();
    let mut ids = Vec::new();
    for (title, pred, obj) in [("Paper One", "uses", "A"), ("Paper Two", "employs", "B")] {
        let spec = PaperSpec {
            title: title.into(),
            contributions: vec![ContributionSpec { complete: false, ..Default::default() }],
            ..Default::default()
        };
        let c = create_paper(&mut g, &spec, "").unwrap().contributions[0];
        describe_freely(&mut g, c, &[TripleSpec::new(pred, obj)], "").unwrap();
        ids.push(c);
    }
    (g, ids[0], ids[1])
}

/// One statement of a random contribution.
#[derive(Debug, Clone)]
pub struct Edge {
    pub label: usize,
    /// a separate predicate entity with the same label
    pub duplicate_predicate: bool,
    pub object: u8,
    pub nested: bool,
}

pub fn edge() -> impl Strategy<Value = Edge> {
    (0..LABELS.len(), prop::bool::weighted(0.15), 0u8..6, prop::bool::weighted(0.2))
        .prop_map(|(label, duplicate_predicate, object, nested)| Edge { label, duplicate_predicate, object, nested })
}

pub fn contributions(min: usize, max: usize, max_edges: usize) -> impl Strategy<Value = Vec<Vec<Edge>>> {
    prop::collection::vec(prop::collection::vec(edge(), 0..=max_edges), min..=max)
}

/// Materializes a random store: one paper per contribution, edges hanging
/// off the contribution, some of them one level deeper.
pub fn build_store(shape: &[Vec<Edge>]) -> (Graph, Vec<NodeId>) {
    let mut g = Graph::new();
    let mut preds = std::collections::HashMap::new();
    let mut ids = Vec::new();
    for (i, edges) in shape.iter().enumerate() {
        let paper = g.create_resource(&format!("Paper {i}"), ["Paper"]).unwrap().id;
        let c = g.create_resource(&format!("Contribution {i}"), ["Contribution"]).unwrap().id;
        let hc = *preds.entry("has contribution").or_insert_with(|| g.create_predicate("has contribution").unwrap().id);
        g.create_statement(paper, hc, c, "").unwrap();
        let mut last_resource = c;
        for e in edges {
            let label = LABELS[e.label];
            let p = if e.duplicate_predicate {
                g.create_predicate(label).unwrap().id
            } else {
                *preds.entry(label).or_insert_with(|| g.create_predicate(label).unwrap().id)
            };
            let object = match e.object {
                0 | 1 => g.create_literal(&format!("v{}", e.object), Datatype::String).unwrap().id,
                2 => g.create_literal("7", Datatype::Integer).unwrap().id,
                _ => g.create_resource(&format!("obj {}", e.object), [] as [&str; 0]).unwrap().id,
            };
            let subject = if e.nested { last_resource } else { c };
            g.create_statement(subject, p, object, "").unwrap();
            if object.is_resource() {
                last_resource = object;
            }
        }
        ids.push(c);
    }
    (g, ids)
}
