use std::collections::HashMap;

use proptest::prelude::*;
use scikg::graph::{Datatype, Graph, NodeId};
use scikg::EmbeddingTable;

/// Predicate labels for random stores; `unknownword` has no vector.
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

pub fn table() -> EmbeddingTable {
    EmbeddingTable::parse(VECTORS).unwrap()
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub label: usize,
    pub duplicate_predicate: bool,
    pub object: u8,
    pub nested: bool,
}

fn edge() -> impl Strategy<Value = Edge> {
    (0..LABELS.len(), prop::bool::weighted(0.15), 0u8..6, prop::bool::weighted(0.2))
        .prop_map(|(label, duplicate_predicate, object, nested)| Edge { label, duplicate_predicate, object, nested })
}

/// `min..=max` contributions with up to `max_edges` statements each.
pub fn shapes(min: usize, max: usize, max_edges: usize) -> impl Strategy<Value = Vec<Vec<Edge>>> {
    prop::collection::vec(prop::collection::vec(edge(), 0..=max_edges), min..=max)
}

/// One paper per contribution; edges hang off the contribution, some one level deeper.
pub fn build_store(shape: &[Vec<Edge>]) -> (Graph, Vec<NodeId>) {
    let mut g = Graph::new();
    let mut preds = HashMap::new();
    let mut ids = Vec::new();
    for (i, edges) in shape.iter().enumerate() {
        let paper = g.create_resource(&format!("Paper {i}"), ["Paper"]).unwrap().id;
        let c = g.create_resource(&format!("Contribution {i}"), ["Contribution"]).unwrap().id;
        let hc = *preds.entry("has contribution").or_insert_with(|| g.create_predicate("has contribution").unwrap().id);
        g.create_statement(paper, hc, c, "").unwrap();
        let mut last = c;
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
            g.create_statement(if e.nested { last } else { c }, p, object, "").unwrap();
            if object.is_resource() {
                last = object;
            }
        }
        ids.push(c);
    }
    (g, ids)
}

/// A mutation of a random store for the RDF checks.
#[derive(Debug, Clone)]
pub enum Op {
    Resource(String, Vec<String>),
    Predicate(String),
    Statement { s: usize, p: usize, o: usize, literal: Option<(String, Datatype)> },
    DeleteResource(usize),
}

fn label() -> impl Strategy<Value = String> {
    prop_oneof![
        "[A-Za-z][A-Za-z0-9 ]{0,12}",
        "[a-z]{1,4}[\"\\\\\n\r\t<>#é漢]{1,3}[a-z]{0,3}",
        "\\PC{1,10}",
    ]
    .prop_filter("non-blank", |s| !s.trim().is_empty())
}

fn literal() -> impl Strategy<Value = (String, Datatype)> {
    prop_oneof![
        label().prop_map(|s| (s, Datatype::String)),
        (-1000i64..1000).prop_map(|n| (n.to_string(), Datatype::Integer)),
        (-100i32..100, 0u32..100).prop_map(|(a, b)| (format!("{a}.{b}"), Datatype::Decimal)),
        any::<bool>().prop_map(|b| (b.to_string(), Datatype::Boolean)),
        Just(("https://example.org/x?y=1".to_owned(), Datatype::Uri)),
    ]
}

pub fn ops() -> impl Strategy<Value = Vec<Op>> {
    let op = prop_oneof![
        3 => (label(), prop::collection::vec("[A-Z][a-z]{0,6}( [a-z]{1,4})?", 0..2)).prop_map(|(l, c)| Op::Resource(l, c)),
        2 => label().prop_map(Op::Predicate),
        5 => (any::<usize>(), any::<usize>(), any::<usize>(), prop::option::of(literal()))
            .prop_map(|(s, p, o, literal)| Op::Statement { s, p, o, literal }),
        1 => any::<usize>().prop_map(Op::DeleteResource),
    ];
    prop::collection::vec(op, 0..40)
}

pub fn apply(ops: &[Op]) -> Graph {
    let mut g = Graph::new();
    for op in ops {
        match op {
            Op::Resource(l, c) => {
                g.create_resource(l, c.clone()).unwrap();
            }
            Op::Predicate(l) => {
                g.create_predicate(l).unwrap();
            }
            Op::Statement { s, p, o, literal } => {
                let rs: Vec<NodeId> = g.resources().map(|r| r.id).collect();
                let ps: Vec<_> = g.predicates().map(|p| p.id).collect();
                if rs.is_empty() || ps.is_empty() {
                    continue;
                }
                let object = match literal {
                    Some((v, d)) => g.create_literal(v, *d).unwrap().id,
                    None => rs[o % rs.len()],
                };
                g.create_statement(rs[s % rs.len()], ps[p % ps.len()], object, "").unwrap();
            }
            Op::DeleteResource(i) => {
                let free: Vec<NodeId> = g.resources().map(|r| r.id).filter(|r| g.incident_count(*r) == 0).collect();
                if !free.is_empty() {
                    g.delete_node(free[i % free.len()]).unwrap();
                }
            }
        }
    }
    g
}
