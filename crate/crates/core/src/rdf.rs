//! N-Triples export and import.
//!
//! Export is lossy: statement ids, provenance and literal node ids do not
//! survive, and a literal no statement points at is dropped. Resources and
//! predicates get IRIs under a [`UriScheme`]; each carries an `rdfs:label`
//! line and resources add one `rdf:type` line per class. Output lines are
//! sorted bytewise and end in LF.
//!
//! Import maps scheme IRIs back to their ids when the id is free, so importing
//! an export into an empty graph reproduces the same export. Any other IRI or
//! blank node becomes a fresh resource (or predicate) labeled with the IRI.
//! OWL vocabulary gets no special treatment.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{self, Write};

use oxrdf::{NamedOrBlankNode, Term, Triple};
use oxttl::NTriplesParser;
use serde::{Deserialize, Serialize};

use crate::graph::{Datatype, Graph, GraphError, NodeId, NodeKind, PredicateId, MAX_LABEL_CHARS};

pub const DEFAULT_BASE: &str = "http://orkg.example/";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

#[derive(Debug, thiserror::Error)]
pub enum RdfError {
    #[error("invalid base IRI {0:?}: must be absolute and end with '/'")]
    InvalidBase(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UriScheme {
    base: String,
}

impl Default for UriScheme {
    fn default() -> Self {
        UriScheme { base: DEFAULT_BASE.to_owned() }
    }
}

fn iri_char_ok(c: char) -> bool {
    !(c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
}

impl UriScheme {
    pub fn new(base: &str) -> Result<Self, RdfError> {
        let bad = || RdfError::InvalidBase(base.to_owned());
        let (scheme, rest) = base.split_once(':').ok_or_else(bad)?;
        let mut chars = scheme.chars();
        let scheme_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
        if !scheme_ok || rest.is_empty() || !base.ends_with('/') || !base.chars().all(iri_char_ok) {
            return Err(bad());
        }
        Ok(UriScheme { base: base.to_owned() })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn resource_iri(&self, id: NodeId) -> String {
        format!("{}resource/{id}", self.base)
    }

    pub fn predicate_iri(&self, id: PredicateId) -> String {
        format!("{}predicate/{id}", self.base)
    }

    pub fn class_iri(&self, class: &str) -> String {
        format!("{}class/{}", self.base, percent_encode(class))
    }

    fn resource_number(&self, iri: &str) -> Option<u64> {
        let id: NodeId = iri.strip_prefix(&self.base)?.strip_prefix("resource/")?.parse().ok()?;
        (id.kind() == NodeKind::Resource).then(|| id.number())
    }

    fn predicate_number(&self, iri: &str) -> Option<u64> {
        let id: PredicateId = iri.strip_prefix(&self.base)?.strip_prefix("predicate/")?.parse().ok()?;
        Some(id.number())
    }

    fn class_name(&self, iri: &str) -> Option<String> {
        percent_decode(iri.strip_prefix(&self.base)?.strip_prefix("class/")?)
    }
}

fn percent_encode(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for b in s.bytes() {
        if b.is_ascii_alphanumeric() || matches!(b, b'-' | b'.' | b'_' | b'~') {
            out.push(b as char);
        } else {
            out.push_str(&format!("%{b:02X}"));
        }
    }
    out
}

fn percent_decode(s: &str) -> Option<String> {
    let bytes = s.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let hex = s.get(i + 1..i + 3)?;
            out.push(u8::from_str_radix(hex, 16).ok()?);
            i += 3;
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    String::from_utf8(out).ok()
}

/// Quoted N-Triples string literal body.
fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            c if c < ' ' || c == '\u{7f}' => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn literal_term(value: &str, datatype: Datatype) -> String {
    let xsd = match datatype {
        Datatype::Integer => "integer",
        Datatype::Decimal => "decimal",
        Datatype::Boolean => "boolean",
        Datatype::String | Datatype::Uri => return quote(value),
    };
    format!("{}^^<{XSD}{xsd}>", quote(value))
}

/// All export lines, sorted; each without its trailing newline.
pub fn export_lines(graph: &Graph, scheme: &UriScheme) -> Vec<String> {
    let mut lines = Vec::with_capacity(graph.statement_count() + graph.node_count());
    for r in graph.resources() {
        let iri = scheme.resource_iri(r.id);
        lines.push(format!("<{iri}> <{RDFS_LABEL}> {} .", quote(&r.label)));
        for class in &r.classes {
            lines.push(format!("<{iri}> <{RDF_TYPE}> <{}> .", scheme.class_iri(class)));
        }
    }
    for p in graph.predicates() {
        lines.push(format!("<{}> <{RDFS_LABEL}> {} .", scheme.predicate_iri(p.id), quote(&p.label)));
    }
    for st in graph.statements() {
        let object = match graph.literal(st.object) {
            Some(l) => literal_term(&l.value, l.datatype),
            None => format!("<{}>", scheme.resource_iri(st.object)),
        };
        lines.push(format!(
            "<{}> <{}> {object} .",
            scheme.resource_iri(st.subject),
            scheme.predicate_iri(st.predicate)
        ));
    }
    lines.sort_unstable();
    lines
}

pub fn export_ntriples<W: Write>(graph: &Graph, scheme: &UriScheme, mut out: W) -> io::Result<()> {
    for line in export_lines(graph, scheme) {
        out.write_all(line.as_bytes())?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn export_ntriples_string(graph: &Graph, scheme: &UriScheme) -> String {
    let mut out = Vec::new();
    export_ntriples(graph, scheme, &mut out).expect("in-memory write");
    String::from_utf8(out).expect("UTF-8 output")
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportReport {
    pub resources_created: usize,
    pub resources_reused: usize,
    pub predicates_created: usize,
    pub predicates_reused: usize,
    pub literals_created: usize,
    pub statements_created: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum ResourceKey {
    Scheme(u64),
    Foreign(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum PredicateKey {
    Scheme(u64),
    Foreign(String),
}

enum ObjectPlan {
    Resource(ResourceKey),
    Literal(String, Datatype),
}

struct StatementPlan {
    subject: ResourceKey,
    predicate: PredicateKey,
    object: ObjectPlan,
}

#[derive(Default)]
struct ImportPlan {
    resources: Vec<ResourceKey>,
    resource_seen: HashMap<ResourceKey, usize>,
    resource_labels: HashMap<ResourceKey, (String, usize)>,
    classes: HashMap<ResourceKey, BTreeSet<String>>,
    predicates: Vec<PredicateKey>,
    predicate_seen: HashMap<PredicateKey, usize>,
    predicate_labels: HashMap<PredicateKey, (String, usize)>,
    statements: Vec<StatementPlan>,
}

impl ImportPlan {
    fn resource(&mut self, key: ResourceKey, line: usize) -> ResourceKey {
        if !self.resource_seen.contains_key(&key) {
            self.resource_seen.insert(key.clone(), line);
            self.resources.push(key.clone());
        }
        key
    }

    fn predicate(&mut self, key: PredicateKey, line: usize) -> PredicateKey {
        if !self.predicate_seen.contains_key(&key) {
            self.predicate_seen.insert(key.clone(), line);
            self.predicates.push(key.clone());
        }
        key
    }
}

fn resource_key(scheme: &UriScheme, subject: &NamedOrBlankNode) -> ResourceKey {
    match subject {
        NamedOrBlankNode::NamedNode(n) => match scheme.resource_number(n.as_str()) {
            Some(k) => ResourceKey::Scheme(k),
            None => ResourceKey::Foreign(n.as_str().to_owned()),
        },
        NamedOrBlankNode::BlankNode(b) => ResourceKey::Foreign(format!("_:{}", b.as_str())),
    }
}

fn literal_plan(literal: &oxrdf::Literal) -> (String, Datatype) {
    let value = literal.value().to_owned();
    let datatype = match literal.datatype().as_str().strip_prefix(XSD) {
        Some("integer") => Datatype::Integer,
        Some("decimal") => Datatype::Decimal,
        Some("boolean") => Datatype::Boolean,
        _ => Datatype::String,
    };
    // ill-typed values fall back to plain strings
    if datatype.accepts(&value) {
        (value, datatype)
    } else {
        (value, Datatype::String)
    }
}

fn label_error(label: &str, line: usize) -> Option<RdfError> {
    let message = if label.trim().is_empty() {
        "empty label"
    } else if label.chars().count() > MAX_LABEL_CHARS {
        "label too long"
    } else {
        return None;
    };
    Some(RdfError::Parse { line, message: message.to_owned() })
}

fn plan(scheme: &UriScheme, triples: Vec<(usize, Triple)>) -> Result<ImportPlan, RdfError> {
    let mut plan = ImportPlan::default();
    for (line, t) in triples {
        let predicate_iri = t.predicate.as_str();
        // a label on a scheme predicate IRI names that predicate
        if let NamedOrBlankNode::NamedNode(s) = &t.subject {
            if let (Some(k), Term::Literal(l)) = (scheme.predicate_number(s.as_str()), &t.object) {
                if predicate_iri == RDFS_LABEL {
                    let key = plan.predicate(PredicateKey::Scheme(k), line);
                    if let Entry::Vacant(e) = plan.predicate_labels.entry(key) {
                        e.insert((l.value().to_owned(), line));
                        continue;
                    }
                }
            }
        }
        let subject = plan.resource(resource_key(scheme, &t.subject), line);
        if predicate_iri == RDFS_LABEL {
            if let Term::Literal(l) = &t.object {
                if let Entry::Vacant(e) = plan.resource_labels.entry(subject.clone()) {
                    e.insert((l.value().to_owned(), line));
                    continue;
                }
            }
        }
        if predicate_iri == RDF_TYPE {
            if let Term::NamedNode(o) = &t.object {
                if let Some(class) = scheme.class_name(o.as_str()) {
                    plan.classes.entry(subject).or_default().insert(class);
                    continue;
                }
            }
        }
        let predicate = match scheme.predicate_number(predicate_iri) {
            Some(k) => PredicateKey::Scheme(k),
            None => PredicateKey::Foreign(predicate_iri.to_owned()),
        };
        let predicate = plan.predicate(predicate, line);
        let object = match &t.object {
            Term::NamedNode(n) => {
                ObjectPlan::Resource(plan.resource(resource_key(scheme, &NamedOrBlankNode::NamedNode(n.clone())), line))
            }
            Term::BlankNode(b) => ObjectPlan::Resource(plan.resource(ResourceKey::Foreign(format!("_:{}", b.as_str())), line)),
            Term::Literal(l) => {
                let (value, datatype) = literal_plan(l);
                ObjectPlan::Literal(value, datatype)
            }
            #[allow(unreachable_patterns)]
            _ => return Err(RdfError::Parse { line, message: "unsupported term".into() }),
        };
        plan.statements.push(StatementPlan { subject, predicate, object });
    }
    Ok(plan)
}

/// Parses the whole input first; a syntax error leaves the graph untouched.
pub fn import_ntriples(graph: &mut Graph, input: &[u8], scheme: &UriScheme, agent: &str) -> Result<ImportReport, RdfError> {
    let mut triples = Vec::new();
    for (i, raw) in input.split(|b| *b == b'\n').enumerate() {
        let line = i + 1;
        for item in NTriplesParser::new().for_slice(raw) {
            match item {
                Ok(t) => triples.push((line, t)),
                Err(e) => return Err(RdfError::Parse { line, message: e.message().to_owned() }),
            }
        }
    }
    let plan = plan(scheme, triples)?;

    // every label that will be written is checked before the graph changes
    let resource_label = |key: &ResourceKey| -> (String, usize) {
        match plan.resource_labels.get(key) {
            Some(found) => found.clone(),
            None => {
                let line = plan.resource_seen[key];
                match key {
                    ResourceKey::Scheme(n) => (scheme.resource_iri(NodeId::resource(*n)), line),
                    ResourceKey::Foreign(iri) => (iri.clone(), line),
                }
            }
        }
    };
    let predicate_label = |key: &PredicateKey| -> (String, usize) {
        match plan.predicate_labels.get(key) {
            Some(found) => found.clone(),
            None => {
                let line = plan.predicate_seen[key];
                match key {
                    PredicateKey::Scheme(n) => (scheme.predicate_iri(PredicateId::new(*n)), line),
                    PredicateKey::Foreign(iri) => (iri.clone(), line),
                }
            }
        }
    };
    for key in &plan.resources {
        let (label, line) = resource_label(key);
        if let Some(err) = label_error(&label, line) {
            return Err(err);
        }
    }
    for key in &plan.predicates {
        let (label, line) = predicate_label(key);
        if let Some(err) = label_error(&label, line) {
            return Err(err);
        }
    }

    let mut report = ImportReport::default();
    let mut resources: HashMap<&ResourceKey, NodeId> = HashMap::new();
    // scheme ids ascending first so they can keep their numbers
    let ordered: BTreeMap<&ResourceKey, ()> = plan.resources.iter().filter(|k| matches!(k, ResourceKey::Scheme(_))).map(|k| (k, ())).collect();
    let foreign = plan.resources.iter().filter(|k| matches!(k, ResourceKey::Foreign(_)));
    for key in ordered.into_keys().chain(foreign) {
        let classes = plan.classes.get(key).cloned().unwrap_or_default();
        let label = resource_label(key).0;
        let id = match key {
            ResourceKey::Scheme(n) if graph.resource(NodeId::resource(*n)).is_some() => {
                report.resources_reused += 1;
                NodeId::resource(*n)
            }
            ResourceKey::Scheme(n) if *n >= graph.next_ids()[0] => {
                report.resources_created += 1;
                graph.insert_resource(*n, &label, classes)?.id
            }
            _ => {
                report.resources_created += 1;
                graph.create_resource(&label, classes)?.id
            }
        };
        resources.insert(key, id);
    }

    let mut predicates: HashMap<&PredicateKey, PredicateId> = HashMap::new();
    let ordered: BTreeMap<&PredicateKey, ()> = plan.predicates.iter().filter(|k| matches!(k, PredicateKey::Scheme(_))).map(|k| (k, ())).collect();
    let foreign = plan.predicates.iter().filter(|k| matches!(k, PredicateKey::Foreign(_)));
    for key in ordered.into_keys().chain(foreign) {
        let label = predicate_label(key).0;
        let id = match key {
            PredicateKey::Scheme(n) if graph.predicate(PredicateId::new(*n)).is_some() => {
                report.predicates_reused += 1;
                PredicateId::new(*n)
            }
            PredicateKey::Scheme(n) if *n >= graph.next_ids()[2] => {
                report.predicates_created += 1;
                graph.insert_predicate(*n, &label)?.id
            }
            _ => {
                report.predicates_created += 1;
                graph.create_predicate(&label)?.id
            }
        };
        predicates.insert(key, id);
    }

    for st in &plan.statements {
        let object = match &st.object {
            ObjectPlan::Resource(key) => resources[key],
            ObjectPlan::Literal(value, datatype) => {
                report.literals_created += 1;
                graph.create_literal(value, *datatype)?.id
            }
        };
        graph.create_statement(resources[&st.subject], predicates[&st.predicate], object, agent)?;
        report.statements_created += 1;
    }
    Ok(report)
}
