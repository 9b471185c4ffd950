//! Papers and research contributions on top of the graph store.
//!
//! A paper node links to one or more contribution nodes; each contribution
//! addresses a research problem, optionally employs a method and yields
//! results. The links use a small fixed predicate vocabulary
//! ([`predicates`]); anything else is attached with [`describe_freely`].

pub mod metadata;

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::graph::{Datatype, Graph, GraphError, NodeId, NodeRef, PredicateId, Statement, MAX_LABEL_CHARS};

/// Reserved predicate labels.
pub mod predicates {
    pub const HAS_CONTRIBUTION: &str = "has contribution";
    pub const ADDRESSES: &str = "addresses";
    pub const EMPLOYS: &str = "employs";
    pub const YIELDS: &str = "yields";
    pub const DOI: &str = "doi";
    pub const AUTHOR: &str = "author";
    pub const PUBLICATION_YEAR: &str = "publication year";
}

/// Class labels attached to domain nodes.
pub mod classes {
    pub const PAPER: &str = "Paper";
    pub const CONTRIBUTION: &str = "Contribution";
    pub const PROBLEM: &str = "Problem";
    pub const METHOD: &str = "Method";
    pub const RESULT: &str = "Result";
}

#[derive(Debug, thiserror::Error)]
pub enum DomainError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("paper title must not be empty")]
    EmptyTitle,
    #[error("a paper needs at least one contribution")]
    NoContributions,
    #[error("contribution {index} has no research problem")]
    MissingProblem { index: usize },
    #[error("contribution {index} has no research result")]
    MissingResult { index: usize },
    #[error("{0:?} is not a DOI of the form 10.<registrant>/<suffix>")]
    InvalidDoi(String),
    #[error("{0} is not a paper")]
    NotAPaper(NodeId),
    #[error("line {line}: {message}")]
    Import { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T, E = DomainError> = std::result::Result<T, E>;

/// Object of a free-form statement: a bare string names a resource (reused by
/// exact label), an object with `value` is a literal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectSpec {
    Resource(String),
    Literal {
        value: String,
        #[serde(default)]
        datatype: Datatype,
    },
}

impl From<&str> for ObjectSpec {
    fn from(label: &str) -> Self {
        ObjectSpec::Resource(label.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSpec {
    pub predicate: String,
    pub object: ObjectSpec,
}

impl TripleSpec {
    pub fn new(predicate: &str, object: impl Into<ObjectSpec>) -> Self {
        TripleSpec { predicate: predicate.to_owned(), object: object.into() }
    }
}

fn default_true() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub problem: Option<String>,
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default)]
    pub results: Vec<String>,
    /// Drafts may lack a problem or results.
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub statements: Vec<TripleSpec>,
}

impl Default for ContributionSpec {
    fn default() -> Self {
        ContributionSpec {
            label: None,
            problem: None,
            method: None,
            results: Vec::new(),
            complete: true,
            statements: Vec::new(),
        }
    }
}

impl ContributionSpec {
    pub fn new(problem: &str, results: &[&str]) -> Self {
        ContributionSpec {
            problem: Some(problem.to_owned()),
            results: results.iter().map(|r| r.to_string()).collect(),
            ..Default::default()
        }
    }
}

/// Parameters of [`create_paper`]; also one record of the bulk import format.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PaperSpec {
    pub title: String,
    #[serde(default)]
    pub doi: Option<String>,
    #[serde(default)]
    pub authors: Vec<String>,
    #[serde(default)]
    pub year: Option<i64>,
    pub contributions: Vec<ContributionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paper {
    pub node: NodeId,
    pub title: String,
    pub doi: Option<String>,
    pub authors: Vec<String>,
    pub publication_year: Option<i64>,
    pub contributions: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResearchContribution {
    pub node: NodeId,
    pub label: String,
    pub problem: Option<NodeId>,
    pub method: Option<NodeId>,
    pub results: Vec<NodeId>,
    pub extra_statements: Vec<Statement>,
}

/// A paper with its contributions resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperDetail {
    pub paper: Paper,
    pub contributions: Vec<ResearchContribution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub node: NodeId,
    pub ok: bool,
    pub missing: Vec<String>,
}

/// Accepts `10.<registrant>/<suffix>`, registrant being dot-separated digit groups.
pub fn is_valid_doi(doi: &str) -> bool {
    let Some(rest) = doi.strip_prefix("10.") else {
        return false;
    };
    let Some((registrant, suffix)) = rest.split_once('/') else {
        return false;
    };
    !registrant.is_empty()
        && registrant.split('.').all(|g| !g.is_empty() && g.bytes().all(|b| b.is_ascii_digit()))
        && !suffix.is_empty()
        && !suffix.chars().any(char::is_whitespace)
}

fn label_ok(label: &str) -> Result<()> {
    if label.trim().is_empty() {
        return Err(GraphError::EmptyLabel.into());
    }
    if label.chars().count() > MAX_LABEL_CHARS {
        return Err(GraphError::LabelTooLong { max: MAX_LABEL_CHARS }.into());
    }
    Ok(())
}

fn triple_ok(triple: &TripleSpec) -> Result<()> {
    label_ok(&triple.predicate)?;
    match &triple.object {
        ObjectSpec::Resource(label) => label_ok(label),
        ObjectSpec::Literal { value, datatype } if !datatype.accepts(value) => {
            Err(GraphError::DatatypeMismatch { datatype: *datatype, value: value.clone() }.into())
        }
        ObjectSpec::Literal { .. } => Ok(()),
    }
}

/// Checks everything that could fail so creation never stops halfway.
fn check_spec(spec: &PaperSpec) -> Result<()> {
    if spec.title.trim().is_empty() {
        return Err(DomainError::EmptyTitle);
    }
    label_ok(&spec.title)?;
    if let Some(doi) = &spec.doi {
        if !is_valid_doi(doi) {
            return Err(DomainError::InvalidDoi(doi.clone()));
        }
    }
    if spec.contributions.is_empty() {
        return Err(DomainError::NoContributions);
    }
    for (index, c) in spec.contributions.iter().enumerate() {
        if c.complete && c.problem.is_none() {
            return Err(DomainError::MissingProblem { index });
        }
        if c.complete && c.results.is_empty() {
            return Err(DomainError::MissingResult { index });
        }
        for label in c.label.iter().chain(&c.problem).chain(&c.method).chain(&c.results) {
            label_ok(label)?;
        }
        c.statements.iter().try_for_each(triple_ok)?;
    }
    Ok(())
}

/// First predicate carrying `label`, creating it when absent.
pub fn ensure_predicate(graph: &mut Graph, label: &str) -> Result<PredicateId, GraphError> {
    match graph.predicates_labeled(label).first() {
        Some(id) => Ok(*id),
        None => Ok(graph.create_predicate(label)?.id),
    }
}

fn link(graph: &mut Graph, subject: NodeId, predicate: &str, object: NodeId, agent: &str) -> Result<()> {
    let p = ensure_predicate(graph, predicate)?;
    graph.create_statement(subject, p, object, agent)?;
    Ok(())
}

fn link_literal(
    graph: &mut Graph,
    subject: NodeId,
    predicate: &str,
    value: &str,
    datatype: Datatype,
    agent: &str,
) -> Result<()> {
    let object = graph.create_literal(value, datatype)?.id;
    link(graph, subject, predicate, object, agent)
}

fn link_new_resource(
    graph: &mut Graph,
    subject: NodeId,
    predicate: &str,
    label: &str,
    class: &str,
    agent: &str,
) -> Result<()> {
    let object = graph.create_resource(label, [class])?.id;
    link(graph, subject, predicate, object, agent)
}

/// Materializes a paper, its contributions and their problem/method/result
/// nodes. Problem, method and result nodes are created fresh per contribution.
pub fn create_paper(graph: &mut Graph, spec: &PaperSpec, agent: &str) -> Result<Paper> {
    use predicates::*;
    check_spec(spec)?;
    let paper = graph.create_resource(&spec.title, [classes::PAPER])?.id;
    if let Some(doi) = &spec.doi {
        link_literal(graph, paper, DOI, doi, Datatype::String, agent)?;
    }
    for author in &spec.authors {
        link_literal(graph, paper, AUTHOR, author, Datatype::String, agent)?;
    }
    if let Some(year) = spec.year {
        link_literal(graph, paper, PUBLICATION_YEAR, &year.to_string(), Datatype::Integer, agent)?;
    }
    for (i, c) in spec.contributions.iter().enumerate() {
        let label = c.label.clone().unwrap_or_else(|| format!("Contribution {}", i + 1));
        let node = graph.create_resource(&label, [classes::CONTRIBUTION])?.id;
        link(graph, paper, HAS_CONTRIBUTION, node, agent)?;
        if let Some(problem) = &c.problem {
            link_new_resource(graph, node, ADDRESSES, problem, classes::PROBLEM, agent)?;
        }
        if let Some(method) = &c.method {
            link_new_resource(graph, node, EMPLOYS, method, classes::METHOD, agent)?;
        }
        for result in &c.results {
            link_new_resource(graph, node, YIELDS, result, classes::RESULT, agent)?;
        }
        describe_freely(graph, node, &c.statements, agent)?;
    }
    fetch_paper(graph, paper)
}

fn predicate_label(graph: &Graph, id: PredicateId) -> &str {
    graph.predicate(id).map_or("", |p| p.label.as_str())
}

pub fn fetch_paper(graph: &Graph, node: NodeId) -> Result<Paper> {
    let resource = graph
        .resource(node)
        .ok_or_else(|| GraphError::UnknownReferent(node.to_string()))?;
    if !resource.classes.contains(classes::PAPER) {
        return Err(DomainError::NotAPaper(node));
    }
    let mut paper = Paper {
        node,
        title: resource.label.clone(),
        doi: None,
        authors: Vec::new(),
        publication_year: None,
        contributions: Vec::new(),
    };
    for st in graph.outgoing(node) {
        let text = || graph.node_text(st.object).unwrap_or_default().to_owned();
        match predicate_label(graph, st.predicate) {
            predicates::HAS_CONTRIBUTION => paper.contributions.push(st.object),
            predicates::DOI if paper.doi.is_none() => paper.doi = Some(text()),
            predicates::AUTHOR => paper.authors.push(text()),
            predicates::PUBLICATION_YEAR if paper.publication_year.is_none() => {
                paper.publication_year = text().parse().ok()
            }
            _ => {}
        }
    }
    Ok(paper)
}

pub fn fetch_paper_detail(graph: &Graph, node: NodeId) -> Result<PaperDetail> {
    let paper = fetch_paper(graph, node)?;
    let contributions = paper
        .contributions
        .iter()
        .map(|c| fetch_contribution(graph, *c))
        .collect::<Result<_>>()?;
    Ok(PaperDetail { paper, contributions })
}

pub fn fetch_contribution(graph: &Graph, node: NodeId) -> Result<ResearchContribution> {
    let resource = graph
        .resource(node)
        .ok_or_else(|| GraphError::UnknownReferent(node.to_string()))?;
    let mut out = ResearchContribution {
        node,
        label: resource.label.clone(),
        problem: None,
        method: None,
        results: Vec::new(),
        extra_statements: Vec::new(),
    };
    for st in graph.outgoing(node) {
        match predicate_label(graph, st.predicate) {
            predicates::ADDRESSES if out.problem.is_none() => out.problem = Some(st.object),
            predicates::EMPLOYS if out.method.is_none() => out.method = Some(st.object),
            predicates::YIELDS => out.results.push(st.object),
            _ => out.extra_statements.push(st.clone()),
        }
    }
    Ok(out)
}

/// Presence check for problem and results. Never mutates the graph.
pub fn validate_contribution(graph: &Graph, node: NodeId) -> Result<ValidationReport> {
    if graph.node(node).is_none() {
        return Err(GraphError::UnknownReferent(node.to_string()).into());
    }
    let (mut problem, mut result) = (false, false);
    for st in graph.outgoing(node) {
        match predicate_label(graph, st.predicate) {
            predicates::ADDRESSES => problem = true,
            predicates::YIELDS => result = true,
            _ => {}
        }
    }
    let mut missing = Vec::new();
    if !problem {
        missing.push("missing problem".to_owned());
    }
    if !result {
        missing.push("missing result".to_owned());
    }
    Ok(ValidationReport { node, ok: missing.is_empty(), missing })
}

/// Attaches arbitrary statements to a contribution, reusing predicates and
/// resource objects that already carry the exact label.
pub fn describe_freely(
    graph: &mut Graph,
    contribution: NodeId,
    triples: &[TripleSpec],
    agent: &str,
) -> Result<Vec<Statement>> {
    if graph.resource(contribution).is_none() {
        return Err(GraphError::UnknownReferent(contribution.to_string()).into());
    }
    triples.iter().try_for_each(triple_ok)?;
    let mut created = Vec::with_capacity(triples.len());
    for triple in triples {
        let predicate = ensure_predicate(graph, &triple.predicate)?;
        let object = match &triple.object {
            ObjectSpec::Resource(label) => match graph.resources_labeled(label).first() {
                Some(id) => *id,
                None => graph.create_resource(label, [] as [&str; 0])?.id,
            },
            ObjectSpec::Literal { value, datatype } => graph.create_literal(value, *datatype)?.id,
        };
        created.push(graph.create_statement(contribution, predicate, object, agent)?);
    }
    Ok(created)
}

pub fn papers(graph: &Graph) -> Vec<NodeId> {
    graph.resources_with_class(classes::PAPER)
}

pub fn contributions(graph: &Graph) -> Vec<NodeId> {
    graph.resources_with_class(classes::CONTRIBUTION)
}

/// Title of the paper that owns a contribution, falling back to the
/// contribution's own label.
pub fn contribution_title(graph: &Graph, contribution: NodeId) -> String {
    graph
        .incoming(contribution)
        .find(|st| predicate_label(graph, st.predicate) == predicates::HAS_CONTRIBUTION)
        .and_then(|st| graph.resource(st.subject))
        .or_else(|| graph.resource(contribution))
        .map(|r| r.label.clone())
        .unwrap_or_else(|| contribution.to_string())
}

/// Reconstructs the creation parameters of a stored paper.
pub fn paper_spec(graph: &Graph, node: NodeId) -> Result<PaperSpec> {
    let paper = fetch_paper(graph, node)?;
    let label_of = |id: NodeId| graph.node_text(id).unwrap_or_default().to_owned();
    let mut contributions = Vec::new();
    for c in &paper.contributions {
        let rc = fetch_contribution(graph, *c)?;
        let statements = rc
            .extra_statements
            .iter()
            .map(|st| TripleSpec {
                predicate: predicate_label(graph, st.predicate).to_owned(),
                object: match graph.node(st.object) {
                    Some(NodeRef::Literal(l)) => {
                        ObjectSpec::Literal { value: l.value.clone(), datatype: l.datatype }
                    }
                    _ => ObjectSpec::Resource(label_of(st.object)),
                },
            })
            .collect();
        let complete = rc.problem.is_some() && !rc.results.is_empty();
        contributions.push(ContributionSpec {
            label: Some(rc.label),
            problem: rc.problem.map(label_of),
            method: rc.method.map(label_of),
            results: rc.results.into_iter().map(label_of).collect(),
            complete,
            statements,
        });
    }
    Ok(PaperSpec {
        title: paper.title,
        doi: paper.doi,
        authors: paper.authors,
        year: paper.publication_year,
        contributions,
    })
}

/// Bulk import: one JSON [`PaperSpec`] per line; blank lines are skipped.
/// Every record is parsed and checked before anything is written.
pub fn import_papers<R: BufRead>(graph: &mut Graph, input: R, agent: &str) -> Result<Vec<Paper>> {
    let mut specs = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let spec: PaperSpec = serde_json::from_str(&line)
            .map_err(|e| DomainError::Import { line: i + 1, message: e.to_string() })?;
        check_spec(&spec).map_err(|e| DomainError::Import { line: i + 1, message: e.to_string() })?;
        specs.push(spec);
    }
    specs.iter().map(|spec| create_paper(graph, spec, agent)).collect()
}

/// Writes every paper in the bulk import format, oldest first.
pub fn export_papers<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    for node in papers(graph) {
        let spec = paper_spec(graph, node)?;
        serde_json::to_writer(&mut out, &spec).map_err(std::io::Error::other)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
