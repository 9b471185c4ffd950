use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::error::{GraphError, Result};
use super::ids::{NodeId, NodeKind, PredicateId, StatementId};
use super::model::*;
use super::persist::{Journal, Record};
use crate::text;

/// Traversal depth used when callers do not pass one.
pub const DEFAULT_DEPTH_LIMIT: usize = 5;

struct ResourceSlot {
    resource: Resource,
    outgoing: Vec<StatementId>,
    incoming: Vec<StatementId>,
}

struct LiteralSlot {
    literal: Literal,
    incoming: usize,
}

struct PredicateSlot {
    predicate: Predicate,
    usage: usize,
}

/// Which label space [`Graph::find_by_label`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    Resource,
    Predicate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelHit {
    pub id: String,
    pub label: String,
}

/// Statement-centric graph store.
///
/// Slots are indexed by the numeric id suffix, so lookups are O(1) and ids
/// are never reused: a deleted entity leaves an empty slot behind. Writes take
/// `&mut self`; callers that share a store across threads wrap it in a
/// readers/writer lock.
#[derive(Default)]
pub struct Graph {
    resources: Vec<Option<ResourceSlot>>,
    literals: Vec<Option<LiteralSlot>>,
    predicates: Vec<Option<PredicateSlot>>,
    statements: Vec<Option<Statement>>,
    resource_labels: HashMap<String, Vec<u64>>,
    predicate_labels: HashMap<String, Vec<u64>>,
    classes: HashMap<String, BTreeSet<u64>>,
    live: Counts,
    last_created_at: Option<DateTime<Utc>>,
    revision: u64,
    journal: Option<Journal>,
    clock: Clock,
}

/// Source of statement timestamps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Clock {
    /// Wall clock at millisecond precision.
    #[default]
    System,
    /// `start` plus one millisecond per statement id; reproducible runs.
    Logical { start: DateTime<Utc> },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub resources: usize,
    pub literals: usize,
    pub predicates: usize,
    pub statements: usize,
}

impl Counts {
    pub fn nodes(&self) -> usize {
        self.resources + self.literals
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("counts", &self.live)
            .field("revision", &self.revision)
            .finish_non_exhaustive()
    }
}

fn slot<T>(v: &[Option<T>], n: u64) -> Option<&T> {
    v.get(usize::try_from(n).ok()?.checked_sub(1)?)?.as_ref()
}

fn slot_mut<T>(v: &mut [Option<T>], n: u64) -> Option<&mut T> {
    v.get_mut(usize::try_from(n).ok()?.checked_sub(1)?)?.as_mut()
}

/// Places `value` at position `n`, padding skipped ids with empty slots.
fn place<T>(v: &mut Vec<Option<T>>, n: u64, value: T) {
    let idx = n as usize - 1;
    if v.len() <= idx {
        v.resize_with(idx + 1, || None);
    }
    v[idx] = Some(value);
}

fn check_label(label: &str) -> Result<()> {
    if label.trim().is_empty() {
        return Err(GraphError::EmptyLabel);
    }
    if label.chars().count() > MAX_LABEL_CHARS {
        return Err(GraphError::LabelTooLong { max: MAX_LABEL_CHARS });
    }
    Ok(())
}

fn now_millis() -> DateTime<Utc> {
    let now = Utc::now();
    DateTime::from_timestamp_millis(now.timestamp_millis()).unwrap_or(now)
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_clock(clock: Clock) -> Self {
        Graph { clock, ..Self::default() }
    }

    pub fn set_clock(&mut self, clock: Clock) {
        self.clock = clock;
    }

    pub(crate) fn attach_journal(&mut self, journal: Journal) {
        self.journal = Some(journal);
    }

    /// Monotonic mutation counter; changes on every successful write.
    pub fn revision(&self) -> u64 {
        self.revision
    }

    pub fn counts(&self) -> Counts {
        self.live
    }

    pub fn statement_count(&self) -> usize {
        self.live.statements
    }

    pub fn node_count(&self) -> usize {
        self.live.nodes()
    }

    /// Next numeric suffix per kind (resources, literals, predicates, statements).
    pub fn next_ids(&self) -> [u64; 4] {
        [
            self.resources.len() as u64 + 1,
            self.literals.len() as u64 + 1,
            self.predicates.len() as u64 + 1,
            self.statements.len() as u64 + 1,
        ]
    }

    fn log(&mut self, record: Record<'_>) -> Result<()> {
        if let Some(journal) = self.journal.as_mut() {
            journal.append(&record)?;
        }
        self.revision += 1;
        Ok(())
    }

    // ---- creation ------------------------------------------------------

    pub fn create_resource<I, S>(&mut self, label: &str, classes: I) -> Result<Resource>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let n = self.resources.len() as u64 + 1;
        self.insert_resource(n, label, classes.into_iter().map(Into::into).collect())
    }

    pub fn create_literal(&mut self, value: &str, datatype: Datatype) -> Result<Literal> {
        let n = self.literals.len() as u64 + 1;
        self.insert_literal(n, value, datatype)
    }

    pub fn create_predicate(&mut self, label: &str) -> Result<Predicate> {
        let n = self.predicates.len() as u64 + 1;
        self.insert_predicate(n, label)
    }

    pub fn create_statement(
        &mut self,
        subject: NodeId,
        predicate: PredicateId,
        object: NodeId,
        agent: &str,
    ) -> Result<Statement> {
        let n = self.statements.len() as u64 + 1;
        let now = match self.clock {
            Clock::System => now_millis(),
            Clock::Logical { start } => start + chrono::Duration::milliseconds(n as i64),
        };
        let created_at = match self.last_created_at {
            Some(last) => now.max(last),
            None => now,
        };
        let agent = if agent.is_empty() { DEFAULT_AGENT } else { agent };
        self.insert_statement(Statement {
            id: StatementId::new(n),
            subject,
            predicate,
            object,
            provenance: Provenance { created_at, created_by: agent.to_owned() },
        })
    }

    /// Creates a resource under a caller-chosen id. The id must be above
    /// every id handed out so far, which keeps suffixes strictly increasing.
    pub(crate) fn insert_resource(
        &mut self,
        n: u64,
        label: &str,
        classes: BTreeSet<String>,
    ) -> Result<Resource> {
        check_label(label)?;
        let id = NodeId::resource(n);
        if n == 0 || (n as usize) <= self.resources.len() {
            return Err(GraphError::IdTaken(id.to_string()));
        }
        let resource = Resource { id, label: label.to_owned(), classes };
        self.log(Record::Resource(&resource))?;
        self.resource_labels.entry(text::nfc(label)).or_default().push(n);
        for class in &resource.classes {
            self.classes.entry(class.clone()).or_default().insert(n);
        }
        place(
            &mut self.resources,
            n,
            ResourceSlot { resource: resource.clone(), outgoing: Vec::new(), incoming: Vec::new() },
        );
        self.live.resources += 1;
        Ok(resource)
    }

    pub(crate) fn insert_literal(&mut self, n: u64, value: &str, datatype: Datatype) -> Result<Literal> {
        if !datatype.accepts(value) {
            return Err(GraphError::DatatypeMismatch { datatype, value: value.to_owned() });
        }
        let id = NodeId::literal(n);
        if n == 0 || (n as usize) <= self.literals.len() {
            return Err(GraphError::IdTaken(id.to_string()));
        }
        let literal = Literal { id, value: value.to_owned(), datatype };
        self.log(Record::Literal(&literal))?;
        place(&mut self.literals, n, LiteralSlot { literal: literal.clone(), incoming: 0 });
        self.live.literals += 1;
        Ok(literal)
    }

    pub(crate) fn insert_predicate(&mut self, n: u64, label: &str) -> Result<Predicate> {
        check_label(label)?;
        let id = PredicateId::new(n);
        if n == 0 || (n as usize) <= self.predicates.len() {
            return Err(GraphError::IdTaken(id.to_string()));
        }
        let predicate = Predicate { id, label: label.to_owned() };
        self.log(Record::Predicate(&predicate))?;
        self.predicate_labels.entry(text::nfc(label)).or_default().push(n);
        place(&mut self.predicates, n, PredicateSlot { predicate: predicate.clone(), usage: 0 });
        self.live.predicates += 1;
        Ok(predicate)
    }

    pub(crate) fn insert_statement(&mut self, statement: Statement) -> Result<Statement> {
        let Statement { id, subject, predicate, object, .. } = statement;
        match subject.kind() {
            NodeKind::Literal if self.literal(subject).is_some() => {
                return Err(GraphError::LiteralAsSubject)
            }
            _ if self.resource(subject).is_none() => {
                return Err(GraphError::UnknownReferent(subject.to_string()))
            }
            _ => {}
        }
        if self.predicate(predicate).is_none() {
            return Err(GraphError::UnknownReferent(predicate.to_string()));
        }
        if self.node(object).is_none() {
            return Err(GraphError::UnknownReferent(object.to_string()));
        }
        if id.number() == 0 || (id.number() as usize) <= self.statements.len() {
            return Err(GraphError::IdTaken(id.to_string()));
        }
        self.log(Record::Statement(&statement))?;
        let n = id.number();
        slot_mut(&mut self.resources, subject.number()).unwrap().outgoing.push(id);
        match object.kind() {
            NodeKind::Resource => slot_mut(&mut self.resources, object.number()).unwrap().incoming.push(id),
            NodeKind::Literal => slot_mut(&mut self.literals, object.number()).unwrap().incoming += 1,
        }
        slot_mut(&mut self.predicates, predicate.number()).unwrap().usage += 1;
        self.last_created_at = Some(
            self.last_created_at
                .map_or(statement.provenance.created_at, |t| t.max(statement.provenance.created_at)),
        );
        place(&mut self.statements, n, statement.clone());
        self.live.statements += 1;
        Ok(statement)
    }

    /// Pads id counters so the next ids handed out are at least `next`.
    pub(crate) fn reserve_ids(&mut self, next: [u64; 4]) {
        fn pad<T>(v: &mut Vec<Option<T>>, next: u64) {
            let len = next.saturating_sub(1) as usize;
            if v.len() < len {
                v.resize_with(len, || None);
            }
        }
        pad(&mut self.resources, next[0]);
        pad(&mut self.literals, next[1]);
        pad(&mut self.predicates, next[2]);
        pad(&mut self.statements, next[3]);
    }

    // ---- deletion ------------------------------------------------------

    pub fn delete_statement(&mut self, id: StatementId) -> Result<Statement> {
        let statement = self
            .statement(id)
            .cloned()
            .ok_or_else(|| GraphError::UnknownReferent(id.to_string()))?;
        self.log(Record::Delete(id.to_string()))?;
        let subject = slot_mut(&mut self.resources, statement.subject.number()).unwrap();
        subject.outgoing.retain(|s| *s != id);
        match statement.object.kind() {
            NodeKind::Resource => slot_mut(&mut self.resources, statement.object.number())
                .unwrap()
                .incoming
                .retain(|s| *s != id),
            NodeKind::Literal => slot_mut(&mut self.literals, statement.object.number()).unwrap().incoming -= 1,
        }
        slot_mut(&mut self.predicates, statement.predicate.number()).unwrap().usage -= 1;
        self.statements[id.number() as usize - 1] = None;
        self.live.statements -= 1;
        Ok(statement)
    }

    /// Removes a resource or literal. Nodes that still take part in a
    /// statement are rejected with [`GraphError::DanglingStatements`].
    pub fn delete_node(&mut self, id: NodeId) -> Result<()> {
        let incident = match id.kind() {
            NodeKind::Resource => slot(&self.resources, id.number())
                .map(|s| s.outgoing.len() + s.incoming.len()),
            NodeKind::Literal => slot(&self.literals, id.number()).map(|s| s.incoming),
        }
        .ok_or_else(|| GraphError::UnknownReferent(id.to_string()))?;
        if incident > 0 {
            return Err(GraphError::DanglingStatements { id: id.to_string(), count: incident });
        }
        self.log(Record::Delete(id.to_string()))?;
        let n = id.number();
        match id.kind() {
            NodeKind::Resource => {
                let slot = self.resources[n as usize - 1].take().unwrap();
                remove_label(&mut self.resource_labels, &slot.resource.label, n);
                for class in &slot.resource.classes {
                    if let Some(set) = self.classes.get_mut(class) {
                        set.remove(&n);
                    }
                }
                self.live.resources -= 1;
            }
            NodeKind::Literal => {
                self.literals[n as usize - 1] = None;
                self.live.literals -= 1;
            }
        }
        Ok(())
    }

    pub fn delete_predicate(&mut self, id: PredicateId) -> Result<()> {
        let usage = slot(&self.predicates, id.number())
            .map(|s| s.usage)
            .ok_or_else(|| GraphError::UnknownReferent(id.to_string()))?;
        if usage > 0 {
            return Err(GraphError::DanglingStatements { id: id.to_string(), count: usage });
        }
        self.log(Record::Delete(id.to_string()))?;
        let slot = self.predicates[id.number() as usize - 1].take().unwrap();
        remove_label(&mut self.predicate_labels, &slot.predicate.label, id.number());
        self.live.predicates -= 1;
        Ok(())
    }

    // ---- lookup --------------------------------------------------------

    pub fn resource(&self, id: NodeId) -> Option<&Resource> {
        if !id.is_resource() {
            return None;
        }
        slot(&self.resources, id.number()).map(|s| &s.resource)
    }

    pub fn literal(&self, id: NodeId) -> Option<&Literal> {
        if id.is_resource() {
            return None;
        }
        slot(&self.literals, id.number()).map(|s| &s.literal)
    }

    pub fn node(&self, id: NodeId) -> Option<NodeRef<'_>> {
        match id.kind() {
            NodeKind::Resource => self.resource(id).map(NodeRef::Resource),
            NodeKind::Literal => self.literal(id).map(NodeRef::Literal),
        }
    }

    pub fn predicate(&self, id: PredicateId) -> Option<&Predicate> {
        slot(&self.predicates, id.number()).map(|s| &s.predicate)
    }

    pub fn statement(&self, id: StatementId) -> Option<&Statement> {
        slot(&self.statements, id.number())
    }

    /// Resource label or literal value of a node.
    pub fn node_text(&self, id: NodeId) -> Option<&str> {
        self.node(id).map(|n| n.text())
    }

    pub fn resources(&self) -> impl Iterator<Item = &Resource> + '_ {
        self.resources.iter().flatten().map(|s| &s.resource)
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> + '_ {
        self.literals.iter().flatten().map(|s| &s.literal)
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Predicate> + '_ {
        self.predicates.iter().flatten().map(|s| &s.predicate)
    }

    pub fn statements(&self) -> impl Iterator<Item = &Statement> + '_ {
        self.statements.iter().flatten()
    }

    /// Outgoing statements of `subject` in creation order. Unknown ids and
    /// literals yield nothing.
    pub fn outgoing(&self, subject: NodeId) -> impl Iterator<Item = &Statement> + '_ {
        let ids: &[StatementId] = match subject.kind() {
            NodeKind::Resource => slot(&self.resources, subject.number())
                .map(|s| s.outgoing.as_slice())
                .unwrap_or(&[]),
            NodeKind::Literal => &[],
        };
        ids.iter().filter_map(|id| self.statement(*id))
    }

    /// Statements whose object is the resource `object`, in creation order.
    pub fn incoming(&self, object: NodeId) -> impl Iterator<Item = &Statement> + '_ {
        let ids: &[StatementId] = match object.kind() {
            NodeKind::Resource => slot(&self.resources, object.number())
                .map(|s| s.incoming.as_slice())
                .unwrap_or(&[]),
            NodeKind::Literal => &[],
        };
        ids.iter().filter_map(|id| self.statement(*id))
    }

    pub fn statements_about(&self, subject: NodeId) -> Vec<Statement> {
        self.outgoing(subject).cloned().collect()
    }

    /// Breadth-first expansion from `root` along subject→object edges.
    ///
    /// Nodes at distance `< depth_limit` are expanded, each at most once, so
    /// the walk terminates on cyclic graphs.
    pub fn subgraph(&self, root: NodeId, depth_limit: usize) -> Result<Subgraph> {
        if depth_limit == 0 {
            return Err(GraphError::InvalidDepth);
        }
        if self.node(root).is_none() {
            return Err(GraphError::UnknownReferent(root.to_string()));
        }
        let mut statements = Vec::new();
        let mut visited = HashSet::from([root]);
        let mut queue = VecDeque::from([(root, 0usize)]);
        while let Some((node, depth)) = queue.pop_front() {
            for st in self.outgoing(node) {
                statements.push(st.clone());
                if depth + 1 < depth_limit && st.object.is_resource() && visited.insert(st.object) {
                    queue.push_back((st.object, depth + 1));
                }
            }
        }
        Ok(Subgraph { root, depth_limit, statements })
    }

    /// Case-insensitive substring search over labels. Exact matches come
    /// first, then ascending id.
    pub fn find_by_label(&self, kind: LabelKind, query: &str, limit: usize) -> Vec<LabelHit> {
        let needle = text::normalize(query);
        let rank = |label: &str| -> Option<bool> {
            let hay = text::normalize(label);
            hay.contains(&needle).then(|| hay != needle)
        };
        let mut hits: Vec<(bool, u64, String, &str)> = match kind {
            LabelKind::Resource => self
                .resources()
                .filter_map(|r| Some((rank(&r.label)?, r.id.number(), r.id.to_string(), r.label.as_str())))
                .collect(),
            LabelKind::Predicate => self
                .predicates()
                .filter_map(|p| Some((rank(&p.label)?, p.id.number(), p.id.to_string(), p.label.as_str())))
                .collect(),
        };
        hits.sort_by_key(|h| (h.0, h.1));
        hits.into_iter()
            .take(limit)
            .map(|(_, _, id, label)| LabelHit { id, label: label.to_owned() })
            .collect()
    }

    pub fn find_resources(&self, query: &str, limit: usize) -> Vec<Resource> {
        self.find_by_label(LabelKind::Resource, query, limit)
            .into_iter()
            .filter_map(|h| self.resource(h.id.parse().ok()?).cloned())
            .collect()
    }

    pub fn find_predicates(&self, query: &str, limit: usize) -> Vec<Predicate> {
        self.find_by_label(LabelKind::Predicate, query, limit)
            .into_iter()
            .filter_map(|h| self.predicate(h.id.parse().ok()?).cloned())
            .collect()
    }

    /// Resources whose label equals `label` after NFC normalization, oldest first.
    pub fn resources_labeled(&self, label: &str) -> Vec<NodeId> {
        self.resource_labels
            .get(&text::nfc(label))
            .map(|ids| ids.iter().map(|n| NodeId::resource(*n)).collect())
            .unwrap_or_default()
    }

    pub fn predicates_labeled(&self, label: &str) -> Vec<PredicateId> {
        self.predicate_labels
            .get(&text::nfc(label))
            .map(|ids| ids.iter().map(|n| PredicateId::new(*n)).collect())
            .unwrap_or_default()
    }

    pub fn resources_with_class(&self, class: &str) -> Vec<NodeId> {
        self.classes
            .get(class)
            .map(|set| set.iter().map(|n| NodeId::resource(*n)).collect())
            .unwrap_or_default()
    }

    /// Number of statements touching `id` as subject or object.
    pub fn incident_count(&self, id: NodeId) -> usize {
        match id.kind() {
            NodeKind::Resource => slot(&self.resources, id.number())
                .map_or(0, |s| s.outgoing.len() + s.incoming.len()),
            NodeKind::Literal => slot(&self.literals, id.number()).map_or(0, |s| s.incoming),
        }
    }
}

fn remove_label(index: &mut HashMap<String, Vec<u64>>, label: &str, n: u64) {
    let key = text::nfc(label);
    if let Some(ids) = index.get_mut(&key) {
        ids.retain(|x| *x != n);
        if ids.is_empty() {
            index.remove(&key);
        }
    }
}
