//! State-of-the-art comparison of research contributions.
//!
//! The engine embeds every predicate used by the compared contributions,
//! builds the pairwise cosine matrix γ, the contribution × predicate mask Φ,
//! and for each anchor predicate `p` slices Φ down to `sim(p) = {q : γ[p][q] ≥ T}`.
//! Row sums of the slice give how many contributions share the predicate
//! group, which becomes the group's frequency in the [`ComparisonTable`].
//!
//! [`compare_baseline`] computes the same table by enumerating every
//! combination of one predicate per contribution. It is exponential in the
//! number of contributions and exists as an oracle and a benchmark reference.

mod baseline;
pub mod export;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::domain::contribution_title;
use crate::embeddings::EmbeddingTable;
use crate::graph::{Graph, GraphError, NodeId, Predicate, PredicateId, Statement, DEFAULT_DEPTH_LIMIT};
use crate::scalar::Scalar;
use crate::text;

pub use baseline::{compare_baseline, compare_baseline_counted};

/// Threshold used when none is configured.
pub const DEFAULT_THRESHOLD: f64 = 0.9;

#[derive(Debug, thiserror::Error)]
pub enum ComparisonError {
    #[error("a comparison needs at least two contributions, got {0}")]
    TooFewContributions(usize),
    #[error("unknown referent {0}")]
    UnknownReferent(String),
    #[error("predicate {0} is not part of the matrix")]
    UnknownPredicate(PredicateId),
    #[error("threshold must lie in (0, 1], got {0}")]
    InvalidThreshold(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Result<T, E = ComparisonError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy)]
pub struct ComparisonConfig<'t, S> {
    pub threshold: S,
    pub table: &'t EmbeddingTable<S>,
    pub depth_limit: usize,
}

impl<'t, S: Scalar> ComparisonConfig<'t, S> {
    pub fn new(table: &'t EmbeddingTable<S>, threshold: S) -> Result<Self> {
        if !(threshold > S::zero() && threshold <= S::one()) {
            return Err(ComparisonError::InvalidThreshold(threshold.to_string()));
        }
        Ok(ComparisonConfig { threshold, table, depth_limit: DEFAULT_DEPTH_LIMIT })
    }

    pub fn with_default_threshold(table: &'t EmbeddingTable<S>) -> Self {
        let threshold = S::from_f64(DEFAULT_THRESHOLD).expect("representable");
        ComparisonConfig { threshold, table, depth_limit: DEFAULT_DEPTH_LIMIT }
    }
}

/// γ: symmetric predicate × predicate similarity with a unit diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityMatrix<S> {
    pub predicates: Vec<PredicateId>,
    values: Vec<S>,
}

impl<S: Scalar> SimilarityMatrix<S> {
    pub fn len(&self) -> usize {
        self.predicates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.values[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        let n = self.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn index_of(&self, p: PredicateId) -> Option<usize> {
        self.predicates.binary_search(&p).ok()
    }

    pub fn value(&self, p: PredicateId, q: PredicateId) -> Option<S> {
        Some(self.get(self.index_of(p)?, self.index_of(q)?))
    }
}

/// Builds γ over `predicates` (sorted by id in the result).
///
/// Predicates with equal normalized labels score exactly 1. When either label
/// is out of vocabulary the entry is 1 for equal labels and 0 otherwise;
/// everything else is the cosine of the label embeddings.
pub fn similarity_matrix<S: Scalar>(predicates: &[Predicate], table: &EmbeddingTable<S>) -> SimilarityMatrix<S> {
    let mut sorted: Vec<&Predicate> = predicates.iter().collect();
    sorted.sort_by_key(|p| p.id);
    sorted.dedup_by_key(|p| p.id);
    let n = sorted.len();
    let keys: Vec<String> = sorted.iter().map(|p| text::normalize(&p.label)).collect();
    let vectors: Vec<_> = sorted.iter().map(|p| table.embed_label(&p.label)).collect();
    let mut values = vec![S::zero(); n * n];
    for i in 0..n {
        values[i * n + i] = S::one();
        for j in i + 1..n {
            let v = if keys[i] == keys[j] {
                S::one()
            } else if vectors[i].oov || vectors[j].oov {
                S::zero()
            } else {
                crate::embeddings::cosine(&vectors[i], &vectors[j]).unwrap_or(S::zero())
            };
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    SimilarityMatrix { predicates: sorted.into_iter().map(|p| p.id).collect(), values }
}

/// Φ: `rows[i][j] = 1` iff contribution `i` uses predicate `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskMatrix {
    pub contributions: Vec<NodeId>,
    pub predicates: Vec<PredicateId>,
    pub rows: Vec<Vec<u8>>,
}

/// φ: Φ restricted to the columns of one `sim(p)`.
pub type SlicedMask = MaskMatrix;

impl MaskMatrix {
    fn from_sets(contributions: &[NodeId], predicates: &[PredicateId], sets: &[BTreeSet<PredicateId>]) -> Self {
        let rows = sets
            .iter()
            .map(|set| predicates.iter().map(|p| u8::from(set.contains(p))).collect())
            .collect();
        MaskMatrix { contributions: contributions.to_vec(), predicates: predicates.to_vec(), rows }
    }

    /// Number of rows with at least one set entry.
    pub fn support(&self) -> usize {
        self.rows.iter().filter(|r| r.contains(&1)).count()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().map(|x| *x as usize).sum()).collect()
    }
}

/// Builds Φ over each contribution's depth-limited subgraph.
pub fn mask_matrix(
    graph: &Graph,
    contributions: &[NodeId],
    predicates: &[PredicateId],
    depth_limit: usize,
) -> Result<MaskMatrix> {
    let sets = contributions
        .iter()
        .map(|c| Ok(subgraph_of(graph, *c, depth_limit)?.iter().map(|s| s.predicate).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(MaskMatrix::from_sets(contributions, predicates, &sets))
}

/// `sim(p)`: every predicate whose similarity to `p` reaches `threshold`.
pub fn sim_set<S: Scalar>(gamma: &SimilarityMatrix<S>, p: PredicateId, threshold: S) -> Result<BTreeSet<PredicateId>> {
    let i = gamma.index_of(p).ok_or(ComparisonError::UnknownPredicate(p))?;
    Ok(gamma
        .row(i)
        .iter()
        .zip(&gamma.predicates)
        .filter(|(v, q)| **v >= threshold || **q == p)
        .map(|(_, q)| *q)
        .collect())
}

/// Restricts Φ to the columns in `sim_p`, keeping Φ's row and column order.
pub fn slice_mask(mask: &MaskMatrix, sim_p: &BTreeSet<PredicateId>) -> Result<SlicedMask> {
    if let Some(p) = sim_p.iter().find(|p| !mask.predicates.contains(p)) {
        return Err(ComparisonError::UnknownPredicate(*p));
    }
    let cols: Vec<usize> = (0..mask.predicates.len())
        .filter(|j| sim_p.contains(&mask.predicates[*j]))
        .collect();
    Ok(MaskMatrix {
        contributions: mask.contributions.clone(),
        predicates: cols.iter().map(|j| mask.predicates[*j]).collect(),
        rows: mask.rows.iter().map(|r| cols.iter().map(|j| r[*j]).collect()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionColumn {
    pub id: NodeId,
    pub title: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellValue {
    pub id: NodeId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredicateGroup<S> {
    pub anchor: PredicateId,
    pub members: BTreeSet<PredicateId>,
    pub display_label: String,
    /// Compared contributions with at least one member predicate.
    pub support: usize,
    /// `support / contributions.len()`.
    pub frequency: S,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable<S> {
    pub contributions: Vec<ContributionColumn>,
    pub threshold: S,
    pub groups: Vec<PredicateGroup<S>>,
    /// `cells[g][c]`: objects of contribution `c` under group `g`, creation-ordered.
    pub cells: Vec<Vec<Vec<CellValue>>>,
}

/// Inputs shared by both comparison routes.
pub(crate) struct Prepared<S> {
    pub contributions: Vec<NodeId>,
    pub statements: Vec<Vec<Statement>>,
    pub predicate_sets: Vec<BTreeSet<PredicateId>>,
    pub labels: Vec<String>,
    pub gamma: SimilarityMatrix<S>,
}

/// One group before it is named and filled.
pub(crate) struct GroupSeed {
    pub anchor: PredicateId,
    pub members: BTreeSet<PredicateId>,
    pub rows: Vec<bool>,
}

fn subgraph_of(graph: &Graph, c: NodeId, depth_limit: usize) -> Result<Vec<Statement>> {
    if graph.resource(c).is_none() {
        return Err(ComparisonError::UnknownReferent(c.to_string()));
    }
    Ok(graph.subgraph(c, depth_limit)?.statements)
}

pub(crate) fn prepare<S: Scalar>(graph: &Graph, ids: &[NodeId], config: &ComparisonConfig<'_, S>) -> Result<Prepared<S>> {
    if ids.len() < 2 {
        return Err(ComparisonError::TooFewContributions(ids.len()));
    }
    let statements = ids
        .iter()
        .map(|c| subgraph_of(graph, *c, config.depth_limit))
        .collect::<Result<Vec<_>>>()?;
    let predicate_sets: Vec<BTreeSet<PredicateId>> = statements
        .iter()
        .map(|sts| sts.iter().map(|s| s.predicate).collect())
        .collect();
    let union: BTreeSet<PredicateId> = predicate_sets.iter().flatten().copied().collect();
    let predicates: Vec<Predicate> = union
        .iter()
        .map(|p| graph.predicate(*p).cloned().ok_or_else(|| ComparisonError::UnknownReferent(p.to_string())))
        .collect::<Result<_>>()?;
    let gamma = similarity_matrix(&predicates, config.table);
    let labels = predicates.into_iter().map(|p| p.label).collect();
    Ok(Prepared { contributions: ids.to_vec(), statements, predicate_sets, labels, gamma })
}

pub(crate) fn assemble<S: Scalar>(graph: &Graph, prep: &Prepared<S>, threshold: S, seeds: Vec<GroupSeed>) -> ComparisonTable<S> {
    let n = prep.contributions.len();
    let occurrences = |p: &PredicateId| prep.predicate_sets.iter().filter(|s| s.contains(p)).count();
    let label_of = |p: &PredicateId| prep.gamma.index_of(*p).map_or("", |i| prep.labels[i].as_str());

    let mut rows: Vec<(PredicateGroup<S>, Vec<Vec<CellValue>>)> = seeds
        .into_iter()
        .map(|seed| {
            let display = seed
                .members
                .iter()
                .min_by(|a, b| {
                    // ties go to the earliest-created predicate
                    occurrences(b).cmp(&occurrences(a)).then_with(|| a.cmp(b))
                })
                .map(|p| label_of(p).to_owned())
                .unwrap_or_default();
            let support = seed.rows.iter().filter(|r| **r).count();
            let cells = prep
                .statements
                .iter()
                .map(|sts| {
                    let mut hits: Vec<&Statement> =
                        sts.iter().filter(|s| seed.members.contains(&s.predicate)).collect();
                    hits.sort_by_key(|s| (s.provenance.created_at, s.id));
                    hits.into_iter()
                        .map(|s| CellValue {
                            id: s.object,
                            label: graph.node_text(s.object).unwrap_or_default().to_owned(),
                        })
                        .collect()
                })
                .collect();
            let group = PredicateGroup {
                anchor: seed.anchor,
                members: seed.members,
                display_label: display,
                support,
                frequency: S::ratio(support, n),
            };
            (group, cells)
        })
        .collect();
    rows.sort_by(|(a, _), (b, _)| {
        b.support
            .cmp(&a.support)
            .then_with(|| a.display_label.cmp(&b.display_label))
            .then_with(|| a.members.cmp(&b.members))
    });
    let (groups, cells) = rows.into_iter().unzip();
    ComparisonTable {
        contributions: prep
            .contributions
            .iter()
            .map(|c| ContributionColumn { id: *c, title: contribution_title(graph, *c) })
            .collect(),
        threshold,
        groups,
        cells,
    }
}

/// Compares contributions through the mask matrices.
pub fn compare<S: Scalar>(graph: &Graph, ids: &[NodeId], config: &ComparisonConfig<'_, S>) -> Result<ComparisonTable<S>> {
    let prep = prepare(graph, ids, config)?;
    let mask = MaskMatrix::from_sets(&prep.contributions, &prep.gamma.predicates, &prep.predicate_sets);
    let mut seen = HashSet::new();
    let mut seeds = Vec::new();
    for &anchor in &prep.gamma.predicates {
        let members = sim_set(&prep.gamma, anchor, config.threshold)?;
        if !seen.insert(members.clone()) {
            continue;
        }
        let sliced = slice_mask(&mask, &members)?;
        let rows = sliced.row_sums().into_iter().map(|s| s > 0).collect();
        seeds.push(GroupSeed { anchor, members, rows });
    }
    Ok(assemble(graph, &prep, config.threshold, seeds))
}
