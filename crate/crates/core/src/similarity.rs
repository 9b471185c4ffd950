//! Contribution similarity over flattened subgraph documents.
//!
//! A contribution's subgraph becomes a document by concatenating
//! `subject predicate object` labels of every statement. Documents are
//! weighted with raw term frequency times smoothed inverse document frequency
//! `ln((1 + N) / (1 + df)) + 1`, L2-normalized, and ranked by cosine.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError, NodeId, DEFAULT_DEPTH_LIMIT};
use crate::scalar::Scalar;
use crate::text;

#[derive(Debug, thiserror::Error)]
pub enum SimilarityError {
    #[error("cannot index an empty corpus")]
    EmptyCorpus,
    #[error("k must be at least 1")]
    InvalidK,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphDocument {
    pub contribution: NodeId,
    pub text: String,
    pub tokens: Vec<String>,
}

impl SubgraphDocument {
    pub fn from_text(contribution: NodeId, text: String) -> Self {
        let tokens = text::tokenize(&text);
        SubgraphDocument { contribution, text, tokens }
    }
}

pub fn build_document(graph: &Graph, contribution: NodeId) -> Result<SubgraphDocument, SimilarityError> {
    build_document_with_depth(graph, contribution, DEFAULT_DEPTH_LIMIT)
}

pub fn build_document_with_depth(
    graph: &Graph,
    contribution: NodeId,
    depth_limit: usize,
) -> Result<SubgraphDocument, SimilarityError> {
    let sub = graph.subgraph(contribution, depth_limit)?;
    let mut parts = Vec::with_capacity(sub.statements.len() * 3);
    for st in &sub.statements {
        parts.push(graph.node_text(st.subject).unwrap_or_default());
        parts.push(graph.predicate(st.predicate).map_or("", |p| p.label.as_str()));
        parts.push(graph.node_text(st.object).unwrap_or_default());
    }
    Ok(SubgraphDocument::from_text(contribution, parts.join(" ")))
}

type SparseVector<S> = Vec<(u32, S)>;

#[derive(Debug, Clone)]
pub struct TfIdfIndex<S> {
    terms: HashMap<String, u32>,
    document_frequency: Vec<usize>,
    idf: Vec<S>,
    documents: Vec<(NodeId, SparseVector<S>)>,
}

/// One ranked hit; `score` is the cosine in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranked<S> {
    pub contribution: NodeId,
    pub score: S,
}

fn normalize_in_place<S: Scalar>(v: &mut SparseVector<S>) {
    let norm = v.iter().fold(S::zero(), |acc, (_, w)| acc + *w * *w).sqrt();
    if norm > S::zero() {
        for (_, w) in v.iter_mut() {
            *w = *w / norm;
        }
    }
}

fn dot<S: Scalar>(a: &SparseVector<S>, b: &SparseVector<S>) -> S {
    let (mut i, mut j, mut acc) = (0, 0, S::zero());
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = acc + a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

impl<S: Scalar> TfIdfIndex<S> {
    pub fn build(documents: &[SubgraphDocument]) -> Result<Self, SimilarityError> {
        if documents.is_empty() {
            return Err(SimilarityError::EmptyCorpus);
        }
        // term ids follow sorted term order so the index does not depend on
        // document insertion order
        let vocabulary: BTreeMap<&str, usize> = {
            let mut df = BTreeMap::new();
            for doc in documents {
                let mut uniq: Vec<&str> = doc.tokens.iter().map(String::as_str).collect();
                uniq.sort_unstable();
                uniq.dedup();
                for t in uniq {
                    *df.entry(t).or_insert(0usize) += 1;
                }
            }
            df
        };
        let n = documents.len();
        let mut terms = HashMap::with_capacity(vocabulary.len());
        let mut document_frequency = Vec::with_capacity(vocabulary.len());
        let mut idf = Vec::with_capacity(vocabulary.len());
        for (i, (term, df)) in vocabulary.iter().enumerate() {
            terms.insert((*term).to_owned(), i as u32);
            document_frequency.push(*df);
            idf.push(Self::smoothed_idf(n, *df));
        }
        let mut index = TfIdfIndex { terms, document_frequency, idf, documents: Vec::with_capacity(n) };
        for doc in documents {
            let v = index.weigh(&doc.tokens);
            index.documents.push((doc.contribution, v));
        }
        Ok(index)
    }

    /// `ln((1 + n) / (1 + df)) + 1`
    pub fn smoothed_idf(n: usize, df: usize) -> S {
        (S::from_count(1 + n) / S::from_count(1 + df)).ln() + S::one()
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn document_frequency(&self, term: &str) -> usize {
        self.terms.get(term).map_or(0, |i| self.document_frequency[*i as usize])
    }

    pub fn idf(&self, term: &str) -> Option<S> {
        self.terms.get(term).map(|i| self.idf[*i as usize])
    }

    /// Normalized weight of `term` in an indexed document.
    pub fn weight(&self, contribution: NodeId, term: &str) -> Option<S> {
        let id = *self.terms.get(term)?;
        let (_, v) = self.documents.iter().find(|(c, _)| *c == contribution)?;
        Some(v.iter().find(|(t, _)| *t == id).map_or(S::zero(), |(_, w)| *w))
    }

    pub fn contains(&self, contribution: NodeId) -> bool {
        self.documents.iter().any(|(c, _)| *c == contribution)
    }

    /// tf·idf over the index vocabulary; terms the index has never seen are dropped.
    fn weigh(&self, tokens: &[String]) -> SparseVector<S> {
        let mut tf: BTreeMap<u32, usize> = BTreeMap::new();
        for t in tokens {
            if let Some(id) = self.terms.get(t) {
                *tf.entry(*id).or_insert(0) += 1;
            }
        }
        let mut v: SparseVector<S> = tf
            .into_iter()
            .map(|(id, count)| (id, S::from_count(count) * self.idf[id as usize]))
            .collect();
        normalize_in_place(&mut v);
        v
    }

    /// Scores every indexed document against `query`, descending, ties by
    /// ascending contribution id. `exclude` removes one contribution.
    pub fn rank(&self, query: &SubgraphDocument, k: usize, exclude: Option<NodeId>) -> Result<Vec<Ranked<S>>, SimilarityError> {
        if k == 0 {
            return Err(SimilarityError::InvalidK);
        }
        let q = self.weigh(&query.tokens);
        let mut hits: Vec<Ranked<S>> = self
            .documents
            .iter()
            .filter(|(c, _)| Some(*c) != exclude)
            .map(|(c, d)| Ranked { contribution: *c, score: dot(&q, d).max(S::zero()).min(S::one()) })
            .collect();
        hits.sort_by(|a, b| {
            b.score
                .partial_cmp(&a.score)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| a.contribution.cmp(&b.contribution))
        });
        hits.truncate(k);
        Ok(hits)
    }
}

/// Contributions most similar to `query`, which is itself never returned.
pub fn most_similar<S: Scalar>(
    graph: &Graph,
    index: &TfIdfIndex<S>,
    query: NodeId,
    k: usize,
) -> Result<Vec<Ranked<S>>, SimilarityError> {
    let doc = build_document(graph, query)?;
    index.rank(&doc, k, Some(query))
}

/// Indexes the given contributions.
pub fn index_contributions<S: Scalar>(graph: &Graph, contributions: &[NodeId]) -> Result<TfIdfIndex<S>, SimilarityError> {
    let docs = contributions
        .iter()
        .map(|c| build_document(graph, *c))
        .collect::<Result<Vec<_>, _>>()?;
    TfIdfIndex::build(&docs)
}

/// Keeps one index per graph revision; rebuilt lazily when the graph changes.
pub struct IndexCache<S> {
    slot: RwLock<Option<(u64, Arc<TfIdfIndex<S>>)>>,
}

impl<S> Default for IndexCache<S> {
    fn default() -> Self {
        IndexCache { slot: RwLock::new(None) }
    }
}

impl<S: Scalar> IndexCache<S> {
    /// Index over every `Contribution` in the graph. `None` when there are none.
    pub fn get(&self, graph: &Graph) -> Result<Option<Arc<TfIdfIndex<S>>>, SimilarityError> {
        let revision = graph.revision();
        if let Some((rev, index)) = self.slot.read().unwrap_or_else(|e| e.into_inner()).as_ref() {
            if *rev == revision {
                return Ok(Some(index.clone()));
            }
        }
        let contributions = crate::domain::contributions(graph);
        if contributions.is_empty() {
            return Ok(None);
        }
        let index = Arc::new(index_contributions(graph, &contributions)?);
        *self.slot.write().unwrap_or_else(|e| e.into_inner()) = Some((revision, index.clone()));
        Ok(Some(index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Datatype;

    fn doc(n: u64, text: &str) -> SubgraphDocument {
        SubgraphDocument::from_text(NodeId::resource(n), text.to_owned())
    }

    #[test]
    fn document_from_single_statement() {
        let mut g = Graph::new();
        let c = g.create_resource("C1", [] as [&str; 0]).unwrap().id;
        let p = g.create_predicate("addresses").unwrap().id;
        let o = g.create_resource("sorting", [] as [&str; 0]).unwrap().id;
        g.create_statement(c, p, o, "").unwrap();
        let d = build_document(&g, c).unwrap();
        assert_eq!(d.text, "C1 addresses sorting");
        assert_eq!(d.tokens, ["c1", "addresses", "sorting"]);

        let l = g.create_literal("42", Datatype::Integer).unwrap().id;
        g.create_statement(c, p, l, "").unwrap();
        assert_eq!(build_document(&g, c).unwrap().text, "C1 addresses sorting C1 addresses 42");
        assert_eq!(build_document(&g, o).unwrap().text, "");
        assert!(build_document(&g, NodeId::resource(99)).is_err());
    }

    #[test]
    fn single_document_gets_all_mass() {
        let idx = TfIdfIndex::<f64>::build(&[doc(1, "genome")]).unwrap();
        assert_eq!(idx.weight(NodeId::resource(1), "genome"), Some(1.0));
    }

    #[test]
    fn ubiquitous_term_has_unit_idf() {
        let idx = TfIdfIndex::<f64>::build(&[doc(1, "a b"), doc(2, "b c")]).unwrap();
        assert_eq!(idx.idf("b"), Some(1.0));
        assert_eq!(idx.document_frequency("b"), 2);
    }

    #[test]
    fn rarer_term_weighs_more() {
        let idx = TfIdfIndex::<f64>::build(&[doc(1, "a b"), doc(2, "b c")]).unwrap();
        // idf(a) = ln(3/2) + 1, idf(b) = 1; normalized by sqrt(idf(a)^2 + 1)
        let ia = (1.5f64).ln() + 1.0;
        let norm = (ia * ia + 1.0).sqrt();
        let wa = idx.weight(NodeId::resource(1), "a").unwrap();
        let wb = idx.weight(NodeId::resource(1), "b").unwrap();
        assert!((wa - ia / norm).abs() < 1e-12);
        assert!((wb - 1.0 / norm).abs() < 1e-12);
        assert!(wa > wb);
    }

    #[test]
    fn clone_ranks_first_with_unit_score() {
        let idx = TfIdfIndex::<f64>::build(&[doc(1, "genome editing insects"), doc(2, "sorting algorithm")]).unwrap();
        let hits = idx.rank(&doc(3, "genome editing insects"), 5, None).unwrap();
        assert_eq!(hits[0].contribution, NodeId::resource(1));
        assert!((hits[0].score - 1.0).abs() < 1e-9);
    }

    #[test]
    fn disjoint_query_scores_zero() {
        let idx = TfIdfIndex::<f64>::build(&[doc(1, "a b"), doc(2, "b c")]).unwrap();
        let hits = idx.rank(&doc(3, "zzz yyy"), 5, None).unwrap();
        assert!(hits.iter().all(|h| h.score == 0.0));
        // ties broken by ascending id
        assert_eq!(hits[0].contribution, NodeId::resource(1));
    }

    #[test]
    fn partial_overlap_ranking() {
        let idx = TfIdfIndex::<f64>::build(&[doc(1, "genome editing"), doc(2, "sorting algorithm")]).unwrap();
        let hits = idx.rank(&doc(3, "genome editing insects"), 2, None).unwrap();
        assert_eq!(hits[0].contribution, NodeId::resource(1));
        assert!(hits[0].score > hits[1].score);
        assert!(matches!(idx.rank(&doc(3, "x"), 0, None), Err(SimilarityError::InvalidK)));
    }

    #[test]
    fn empty_corpus() {
        assert!(matches!(TfIdfIndex::<f64>::build(&[]), Err(SimilarityError::EmptyCorpus)));
    }

    #[test]
    fn cache_tracks_revisions() {
        let mut g = Graph::new();
        let cache = IndexCache::<f64>::default();
        assert!(cache.get(&g).unwrap().is_none());
        g.create_resource("first", [crate::domain::classes::CONTRIBUTION]).unwrap();
        let a = cache.get(&g).unwrap().unwrap();
        let b = cache.get(&g).unwrap().unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        g.create_resource("second", [crate::domain::classes::CONTRIBUTION]).unwrap();
        let c = cache.get(&g).unwrap().unwrap();
        assert_eq!(c.len(), 2);
    }
}
