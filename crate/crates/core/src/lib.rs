//! Statement-centric scholarly knowledge graph.
//!
//! [`graph`] is the store, [`domain`] layers papers and research
//! contributions on top, [`comparison`] aligns the properties of several
//! contributions into a table, [`similarity`] ranks contributions by TF-IDF
//! over their subgraphs and [`rdf`] moves the graph in and out of N-Triples.
//!
//! Numeric code is generic over [`scalar::Scalar`]; the aliases below fix it
//! to `f64`.

pub mod comparison;
pub mod domain;
pub mod embeddings;
pub mod graph;
pub mod rdf;
pub mod scalar;
pub mod similarity;
pub mod text;

pub use graph::{Graph, GraphError, NodeId, PredicateId, StatementId};
pub use scalar::Scalar;

pub type EmbeddingTable = embeddings::EmbeddingTable<f64>;
pub type LabelVector = embeddings::LabelVector<f64>;
pub type SimilarityMatrix = comparison::SimilarityMatrix<f64>;
pub type ComparisonConfig<'t> = comparison::ComparisonConfig<'t, f64>;
pub type ComparisonTable = comparison::ComparisonTable<f64>;
pub type PredicateGroup = comparison::PredicateGroup<f64>;
pub type TfIdfIndex = similarity::TfIdfIndex<f64>;
pub type Ranked = similarity::Ranked<f64>;
pub type IndexCache = similarity::IndexCache<f64>;
