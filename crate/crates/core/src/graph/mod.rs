//! Statement-centric property graph.
//!
//! Nodes are resources (`R<n>`) and literals (`L<n>`), edges are
//! [`Statement`]s (`S<n>`) labeled with a [`Predicate`] (`P<n>`). Unlike plain
//! RDF triples every statement has its own identity and provenance, so two
//! statements with the same subject, predicate and object are distinct.

mod error;
mod ids;
mod model;
mod persist;
mod store;

pub use error::{GraphError, Result};
pub use ids::{IdParseError, NodeId, NodeKind, PredicateId, StatementId};
pub use model::{
    Datatype, Literal, NodeRef, Predicate, Provenance, Resource, Statement, Subgraph,
    DEFAULT_AGENT, MAX_LABEL_CHARS,
};
pub use store::{Clock, Counts, Graph, LabelHit, LabelKind, DEFAULT_DEPTH_LIMIT};

