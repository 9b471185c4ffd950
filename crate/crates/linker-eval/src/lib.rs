//! Coverage ζ = linked / total of entity linkers over an annotated corpus.

pub mod client;
pub mod corpus;
pub mod evaluate;
#[cfg(feature = "http")]
pub mod http;
pub mod report;

pub use client::{CachedClient, FixtureClient, LinkOutcome, LinkerClient};
pub use corpus::{read_corpus, AnnotatedEntity, ConceptClass};
pub use evaluate::{evaluate, rank, CoverageReport, EvalError, Tally};
