//! HTTP/JSON service over a [`scikg::Graph`].
//!
//! [`router`] builds the axum application; [`AppState`] holds the store
//! behind a readers/writer lock, the embedding table used for comparisons,
//! the saved comparisons and a TF-IDF index cache.

pub mod error;
pub mod extract;
mod routes;
pub mod saved;

use std::path::PathBuf;
use std::sync::{Arc, Mutex, MutexGuard, RwLock, RwLockReadGuard, RwLockWriteGuard};

use scikg::comparison::DEFAULT_THRESHOLD;
use scikg::embeddings::EmbeddingError;
use scikg::rdf::UriScheme;
use scikg::{EmbeddingTable, Graph, GraphError, IndexCache};

pub use error::{ApiError, ErrorBody};
pub use routes::{router, Health, NewLiteral, NewPredicate, NewResource, NewStatement, SaveRequest};
pub use saved::{SavedComparison, SavedComparisons};

pub const AGENT: &str = "api";

pub type SharedState = Arc<AppState>;

pub struct AppState {
    graph: RwLock<Graph>,
    embeddings: EmbeddingTable,
    threshold: f64,
    saved: Mutex<SavedComparisons>,
    index: IndexCache,
    scheme: UriScheme,
    write_token: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct ServerConfig {
    /// Holds `graph.tsv` (the store journal) and `comparisons.jsonl`.
    pub data_dir: Option<PathBuf>,
    /// Word vectors in the usual whitespace-separated text format.
    pub embeddings: Option<PathBuf>,
    pub threshold: Option<f64>,
    pub write_token: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum StartupError {
    #[error("graph store: {0}")]
    Graph(#[from] GraphError),
    #[error("embeddings: {0}")]
    Embeddings(#[from] EmbeddingError),
    #[error("saved comparisons: {0}")]
    Saved(#[from] saved::SavedError),
    #[error("threshold must lie in (0, 1], got {0}")]
    Threshold(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Table with no vectors: predicates then match only on equal labels.
pub fn empty_embeddings() -> EmbeddingTable {
    EmbeddingTable::new(1).expect("positive dimension")
}

impl AppState {
    pub fn new(graph: Graph, embeddings: EmbeddingTable, threshold: f64) -> Result<Self, StartupError> {
        if !(threshold > 0.0 && threshold <= 1.0) {
            return Err(StartupError::Threshold(threshold));
        }
        Ok(AppState {
            graph: RwLock::new(graph),
            embeddings,
            threshold,
            saved: Mutex::new(SavedComparisons::in_memory()),
            index: IndexCache::default(),
            scheme: UriScheme::default(),
            write_token: None,
        })
    }

    pub fn open(config: &ServerConfig) -> Result<Self, StartupError> {
        let embeddings = match &config.embeddings {
            Some(path) => EmbeddingTable::load_path(path)?,
            None => empty_embeddings(),
        };
        let threshold = config.threshold.unwrap_or(DEFAULT_THRESHOLD);
        let (graph, saved) = match &config.data_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                (Graph::open(dir.join("graph.tsv"))?, SavedComparisons::open(dir.join("comparisons.jsonl"))?)
            }
            None => (Graph::new(), SavedComparisons::in_memory()),
        };
        let mut state = Self::new(graph, embeddings, threshold)?;
        state.saved = Mutex::new(saved);
        state.write_token = config.write_token.clone().filter(|t| !t.is_empty());
        Ok(state)
    }

    pub fn with_write_token(mut self, token: impl Into<String>) -> Self {
        self.write_token = Some(token.into());
        self
    }

    pub fn with_saved(mut self, saved: SavedComparisons) -> Self {
        self.saved = Mutex::new(saved);
        self
    }

    pub fn write_token(&self) -> Option<&str> {
        self.write_token.as_deref()
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn read(&self) -> RwLockReadGuard<'_, Graph> {
        self.graph.read().unwrap_or_else(|e| e.into_inner())
    }

    pub fn write(&self) -> RwLockWriteGuard<'_, Graph> {
        self.graph.write().unwrap_or_else(|e| e.into_inner())
    }

    fn saved(&self) -> MutexGuard<'_, SavedComparisons> {
        self.saved.lock().unwrap_or_else(|e| e.into_inner())
    }
}
