use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Result of one link attempt. Not finding an entity is a normal outcome;
/// `Failed` covers transport problems such as timeouts and HTTP errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkOutcome {
    Linked(String),
    Unlinked,
    Failed(String),
}

pub trait LinkerClient: Send + Sync {
    fn name(&self) -> &str;
    fn link(&self, surface: &str) -> LinkOutcome;
}

/// A recorded response: an entity id, `null` for no link, or `{"error": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Recorded {
    Error { error: String },
    Link(Option<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub name: String,
    pub responses: HashMap<String, Recorded>,
}

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("reading fixture {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parsing fixture {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

/// Replays recorded responses. A surface form without a recording counts
/// as a failure, so gaps in a fixture stay visible in the report.
#[derive(Debug, Clone)]
pub struct FixtureClient {
    file: FixtureFile,
}

impl FixtureClient {
    pub fn new(file: FixtureFile) -> Self {
        FixtureClient { file }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FixtureError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.into(), source })?;
        let file = serde_json::from_str(&text).map_err(|source| FixtureError::Json { path: path.into(), source })?;
        Ok(FixtureClient { file })
    }
}

impl LinkerClient for FixtureClient {
    fn name(&self) -> &str {
        &self.file.name
    }

    fn link(&self, surface: &str) -> LinkOutcome {
        match self.file.responses.get(surface) {
            Some(Recorded::Link(Some(id))) => LinkOutcome::Linked(id.clone()),
            Some(Recorded::Link(None)) => LinkOutcome::Unlinked,
            Some(Recorded::Error { error }) => LinkOutcome::Failed(error.clone()),
            None => LinkOutcome::Failed("no recorded response".into()),
        }
    }
}

/// On-disk cache of definite answers in front of another client. Failures
/// are never cached, so a later run retries them.
pub struct CachedClient<C> {
    inner: C,
    dir: PathBuf,
}

impl<C: LinkerClient> CachedClient<C> {
    pub fn new(inner: C, dir: impl Into<PathBuf>) -> Self {
        CachedClient { inner, dir: dir.into() }
    }

    fn path_for(&self, surface: &str) -> PathBuf {
        let mut hasher = Sha256::new();
        hasher.update(self.inner.name().as_bytes());
        hasher.update([0]);
        hasher.update(surface.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(hasher.finalize())))
    }
}

impl<C: LinkerClient> LinkerClient for CachedClient<C> {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn link(&self, surface: &str) -> LinkOutcome {
        let path = self.path_for(surface);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(outcome) = serde_json::from_str::<LinkOutcome>(&text) {
                return outcome;
            }
        }
        let outcome = self.inner.link(surface);
        if !matches!(outcome, LinkOutcome::Failed(_)) {
            // a cache write failure only costs a repeat lookup later
            let _ = fs::create_dir_all(&self.dir)
                .and_then(|_| fs::write(&path, serde_json::to_string(&outcome).expect("serializable")));
        }
        outcome
    }
}
