use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use rand::distr::{Alphanumeric, SampleString};
use scikg::NodeId;
use serde::{Deserialize, Serialize};

pub const SHORT_ID_LEN: usize = 8;

/// A shareable comparison. Only the request is kept; the table is recomputed
/// from the live graph whenever it is read.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavedComparison {
    pub short_id: String,
    pub contribution_ids: Vec<NodeId>,
    pub threshold: f64,
    pub created_at: DateTime<Utc>,
}

#[derive(Debug, thiserror::Error)]
pub enum SavedError {
    #[error("{path} line {line}: {message}")]
    Corrupt { path: PathBuf, line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Saved comparisons, optionally appended to a JSON-lines file.
#[derive(Debug, Default)]
pub struct SavedComparisons {
    by_id: HashMap<String, SavedComparison>,
    file: Option<File>,
}

pub fn is_short_id(s: &str) -> bool {
    s.len() == SHORT_ID_LEN && s.bytes().all(|b| b.is_ascii_alphanumeric())
}

impl SavedComparisons {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if present and appends new entries to it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, SavedError> {
        let path = path.as_ref();
        let mut by_id = HashMap::new();
        if path.exists() {
            for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let corrupt = |message: String| SavedError::Corrupt { path: path.into(), line: i + 1, message };
                let saved: SavedComparison = serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
                if !is_short_id(&saved.short_id) {
                    return Err(corrupt(format!("bad short id {:?}", saved.short_id)));
                }
                by_id.insert(saved.short_id.clone(), saved);
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(SavedComparisons { by_id, file: Some(file) })
    }

    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }

    pub fn get(&self, short_id: &str) -> Option<&SavedComparison> {
        self.by_id.get(short_id)
    }

    /// Stores a request under a fresh random base62 id.
    pub fn insert(&mut self, contribution_ids: Vec<NodeId>, threshold: f64) -> Result<SavedComparison, SavedError> {
        let mut rng = rand::rng();
        let short_id = loop {
            let candidate = Alphanumeric.sample_string(&mut rng, SHORT_ID_LEN);
            if !self.by_id.contains_key(&candidate) {
                break candidate;
            }
        };
        let saved = SavedComparison { short_id, contribution_ids, threshold, created_at: Utc::now() };
        if let Some(file) = &mut self.file {
            let mut line = serde_json::to_string(&saved).expect("serializable");
            line.push('\n');
            file.write_all(line.as_bytes())?;
            file.flush()?;
        }
        self.by_id.insert(saved.short_id.clone(), saved.clone());
        Ok(saved)
    }
}
