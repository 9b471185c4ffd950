//! Optional DOI metadata enrichment.
//!
//! The engine never needs the network: bibliographic fields live on the paper
//! node. A [`MetadataSource`] can fill in missing title, authors and year for a
//! [`PaperSpec`] before it is created. [`CachedSource`] keeps raw Crossref
//! `works` responses on disk so an enrichment run can be replayed offline.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::PaperSpec;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BibMetadata {
    pub doi: String,
    pub title: Option<String>,
    pub authors: Vec<String>,
    pub year: Option<i64>,
}

#[derive(Debug, thiserror::Error)]
pub enum MetadataError {
    #[error("malformed metadata response: {0}")]
    Malformed(String),
    #[error("metadata lookup failed: {0}")]
    Transport(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Resolves a DOI to bibliographic metadata. `Ok(None)` means the DOI is unknown.
pub trait MetadataSource {
    /// Raw response body for `doi`, or `None` when the registry has no record.
    fn fetch_raw(&self, doi: &str) -> Result<Option<String>, MetadataError>;

    fn resolve(&self, doi: &str) -> Result<Option<BibMetadata>, MetadataError> {
        match self.fetch_raw(doi)? {
            Some(body) => parse_crossref_work(doi, &body).map(Some),
            None => Ok(None),
        }
    }
}

/// Parses a Crossref `/works/{doi}` response (either the full envelope or the
/// bare `message` object).
pub fn parse_crossref_work(doi: &str, body: &str) -> Result<BibMetadata, MetadataError> {
    let root: Value = serde_json::from_str(body).map_err(|e| MetadataError::Malformed(e.to_string()))?;
    let message = root.get("message").unwrap_or(&root);
    if !message.is_object() {
        return Err(MetadataError::Malformed("expected a JSON object".into()));
    }
    let title = message
        .get("title")
        .and_then(|t| match t {
            Value::Array(items) => items.first().and_then(Value::as_str),
            Value::String(s) => Some(s.as_str()),
            _ => None,
        })
        .map(|s| s.split_whitespace().collect::<Vec<_>>().join(" "));
    let authors = message
        .get("author")
        .and_then(Value::as_array)
        .map(|list| {
            list.iter()
                .filter_map(|a| {
                    if let Some(orcid) = a.get("ORCID").and_then(Value::as_str) {
                        if a.get("given").is_none() && a.get("family").is_none() {
                            return Some(orcid.to_owned());
                        }
                    }
                    let given = a.get("given").and_then(Value::as_str);
                    let family = a.get("family").and_then(Value::as_str);
                    match (given, family) {
                        (Some(g), Some(f)) => Some(format!("{g} {f}")),
                        (None, Some(f)) => Some(f.to_owned()),
                        (Some(g), None) => Some(g.to_owned()),
                        (None, None) => a.get("name").and_then(Value::as_str).map(str::to_owned),
                    }
                })
                .collect()
        })
        .unwrap_or_default();
    let year = ["published", "published-print", "published-online", "issued", "created"]
        .iter()
        .find_map(|key| message.get(key)?.get("date-parts")?.get(0)?.get(0)?.as_i64());
    let doi = message.get("DOI").and_then(Value::as_str).unwrap_or(doi).to_owned();
    Ok(BibMetadata { doi, title, authors, year })
}

/// Fills the fields `spec` leaves empty. Returns whether anything changed.
pub fn enrich(spec: &mut PaperSpec, meta: &BibMetadata) -> bool {
    let mut changed = false;
    if spec.title.trim().is_empty() {
        if let Some(title) = &meta.title {
            spec.title = title.clone();
            changed = true;
        }
    }
    if spec.authors.is_empty() && !meta.authors.is_empty() {
        spec.authors = meta.authors.clone();
        changed = true;
    }
    if spec.year.is_none() && meta.year.is_some() {
        spec.year = meta.year;
        changed = true;
    }
    changed
}

/// On-disk response cache in front of an optional live source. Without an
/// inner source only cached DOIs resolve.
pub struct CachedSource<S> {
    dir: PathBuf,
    inner: Option<S>,
}

impl<S: MetadataSource> CachedSource<S> {
    pub fn new(dir: impl Into<PathBuf>, inner: Option<S>) -> Self {
        CachedSource { dir: dir.into(), inner }
    }

    fn path_for(&self, doi: &str) -> PathBuf {
        let name: String = doi
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
            .collect();
        self.dir.join(format!("{name}.json"))
    }

    pub fn cache_dir(&self) -> &Path {
        &self.dir
    }
}

impl<S: MetadataSource> MetadataSource for CachedSource<S> {
    fn fetch_raw(&self, doi: &str) -> Result<Option<String>, MetadataError> {
        let path = self.path_for(doi);
        if path.exists() {
            return Ok(Some(fs::read_to_string(path)?));
        }
        let Some(inner) = &self.inner else {
            return Ok(None);
        };
        let body = inner.fetch_raw(doi)?;
        if let Some(body) = &body {
            fs::create_dir_all(&self.dir)?;
            fs::write(path, body)?;
        }
        Ok(body)
    }
}

/// Never resolves anything; the inner type for a cache-only [`CachedSource`].
pub struct Offline;

impl MetadataSource for Offline {
    fn fetch_raw(&self, _doi: &str) -> Result<Option<String>, MetadataError> {
        Ok(None)
    }
}

#[cfg(feature = "crossref-http")]
pub use http::CrossrefHttp;

#[cfg(feature = "crossref-http")]
mod http {
    use std::time::Duration;

    use super::{MetadataError, MetadataSource};

    /// Live lookups against `https://api.crossref.org/works/{doi}`.
    pub struct CrossrefHttp {
        agent: ureq::Agent,
        base_url: String,
        mailto: Option<String>,
    }

    impl CrossrefHttp {
        pub fn new(base_url: &str, timeout: Duration, mailto: Option<String>) -> Self {
            let config = ureq::Agent::config_builder()
                .timeout_global(Some(timeout))
                .http_status_as_error(false)
                .build();
            CrossrefHttp { agent: config.into(), base_url: base_url.trim_end_matches('/').to_owned(), mailto }
        }
    }

    impl MetadataSource for CrossrefHttp {
        fn fetch_raw(&self, doi: &str) -> Result<Option<String>, MetadataError> {
            let mut url = format!("{}/works/{}", self.base_url, doi);
            if let Some(mailto) = &self.mailto {
                url.push_str("?mailto=");
                url.push_str(mailto);
            }
            let mut response = self
                .agent
                .get(&url)
                .call()
                .map_err(|e| MetadataError::Transport(e.to_string()))?;
            match response.status().as_u16() {
                200 => response
                    .body_mut()
                    .read_to_string()
                    .map(Some)
                    .map_err(|e| MetadataError::Transport(e.to_string())),
                404 => Ok(None),
                code => Err(MetadataError::Transport(format!("HTTP {code}"))),
            }
        }
    }
}
