//! Word vectors for predicate labels.
//!
//! Tables are read from the usual pretrained-vector text layout: an optional
//! `<count> <dimension>` header followed by `<token> v1 ... vd` lines.
//! Multi-word labels are embedded as the mean of their in-vocabulary tokens.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::text;

#[derive(Debug, thiserror::Error)]
pub enum EmbeddingError {
    #[error("line {line}: expected {expected} components, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("embedding table has no entries")]
    EmptyTable,
    #[error("dimension must be at least 1")]
    InvalidDimension,
    #[error("vectors have different dimensions ({left} vs {right})")]
    VectorDimensionMismatch { left: usize, right: usize },
    #[error("label {0:?} has no in-vocabulary token")]
    OutOfVocabulary(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone)]
pub struct EmbeddingTable<S> {
    dimension: usize,
    entries: HashMap<String, Vec<S>>,
}

/// Embedding of one label. `oov` is set when none of its tokens is in the table,
/// in which case `vector` is all zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelVector<S> {
    pub label: String,
    pub vector: Vec<S>,
    pub oov: bool,
}

impl<S: Scalar> EmbeddingTable<S> {
    /// An empty table; every label embeds as out-of-vocabulary.
    pub fn new(dimension: usize) -> Result<Self, EmbeddingError> {
        if dimension == 0 {
            return Err(EmbeddingError::InvalidDimension);
        }
        Ok(EmbeddingTable { dimension, entries: HashMap::new() })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[S]> {
        self.entries.get(&text::normalize(token)).map(Vec::as_slice)
    }

    /// Adds or replaces a token vector.
    pub fn insert(&mut self, token: &str, vector: Vec<S>) -> Result<(), EmbeddingError> {
        if vector.len() != self.dimension {
            return Err(EmbeddingError::VectorDimensionMismatch {
                left: self.dimension,
                right: vector.len(),
            });
        }
        self.entries.insert(text::normalize(token), vector);
        Ok(())
    }

    pub fn load<R: BufRead>(input: R) -> Result<Self, EmbeddingError> {
        let mut dimension: Option<usize> = None;
        let mut entries = HashMap::new();
        let mut first = true;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let mut fields = line.split_whitespace();
            let Some(token) = fields.next() else { continue };
            let values: Vec<&str> = fields.collect();
            if std::mem::take(&mut first) && values.len() == 1 {
                if let (Ok(_), Ok(d)) = (token.parse::<usize>(), values[0].parse::<usize>()) {
                    if d == 0 {
                        return Err(EmbeddingError::InvalidDimension);
                    }
                    dimension = Some(d);
                    continue;
                }
            }
            let expected = *dimension.get_or_insert(values.len());
            if expected == 0 {
                return Err(EmbeddingError::InvalidDimension);
            }
            if values.len() != expected {
                return Err(EmbeddingError::DimensionMismatch { line: lineno, expected, found: values.len() });
            }
            let vector = values
                .iter()
                .map(|v| match v.parse::<S>() {
                    Ok(x) if x.is_finite() => Ok(x),
                    _ => Err(EmbeddingError::Parse { line: lineno, message: format!("bad component {v:?}") }),
                })
                .collect::<Result<Vec<S>, _>>()?;
            // first occurrence wins, as in the common distribution files
            entries.entry(text::normalize(token)).or_insert(vector);
        }
        match dimension {
            Some(dimension) if !entries.is_empty() => Ok(EmbeddingTable { dimension, entries }),
            _ => Err(EmbeddingError::EmptyTable),
        }
    }

    pub fn load_path(path: impl AsRef<Path>) -> Result<Self, EmbeddingError> {
        Self::load(BufReader::new(File::open(path)?))
    }

    pub fn parse(source: &str) -> Result<Self, EmbeddingError> {
        Self::load(source.as_bytes())
    }

    pub fn embed_label(&self, label: &str) -> LabelVector<S> {
        let mut sum = vec![S::zero(); self.dimension];
        let mut found = 0usize;
        for token in text::tokenize(label) {
            if let Some(v) = self.entries.get(&token) {
                for (acc, x) in sum.iter_mut().zip(v) {
                    *acc = *acc + *x;
                }
                found += 1;
            }
        }
        if found > 0 {
            let n = S::from_count(found);
            for x in &mut sum {
                *x = *x / n;
            }
        }
        LabelVector { label: label.to_owned(), vector: sum, oov: found == 0 }
    }
}

/// Cosine of two raw vectors; zero if either has zero norm.
pub fn cosine_slices<S: Scalar>(a: &[S], b: &[S]) -> Result<S, EmbeddingError> {
    if a.len() != b.len() {
        return Err(EmbeddingError::VectorDimensionMismatch { left: a.len(), right: b.len() });
    }
    let (mut dot, mut na, mut nb) = (S::zero(), S::zero(), S::zero());
    for (x, y) in a.iter().zip(b) {
        dot = dot + *x * *y;
        na = na + *x * *x;
        nb = nb + *y * *y;
    }
    if na == S::zero() || nb == S::zero() {
        return Ok(S::zero());
    }
    Ok((dot / (na.sqrt() * nb.sqrt())).clamp_unit())
}

pub fn cosine<S: Scalar>(a: &LabelVector<S>, b: &LabelVector<S>) -> Result<S, EmbeddingError> {
    for v in [a, b] {
        if v.oov {
            return Err(EmbeddingError::OutOfVocabulary(v.label.clone()));
        }
    }
    cosine_slices(&a.vector, &b.vector)
}
