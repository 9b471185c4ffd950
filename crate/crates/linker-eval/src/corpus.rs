use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConceptClass {
    Process,
    Method,
    Material,
    Data,
}

impl ConceptClass {
    pub const ALL: [ConceptClass; 4] = [ConceptClass::Process, ConceptClass::Method, ConceptClass::Material, ConceptClass::Data];

    pub fn as_str(self) -> &'static str {
        match self {
            ConceptClass::Process => "process",
            ConceptClass::Method => "method",
            ConceptClass::Material => "material",
            ConceptClass::Data => "data",
        }
    }
}

impl fmt::Display for ConceptClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConceptClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConceptClass::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown concept class {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedEntity {
    pub doc_id: String,
    pub surface: String,
    pub class: Option<ConceptClass>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Format { line: u64, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Reads `doc id<TAB>surface form[<TAB>class]` lines. Lines starting with
/// `#` are comments; an optional `doc_id` header row is skipped.
pub fn read_corpus<R: Read>(input: R) -> Result<Vec<AnnotatedEntity>, CorpusError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .has_headers(false)
        .flexible(true)
        .quoting(false)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).map(str::trim).unwrap_or("");
        if out.is_empty() && field(0) == "doc_id" {
            continue;
        }
        if record.len() < 2 || record.len() > 3 {
            return Err(CorpusError::Format { line, message: format!("expected 2 or 3 fields, got {}", record.len()) });
        }
        let surface = field(1);
        if surface.is_empty() {
            return Err(CorpusError::Format { line, message: "empty surface form".into() });
        }
        let class = match field(2) {
            "" => None,
            raw => Some(raw.parse().map_err(|message| CorpusError::Format { line, message })?),
        };
        out.push(AnnotatedEntity { doc_id: field(0).to_owned(), surface: surface.to_owned(), class });
    }
    Ok(out)
}
