use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::ids::{NodeId, PredicateId, StatementId};

pub const MAX_LABEL_CHARS: usize = 512;
pub const DEFAULT_AGENT: &str = "system";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resource {
    pub id: NodeId,
    pub label: String,
    #[serde(default)]
    pub classes: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Datatype {
    #[default]
    String,
    Integer,
    Decimal,
    Boolean,
    Uri,
}

impl Datatype {
    pub fn as_str(self) -> &'static str {
        match self {
            Datatype::String => "string",
            Datatype::Integer => "integer",
            Datatype::Decimal => "decimal",
            Datatype::Boolean => "boolean",
            Datatype::Uri => "uri",
        }
    }

    /// Whether `value` is a valid lexical form for this datatype.
    pub fn accepts(self, value: &str) -> bool {
        match self {
            Datatype::String => true,
            Datatype::Integer => {
                let digits = value.strip_prefix(['+', '-']).unwrap_or(value);
                !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
            }
            Datatype::Decimal => {
                let body = value.strip_prefix(['+', '-']).unwrap_or(value);
                let (int, frac) = body.split_once('.').unwrap_or((body, ""));
                (!int.is_empty() || !frac.is_empty())
                    && int.bytes().all(|b| b.is_ascii_digit())
                    && frac.bytes().all(|b| b.is_ascii_digit())
            }
            Datatype::Boolean => matches!(value, "true" | "false" | "1" | "0"),
            Datatype::Uri => is_absolute_uri(value),
        }
    }
}

fn is_absolute_uri(value: &str) -> bool {
    let Some((scheme, rest)) = value.split_once(':') else {
        return false;
    };
    let mut chars = scheme.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        && !rest.is_empty()
        && !value.chars().any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"'))
}

impl fmt::Display for Datatype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Datatype {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "string" => Datatype::String,
            "integer" => Datatype::Integer,
            "decimal" => Datatype::Decimal,
            "boolean" => Datatype::Boolean,
            "uri" => Datatype::Uri,
            other => return Err(format!("unknown datatype {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Literal {
    pub id: NodeId,
    pub value: String,
    #[serde(default)]
    pub datatype: Datatype,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicate {
    pub id: PredicateId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub created_at: DateTime<Utc>,
    pub created_by: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub id: StatementId,
    pub subject: NodeId,
    pub predicate: PredicateId,
    pub object: NodeId,
    #[serde(flatten)]
    pub provenance: Provenance,
}

/// A borrowed view of either node kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRef<'a> {
    Resource(&'a Resource),
    Literal(&'a Literal),
}

impl<'a> NodeRef<'a> {
    /// Resource label or literal value.
    pub fn text(&self) -> &'a str {
        match self {
            NodeRef::Resource(r) => &r.label,
            NodeRef::Literal(l) => &l.value,
        }
    }
}

/// Statements reachable from `root` within `depth_limit` hops, in
/// breadth-first order and creation order within one subject.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub root: NodeId,
    pub depth_limit: usize,
    pub statements: Vec<Statement>,
}

impl Subgraph {
    pub fn predicates(&self) -> BTreeSet<PredicateId> {
        self.statements.iter().map(|s| s.predicate).collect()
    }
}
