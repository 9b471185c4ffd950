use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Whether a node is a resource (`R<n>`) or a literal (`L<n>`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Resource,
    Literal,
}

impl NodeKind {
    fn prefix(self) -> char {
        match self {
            NodeKind::Resource => 'R',
            NodeKind::Literal => 'L',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed identifier {0:?}")]
pub struct IdParseError(pub String);

fn parse_suffix(s: &str, prefix: char) -> Option<u64> {
    let rest = s.strip_prefix(prefix)?;
    if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

/// Identifier of a resource or literal node.
///
/// Ordering is by kind (resources first) and then numeric suffix, so `R2 < R10`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId {
    kind: NodeKind,
    n: u64,
}

impl NodeId {
    pub const fn resource(n: u64) -> Self {
        NodeId { kind: NodeKind::Resource, n }
    }

    pub const fn literal(n: u64) -> Self {
        NodeId { kind: NodeKind::Literal, n }
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn number(&self) -> u64 {
        self.n
    }

    pub fn is_resource(&self) -> bool {
        self.kind == NodeKind::Resource
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.n)
    }
}

impl FromStr for NodeId {
    type Err = IdParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(n) = parse_suffix(s, 'R') {
            Ok(NodeId::resource(n))
        } else if let Some(n) = parse_suffix(s, 'L') {
            Ok(NodeId::literal(n))
        } else {
            Err(IdParseError(s.to_owned()))
        }
    }
}

macro_rules! simple_id {
    ($(#[$meta:meta])* $name:ident, $prefix:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(u64);

        impl $name {
            pub const fn new(n: u64) -> Self {
                $name(n)
            }

            pub fn number(&self) -> u64 {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }

        impl FromStr for $name {
            type Err = IdParseError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let prefix = $prefix.chars().next().unwrap();
                parse_suffix(s, prefix)
                    .map($name)
                    .ok_or_else(|| IdParseError(s.to_owned()))
            }
        }
    };
}

simple_id!(
    /// Identifier of a predicate, `P<n>`.
    PredicateId,
    "P"
);
simple_id!(
    /// Identifier of a statement instance, `S<n>`.
    StatementId,
    "S"
);

macro_rules! string_serde {
    ($($name:ident),*) => {$(
        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

string_serde!(NodeId, PredicateId, StatementId);
