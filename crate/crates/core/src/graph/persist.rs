//! Tab-separated dump format and the append-only write-ahead log.
//!
//! One record per line:
//!
//! ```text
//! R  R1 <label> [<class>...]
//! L  L1 <datatype> <value>
//! P  P1 <label>
//! S  S1 R1 P1 L1 <iso8601> <agent>
//! D  <id>                                     deletion (log only)
//! C  <next R> <next L> <next P> <next S>     id counters (last line of a dump)
//! ```
//!
//! Fields are separated by a single tab. Backslash, tab, LF and CR inside a
//! field are written as `\\`, `\t`, `\n` and `\r`.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};

use super::error::{GraphError, Result};
use super::ids::{NodeId, PredicateId, StatementId};
use super::model::{Literal, Predicate, Provenance, Resource, Statement};
use super::store::Graph;

pub(crate) enum Record<'a> {
    Resource(&'a Resource),
    Literal(&'a Literal),
    Predicate(&'a Predicate),
    Statement(&'a Statement),
    Delete(String),
}

fn escape(field: &str, out: &mut String) {
    for c in field.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
}

fn unescape(field: &str) -> std::result::Result<String, String> {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            other => return Err(format!("bad escape \\{}", other.map(String::from).unwrap_or_default())),
        }
    }
    Ok(out)
}

fn format_timestamp(t: &DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

impl Record<'_> {
    fn render(&self) -> String {
        let mut line = String::new();
        let push = |field: &str, line: &mut String| {
            if !line.is_empty() {
                line.push('\t');
            }
            escape(field, line);
        };
        match self {
            Record::Resource(r) => {
                push("R", &mut line);
                push(&r.id.to_string(), &mut line);
                push(&r.label, &mut line);
                for class in &r.classes {
                    push(class, &mut line);
                }
            }
            Record::Literal(l) => {
                push("L", &mut line);
                push(&l.id.to_string(), &mut line);
                push(l.datatype.as_str(), &mut line);
                push(&l.value, &mut line);
            }
            Record::Predicate(p) => {
                push("P", &mut line);
                push(&p.id.to_string(), &mut line);
                push(&p.label, &mut line);
            }
            Record::Statement(s) => {
                for field in [
                    "S".to_owned(),
                    s.id.to_string(),
                    s.subject.to_string(),
                    s.predicate.to_string(),
                    s.object.to_string(),
                    format_timestamp(&s.provenance.created_at),
                ] {
                    push(&field, &mut line);
                }
                push(&s.provenance.created_by, &mut line);
            }
            Record::Delete(id) => {
                push("D", &mut line);
                push(id, &mut line);
            }
        }
        line
    }
}

pub(crate) struct Journal {
    out: BufWriter<File>,
}

impl Journal {
    pub(crate) fn append(&mut self, record: &Record<'_>) -> io::Result<()> {
        self.out.write_all(record.render().as_bytes())?;
        self.out.write_all(b"\n")?;
        self.out.flush()
    }
}

fn corrupt(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Corrupt { line, message: message.into() }
}

fn apply_line(graph: &mut Graph, lineno: usize, line: &str) -> Result<()> {
    let fields = line
        .split('\t')
        .map(unescape)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|m| corrupt(lineno, m))?;
    let arity = |n: usize| {
        if fields.len() < n {
            Err(corrupt(lineno, format!("expected at least {n} fields, found {}", fields.len())))
        } else {
            Ok(())
        }
    };
    let parse_err = |e: &dyn std::fmt::Display| corrupt(lineno, e.to_string());
    let wrap = |e: GraphError| match e {
        GraphError::Corrupt { .. } | GraphError::Io(_) => e,
        other => corrupt(lineno, other.to_string()),
    };
    match fields[0].as_str() {
        "C" => {
            arity(5)?;
            let mut next = [0u64; 4];
            for (slot, f) in next.iter_mut().zip(&fields[1..5]) {
                *slot = f.parse().map_err(|e| parse_err(&e))?;
            }
            graph.reserve_ids(next);
        }
        "R" => {
            arity(3)?;
            let id: NodeId = fields[1].parse().map_err(|e| parse_err(&e))?;
            if !id.is_resource() {
                return Err(corrupt(lineno, "resource record with literal id"));
            }
            let classes: BTreeSet<String> = fields[3..].iter().cloned().collect();
            graph.insert_resource(id.number(), &fields[2], classes).map_err(wrap)?;
        }
        "L" => {
            arity(4)?;
            let id: NodeId = fields[1].parse().map_err(|e| parse_err(&e))?;
            if id.is_resource() {
                return Err(corrupt(lineno, "literal record with resource id"));
            }
            let datatype = fields[2].parse().map_err(|e: String| corrupt(lineno, e))?;
            graph.insert_literal(id.number(), &fields[3], datatype).map_err(wrap)?;
        }
        "P" => {
            arity(3)?;
            let id: PredicateId = fields[1].parse().map_err(|e| parse_err(&e))?;
            graph.insert_predicate(id.number(), &fields[2]).map_err(wrap)?;
        }
        "S" => {
            arity(7)?;
            let created_at = DateTime::parse_from_rfc3339(&fields[5])
                .map_err(|e| parse_err(&e))?
                .with_timezone(&Utc);
            let statement = Statement {
                id: fields[1].parse::<StatementId>().map_err(|e| parse_err(&e))?,
                subject: fields[2].parse().map_err(|e| parse_err(&e))?,
                predicate: fields[3].parse().map_err(|e| parse_err(&e))?,
                object: fields[4].parse().map_err(|e| parse_err(&e))?,
                provenance: Provenance { created_at, created_by: fields[6].clone() },
            };
            graph.insert_statement(statement).map_err(wrap)?;
        }
        "D" => {
            arity(2)?;
            let id = &fields[1];
            let result = if let Ok(s) = id.parse::<StatementId>() {
                graph.delete_statement(s).map(|_| ())
            } else if let Ok(p) = id.parse::<PredicateId>() {
                graph.delete_predicate(p)
            } else {
                let n: NodeId = id.parse().map_err(|e| parse_err(&e))?;
                graph.delete_node(n)
            };
            result.map_err(wrap)?;
        }
        other => return Err(corrupt(lineno, format!("unknown record kind {other:?}"))),
    }
    Ok(())
}

impl Graph {
    /// Writes a snapshot of the live graph. Reloading it reproduces every id
    /// and the id counters.
    pub fn write_dump<W: Write>(&self, out: W) -> io::Result<()> {
        let mut out = BufWriter::new(out);
        for resource in self.resources() {
            writeln!(out, "{}", Record::Resource(resource).render())?;
        }
        for literal in self.literals() {
            writeln!(out, "{}", Record::Literal(literal).render())?;
        }
        for predicate in self.predicates() {
            writeln!(out, "{}", Record::Predicate(predicate).render())?;
        }
        for statement in self.statements() {
            writeln!(out, "{}", Record::Statement(statement).render())?;
        }
        let [r, l, p, s] = self.next_ids();
        writeln!(out, "C\t{r}\t{l}\t{p}\t{s}")?;
        out.flush()
    }

    pub fn dump_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_dump(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("dump is UTF-8")
    }

    /// Rebuilds a graph from a dump or a log.
    pub fn read_dump<R: BufRead>(input: R) -> Result<Graph> {
        let mut graph = Graph::new();
        graph.replay(input)?;
        Ok(graph)
    }

    fn replay<R: BufRead>(&mut self, input: R) -> Result<()> {
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            apply_line(self, i + 1, &line)?;
        }
        Ok(())
    }

    /// Opens a log-backed graph: replays `path` if it exists, then appends
    /// every subsequent write to it before applying it in memory.
    pub fn open(path: impl AsRef<Path>) -> Result<Graph> {
        let path = path.as_ref();
        let mut graph = Graph::new();
        if path.exists() {
            graph.replay(BufReader::new(File::open(path)?))?;
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        graph.attach_journal(Journal { out: BufWriter::new(file) });
        Ok(graph)
    }
}
