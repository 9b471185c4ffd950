//! Comparison benchmark: the mask-matrix comparison against the brute-force
//! baseline over growing numbers of contributions.
//!
//! Each fixture contribution carries 40 statements spread over 7 distinct
//! predicates drawn from a shared pool of 10, so the baseline enumerates
//! |anchors| x 7^n tuples while the mask-matrix comparison stays linear in
//! the number of statements.

use std::time::Duration;

use chrono::DateTime;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scikg::comparison::{compare, compare_baseline_counted, ComparisonConfig};
use scikg::domain::{create_paper, describe_freely, ContributionSpec, ObjectSpec, PaperSpec, TripleSpec};
use scikg::embeddings::EmbeddingTable;
use scikg::graph::{Clock, Datatype, Graph, NodeId};
use serde::{Deserialize, Serialize};

use crate::timing::{measure, Protocol, TimingReport};

pub const STATEMENTS_PER_CONTRIBUTION: usize = 40;
pub const PREDICATES_PER_CONTRIBUTION: usize = 7;
pub const MAX_SIZE: usize = 8;
pub const POOL: &[&str] = &[
    "uses", "employs", "evaluated on", "dataset", "metric", "accuracy", "baseline", "implementation", "language",
    "complexity",
];
const DIMENSION: usize = 16;

pub struct Fixture {
    pub graph: Graph,
    pub contributions: Vec<NodeId>,
    pub table: EmbeddingTable<f64>,
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let v: Vec<f64> = (0..DIMENSION).map(|_| rng.random_range(-1.0..1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

pub fn fixture(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = EmbeddingTable::new(DIMENSION).expect("positive dimension");
    let uses = random_unit(&mut rng);
    for token in POOL.iter().flat_map(|l| l.split(' ')) {
        if table.get(token).is_some() {
            continue;
        }
        // "employs" sits next to "uses" so one group merges at the default threshold
        let v = if token == "employs" {
            let noise = random_unit(&mut rng);
            uses.iter().zip(noise).map(|(a, b)| a + 0.1 * b).collect()
        } else if token == "uses" {
            uses.clone()
        } else {
            random_unit(&mut rng)
        };
        table.insert(token, v).expect("fixture dimension");
    }

    let start = DateTime::from_timestamp_millis(crate::synthetic::EPOCH_MS).expect("valid epoch");
    let mut graph = Graph::with_clock(Clock::Logical { start });
    let mut contributions = Vec::with_capacity(MAX_SIZE);
    for i in 0..MAX_SIZE {
        let mut labels: Vec<&str> = POOL.choose_multiple(&mut rng, PREDICATES_PER_CONTRIBUTION).copied().collect();
        labels.shuffle(&mut rng);
        let spec = PaperSpec {
            title: format!("Benchmark paper {}", i + 1),
            contributions: vec![ContributionSpec { complete: false, ..Default::default() }],
            ..Default::default()
        };
        let c = create_paper(&mut graph, &spec, "bench").expect("valid spec").contributions[0];
        let triples: Vec<TripleSpec> = (0..STATEMENTS_PER_CONTRIBUTION)
            .map(|j| TripleSpec {
                predicate: labels[j % labels.len()].to_owned(),
                object: ObjectSpec::Literal { value: format!("value {}.{}", i + 1, j + 1), datatype: Datatype::String },
            })
            .collect();
        describe_freely(&mut graph, c, &triples, "bench").expect("valid triples");
        contributions.push(c);
    }
    Fixture { graph, contributions, table }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("sizes must lie in 2..={MAX_SIZE}, got {0}")]
    SizeOutOfRange(usize),
    #[error(transparent)]
    Comparison(#[from] scikg::comparison::ComparisonError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeResult {
    pub size: usize,
    pub compare: TimingReport,
    /// `None` when the projected run time exceeded the cap.
    pub baseline: Option<TimingReport>,
    pub examined: u64,
    pub projected_baseline_ms: Option<f64>,
}

/// Times both algorithms at every size. A baseline size whose projected
/// total (warm-up plus samples) exceeds `cap` is skipped.
pub fn bench_comparison(
    fixture: &Fixture,
    sizes: &[usize],
    protocol: Protocol,
    cap: Duration,
) -> Result<Vec<SizeResult>, BenchError> {
    if let Some(bad) = sizes.iter().find(|s| !(2..=MAX_SIZE).contains(*s)) {
        return Err(BenchError::SizeOutOfRange(*bad));
    }
    let config = ComparisonConfig::with_default_threshold(&fixture.table);
    let mut out = Vec::with_capacity(sizes.len());
    // last measured (size, examined, median ms)
    let mut last: Option<(u64, f64)> = None;
    for &size in sizes {
        let ids = &fixture.contributions[..size];
        let direct = compare(&fixture.graph, ids, &config)?;
        let (check, examined) = compare_baseline_counted(&fixture.graph, ids, &config)?;
        assert_eq!(direct, check, "baseline and comparison disagree at size {size}");
        let compare_report = measure("compare", protocol, || compare(&fixture.graph, ids, &config));
        let projected = last.map(|(e, t)| t * examined as f64 / e as f64);
        let runs = (protocol.warmup + protocol.samples) as f64;
        let baseline = match projected {
            Some(p) if p * runs > cap.as_secs_f64() * 1e3 => None,
            _ => Some(measure("baseline", protocol, || compare_baseline_counted(&fixture.graph, ids, &config))),
        };
        if let Some(b) = &baseline {
            last = Some((examined, b.median_ms));
        }
        out.push(SizeResult { size, compare: compare_report, baseline, examined, projected_baseline_ms: projected });
    }
    Ok(out)
}

/// Two-row table in the shape of the published comparison: one column per size.
pub fn render_table(rows: &[SizeResult]) -> String {
    let mut s = String::from("contributions");
    for r in rows {
        s.push_str(&format!("\t{}", r.size));
    }
    s.push_str("\nbaseline (s)");
    for r in rows {
        match &r.baseline {
            Some(b) => s.push_str(&format!("\t{:.6}", b.median_ms / 1e3)),
            None => s.push_str(&format!("\t~{:.3}*", r.projected_baseline_ms.unwrap_or(f64::NAN) / 1e3)),
        }
    }
    s.push_str("\ncompare (s)");
    for r in rows {
        s.push_str(&format!("\t{:.6}", r.compare.median_ms / 1e3));
    }
    s.push('\n');
    s
}
