use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::sync::RwLock;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use scikg::domain::papers;
use scikg::Graph;
use scikg_bench::fetch::{bench_fetch, bench_fetch_parallel};
use scikg_bench::synthetic::{generate, SyntheticSpec};
use scikg_bench::table2::{self, bench_comparison, render_table};
use scikg_bench::timing::{csv_record, Protocol, TimingReport, CSV_HEADER};

#[derive(Parser)]
#[command(name = "bench", about = "Synthetic datasets and timing for the knowledge graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic store dump to <out>/graph.tsv
    Generate {
        #[arg(long)]
        papers: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time fetching single papers with their contributions
    Fetch {
        /// Generate this many papers in memory (ignored with --store)
        #[arg(long, default_value_t = 100_000)]
        papers: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Directory written by `bench generate`
        #[arg(long)]
        store: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        warmup: usize,
        /// Number of concurrent readers
        #[arg(long)]
        parallel: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the comparison against the brute-force baseline
    Compare(CompareArgs),
}

#[derive(Args)]
struct CompareArgs {
    /// Inclusive range `a..b` or a comma-separated list
    #[arg(long, default_value = "2..8")]
    sizes: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    samples: usize,
    #[arg(long, default_value_t = 10)]
    warmup: usize,
    /// Skip a baseline size whose projected total exceeds this many seconds
    #[arg(long, default_value_t = 300)]
    cap_seconds: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_sizes(raw: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = raw.split_once("..") {
        let a: usize = a.trim().parse().context("range start")?;
        let b: usize = b.trim().trim_start_matches('=').parse().context("range end")?;
        if a > b {
            bail!("empty size range {raw}");
        }
        return Ok((a..=b).collect());
    }
    raw.split(',').map(|s| s.trim().parse().with_context(|| format!("size {s:?}"))).collect()
}

fn write_csv(path: &PathBuf, rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn print_report(r: &TimingReport) {
    println!(
        "{}: n={} median={:.4} ms mean={:.4} ms p95={:.4} ms [{}]",
        r.operation,
        r.samples,
        r.median_ms,
        r.mean_ms,
        r.p95_ms,
        r.env.note()
    );
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Generate { papers, seed, out } => {
            let data = generate(&SyntheticSpec::new(papers, seed))?;
            fs::create_dir_all(&out)?;
            let path = out.join("graph.tsv");
            data.graph.write_dump(BufWriter::new(File::create(&path)?))?;
            let meta = serde_json::json!({
                "papers": papers,
                "seed": seed,
                "nodes": data.graph.node_count(),
                "statements": data.graph.statement_count(),
            });
            fs::write(out.join("meta.json"), serde_json::to_string_pretty(&meta)? + "\n")?;
            println!("wrote {} ({} nodes, {} statements)", path.display(), data.graph.node_count(), data.graph.statement_count());
        }
        Command::Fetch { papers: count, seed, store, samples, warmup, parallel, out } => {
            let graph = match store {
                Some(dir) => Graph::open(dir.join("graph.tsv")).context("loading store")?,
                None => generate(&SyntheticSpec::new(count, seed))?.graph,
            };
            let ids = papers(&graph);
            let protocol = Protocol { warmup, samples };
            let report = match parallel {
                Some(threads) => bench_fetch_parallel(&RwLock::new(graph), &ids, protocol, seed, threads)?,
                None => bench_fetch(&graph, &ids, protocol, seed)?,
            };
            print_report(&report);
            if let Some(out) = out {
                write_csv(&out, [csv_record(&report, Some(ids.len()), "papers")])?;
            }
        }
        Command::Compare(args) => {
            let sizes = parse_sizes(&args.sizes)?;
            let fixture = table2::fixture(args.seed);
            let protocol = Protocol { warmup: args.warmup, samples: args.samples };
            let rows = bench_comparison(&fixture, &sizes, protocol, Duration::from_secs(args.cap_seconds))?;
            for r in &rows {
                print_report(&r.compare);
                if let Some(b) = &r.baseline {
                    print_report(b);
                }
            }
            print!("{}", render_table(&rows));
            if rows.iter().any(|r| r.baseline.is_none()) {
                println!("* projected, not measured");
            }
            if let Some(out) = args.out {
                let note = format!(
                    "{} statements / {} predicates per contribution",
                    table2::STATEMENTS_PER_CONTRIBUTION,
                    table2::PREDICATES_PER_CONTRIBUTION
                );
                let mut records = Vec::new();
                for r in &rows {
                    records.push(csv_record(&r.compare, Some(r.size), &note));
                    if let Some(b) = &r.baseline {
                        records.push(csv_record(b, Some(r.size), &format!("{note}; {} tuples", r.examined)));
                    }
                }
                write_csv(&out, records)?;
            }
        }
    }
    Ok(())
}
