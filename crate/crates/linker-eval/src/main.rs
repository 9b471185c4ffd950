use std::fs::{self, File};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Parser;
use linker_eval::{evaluate, rank, read_corpus, FixtureClient, LinkerClient};
#[cfg(feature = "http")]
use linker_eval::CachedClient;

#[derive(Parser)]
#[command(name = "linker-eval", about = "Coverage of entity linkers over an annotated corpus")]
struct Cli {
    /// Tab-separated corpus: doc id, surface form, optional class
    #[arg(long)]
    corpus: PathBuf,
    /// `fixture:<path>` or a live service name (spotlight, falcon); repeatable
    #[arg(long = "client", required = true)]
    clients: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Response cache for live clients
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    timeout_ms: u64,
}

fn build_client(spec: &str, cli: &Cli) -> Result<Box<dyn LinkerClient>> {
    if let Some(path) = spec.strip_prefix("fixture:") {
        return Ok(Box::new(FixtureClient::load(path)?));
    }
    live_client(spec, cli)
}

#[cfg(feature = "http")]
fn live_client(name: &str, cli: &Cli) -> Result<Box<dyn LinkerClient>> {
    use linker_eval::http::{HttpLinker, Service};
    let Some(service) = Service::from_name(name) else {
        bail!("unknown client {name:?}; expected fixture:<path>, spotlight or falcon");
    };
    let live = HttpLinker::from_env(service, std::time::Duration::from_millis(cli.timeout_ms));
    Ok(match &cli.cache_dir {
        Some(dir) => Box::new(CachedClient::new(live, dir.join(service.name()))),
        None => Box::new(live),
    })
}

#[cfg(not(feature = "http"))]
fn live_client(name: &str, _cli: &Cli) -> Result<Box<dyn LinkerClient>> {
    bail!("client {name:?} needs the `http` feature")
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let corpus = read_corpus(File::open(&cli.corpus).with_context(|| format!("opening {}", cli.corpus.display()))?)?;
    let mut reports = Vec::new();
    for spec in &cli.clients {
        let client = build_client(spec, &cli)?;
        let report = evaluate(&corpus, client.as_ref())?;
        eprintln!(
            "{}: {}/{} linked ({} failed), coverage {:.4}",
            report.linker,
            report.overall.linked,
            report.overall.total,
            report.overall.failed,
            report.coverage
        );
        reports.push(report);
    }
    let csv = linker_eval::report::to_csv(&rank(reports));
    match &cli.out {
        Some(path) => fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(())
}
