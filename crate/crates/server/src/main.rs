use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::Parser;
use scikg_server::{router, AppState, ServerConfig};

#[derive(Parser)]
#[command(name = "scikg-server", about = "JSON REST API over the scholarly knowledge graph")]
struct Cli {
    #[arg(long, default_value = "127.0.0.1:8080")]
    listen: SocketAddr,
    /// Directory for the store journal and saved comparisons; in-memory when absent
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Word-vector file used to align predicates in comparisons
    #[arg(long)]
    embeddings: Option<PathBuf>,
    /// Default similarity threshold T in (0, 1]
    #[arg(long)]
    threshold: Option<f64>,
    /// Bearer token required on mutating routes
    #[arg(long, env = "ORKG_WRITE_TOKEN", hide_env_values = true)]
    write_token: Option<String>,
}

#[tokio::main]
async fn main() -> Result<()> {
    let cli = Cli::parse();
    let config = ServerConfig {
        data_dir: cli.data_dir,
        embeddings: cli.embeddings,
        threshold: cli.threshold,
        write_token: cli.write_token,
    };
    let state = Arc::new(AppState::open(&config).context("starting up")?);
    let listener = tokio::net::TcpListener::bind(cli.listen).await.with_context(|| format!("binding {}", cli.listen))?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
