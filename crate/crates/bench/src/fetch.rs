use std::sync::RwLock;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scikg::domain::fetch_paper_detail;
use scikg::{Graph, NodeId};

use crate::timing::{EnvInfo, Protocol, TimingReport};

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("the store has no papers")]
    EmptyStore,
    #[error(transparent)]
    Domain(#[from] scikg::domain::DomainError),
}

pub const OPERATION: &str = "fetch paper with contributions";

/// Times fetching uniformly sampled papers together with their contributions.
pub fn bench_fetch(graph: &Graph, papers: &[NodeId], protocol: Protocol, seed: u64) -> Result<TimingReport, FetchError> {
    if papers.is_empty() {
        return Err(FetchError::EmptyStore);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..protocol.warmup {
        std::hint::black_box(fetch_paper_detail(graph, *papers.choose(&mut rng).unwrap())?);
    }
    let mut samples = Vec::with_capacity(protocol.samples);
    for _ in 0..protocol.samples.max(1) {
        let id = *papers.choose(&mut rng).unwrap();
        let start = Instant::now();
        std::hint::black_box(fetch_paper_detail(graph, id)?);
        samples.push(start.elapsed());
    }
    Ok(TimingReport::from_samples(OPERATION, samples, EnvInfo::detect()))
}

/// Same measurement from `threads` readers sharing one lock; every sample
/// includes acquiring the read guard.
pub fn bench_fetch_parallel(
    graph: &RwLock<Graph>,
    papers: &[NodeId],
    protocol: Protocol,
    seed: u64,
    threads: usize,
) -> Result<TimingReport, FetchError> {
    if papers.is_empty() {
        return Err(FetchError::EmptyStore);
    }
    let threads = threads.max(1);
    let per_thread = protocol.samples.max(1).div_ceil(threads);
    let results: Vec<Result<Vec<Duration>, FetchError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
                    let mut out = Vec::with_capacity(per_thread);
                    for i in 0..protocol.warmup + per_thread {
                        let id = *papers.choose(&mut rng).unwrap();
                        let start = Instant::now();
                        let guard = graph.read().unwrap_or_else(|e| e.into_inner());
                        std::hint::black_box(fetch_paper_detail(&guard, id)?);
                        drop(guard);
                        if i >= protocol.warmup {
                            out.push(start.elapsed());
                        }
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("reader thread")).collect()
    });
    let mut samples = Vec::new();
    for r in results {
        samples.extend(r?);
    }
    Ok(TimingReport::from_samples(&format!("{OPERATION} ({threads} readers)"), samples, EnvInfo::detect()))
}
