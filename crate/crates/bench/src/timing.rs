use std::hint::black_box;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Warm-up runs are discarded; `samples` runs are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Protocol {
    pub warmup: usize,
    pub samples: usize,
}

impl Default for Protocol {
    fn default() -> Self {
        Protocol { warmup: 10, samples: 30 }
    }
}

pub const MIN_REPORTED_SAMPLES: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvInfo {
    pub cpus: usize,
    pub memory_kb: Option<u64>,
    pub os: String,
    pub arch: String,
}

impl EnvInfo {
    pub fn detect() -> Self {
        let memory_kb = std::fs::read_to_string("/proc/meminfo").ok().and_then(|s| {
            s.lines()
                .find_map(|l| l.strip_prefix("MemTotal:"))
                .and_then(|v| v.trim().trim_end_matches("kB").trim().parse().ok())
        });
        EnvInfo {
            cpus: std::thread::available_parallelism().map_or(1, |n| n.get()),
            memory_kb,
            os: std::env::consts::OS.to_owned(),
            arch: std::env::consts::ARCH.to_owned(),
        }
    }

    pub fn note(&self) -> String {
        let mem = self.memory_kb.map_or("unknown".to_owned(), |kb| format!("{} MiB", kb / 1024));
        format!("{} CPUs, {mem} RAM, {}/{}", self.cpus, self.os, self.arch)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingReport {
    pub operation: String,
    pub samples: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub p95_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
    pub env: EnvInfo,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl TimingReport {
    /// Summary of raw wall times. Panics on an empty sample.
    pub fn from_samples(operation: &str, mut samples: Vec<Duration>, env: EnvInfo) -> Self {
        assert!(!samples.is_empty(), "no samples for {operation}");
        samples.sort_unstable();
        let n = samples.len();
        let median = if n % 2 == 1 {
            ms(samples[n / 2])
        } else {
            (ms(samples[n / 2 - 1]) + ms(samples[n / 2])) / 2.0
        };
        // nearest-rank percentile
        let p95 = ms(samples[(n * 95).div_ceil(100).max(1) - 1]);
        TimingReport {
            operation: operation.to_owned(),
            samples: n,
            mean_ms: samples.iter().map(|d| ms(*d)).sum::<f64>() / n as f64,
            median_ms: median,
            p95_ms: p95,
            min_ms: ms(samples[0]),
            max_ms: ms(samples[n - 1]),
            env,
        }
    }
}

/// Times `f` under `protocol`.
pub fn measure<T>(operation: &str, protocol: Protocol, mut f: impl FnMut() -> T) -> TimingReport {
    for _ in 0..protocol.warmup {
        black_box(f());
    }
    let samples = (0..protocol.samples.max(1))
        .map(|_| {
            let start = Instant::now();
            black_box(f());
            start.elapsed()
        })
        .collect();
    TimingReport::from_samples(operation, samples, EnvInfo::detect())
}

pub const CSV_HEADER: [&str; 12] = [
    "operation", "size", "samples", "mean_ms", "median_ms", "p95_ms", "min_ms", "max_ms", "note", "cpus", "memory_kb",
    "platform",
];

/// One CSV record; `size` and `note` are benchmark-specific.
pub fn csv_record(report: &TimingReport, size: Option<usize>, note: &str) -> Vec<String> {
    vec![
        report.operation.clone(),
        size.map(|s| s.to_string()).unwrap_or_default(),
        report.samples.to_string(),
        format!("{:.6}", report.mean_ms),
        format!("{:.6}", report.median_ms),
        format!("{:.6}", report.p95_ms),
        format!("{:.6}", report.min_ms),
        format!("{:.6}", report.max_ms),
        note.to_owned(),
        report.env.cpus.to_string(),
        report.env.memory_kb.map(|m| m.to_string()).unwrap_or_default(),
        format!("{}/{}", report.env.os, report.env.arch),
    ]
}
