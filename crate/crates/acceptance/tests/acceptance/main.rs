//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Pass substrings as arguments to run a subset.

mod api;
mod bench;
mod comparison;
mod coverage;
mod fixtures;
mod rdf;
mod similarity;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

/// One criterion: `Ok(detail)` on success, `Err(reason)` on failure.
type Check = fn() -> Result<String, String>;

const CHECKS: &[(&str, Check)] = &[
    ("comparison equals brute-force oracle", comparison::oracle_equivalence),
    ("similarity matrix, threshold and self-comparison laws", comparison::matrix_laws),
    ("comparison benchmark growth shape", bench::comparison_shape),
    ("scalability: node law and single-paper fetch", bench::scalability),
    ("tf-idf self-retrieval and order invariance", similarity::self_retrieval),
    ("rdf round-trip and line grammar", rdf::round_trip),
    ("linker coverage exact and reproducible", coverage::coverage),
    ("rest api contract", api::contract),
];

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected: Vec<_> = CHECKS
        .iter()
        .filter(|(name, _)| filters.is_empty() || filters.iter().any(|f| name.contains(f.as_str())))
        .collect();
    let mut failed = 0;
    for (name, check) in &selected {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({secs:.2} s): {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2} s): {reason}");
            }
        }
    }
    println!("{} passed, {failed} failed", selected.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

/// Runs `test` on exactly `cases` deterministic samples of `strategy`.
pub fn run_cases<S: proptest::strategy::Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<(), String> {
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}
