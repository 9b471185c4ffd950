use std::time::Duration;

use scikg_bench::fetch::bench_fetch;
use scikg_bench::synthetic::{generate, SyntheticSpec, NODES_PER_PAPER};
use scikg_bench::table2::{bench_comparison, fixture, render_table, SizeResult};
use scikg_bench::timing::{Protocol, MIN_REPORTED_SAMPLES};

const CAP: Duration = Duration::from_secs(300);

fn baseline_ms(r: &SizeResult) -> f64 {
    r.baseline.as_ref().map(|b| b.median_ms).or(r.projected_baseline_ms).expect("measured or projected")
}

pub fn comparison_shape() -> Result<String, String> {
    let rows = bench_comparison(&fixture(1), &[2, 3, 4, 5, 6, 7, 8], Protocol::default(), CAP).map_err(|e| e.to_string())?;
    let at = |n: usize| rows.iter().find(|r| r.size == n).unwrap();
    if let Some(r) = rows.iter().find(|r| r.compare.samples < MIN_REPORTED_SAMPLES) {
        return Err(format!("only {} samples at size {}", r.compare.samples, r.size));
    }
    let baseline_growth = baseline_ms(at(8)) / baseline_ms(at(5));
    let compare_growth = at(8).compare.median_ms / at(2).compare.median_ms;
    let mut problems = Vec::new();
    if baseline_growth < 100.0 {
        problems.push(format!("baseline 8/5 = {baseline_growth:.1}x < 100x"));
    }
    if compare_growth > 5.0 {
        problems.push(format!("compare 8/2 = {compare_growth:.2}x > 5x"));
    }
    for r in rows.iter().filter(|r| r.size >= 4) {
        if r.compare.median_ms >= baseline_ms(r) {
            problems.push(format!("compare not faster than baseline at {}", r.size));
        }
    }
    let projected = rows.iter().filter(|r| r.baseline.is_none()).count();
    print!("{}", render_table(&rows));
    let detail = format!(
        "baseline 8/5 = {baseline_growth:.0}x, compare 8/2 = {compare_growth:.2}x, {projected} baseline size(s) projected"
    );
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", problems.join("; ")))
    }
}

pub fn scalability() -> Result<String, String> {
    for n in [1, 2, 7, 1000] {
        let g = generate(&SyntheticSpec::new(n, 3)).map_err(|e| e.to_string())?;
        if g.graph.node_count() != NODES_PER_PAPER * n {
            return Err(format!("{n} papers gave {} nodes", g.graph.node_count()));
        }
    }
    let protocol = Protocol { warmup: 10, samples: 1000 };
    let mut medians = Vec::new();
    for n in [10_000, 100_000] {
        let data = generate(&SyntheticSpec::new(n, 1)).map_err(|e| e.to_string())?;
        if data.graph.node_count() != NODES_PER_PAPER * n {
            return Err(format!("{n} papers gave {} nodes", data.graph.node_count()));
        }
        let report = bench_fetch(&data.graph, &data.papers, protocol, 7).map_err(|e| e.to_string())?;
        medians.push(report.median_ms);
    }
    let growth = medians[1] / medians[0];
    let detail = format!(
        "nodes = 10 x papers; median fetch {:.4} ms @10k, {:.4} ms @100k, growth {growth:.2}x",
        medians[0], medians[1]
    );
    if medians[1] >= 50.0 || growth > 3.0 {
        Err(detail)
    } else {
        Ok(detail)
    }
}
