use std::collections::HashMap;
use std::path::PathBuf;

use linker_eval::client::{FixtureFile, Recorded};
use linker_eval::report::to_csv;
use linker_eval::{evaluate, rank, read_corpus, AnnotatedEntity, FixtureClient};
use num_rational::Ratio;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../linker-eval/tests/fixtures")
}

fn entity(surface: &str) -> AnnotatedEntity {
    AnnotatedEntity { doc_id: "D1".into(), surface: surface.into(), class: None }
}

fn three_of_four() -> Result<(), String> {
    let responses: HashMap<String, Recorded> = [
        ("a", Recorded::Link(Some("E1".into()))),
        ("b", Recorded::Link(Some("E2".into()))),
        ("c", Recorded::Link(Some("E3".into()))),
        ("d", Recorded::Link(None)),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_owned(), v))
    .collect();
    let client = FixtureClient::new(FixtureFile { name: "rec".into(), responses });
    let corpus: Vec<_> = ["a", "b", "c", "d"].into_iter().map(entity).collect();
    let report = evaluate(&corpus, &client).map_err(|e| e.to_string())?;
    if report.ratio != Ratio::new(3, 4) || report.coverage != 0.75 {
        return Err(format!("3 of 4 linked gave {} = {}", report.ratio, report.coverage));
    }
    Ok(())
}

fn report_bytes() -> Result<String, String> {
    let dir = fixtures();
    let corpus = read_corpus(std::fs::File::open(dir.join("corpus.tsv")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for name in ["spotlight.json", "falcon.json"] {
        let client = FixtureClient::load(dir.join(name)).map_err(|e| e.to_string())?;
        reports.push(evaluate(&corpus, &client).map_err(|e| e.to_string())?);
    }
    Ok(to_csv(&rank(reports)))
}

pub fn coverage() -> Result<String, String> {
    three_of_four()?;
    let first = report_bytes()?;
    let second = report_bytes()?;
    let golden = std::fs::read_to_string(fixtures().join("report.csv")).map_err(|e| e.to_string())?;
    if first != second {
        return Err("two runs over the same recordings differ".into());
    }
    if first != golden {
        return Err(format!("report differs from the golden file:\n{first}"));
    }
    Ok(format!("3/4 -> 0.75 exactly; {} report bytes match the golden file", first.len()))
}
