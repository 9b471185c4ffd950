use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::client::{LinkOutcome, LinkerClient};
use crate::corpus::{AnnotatedEntity, ConceptClass};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("the corpus is empty")]
    EmptyCorpus,
}

/// Counts for one slice of the corpus. `failed` entities are also unlinked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub linked: u64,
    pub failed: u64,
    pub total: u64,
}

impl Tally {
    fn add(&mut self, outcome: &LinkOutcome) {
        self.total += 1;
        match outcome {
            LinkOutcome::Linked(_) => self.linked += 1,
            LinkOutcome::Failed(_) => self.failed += 1,
            LinkOutcome::Unlinked => {}
        }
    }

    /// ζ as an exact fraction. `total` must be non-zero.
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.linked, self.total)
    }

    pub fn coverage(&self) -> f64 {
        self.linked as f64 / self.total as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub linker: String,
    pub overall: Tally,
    pub coverage: f64,
    pub ratio: Ratio<u64>,
    /// Entities without a class are counted under `None`.
    pub per_class: BTreeMap<Option<ConceptClass>, Tally>,
}

impl CoverageReport {
    pub fn linked(&self) -> u64 {
        self.overall.linked
    }

    pub fn total(&self) -> u64 {
        self.overall.total
    }
}

/// Links every entity (concurrently) and tallies ζ = linked / total.
pub fn evaluate(corpus: &[AnnotatedEntity], client: &dyn LinkerClient) -> Result<CoverageReport, EvalError> {
    if corpus.is_empty() {
        return Err(EvalError::EmptyCorpus);
    }
    let outcomes: Vec<LinkOutcome> = corpus.par_iter().map(|e| client.link(&e.surface)).collect();
    let mut overall = Tally::default();
    let mut per_class: BTreeMap<Option<ConceptClass>, Tally> = BTreeMap::new();
    for (entity, outcome) in corpus.iter().zip(&outcomes) {
        overall.add(outcome);
        per_class.entry(entity.class).or_default().add(outcome);
    }
    Ok(CoverageReport {
        linker: client.name().to_owned(),
        coverage: overall.coverage(),
        ratio: overall.ratio(),
        overall,
        per_class,
    })
}

/// Reports ordered by linked count, best first; ties by linker name.
pub fn rank(mut reports: Vec<CoverageReport>) -> Vec<CoverageReport> {
    reports.sort_by(|a, b| b.linked().cmp(&a.linked()).then_with(|| a.linker.cmp(&b.linker)));
    reports
}
