//! Seeded synthetic papers.
//!
//! Every paper follows one template of 10 nodes and 9 statements:
//!
//! ```text
//! paper --has contribution--> contribution
//! paper --author--> "name"            paper --publication year--> 2011
//! contribution --addresses--> problem --description--> "..."
//! contribution --employs-->   method  --description--> "..."
//! contribution --yields-->    result  --description--> "..."
//! ```

use chrono::DateTime;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scikg::domain::{create_paper, ContributionSpec, PaperSpec};
use scikg::graph::{Clock, Datatype, Graph, NodeId};
use serde::{Deserialize, Serialize};

pub const NODES_PER_PAPER: usize = 10;
pub const STATEMENTS_PER_PAPER: usize = 9;
pub const DESCRIPTION: &str = "description";
/// Statement timestamps start here so dumps are reproducible.
pub const EPOCH_MS: i64 = 1_577_836_800_000;

const ADJECTIVES: &[&str] = &[
    "Scalable", "Robust", "Efficient", "Adaptive", "Distributed", "Probabilistic", "Incremental", "Sparse",
    "Interpretable", "Federated", "Semantic", "Approximate", "Parallel", "Neural", "Bayesian", "Hierarchical",
];
const TOPICS: &[&str] = &[
    "entity linking", "graph embedding", "question answering", "sorting", "genome assembly", "image segmentation",
    "topic modeling", "link prediction", "query optimization", "knowledge curation", "protein folding",
    "machine translation", "anomaly detection", "citation analysis", "schema matching", "crop yield estimation",
];
const METHODS: &[&str] = &[
    "transformer", "random forest", "divide and conquer", "gradient boosting", "belief propagation",
    "dynamic programming", "contrastive learning", "integer programming", "spectral clustering", "crowdsourcing",
];
const RESULTS: &[&str] = &[
    "accuracy improvement", "linear runtime", "reduced memory", "higher recall", "faster convergence",
    "better calibration", "lower latency", "state of the art F1",
];
const GIVEN: &[&str] = &["Ada", "Alan", "Grace", "Edsger", "Barbara", "Donald", "Frances", "Tony", "Radia", "Leslie"];
const FAMILY: &[&str] = &["Lovelace", "Turing", "Hopper", "Dijkstra", "Liskov", "Knuth", "Allen", "Hoare", "Perlman", "Lamport"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub paper_count: usize,
    pub seed: u64,
    pub predicates_per_contribution: usize,
}

impl SyntheticSpec {
    pub fn new(paper_count: usize, seed: u64) -> Self {
        SyntheticSpec { paper_count, seed, predicates_per_contribution: 3 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GenerateError {
    #[error("paper_count must be at least 1")]
    NoPapers,
    #[error("the template has exactly 3 predicates per contribution, got {0}")]
    PredicateCount(usize),
    #[error(transparent)]
    Domain(#[from] scikg::domain::DomainError),
    #[error(transparent)]
    Graph(#[from] scikg::GraphError),
}

pub struct Generated {
    pub graph: Graph,
    pub papers: Vec<NodeId>,
    pub contributions: Vec<NodeId>,
}

fn pick<'a>(rng: &mut ChaCha8Rng, words: &[&'a str]) -> &'a str {
    words.choose(rng).expect("non-empty vocabulary")
}

pub fn generate(spec: &SyntheticSpec) -> Result<Generated, GenerateError> {
    if spec.paper_count == 0 {
        return Err(GenerateError::NoPapers);
    }
    if spec.predicates_per_contribution != 3 {
        return Err(GenerateError::PredicateCount(spec.predicates_per_contribution));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let start = DateTime::from_timestamp_millis(EPOCH_MS).expect("valid epoch");
    let mut graph = Graph::with_clock(Clock::Logical { start });
    let description = graph.create_predicate(DESCRIPTION)?.id;
    let mut papers = Vec::with_capacity(spec.paper_count);
    let mut contributions = Vec::with_capacity(spec.paper_count);
    for i in 0..spec.paper_count {
        let topic = pick(&mut rng, TOPICS);
        let method = pick(&mut rng, METHODS);
        let result = pick(&mut rng, RESULTS);
        let paper_spec = PaperSpec {
            title: format!("{} {} with {} #{}", pick(&mut rng, ADJECTIVES), topic, method, i + 1),
            doi: None,
            authors: vec![format!("{} {}", pick(&mut rng, GIVEN), pick(&mut rng, FAMILY))],
            year: Some(rng.random_range(1990..=2024)),
            contributions: vec![ContributionSpec {
                problem: Some(topic.to_owned()),
                method: Some(method.to_owned()),
                results: vec![result.to_owned()],
                ..Default::default()
            }],
        };
        let paper = create_paper(&mut graph, &paper_spec, "generator")?;
        let c = scikg::domain::fetch_contribution(&graph, paper.contributions[0])?;
        let targets = [c.problem, c.method].into_iter().flatten().chain(c.results);
        for node in targets {
            let text = format!("{} ({})", graph.node_text(node).unwrap_or_default(), rng.random_range(0..10_000u32));
            let literal = graph.create_literal(&text, Datatype::String)?.id;
            graph.create_statement(node, description, literal, "generator")?;
        }
        papers.push(paper.node);
        contributions.push(c.node);
    }
    Ok(Generated { graph, papers, contributions })
}
