use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scikg::similarity::build_document;
use scikg::TfIdfIndex;
use scikg_bench::synthetic::{generate, SyntheticSpec};

const CORPUS: usize = 100;
const SHUFFLES: u64 = 5;

pub fn self_retrieval() -> Result<String, String> {
    let data = generate(&SyntheticSpec::new(CORPUS, 42)).map_err(|e| e.to_string())?;
    let docs = data
        .contributions
        .iter()
        .map(|c| build_document(&data.graph, *c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    if docs.len() != CORPUS {
        return Err(format!("corpus has {} contributions", docs.len()));
    }
    let index = TfIdfIndex::build(&docs).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for d in &docs {
        let top = index.rank(d, 1, None).map_err(|e| e.to_string())?;
        let hit = top.first().ok_or("empty ranking")?;
        if hit.contribution != d.contribution {
            return Err(format!("{} ranked {} first", d.contribution, hit.contribution));
        }
        worst = worst.max((hit.score - 1.0).abs());
    }
    if worst > 1e-9 {
        return Err(format!("self score off by {worst:e}"));
    }
    let reference: Vec<_> = docs.iter().map(|d| index.rank(d, CORPUS, None).unwrap()).collect();
    for seed in 0..SHUFFLES {
        let mut shuffled = docs.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let other = TfIdfIndex::build(&shuffled).map_err(|e| e.to_string())?;
        for (d, want) in docs.iter().zip(&reference) {
            if &other.rank(d, CORPUS, None).unwrap() != want {
                return Err(format!("ranking for {} changed under shuffle {seed}", d.contribution));
            }
        }
    }
    Ok(format!("{CORPUS} contributions rank themselves first (max |score - 1| = {worst:.1e}); {SHUFFLES} shuffles agree"))
}
