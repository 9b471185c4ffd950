use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use scikg::comparison::{compare, compare_baseline, sim_set, similarity_matrix};
use scikg::graph::Predicate;
use scikg::{ComparisonConfig, EmbeddingTable, Graph, NodeId};

use crate::fixtures::{build_store, shapes, table, LABELS};
use crate::run_cases;

const THRESHOLDS: [f64; 6] = [0.3, 0.5, 0.8, 0.9, 0.95, 1.0];
const STORES: u32 = 500;
const TOL: f64 = 1e-9;

pub fn oracle_equivalence() -> Result<String, String> {
    let table = table();
    let strategy = (shapes(2, 5, 6), prop::sample::select(THRESHOLDS.to_vec()));
    let groups = std::cell::Cell::new(0usize);
    run_cases(STORES, strategy, |(shape, t)| {
        let (g, ids) = build_store(&shape);
        let cfg = ComparisonConfig::new(&table, t).unwrap();
        let fast = compare(&g, &ids, &cfg).unwrap();
        prop_assert_eq!(&fast, &compare_baseline(&g, &ids, &cfg).unwrap());
        groups.set(groups.get() + fast.groups.len());
        Ok(())
    })?;
    Ok(format!("{STORES} stores, {} groups, tables identical", groups.get()))
}

fn predicates_of(g: &Graph, ids: &[NodeId]) -> Vec<Predicate> {
    let used: BTreeSet<_> = ids.iter().flat_map(|c| g.subgraph(*c, 5).unwrap().predicates()).collect();
    used.into_iter().map(|p| g.predicate(p).unwrap().clone()).collect()
}

fn tokens() -> Vec<&'static str> {
    let set: BTreeSet<&str> = LABELS.iter().flat_map(|l| l.split(' ')).filter(|t| *t != "unknownword").collect();
    set.into_iter().collect()
}

/// Label vector as the mean of its known token vectors; `None` if none is known.
fn mean_vector(label: &str, vocab: &[(&str, Vec<f64>)]) -> Option<Vec<f64>> {
    let found: Vec<&Vec<f64>> =
        label.split(' ').filter_map(|t| vocab.iter().find(|(w, _)| *w == t).map(|(_, v)| v)).collect();
    if found.is_empty() {
        return None;
    }
    let dim = found[0].len();
    Some((0..dim).map(|i| found.iter().map(|v| v[i]).sum::<f64>() / found.len() as f64).collect())
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

fn expected_gamma(a: &str, b: &str, vocab: &[(&str, Vec<f64>)]) -> f64 {
    if a == b {
        return 1.0;
    }
    match (mean_vector(a, vocab), mean_vector(b, vocab)) {
        (Some(x), Some(y)) => cosine(&x, &y),
        _ => 0.0,
    }
}

pub fn matrix_laws() -> Result<String, String> {
    let words = tokens();
    let vectors = prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 3), words.len());
    let strategy = (shapes(2, 5, 6), vectors);
    run_cases(STORES, strategy, |(shape, vecs)| {
        let (g, ids) = build_store(&shape);
        let vocab: Vec<(&str, Vec<f64>)> = words.iter().copied().zip(vecs).collect();
        let mut table = EmbeddingTable::new(3).unwrap();
        for (w, v) in &vocab {
            table.insert(w, v.clone()).unwrap();
        }
        let preds = predicates_of(&g, &ids);
        let gamma = similarity_matrix(&preds, &table);
        for (i, p) in preds.iter().enumerate() {
            prop_assert!((gamma.get(i, i) - 1.0).abs() <= TOL);
            for (j, q) in preds.iter().enumerate() {
                let v = gamma.get(i, j);
                prop_assert!((v - gamma.get(j, i)).abs() <= TOL);
                let want = expected_gamma(&p.label, &q.label, &vocab);
                prop_assert!((v - want).abs() <= TOL, "γ({}, {}) = {v}, expected {want}", p.label, q.label);
            }
            let mut previous: Option<BTreeSet<_>> = None;
            for t in THRESHOLDS {
                let set = sim_set(&gamma, p.id, t).unwrap();
                prop_assert!(set.contains(&p.id));
                if let Some(prev) = &previous {
                    prop_assert!(set.is_subset(prev), "sim set grew from T below {t}");
                }
                previous = Some(set);
            }
        }
        self_comparison(&g, &ids, &table)
    })?;
    Ok(format!("{STORES} stores with random vectors, tolerance {TOL:e}"))
}

fn self_comparison(g: &Graph, ids: &[NodeId], table: &EmbeddingTable) -> Result<(), TestCaseError> {
    for t in [0.5, 1.0] {
        let cfg = ComparisonConfig::new(table, t).unwrap();
        for c in ids {
            let out = compare(g, &[*c, *c], &cfg).unwrap();
            prop_assert!(out.groups.iter().all(|grp| grp.frequency == 1.0 && grp.support == 2));
        }
    }
    Ok(())
}
