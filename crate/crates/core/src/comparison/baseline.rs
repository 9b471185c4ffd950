use std::collections::HashSet;

use super::{assemble, prepare, ComparisonConfig, ComparisonTable, GroupSeed, Result};
use crate::graph::{Graph, NodeId};
use crate::scalar::Scalar;

/// Brute-force comparison: for every anchor predicate, walks the full
/// Cartesian product of the contributions' predicate sets (one predicate per
/// contribution) and records every tuple position whose predicate is similar
/// enough to the anchor. A contribution without predicates contributes a
/// single empty slot so the product never vanishes.
///
/// Produces exactly the table of [`super::compare`].
pub fn compare_baseline<S: Scalar>(
    graph: &Graph,
    ids: &[NodeId],
    config: &ComparisonConfig<'_, S>,
) -> Result<ComparisonTable<S>> {
    compare_baseline_counted(graph, ids, config).map(|(table, _)| table)
}

/// [`compare_baseline`] plus the number of (anchor, tuple) pairs examined.
pub fn compare_baseline_counted<S: Scalar>(
    graph: &Graph,
    ids: &[NodeId],
    config: &ComparisonConfig<'_, S>,
) -> Result<(ComparisonTable<S>, u64)> {
    let prep = prepare(graph, ids, config)?;
    let gamma = &prep.gamma;
    let width = gamma.len();
    // per contribution: column indices into γ, or [None] when empty
    let choices: Vec<Vec<Option<usize>>> = prep
        .predicate_sets
        .iter()
        .map(|set| {
            let cols: Vec<Option<usize>> = set.iter().map(|p| gamma.index_of(*p)).collect();
            if cols.is_empty() {
                vec![None]
            } else {
                cols
            }
        })
        .collect();
    let n = choices.len();

    let mut examined = 0u64;
    let mut seen = HashSet::new();
    let mut seeds = Vec::new();
    let mut cursor = vec![0usize; n];
    for (a, &anchor) in gamma.predicates.iter().enumerate() {
        let similar = gamma.row(a);
        let mut member = vec![false; width];
        let mut rows = vec![false; n];
        cursor.iter_mut().for_each(|c| *c = 0);
        loop {
            examined += 1;
            for (pos, choice) in cursor.iter().enumerate() {
                if let Some(q) = choices[pos][*choice] {
                    if similar[q] >= config.threshold || q == a {
                        member[q] = true;
                        rows[pos] = true;
                    }
                }
            }
            // advance the odometer
            let mut pos = 0;
            while pos < n {
                cursor[pos] += 1;
                if cursor[pos] < choices[pos].len() {
                    break;
                }
                cursor[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
        let members: std::collections::BTreeSet<_> = (0..width).filter(|q| member[*q]).map(|q| gamma.predicates[q]).collect();
        if seen.insert(members.clone()) {
            seeds.push(GroupSeed { anchor, members, rows });
        }
    }
    Ok((assemble(graph, &prep, config.threshold, seeds), examined))
}
