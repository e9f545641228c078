mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{bits, ids, random_relation, rng};
use ismkit::ism::{conical_matrix, partition_levels, partition_levels_traced, transitive_closure, ReachabilityMatrix};
use ismkit::{corpus, ssim};
use proptest::prelude::*;
use rand::Rng;

/// Straight from the definition, with sets: repeatedly take every remaining
/// factor whose reachability set is contained in its antecedent set.
fn oracle_levels(m: &[Vec<bool>]) -> Vec<BTreeSet<usize>> {
    let n = m.len();
    let mut remaining: BTreeSet<usize> = (0..n).collect();
    let mut levels = Vec::new();
    while !remaining.is_empty() {
        let level: BTreeSet<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| {
                let reach: BTreeSet<usize> = remaining.iter().copied().filter(|&j| m[i][j]).collect();
                let ante: BTreeSet<usize> = remaining.iter().copied().filter(|&j| m[j][i]).collect();
                reach.intersection(&ante).copied().collect::<BTreeSet<_>>() == reach
            })
            .collect();
        assert!(!level.is_empty(), "closed matrices always yield a level");
        remaining = remaining.difference(&level).copied().collect();
        levels.push(level);
    }
    levels
}

fn as_indices(m: &ReachabilityMatrix, levels: &[Vec<String>]) -> Vec<BTreeSet<usize>> {
    levels
        .iter()
        .map(|l| l.iter().map(|id| m.index_of(id).unwrap()).collect())
        .collect()
}

fn check(m: &ReachabilityMatrix) {
    let (p, trace) = partition_levels_traced(m).unwrap();
    let got = as_indices(m, &p.levels);
    assert_eq!(got, oracle_levels(&bits(m)));

    let all: Vec<usize> = got.iter().flatten().copied().collect();
    let unique: BTreeSet<usize> = all.iter().copied().collect();
    assert_eq!(all.len(), m.len(), "exhaustive");
    assert_eq!(unique.len(), m.len(), "disjoint");

    for it in &trace {
        for row in &it.rows {
            let reach: BTreeSet<&String> = row.reachability.iter().collect();
            let inter: BTreeSet<&String> = row.intersection.iter().collect();
            assert_eq!(row.assigned, reach == inter, "{} at level {}", row.id, it.level);
        }
    }

    // Whatever a factor reaches sits at its level or above.
    for i in 0..m.len() {
        for j in 0..m.len() {
            if m.get(i, j) {
                let (li, lj) = (
                    p.level_of(&m.factor_ids()[i]).unwrap(),
                    p.level_of(&m.factor_ids()[j]).unwrap(),
                );
                assert!(lj <= li);
            }
        }
    }

    let c = conical_matrix(m, &p).unwrap();
    let order: Vec<usize> = c.factor_ids().iter().map(|id| m.index_of(id).unwrap()).collect();
    assert_eq!(order.iter().copied().collect::<BTreeSet<_>>().len(), m.len());
    for (a, &i) in order.iter().enumerate() {
        for (b, &j) in order.iter().enumerate() {
            assert_eq!(c.origin(a, b), m.origin(i, j));
        }
    }
}

#[test]
fn bundled_corpus_matches_oracle() {
    let table = ssim::parse_ssim(corpus::SSIM_TABLE, Some(&corpus::catalog())).unwrap();
    let closed = transitive_closure(&ssim::to_initial_reachability(&table));
    let start = Instant::now();
    let p = partition_levels(&closed).unwrap();
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert_eq!(p.factor_count(), 17);
    check(&closed);
}

#[test]
fn random_closed_matrices_match_oracle() {
    let mut r = rng(0x1e7e1);
    for _ in 0..100 {
        let n = r.gen_range(1..=12);
        let density = r.gen_range(0.0..0.4);
        check(&transitive_closure(&random_relation(&mut r, n, density)));
    }
}

#[test]
fn unclosed_cycle_reports_no_progress() {
    // A 3-cycle without its closure: every factor reaches one the others do not.
    let m = ReachabilityMatrix::from_relation(ids(3), |i, j| j == (i + 1) % 3).unwrap();
    let err = partition_levels(&m).unwrap_err();
    assert!(matches!(err, ismkit::Error::NoProgress { .. }), "{err}");
}

proptest! {
    #[test]
    fn depth_bounded_by_longest_chain(cells in prop::collection::vec(any::<bool>(), 64)) {
        let m = transitive_closure(&ReachabilityMatrix::from_relation(ids(8), |i, j| cells[i * 8 + j]).unwrap());
        let p = partition_levels(&m).unwrap();
        prop_assert!(p.depth() >= 1 && p.depth() <= 8);
        prop_assert_eq!(p.factor_count(), 8);
    }
}
