#![allow(dead_code)]

use std::path::PathBuf;

use ismkit::ism::ReachabilityMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn ids(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("F{i}")).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random direct relation with the given edge probability.
pub fn random_relation(rng: &mut ChaCha8Rng, n: usize, density: f64) -> ReachabilityMatrix {
    let mut cells = vec![false; n * n];
    for (k, c) in cells.iter_mut().enumerate() {
        *c = k / n != k % n && rng.gen_bool(density);
    }
    ReachabilityMatrix::from_relation(ids(n), |i, j| cells[i * n + j]).unwrap()
}

/// Random relation that only points from lower to higher index.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, density: f64) -> ReachabilityMatrix {
    let mut cells = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            cells[i * n + j] = rng.gen_bool(density);
        }
    }
    ReachabilityMatrix::from_relation(ids(n), |i, j| cells[i * n + j]).unwrap()
}

pub fn bits(m: &ReachabilityMatrix) -> Vec<Vec<bool>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect()
}

/// Closure by repeated boolean squaring until nothing changes.
pub fn fixpoint_closure(m: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = m.len();
    let mut r = m.to_vec();
    loop {
        let mut next = r.clone();
        for i in 0..n {
            for j in 0..n {
                if !next[i][j] {
                    next[i][j] = (0..n).any(|k| r[i][k] && r[k][j]);
                }
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

/// Depth-first path search over explicit edges (reflexive by convention).
pub fn path_exists(edges: &[Vec<bool>], from: usize, to: usize) -> bool {
    let n = edges.len();
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        if std::mem::replace(&mut seen[u], true) {
            continue;
        }
        stack.extend((0..n).filter(|&v| edges[u][v] && !seen[v]));
    }
    false
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}

/// Compares `actual` with a committed golden file. `UPDATE_GOLDEN=1`
/// rewrites the file instead.
pub fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}; run with UPDATE_GOLDEN=1 to create it", path.display()));
    assert!(
        expected == actual,
        "{} differs from the computed output",
        path.display()
    );
}
