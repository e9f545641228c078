use serde::Serialize;

use super::ReachabilityMatrix;

/// Row sums: how many factors each factor reaches, itself included.
pub fn driving_power(m: &ReachabilityMatrix) -> Vec<usize> {
    (0..m.len())
        .map(|i| m.row(i).iter().filter(|o| o.is_set()).count())
        .collect()
}

/// Column sums: how many factors reach each factor, itself included.
pub fn dependence_power(m: &ReachabilityMatrix) -> Vec<usize> {
    let n = m.len();
    (0..n).map(|j| (0..n).filter(|&i| m.get(i, j)).count()).collect()
}

/// Dense descending ranks: the largest power gets rank 1, ties share a
/// rank, and ranks run 1..=k without gaps.
pub fn rank_powers(powers: &[usize]) -> Vec<usize> {
    let mut distinct = powers.to_vec();
    distinct.sort_unstable_by(|a, b| b.cmp(a));
    distinct.dedup();
    powers
        .iter()
        .map(|p| distinct.iter().position(|d| d == p).expect("power is present") + 1)
        .collect()
}

/// Driving and dependence powers with their ranks, indexed like the
/// matrix they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerProfile {
    pub factor_ids: Vec<String>,
    pub driving: Vec<usize>,
    pub dependence: Vec<usize>,
    pub driving_rank: Vec<usize>,
    pub dependence_rank: Vec<usize>,
}

impl PowerProfile {
    pub fn from_matrix(m: &ReachabilityMatrix) -> Self {
        let driving = driving_power(m);
        let dependence = dependence_power(m);
        PowerProfile {
            factor_ids: m.factor_ids().to_vec(),
            driving_rank: rank_powers(&driving),
            dependence_rank: rank_powers(&dependence),
            driving,
            dependence,
        }
    }

    pub fn len(&self) -> usize {
        self.factor_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factor_ids.is_empty()
    }
}
