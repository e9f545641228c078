use std::collections::HashSet;

use super::{LevelPartition, ReachabilityMatrix};
use crate::{Error, Result};

/// Matrix order implied by a partition: level 1 factors first, then level 2,
/// and so on; matrix order within a level.
pub(crate) fn level_order(m: &ReachabilityMatrix, p: &LevelPartition) -> Result<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut order = Vec::with_capacity(m.len());
    for (k, level) in p.levels.iter().enumerate() {
        let mut idx = Vec::with_capacity(level.len());
        for id in level {
            let i = m
                .index_of(id)
                .ok_or_else(|| Error::Invalid(format!("level {} names `{id}`, which is not in the matrix", k + 1)))?;
            if !seen.insert(i) {
                return Err(Error::Invalid(format!("`{id}` appears in more than one level")));
            }
            idx.push(i);
        }
        idx.sort_unstable();
        order.extend(idx);
    }
    if order.len() != m.len() {
        let missing: Vec<&str> = (0..m.len())
            .filter(|i| !seen.contains(i))
            .map(|i| m.factor_ids()[i].as_str())
            .collect();
        return Err(Error::Invalid(format!("partition omits {}", missing.join(", "))));
    }
    Ok(order)
}

/// The final matrix with rows and columns regrouped by level.
pub fn conical_matrix(m: &ReachabilityMatrix, p: &LevelPartition) -> Result<ReachabilityMatrix> {
    let order = level_order(m, p)?;
    Ok(m.permuted(&order))
}
