use super::{Origin, ReachabilityMatrix};

/// Reflexive-transitive closure (Warshall). Cells switched on here get
/// origin `Transitive`; existing cells keep their origin, so the operation
/// is idempotent.
pub fn transitive_closure(m: &ReachabilityMatrix) -> ReachabilityMatrix {
    let n = m.len();
    let mut origins = m.origins().to_vec();
    let mut reach: Vec<bool> = origins.iter().map(|o| o.is_set()).collect();
    for k in 0..n {
        for i in 0..n {
            if i == k || !reach[i * n + k] {
                continue;
            }
            for j in 0..n {
                if reach[k * n + j] && !reach[i * n + j] {
                    reach[i * n + j] = true;
                    origins[i * n + j] = Origin::Transitive;
                }
            }
        }
    }
    ReachabilityMatrix::new(m.factor_ids().to_vec(), origins).expect("closure keeps the diagonal")
}

/// True when no further cell would be added by closure.
pub fn is_closed(m: &ReachabilityMatrix) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|k| !m.get(i, k) || (0..n).all(|j| !m.get(k, j) || m.get(i, j))))
}
