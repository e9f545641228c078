//! Combined audit of a computed run against published reference material.

use serde::Serialize;

use crate::ism::{
    compare_levels, compare_matrices, partition_levels, LevelClaims, LevelComparison, MatrixDiff, PowerProfile,
    ReachabilityMatrix, ReferenceMatrix,
};
use crate::micmac::{classify, compare_clusters, ClusterDiff, ClusterReference};
use crate::{corpus, ism, ssim, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub matrix: MatrixDiff,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<LevelComparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clusters: Option<ClusterDiff>,
}

impl AuditReport {
    /// Compares the final matrix `computed` cell by cell, and optionally its
    /// level partition and auto-cutoff MICMAC clusters.
    pub fn new(
        computed: &ReachabilityMatrix,
        reference: &ReferenceMatrix,
        claims: Option<&LevelClaims>,
        clusters: Option<&ClusterReference>,
    ) -> Result<Self> {
        let matrix = compare_matrices(computed, reference)?;
        let levels = match claims {
            Some(c) => Some(compare_levels(&partition_levels(computed)?, c)?),
            None => None,
        };
        let clusters = match clusters {
            Some(r) => Some(compare_clusters(
                &classify(&PowerProfile::from_matrix(computed), None)?,
                r,
            )?),
            None => None,
        };
        Ok(AuditReport {
            matrix,
            levels,
            clusters,
        })
    }

    /// True when nothing disagrees.
    pub fn is_clean(&self) -> bool {
        self.matrix.is_empty()
            && self.levels.as_ref().is_none_or(|l| l.agreement == l.total)
            && self.clusters.as_ref().is_none_or(|c| c.agreement == c.total)
    }

    pub fn to_json(&self) -> String {
        pretty(self)
    }
}

pub(crate) fn pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("audit data serializes");
    out.push('\n');
    out
}

/// Runs the bundled SSIM through the pipeline and audits it against the
/// bundled printed matrix, level claims and cluster lists.
pub fn audit_bundled_corpus() -> Result<AuditReport> {
    let catalog = corpus::catalog();
    let table = ssim::parse_ssim(corpus::SSIM_TABLE, Some(&catalog))?;
    let report = ism::run_ism(&table)?;
    AuditReport::new(
        &report.closed,
        &ism::parse_reference_matrix(corpus::REACHABILITY_TABLE)?,
        Some(&LevelClaims::from_json(corpus::LEVEL_CLAIMS)?),
        Some(&ClusterReference::from_json(corpus::MICMAC_CLUSTERS)?),
    )
}
