//! Bundled reference corpus: the 43-factor catalog, the 17-principle SSIM,
//! the printed final reachability matrix, and the published cluster and
//! level assignments. The printed tables are kept verbatim, typos included,
//! so they can be audited against recomputation.

use crate::factor::{load_catalog, FactorCatalog};

pub const CATALOG: &str = include_str!("../data/corpus/catalog.json");
/// Expert SSIM over P1..P17, lowercase symbols as printed.
pub const SSIM_TABLE: &str = include_str!("../data/corpus/ssim.csv");
/// Printed final reachability matrix with its DIV and RANK margins.
pub const REACHABILITY_TABLE: &str = include_str!("../data/corpus/reachability.csv");
pub const MICMAC_CLUSTERS: &str = include_str!("../data/corpus/micmac_clusters.json");
/// Level memberships named in the hierarchy narrative (levels 1-3 only).
pub const LEVEL_CLAIMS: &str = include_str!("../data/corpus/level_claims.json");
/// Default taxonomy mapping. Empty: edges are user-supplied.
pub const MAPPING: &str = include_str!("../data/corpus/mapping.json");

pub fn catalog() -> FactorCatalog {
    load_catalog(CATALOG).expect("bundled catalog is valid")
}
