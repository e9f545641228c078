//! Factors (motivators, demotivators, ethical principles), catalogs of them,
//! and the taxonomy mapping from motivators/demotivators onto principles.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorKind {
    Motivator,
    Demotivator,
    Principle,
}

impl FactorKind {
    pub const ALL: [FactorKind; 3] = [FactorKind::Motivator, FactorKind::Demotivator, FactorKind::Principle];

    /// Id prefix reserved for this kind.
    pub fn prefix(self) -> &'static str {
        match self {
            FactorKind::Motivator => "M",
            FactorKind::Demotivator => "DM",
            FactorKind::Principle => "P",
        }
    }

    /// Kind implied by an id such as `DM4`; `None` if the id has no known
    /// prefix or no numeric suffix.
    pub fn from_id(id: &str) -> Option<FactorKind> {
        // DM must be tried before M.
        [FactorKind::Demotivator, FactorKind::Motivator, FactorKind::Principle]
            .into_iter()
            .find(|kind| {
                id.strip_prefix(kind.prefix())
                    .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
            })
    }

    fn parse(s: &str) -> Option<FactorKind> {
        match s {
            "Motivator" => Some(FactorKind::Motivator),
            "Demotivator" => Some(FactorKind::Demotivator),
            "Principle" => Some(FactorKind::Principle),
            _ => None,
        }
    }

    /// The only polarity an edge from a factor of this kind may carry.
    pub fn required_polarity(self) -> Option<Polarity> {
        match self {
            FactorKind::Motivator => Some(Polarity::Supports),
            FactorKind::Demotivator => Some(Polarity::Hinders),
            FactorKind::Principle => None,
        }
    }

    pub fn plural_label(self) -> &'static str {
        match self {
            FactorKind::Motivator => "motivators",
            FactorKind::Demotivator => "demotivators",
            FactorKind::Principle => "principles",
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorKind::Motivator => "Motivator",
            FactorKind::Demotivator => "Demotivator",
            FactorKind::Principle => "Principle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub id: String,
    pub kind: FactorKind,
    pub short_name: String,
    pub description: String,
}

/// Ordered, duplicate-free collection of factors. The order is the row and
/// column order of every matrix built from the catalog.
#[derive(Debug, Clone)]
pub struct FactorCatalog {
    version: String,
    factors: Vec<Factor>,
    index: HashMap<String, usize>,
}

impl PartialEq for FactorCatalog {
    fn eq(&self, other: &Self) -> bool {
        self.version == other.version && self.factors == other.factors
    }
}

impl Eq for FactorCatalog {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    version: String,
    factors: Vec<RawFactor>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    id: String,
    kind: String,
    short_name: String,
    #[serde(default)]
    description: String,
}

#[derive(Serialize)]
struct CatalogDocument<'a> {
    version: &'a str,
    factors: &'a [Factor],
}

impl FactorCatalog {
    pub fn new(version: impl Into<String>, factors: Vec<Factor>) -> Result<Self> {
        let mut index = HashMap::with_capacity(factors.len());
        for (i, factor) in factors.iter().enumerate() {
            let at = format!("factors[{i}]");
            check_identity(&at, &factor.id, factor.kind)?;
            if factor.short_name.trim().is_empty() {
                return Err(Error::syntax(
                    at,
                    format!("factor `{}` has an empty short_name", factor.id),
                ));
            }
            if let Some(first) = index.insert(factor.id.clone(), i) {
                return Err(Error::syntax(
                    at,
                    format!("duplicate id `{}` (first defined at factors[{first}])", factor.id),
                ));
            }
        }
        Ok(FactorCatalog {
            version: version.into(),
            factors,
            index,
        })
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn lookup(&self, id: &str) -> Option<&Factor> {
        self.index.get(id).map(|&i| &self.factors[i])
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().map(|f| f.id.as_str())
    }

    pub fn of_kind(&self, kind: FactorKind) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(move |f| f.kind == kind)
    }

    pub fn count(&self, kind: FactorKind) -> usize {
        self.of_kind(kind).count()
    }

    /// One-line summary such as `14 motivators, 12 demotivators, 17 principles`.
    pub fn summary(&self) -> String {
        FactorKind::ALL
            .iter()
            .map(|&k| format!("{} {}", self.count(k), k.plural_label()))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn to_json(&self) -> String {
        let doc = CatalogDocument {
            version: &self.version,
            factors: &self.factors,
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("catalog serializes");
        out.push('\n');
        out
    }
}

fn check_identity(at: &str, id: &str, kind: FactorKind) -> Result<()> {
    if id.is_empty() {
        return Err(Error::syntax(at, "empty factor id"));
    }
    match FactorKind::from_id(id) {
        Some(k) if k == kind => Ok(()),
        Some(k) => Err(Error::syntax(
            at,
            format!("id `{id}` has the {k} prefix `{}` but kind is {kind}", k.prefix()),
        )),
        None => Err(Error::syntax(
            at,
            format!(
                "id `{id}` must be `{}` followed by digits for kind {kind}",
                kind.prefix()
            ),
        )),
    }
}

/// Parses a JSON catalog document, keeping document order.
pub fn load_catalog(source: &str) -> Result<FactorCatalog> {
    let raw: RawCatalog = serde_json::from_str(source).map_err(|source| Error::Json {
        context: "catalog".into(),
        source,
    })?;
    let mut factors = Vec::with_capacity(raw.factors.len());
    for (i, f) in raw.factors.into_iter().enumerate() {
        let kind = FactorKind::parse(&f.kind).ok_or_else(|| {
            Error::syntax(
                format!("factors[{i}]"),
                format!(
                    "factor `{}` has malformed kind `{}` (expected Motivator, Demotivator or Principle)",
                    f.id, f.kind
                ),
            )
        })?;
        factors.push(Factor {
            id: f.id,
            kind,
            short_name: f.short_name,
            description: f.description,
        });
    }
    FactorCatalog::new(raw.version, factors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    Supports,
    Hinders,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingEdge {
    pub source: String,
    pub target: String,
    pub polarity: Polarity,
}

/// Motivator/demotivator to principle edges. Order is kept as supplied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaxonomyMapping {
    pub edges: Vec<MappingEdge>,
}

impl TaxonomyMapping {
    pub fn from_json(source: &str) -> Result<Self> {
        serde_json::from_str(source).map_err(|source| Error::Json {
            context: "mapping".into(),
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum MappingViolation {
    UnknownSource {
        edge: usize,
        id: String,
    },
    UnknownTarget {
        edge: usize,
        id: String,
    },
    SourceNotDriver {
        edge: usize,
        id: String,
    },
    TargetNotPrinciple {
        edge: usize,
        id: String,
        kind: FactorKind,
    },
    PolarityMismatch {
        edge: usize,
        source: String,
        found: Polarity,
        expected: Polarity,
    },
    DuplicateEdge {
        edge: usize,
        first: usize,
    },
}

impl fmt::Display for MappingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MappingViolation::UnknownSource { edge, id } => {
                write!(f, "edges[{edge}]: source `{id}` is not in the catalog")
            }
            MappingViolation::UnknownTarget { edge, id } => {
                write!(f, "edges[{edge}]: target `{id}` is not in the catalog")
            }
            MappingViolation::SourceNotDriver { edge, id } => {
                write!(f, "edges[{edge}]: source `{id}` is not a Motivator or Demotivator")
            }
            MappingViolation::TargetNotPrinciple { edge, id, kind } => {
                write!(f, "edges[{edge}]: target `{id}` not a Principle (it is a {kind})")
            }
            MappingViolation::PolarityMismatch {
                edge,
                source,
                found,
                expected,
            } => write!(
                f,
                "edges[{edge}]: polarity {found:?} from `{source}` violates its kind (must be {expected:?})"
            ),
            MappingViolation::DuplicateEdge { edge, first } => {
                write!(f, "edges[{edge}]: duplicates edges[{first}]")
            }
        }
    }
}

/// Checks a mapping against a catalog. An empty result means the mapping is
/// consistent; every problem is reported, not just the first.
pub fn validate_mapping(mapping: &TaxonomyMapping, catalog: &FactorCatalog) -> Vec<MappingViolation> {
    let mut report = Vec::new();
    let mut seen: HashMap<(&str, &str), usize> = HashMap::new();
    for (edge, e) in mapping.edges.iter().enumerate() {
        if let Some(&first) = seen.get(&(e.source.as_str(), e.target.as_str())) {
            report.push(MappingViolation::DuplicateEdge { edge, first });
        } else {
            seen.insert((&e.source, &e.target), edge);
        }

        match catalog.lookup(&e.source) {
            None => report.push(MappingViolation::UnknownSource {
                edge,
                id: e.source.clone(),
            }),
            Some(src) => match src.kind.required_polarity() {
                None => report.push(MappingViolation::SourceNotDriver {
                    edge,
                    id: e.source.clone(),
                }),
                Some(expected) if expected != e.polarity => report.push(MappingViolation::PolarityMismatch {
                    edge,
                    source: e.source.clone(),
                    found: e.polarity,
                    expected,
                }),
                Some(_) => {}
            },
        }

        match catalog.lookup(&e.target) {
            None => report.push(MappingViolation::UnknownTarget {
                edge,
                id: e.target.clone(),
            }),
            Some(t) if t.kind != FactorKind::Principle => report.push(MappingViolation::TargetNotPrinciple {
                edge,
                id: e.target.clone(),
                kind: t.kind,
            }),
            Some(_) => {}
        }
    }
    report
}
