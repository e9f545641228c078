//! Auditing recomputed results against transcribed reference tables.

use serde::{Deserialize, Serialize};

use super::{dependence_power, driving_power, rank_powers, LevelPartition, Origin, PowerProfile, ReachabilityMatrix};
use crate::ids::index_ids;
use crate::{Error, Result};

/// A reachability matrix as printed, with whichever margins were printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceMatrix {
    pub matrix: ReachabilityMatrix,
    pub driving: Option<Vec<usize>>,
    pub driving_rank: Option<Vec<usize>>,
    pub dependence: Option<Vec<usize>>,
    pub dependence_rank: Option<Vec<usize>>,
}

impl ReferenceMatrix {
    pub fn without_margins(matrix: ReachabilityMatrix) -> Self {
        ReferenceMatrix {
            matrix,
            driving: None,
            driving_rank: None,
            dependence: None,
            dependence_rank: None,
        }
    }

    /// The matrix with margins recomputed from it, i.e. a fully
    /// self-consistent reference.
    pub fn with_own_margins(matrix: ReachabilityMatrix) -> Self {
        let p = PowerProfile::from_matrix(&matrix);
        ReferenceMatrix {
            matrix,
            driving: Some(p.driving),
            driving_rank: Some(p.driving_rank),
            dependence: Some(p.dependence),
            dependence_rank: Some(p.dependence_rank),
        }
    }

    fn has_margins(&self) -> bool {
        self.driving.is_some()
            || self.driving_rank.is_some()
            || self.dependence.is_some()
            || self.dependence_rank.is_some()
    }
}

/// Reads a printed matrix: header of factor ids optionally followed by `DIV`
/// and `RANK` columns; one row per factor with `0`, `1` or `1*` cells;
/// optional trailing `DIV` and `RANK` rows.
pub fn parse_reference_matrix(source: &str) -> Result<ReferenceMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|source| Error::Csv {
            context: "reference matrix".into(),
            source,
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let line = rec.position().map_or(0, |p| p.line());
        records.push((line, rec));
    }
    let Some((header_line, header)) = records.first() else {
        return Err(Error::syntax("line 1", "reference matrix is empty"));
    };

    let mut ids = Vec::new();
    let mut div_col = None;
    let mut rank_col = None;
    for (k, cell) in header.iter().enumerate().skip(1) {
        match cell.to_ascii_uppercase().as_str() {
            "DIV" => div_col = Some(k),
            "RANK" => rank_col = Some(k),
            "" => {}
            _ if div_col.is_some() || rank_col.is_some() => {
                return Err(Error::syntax(
                    format!("line {header_line}, header"),
                    format!("factor `{cell}` after the margin columns"),
                ))
            }
            _ => ids.push(cell.to_string()),
        }
    }
    index_ids(&ids, &format!("line {header_line}, header"))?;
    let n = ids.len();

    let mut origins = Vec::with_capacity(n * n);
    let mut driving = Vec::new();
    let mut driving_rank = Vec::new();
    let mut dependence = None;
    let mut dependence_rank = None;
    let mut body = records[1..].iter();

    for (row, id) in ids.iter().enumerate() {
        let Some((line, rec)) = body.next() else {
            return Err(Error::syntax(format!("row {id}"), "missing row"));
        };
        let label = rec.get(0).unwrap_or("");
        if label != id {
            return Err(Error::syntax(
                format!("line {line}"),
                format!("row id `{label}` does not match header position {} (`{id}`)", row + 1),
            ));
        }
        for (col, col_id) in ids.iter().enumerate() {
            let at = || format!("line {line}, row {id}, column {col_id}");
            let raw = rec.get(col + 1).unwrap_or("");
            let origin = match (raw, row == col) {
                ("1", true) => Origin::Diagonal,
                ("1", false) => Origin::Direct,
                ("1*", false) => Origin::Transitive,
                ("0", false) => Origin::Zero,
                (_, true) => return Err(Error::syntax(at(), format!("diagonal cell must be 1, found `{raw}`"))),
                ("", false) => return Err(Error::syntax(at(), "missing cell")),
                _ => {
                    return Err(Error::syntax(
                        at(),
                        format!("illegal cell `{raw}` (expected 0, 1 or 1*)"),
                    ))
                }
            };
            origins.push(origin);
        }
        if let Some(k) = div_col {
            driving.push(margin(rec.get(k), *line, id, "DIV")?);
        }
        if let Some(k) = rank_col {
            driving_rank.push(margin(rec.get(k), *line, id, "RANK")?);
        }
    }

    for (line, rec) in body {
        let label = rec.get(0).unwrap_or("").to_ascii_uppercase();
        let slot = match label.as_str() {
            "DIV" => &mut dependence,
            "RANK" => &mut dependence_rank,
            other => {
                return Err(Error::syntax(
                    format!("line {line}"),
                    format!("unexpected row `{other}`; only DIV and RANK rows may follow the matrix"),
                ))
            }
        };
        let values = ids
            .iter()
            .enumerate()
            .map(|(col, col_id)| margin(rec.get(col + 1), *line, col_id, &label))
            .collect::<Result<Vec<_>>>()?;
        *slot = Some(values);
    }

    Ok(ReferenceMatrix {
        matrix: ReachabilityMatrix::new(ids, origins)?,
        driving: div_col.map(|_| driving),
        driving_rank: rank_col.map(|_| driving_rank),
        dependence,
        dependence_rank,
    })
}

fn margin(raw: Option<&str>, line: u64, id: &str, what: &str) -> Result<usize> {
    let raw = raw.unwrap_or("");
    raw.parse().map_err(|_| {
        Error::syntax(
            format!("line {line}, {what} for {id}"),
            format!("expected a non-negative integer, found `{raw}`"),
        )
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub row: String,
    pub column: String,
    pub computed: &'static str,
    pub reference: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarginMismatch {
    pub id: String,
    pub computed: usize,
    pub printed: usize,
}

/// A printed margin value that disagrees with the reference table itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArithmeticFlag {
    pub id: String,
    pub printed: usize,
    pub recount: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MarginDiff {
    /// Recomputed value vs printed value.
    pub mismatches: Vec<MarginMismatch>,
    /// Printed value vs what the printed table itself implies.
    pub arithmetic: Vec<ArithmeticFlag>,
}

impl MarginDiff {
    pub fn is_empty(&self) -> bool {
        self.mismatches.is_empty() && self.arithmetic.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MarginAudit {
    pub driving: Option<MarginDiff>,
    pub driving_rank: Option<MarginDiff>,
    pub dependence: Option<MarginDiff>,
    pub dependence_rank: Option<MarginDiff>,
}

impl MarginAudit {
    pub fn is_empty(&self) -> bool {
        [
            &self.driving,
            &self.driving_rank,
            &self.dependence,
            &self.dependence_rank,
        ]
        .iter()
        .all(|d| d.as_ref().is_none_or(MarginDiff::is_empty))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixDiff {
    /// Cells set on one side only.
    pub cells: Vec<CellMismatch>,
    /// Cells set on both sides whose marks differ (`1` vs `1*`).
    pub origins: Vec<CellMismatch>,
    /// `None` when the reference printed no margins.
    pub margins: Option<MarginAudit>,
}

impl MatrixDiff {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty() && self.origins.is_empty() && self.margins.as_ref().is_none_or(MarginAudit::is_empty)
    }

    /// Printed driving powers that contradict the printed rows.
    pub fn driving_arithmetic(&self) -> &[ArithmeticFlag] {
        self.margins
            .as_ref()
            .and_then(|m| m.driving.as_ref())
            .map_or(&[], |d| d.arithmetic.as_slice())
    }
}

/// Cell-by-cell and margin-by-margin comparison of a recomputed matrix
/// against a printed one.
pub fn compare_matrices(computed: &ReachabilityMatrix, reference: &ReferenceMatrix) -> Result<MatrixDiff> {
    let printed = &reference.matrix;
    if computed.len() != printed.len() {
        return Err(Error::Invalid(format!(
            "dimension mismatch: computed matrix is {0}x{0}, reference is {1}x{1}",
            computed.len(),
            printed.len()
        )));
    }
    if computed.factor_ids() != printed.factor_ids() {
        return Err(Error::Invalid(format!(
            "factor mismatch: computed [{}] vs reference [{}]",
            computed.factor_ids().join(", "),
            printed.factor_ids().join(", ")
        )));
    }
    let ids = computed.factor_ids();
    let n = ids.len();
    let mut cells = Vec::new();
    let mut origins = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (c, r) = (computed.origin(i, j), printed.origin(i, j));
            if c.mark() == r.mark() {
                continue;
            }
            let entry = CellMismatch {
                row: ids[i].clone(),
                column: ids[j].clone(),
                computed: c.mark(),
                reference: r.mark(),
            };
            if c.is_set() == r.is_set() {
                origins.push(entry);
            } else {
                cells.push(entry);
            }
        }
    }

    let margins = reference.has_margins().then(|| {
        let mine = PowerProfile::from_matrix(computed);
        let recount_driving = driving_power(printed);
        let recount_dependence = dependence_power(printed);
        let rank_basis = |printed_powers: &Option<Vec<usize>>, recount: &[usize]| {
            rank_powers(printed_powers.as_deref().unwrap_or(recount))
        };
        MarginAudit {
            driving: reference
                .driving
                .as_ref()
                .map(|p| margin_diff(ids, &mine.driving, p, &recount_driving)),
            driving_rank: reference.driving_rank.as_ref().map(|p| {
                margin_diff(
                    ids,
                    &mine.driving_rank,
                    p,
                    &rank_basis(&reference.driving, &recount_driving),
                )
            }),
            dependence: reference
                .dependence
                .as_ref()
                .map(|p| margin_diff(ids, &mine.dependence, p, &recount_dependence)),
            dependence_rank: reference.dependence_rank.as_ref().map(|p| {
                margin_diff(
                    ids,
                    &mine.dependence_rank,
                    p,
                    &rank_basis(&reference.dependence, &recount_dependence),
                )
            }),
        }
    });

    Ok(MatrixDiff {
        cells,
        origins,
        margins,
    })
}

fn margin_diff(ids: &[String], computed: &[usize], printed: &[usize], implied: &[usize]) -> MarginDiff {
    let mut diff = MarginDiff::default();
    for (k, id) in ids.iter().enumerate() {
        if computed[k] != printed[k] {
            diff.mismatches.push(MarginMismatch {
                id: id.clone(),
                computed: computed[k],
                printed: printed[k],
            });
        }
        if implied[k] != printed[k] {
            diff.arithmetic.push(ArithmeticFlag {
                id: id.clone(),
                printed: printed[k],
                recount: implied[k],
            });
        }
    }
    diff
}

/// Published level memberships, possibly covering only some levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelClaims {
    pub levels: Vec<LevelClaim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelClaim {
    pub level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub members: Vec<String>,
}

impl LevelClaims {
    pub fn from_json(source: &str) -> Result<Self> {
        serde_json::from_str(source).map_err(|source| Error::Json {
            context: "level claims".into(),
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub id: String,
    pub claimed: usize,
    pub computed: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopLevelCheck {
    pub claimed: Vec<String>,
    pub computed: Vec<String>,
    /// Every claimed top-level factor sits in the computed top level.
    pub all_at_computed_top: bool,
    /// The claimed top-level factors share one computed level, wherever it is.
    pub share_a_level: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelComparison {
    pub entries: Vec<LevelCheck>,
    pub agreement: usize,
    pub total: usize,
    pub top_level: Option<TopLevelCheck>,
}

pub fn compare_levels(partition: &LevelPartition, claims: &LevelClaims) -> Result<LevelComparison> {
    let mut entries = Vec::new();
    for claim in &claims.levels {
        for id in &claim.members {
            let computed = partition
                .level_of(id)
                .ok_or_else(|| Error::Invalid(format!("claimed factor `{id}` is not in the computed partition")))?;
            entries.push(LevelCheck {
                id: id.clone(),
                claimed: claim.level,
                computed,
                agrees: computed == claim.level,
            });
        }
    }
    let top_level = claims.levels.iter().find(|c| c.level == 1).map(|claim| {
        let computed_top = partition.levels.first().cloned().unwrap_or_default();
        let levels: Vec<usize> = claim.members.iter().filter_map(|id| partition.level_of(id)).collect();
        TopLevelCheck {
            claimed: claim.members.clone(),
            all_at_computed_top: claim.members.iter().all(|id| computed_top.contains(id)),
            share_a_level: levels.windows(2).all(|w| w[0] == w[1]),
            computed: computed_top,
        }
    });
    Ok(LevelComparison {
        agreement: entries.iter().filter(|e| e.agrees).count(),
        total: entries.len(),
        entries,
        top_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ism::transitive_closure;

    fn ids(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("F{i}")).collect()
    }

    #[test]
    fn printed_table_parses_with_margins() {
        let r = parse_reference_matrix(corpus::REACHABILITY_TABLE).unwrap();
        assert_eq!(r.matrix.len(), 17);
        let p4 = r.matrix.index_of("P4").unwrap();
        let p14 = r.matrix.index_of("P14").unwrap();
        assert_eq!(r.matrix.origin(p4, p14), Origin::Transitive);
        assert_eq!(r.driving.as_ref().unwrap()[0], 6);
        assert_eq!(r.dependence.as_ref().unwrap()[0], 9);
        assert_eq!(r.dependence_rank.as_ref().unwrap()[15], 1);
        // Row recount of the printed table.
        let recount = driving_power(&r.matrix);
        assert_eq!(recount[0], 6);
        assert_eq!(recount[p4], 10);
    }

    #[test]
    fn self_comparison_is_empty() {
        let m = transitive_closure(&ReachabilityMatrix::from_relation(ids(4), |i, j| j == i + 1).unwrap());
        let diff = compare_matrices(&m, &ReferenceMatrix::with_own_margins(m.clone())).unwrap();
        assert!(diff.is_empty(), "{diff:?}");
        let reparsed = parse_reference_matrix(&m.to_csv()).unwrap();
        assert_eq!(reparsed, ReferenceMatrix::with_own_margins(m.clone()));
    }

    #[test]
    fn missing_margins_mark_section_absent() {
        let m = ReachabilityMatrix::identity(ids(3)).unwrap();
        let other = ReachabilityMatrix::from_relation(ids(3), |i, j| i == 0 && j == 1).unwrap();
        let diff = compare_matrices(&m, &ReferenceMatrix::without_margins(other)).unwrap();
        assert!(diff.margins.is_none());
        assert_eq!(diff.cells.len(), 1);
        assert_eq!(serde_json::to_value(&diff).unwrap()["margins"], serde_json::Value::Null);
    }

    #[test]
    fn origin_mismatch_is_separate_from_cell_mismatch() {
        let direct = ReachabilityMatrix::from_relation(ids(3), |i, j| j == i + 1).unwrap();
        let closed = transitive_closure(&direct);
        let printed = ReachabilityMatrix::from_relation(ids(3), |i, j| j > i).unwrap();
        let diff = compare_matrices(&closed, &ReferenceMatrix::without_margins(printed)).unwrap();
        assert!(diff.cells.is_empty());
        assert_eq!(diff.origins.len(), 1);
        assert_eq!((diff.origins[0].computed, diff.origins[0].reference), ("1*", "1"));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = ReachabilityMatrix::identity(ids(3)).unwrap();
        let b = ReachabilityMatrix::identity(ids(4)).unwrap();
        assert!(compare_matrices(&a, &ReferenceMatrix::without_margins(b)).is_err());
    }

    #[test]
    fn malformed_reference_cells() {
        assert!(parse_reference_matrix(",A,B\nA,1,2\nB,0,1\n")
            .unwrap_err()
            .to_string()
            .contains("illegal cell `2`"));
        assert!(parse_reference_matrix(",A,B\nA,0,0\nB,0,1\n")
            .unwrap_err()
            .to_string()
            .contains("diagonal"));
        assert!(parse_reference_matrix(",A,B\nA,1,0\nB,0,1\nTOTAL,1,1\n").is_err());
    }

    #[test]
    fn level_claims_compare() {
        let p = LevelPartition {
            levels: vec![vec!["A".into(), "B".into()], vec!["C".into()]],
        };
        let claims = LevelClaims::from_json(r#"{"levels": [{"level": 1, "members": ["A", "C"]}]}"#).unwrap();
        let cmp = compare_levels(&p, &claims).unwrap();
        assert_eq!((cmp.agreement, cmp.total), (1, 2));
        let top = cmp.top_level.unwrap();
        assert!(!top.all_at_computed_top && !top.share_a_level);
        let bad = LevelClaims::from_json(r#"{"levels": [{"level": 1, "members": ["Z"]}]}"#).unwrap();
        assert!(compare_levels(&p, &bad).is_err());
    }
}
