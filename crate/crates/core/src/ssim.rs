//! Structural Self-Interaction Matrix: expert V/A/X/O judgments over every
//! unordered pair of factors, its CSV form, and conversion to the initial
//! reachability matrix.
//!
//! File layout (UTF-8, comma separated):
//!
//! ```text
//! ,P1,P2,P3
//! P1,*,v,o
//! P2,*,*,x
//! P3,*,*,*
//! ```
//!
//! The first row lists the factor ids. Row `k` starts with the id of factor
//! `k` and carries either all `n` cells or only the cells for columns
//! `k+1..n`. Diagonal and lower-triangle cells must be blank or `*`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::factor::FactorCatalog;
use crate::ids::index_ids;
use crate::ism::{Origin, ReachabilityMatrix};
use crate::{Error, Result};

/// Relation of row factor `m` to column factor `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationSymbol {
    /// `m` leads to `n`.
    V,
    /// `n` leads to `m`.
    A,
    /// Mutual.
    X,
    /// Unrelated.
    O,
}

impl RelationSymbol {
    pub const ALL: [RelationSymbol; 4] = [
        RelationSymbol::V,
        RelationSymbol::A,
        RelationSymbol::X,
        RelationSymbol::O,
    ];

    /// The same judgment read from the other factor's side.
    pub fn transpose(self) -> Self {
        match self {
            RelationSymbol::V => RelationSymbol::A,
            RelationSymbol::A => RelationSymbol::V,
            s => s,
        }
    }

    /// `(m→n, n→m)` entries of the binary reachability matrix.
    pub fn reachability(self) -> (bool, bool) {
        match self {
            RelationSymbol::V => (true, false),
            RelationSymbol::A => (false, true),
            RelationSymbol::X => (true, true),
            RelationSymbol::O => (false, false),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            RelationSymbol::V => 'V',
            RelationSymbol::A => 'A',
            RelationSymbol::X => 'X',
            RelationSymbol::O => 'O',
        }
    }
}

impl fmt::Display for RelationSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IllegalSymbol(pub String);

impl fmt::Display for IllegalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "illegal symbol `{}` (expected V, A, X or O)", self.0)
    }
}

impl std::error::Error for IllegalSymbol {}

impl FromStr for RelationSymbol {
    type Err = IllegalSymbol;

    /// Case-insensitive; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "V" | "v" => Ok(RelationSymbol::V),
            "A" | "a" => Ok(RelationSymbol::A),
            "X" | "x" => Ok(RelationSymbol::X),
            "O" | "o" => Ok(RelationSymbol::O),
            other => Err(IllegalSymbol(other.to_string())),
        }
    }
}

/// Number of unordered pairs over `n` factors.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of pair `(i, j)`, `i < j`, in row-major upper-triangular order.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Every unordered pair of factor indices in row-major upper-triangular
/// order: `(0,1), (0,2), .., (0,n-1), (1,2), ..`.
pub fn elicit_pairs(factor_ids: &[String]) -> Result<Vec<(usize, usize)>> {
    if factor_ids.is_empty() {
        return Err(Error::Invalid("pair elicitation needs at least one factor".into()));
    }
    index_ids(factor_ids, "factor list")?;
    let n = factor_ids.len();
    Ok((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect())
}

/// A complete SSIM. Symbols are stored once per unordered pair, oriented
/// from the lower index to the higher one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsimMatrix {
    factor_ids: Vec<String>,
    cells: Vec<RelationSymbol>,
}

impl SsimMatrix {
    /// `cells` holds one symbol per pair in [`elicit_pairs`] order.
    pub fn new(factor_ids: Vec<String>, cells: Vec<RelationSymbol>) -> Result<Self> {
        index_ids(&factor_ids, "factor list")?;
        let expected = pair_count(factor_ids.len());
        if cells.len() != expected {
            return Err(Error::Invalid(format!(
                "{} factors need {expected} pair symbols, got {}",
                factor_ids.len(),
                cells.len()
            )));
        }
        Ok(SsimMatrix { factor_ids, cells })
    }

    /// Builds a matrix by asking `f(i, j)` for every pair `i < j`.
    pub fn from_fn(factor_ids: Vec<String>, mut f: impl FnMut(usize, usize) -> RelationSymbol) -> Result<Self> {
        let n = factor_ids.len();
        let cells = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        SsimMatrix::new(factor_ids, cells)
    }

    pub fn factor_ids(&self) -> &[String] {
        &self.factor_ids
    }

    pub fn len(&self) -> usize {
        self.factor_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factor_ids.is_empty()
    }

    /// Relation of factor `i` to factor `j`; `None` on the diagonal.
    pub fn get(&self, i: usize, j: usize) -> Option<RelationSymbol> {
        let n = self.len();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Some(self.cells[pair_index(n, i, j)]),
            std::cmp::Ordering::Greater => Some(self.cells[pair_index(n, j, i)].transpose()),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Relation between two factors by id.
    pub fn relation(&self, from: &str, to: &str) -> Option<RelationSymbol> {
        let i = self.factor_ids.iter().position(|f| f == from)?;
        let j = self.factor_ids.iter().position(|f| f == to)?;
        self.get(i, j)
    }

    /// Symbols in [`elicit_pairs`] order.
    pub fn symbols(&self) -> &[RelationSymbol] {
        &self.cells
    }

    /// Canonical CSV: full-width rows, uppercase symbols, `*` filler.
    pub fn to_csv(&self) -> String {
        write_table(&self.factor_ids, |k| Some(self.cells[k]))
    }
}

/// An SSIM with some pairs still unanswered, as produced by an interrupted
/// elicitation session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSsim {
    factor_ids: Vec<String>,
    cells: Vec<Option<RelationSymbol>>,
}

impl PartialSsim {
    pub fn new(factor_ids: Vec<String>) -> Result<Self> {
        index_ids(&factor_ids, "factor list")?;
        let cells = vec![None; pair_count(factor_ids.len())];
        Ok(PartialSsim { factor_ids, cells })
    }

    pub fn factor_ids(&self) -> &[String] {
        &self.factor_ids
    }

    /// Answer for pair `(i, j)`, `i < j`.
    pub fn get(&self, i: usize, j: usize) -> Option<RelationSymbol> {
        self.cells[pair_index(self.factor_ids.len(), i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, symbol: RelationSymbol) {
        let k = pair_index(self.factor_ids.len(), i, j);
        self.cells[k] = Some(symbol);
    }

    pub fn answered(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn total(&self) -> usize {
        self.cells.len()
    }

    /// Unanswered pairs in elicitation order.
    pub fn pending(&self) -> Vec<(usize, usize)> {
        let n = self.factor_ids.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j).is_none())
            .collect()
    }

    pub fn complete(&self) -> Option<SsimMatrix> {
        let cells = self.cells.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(SsimMatrix {
            factor_ids: self.factor_ids.clone(),
            cells,
        })
    }

    /// Same layout as [`SsimMatrix::to_csv`]; unanswered cells are blank.
    pub fn to_csv(&self) -> String {
        write_table(&self.factor_ids, |k| self.cells[k])
    }
}

impl From<SsimMatrix> for PartialSsim {
    fn from(m: SsimMatrix) -> Self {
        PartialSsim {
            factor_ids: m.factor_ids,
            cells: m.cells.into_iter().map(Some).collect(),
        }
    }
}

fn write_table(ids: &[String], cell: impl Fn(usize) -> Option<RelationSymbol>) -> String {
    let n = ids.len();
    let mut out = String::new();
    for id in ids {
        out.push(',');
        out.push_str(id);
    }
    out.push('\n');
    for (i, id) in ids.iter().enumerate() {
        out.push_str(id);
        for j in 0..n {
            out.push(',');
            if j <= i {
                out.push('*');
            } else if let Some(s) = cell(pair_index(n, i, j)) {
                out.push(s.as_char());
            }
        }
        out.push('\n');
    }
    out
}

/// Parses a complete SSIM table. With a catalog, every id must be defined
/// there and the header must follow catalog order.
pub fn parse_ssim(source: &str, catalog: Option<&FactorCatalog>) -> Result<SsimMatrix> {
    let (factor_ids, cells) = parse_table(source, catalog, false)?;
    let cells = cells
        .into_iter()
        .map(|c| c.expect("strict parse fills every cell"))
        .collect();
    Ok(SsimMatrix { factor_ids, cells })
}

/// Parses a possibly incomplete SSIM table; blank upper-triangle cells are
/// left unanswered.
pub fn parse_partial_ssim(source: &str, catalog: Option<&FactorCatalog>) -> Result<PartialSsim> {
    let (factor_ids, cells) = parse_table(source, catalog, true)?;
    Ok(PartialSsim { factor_ids, cells })
}

type Table = (Vec<String>, Vec<Option<RelationSymbol>>);

fn parse_table(source: &str, catalog: Option<&FactorCatalog>, allow_missing: bool) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());

    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|source| Error::Csv {
            context: "SSIM table".into(),
            source,
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let line = rec.position().map_or(0, |p| p.line());
        records.push((line, rec));
    }

    let Some((header_line, header)) = records.first() else {
        return Err(Error::syntax(
            "line 1",
            "SSIM table is empty; expected a header row of factor ids",
        ));
    };
    let mut factor_ids: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    while factor_ids.last().is_some_and(String::is_empty) {
        factor_ids.pop();
    }
    index_ids(&factor_ids, &format!("line {header_line}, header"))?;
    if let Some(catalog) = catalog {
        check_catalog(&factor_ids, catalog, *header_line)?;
    }

    let n = factor_ids.len();
    let body = &records[1..];
    if body.len() > n {
        let (line, rec) = &body[n];
        return Err(Error::syntax(
            format!("line {line}"),
            format!(
                "unexpected row `{}`: header declares only {n} factors",
                rec.get(0).unwrap_or("")
            ),
        ));
    }

    let mut cells = vec![None; pair_count(n)];
    for (row, row_id) in factor_ids.iter().enumerate() {
        let Some((line, rec)) = body.get(row) else {
            if allow_missing {
                continue;
            }
            return Err(Error::syntax(
                format!("row {row_id}"),
                "missing row (every factor needs a row)".to_string(),
            ));
        };
        let line = *line;
        let label = rec.get(0).unwrap_or("");
        if label != row_id {
            return Err(Error::syntax(
                format!("line {line}"),
                format!(
                    "row id `{label}` does not match header position {} (`{row_id}`)",
                    row + 1
                ),
            ));
        }
        let values: Vec<&str> = rec.iter().skip(1).collect();
        let upper_only = n - row - 1;
        // Full rows may carry trailing empty fields; short rows hold only the upper part.
        let first_col = if values.len() >= n {
            if values[n..].iter().any(|v| !v.is_empty()) {
                return Err(Error::syntax(
                    format!("line {line}, row {row_id}"),
                    format!("row has {} cells, header declares {n} factors", values.len()),
                ));
            }
            0
        } else if values.len() == upper_only {
            row + 1
        } else if allow_missing && values.len() < n {
            0
        } else {
            return Err(Error::syntax(
                format!("line {line}, row {row_id}"),
                format!(
                    "missing cell: row has {} cells, expected {n} (full row) or {upper_only} (upper triangle)",
                    values.len()
                ),
            ));
        };

        for col in 0..n {
            let at = || format!("line {line}, row {row_id}, column {}", factor_ids[col]);
            let raw = if col < first_col {
                ""
            } else {
                values.get(col - first_col).copied().unwrap_or("")
            };
            if col <= row {
                if !(raw.is_empty() || raw == "*") {
                    let place = if col == row { "diagonal" } else { "lower triangle" };
                    return Err(Error::syntax(
                        at(),
                        format!("`{raw}` in the {place}; only blank or `*` is allowed there"),
                    ));
                }
                continue;
            }
            if raw.is_empty() {
                if allow_missing {
                    continue;
                }
                return Err(Error::syntax(at(), "missing cell"));
            }
            let symbol: RelationSymbol = raw
                .parse()
                .map_err(|e: IllegalSymbol| Error::syntax(at(), e.to_string()))?;
            cells[pair_index(n, row, col)] = Some(symbol);
        }
    }
    Ok((factor_ids, cells))
}

fn check_catalog(ids: &[String], catalog: &FactorCatalog, line: u64) -> Result<()> {
    let mut last: Option<(usize, &str)> = None;
    for id in ids {
        let Some(pos) = catalog.index_of(id) else {
            return Err(Error::UnknownFactor {
                at: format!("line {line}, header"),
                id: id.clone(),
            });
        };
        if let Some((prev, prev_id)) = last {
            if pos < prev {
                return Err(Error::Invalid(format!(
                    "line {line}, header: `{id}` precedes `{prev_id}` in the catalog; SSIM columns must follow catalog order"
                )));
            }
        }
        last = Some((pos, id));
    }
    Ok(())
}

/// Applies the conversion rules pair by pair: V sets `(m,n)`, A sets
/// `(n,m)`, X sets both, O sets neither. The diagonal is always set.
pub fn to_initial_reachability(ssim: &SsimMatrix) -> ReachabilityMatrix {
    let n = ssim.len();
    let mut origins = vec![Origin::Zero; n * n];
    for i in 0..n {
        origins[i * n + i] = Origin::Diagonal;
        for j in i + 1..n {
            let (forward, backward) = ssim.cells[pair_index(n, i, j)].reachability();
            if forward {
                origins[i * n + j] = Origin::Direct;
            }
            if backward {
                origins[j * n + i] = Origin::Direct;
            }
        }
    }
    ReachabilityMatrix::new(ssim.factor_ids.clone(), origins).expect("conversion yields a valid matrix")
}
