use std::fmt;

use serde::{Serialize, Serializer};

use crate::ids::index_ids;
use crate::{Error, Result};

/// Why a reachability cell is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Zero,
    Diagonal,
    /// Stated by the experts.
    Direct,
    /// Added by transitive closure, printed as `1*`.
    Transitive,
}

impl Origin {
    pub fn is_set(self) -> bool {
        self != Origin::Zero
    }

    /// `0`, `1` or `1*`.
    pub fn mark(self) -> &'static str {
        match self {
            Origin::Zero => "0",
            Origin::Diagonal | Origin::Direct => "1",
            Origin::Transitive => "1*",
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mark())
    }
}

/// Serializes as the number `0` or `1`, or the string `"1*"`.
impl Serialize for Origin {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Origin::Zero => serializer.serialize_u8(0),
            Origin::Diagonal | Origin::Direct => serializer.serialize_u8(1),
            Origin::Transitive => serializer.serialize_str("1*"),
        }
    }
}

/// Square boolean relation over named factors, with the provenance of
/// every set cell. The diagonal is always set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityMatrix {
    factor_ids: Vec<String>,
    origins: Vec<Origin>,
}

impl ReachabilityMatrix {
    /// `origins` is row-major. Diagonal cells must be `Diagonal` and no
    /// off-diagonal cell may be.
    pub fn new(factor_ids: Vec<String>, origins: Vec<Origin>) -> Result<Self> {
        index_ids(&factor_ids, "factor list")?;
        let n = factor_ids.len();
        if origins.len() != n * n {
            return Err(Error::Invalid(format!(
                "{n} factors need {} cells, got {}",
                n * n,
                origins.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let o = origins[i * n + j];
                if (i == j) != (o == Origin::Diagonal) {
                    return Err(Error::Invalid(format!(
                        "cell ({}, {}) has origin {o:?}; the diagonal must be set and only the diagonal may be Diagonal",
                        factor_ids[i], factor_ids[j]
                    )));
                }
            }
        }
        Ok(ReachabilityMatrix { factor_ids, origins })
    }

    /// Reflexive-only relation.
    pub fn identity(factor_ids: Vec<String>) -> Result<Self> {
        ReachabilityMatrix::from_relation(factor_ids, |_, _| false)
    }

    /// Diagonal plus `Direct` cells wherever `related(i, j)` holds, `i != j`.
    pub fn from_relation(factor_ids: Vec<String>, mut related: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let n = factor_ids.len();
        let mut origins = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                origins.push(if i == j {
                    Origin::Diagonal
                } else if related(i, j) {
                    Origin::Direct
                } else {
                    Origin::Zero
                });
            }
        }
        ReachabilityMatrix::new(factor_ids, origins)
    }

    pub fn len(&self) -> usize {
        self.factor_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factor_ids.is_empty()
    }

    pub fn factor_ids(&self) -> &[String] {
        &self.factor_ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.factor_ids.iter().position(|f| f == id)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.origin(i, j).is_set()
    }

    pub fn origin(&self, i: usize, j: usize) -> Origin {
        self.origins[i * self.len() + j]
    }

    pub(crate) fn origins(&self) -> &[Origin] {
        &self.origins
    }

    pub fn row(&self, i: usize) -> &[Origin] {
        let n = self.len();
        &self.origins[i * n..(i + 1) * n]
    }

    /// Rows as nested vectors, for serialization.
    pub fn rows(&self) -> Vec<Vec<Origin>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn count_set(&self) -> usize {
        self.origins.iter().filter(|o| o.is_set()).count()
    }

    pub fn has_transitive(&self) -> bool {
        self.origins.contains(&Origin::Transitive)
    }

    /// Same relation with the rows and columns reordered: position `k` of the
    /// result holds factor `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> ReachabilityMatrix {
        let n = self.len();
        debug_assert_eq!(order.len(), n);
        let mut origins = Vec::with_capacity(n * n);
        for &i in order {
            for &j in order {
                origins.push(self.origin(i, j));
            }
        }
        ReachabilityMatrix {
            factor_ids: order.iter().map(|&i| self.factor_ids[i].clone()).collect(),
            origins,
        }
    }

    /// CSV table with `0`/`1`/`1*` cells and `DIV`/`RANK` margins: a column
    /// of driving powers and ranks, and trailing rows of dependence powers
    /// and ranks. [`crate::ism::parse_reference_matrix`] reads it back.
    pub fn to_csv(&self) -> String {
        let profile = crate::ism::PowerProfile::from_matrix(self);
        let mut out = String::new();
        for id in &self.factor_ids {
            out.push(',');
            out.push_str(id);
        }
        out.push_str(",DIV,RANK\n");
        for i in 0..self.len() {
            out.push_str(&self.factor_ids[i]);
            for o in self.row(i) {
                out.push(',');
                out.push_str(o.mark());
            }
            out.push_str(&format!(",{},{}\n", profile.driving[i], profile.driving_rank[i]));
        }
        for (label, values) in [("DIV", &profile.dependence), ("RANK", &profile.dependence_rank)] {
            out.push_str(label);
            for v in values {
                out.push_str(&format!(",{v}"));
            }
            out.push_str(",,\n");
        }
        out
    }
}

impl fmt::Display for ReachabilityMatrix {
    /// Fixed-width grid, `1*` marking closure-added cells.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.factor_ids.iter().map(String::len).max().unwrap_or(0).max(2);
        write!(f, "{:width$}", "")?;
        for id in &self.factor_ids {
            write!(f, " {id:>width$}")?;
        }
        writeln!(f)?;
        for i in 0..self.len() {
            write!(f, "{:width$}", self.factor_ids[i])?;
            for o in self.row(i) {
                write!(f, " {:>width$}", o.mark())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
