use std::fmt::Write as _;

use serde::Serialize;

use super::ReachabilityMatrix;
use crate::{Error, Result};

/// Factors grouped into hierarchy levels, level 1 (the top) first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelPartition {
    pub levels: Vec<Vec<String>>,
}

impl LevelPartition {
    /// 1-based level of `id`.
    pub fn level_of(&self, id: &str) -> Option<usize> {
        self.levels
            .iter()
            .position(|l| l.iter().any(|f| f == id))
            .map(|i| i + 1)
    }

    pub fn factor_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

/// One factor's sets during one extraction round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub id: String,
    pub reachability: Vec<String>,
    pub antecedent: Vec<String>,
    pub intersection: Vec<String>,
    pub assigned: bool,
}

/// One extraction round over the factors still unassigned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelIteration {
    pub level: usize,
    pub rows: Vec<LevelRow>,
}

/// Iterative level extraction on a closed matrix. Each round computes, over
/// the remaining factors, the reachability set R(i) and antecedent set A(i);
/// factors with R(i) ∩ A(i) = R(i) form the next level and are removed.
pub fn partition_levels(m: &ReachabilityMatrix) -> Result<LevelPartition> {
    partition_levels_traced(m).map(|(p, _)| p)
}

/// [`partition_levels`] plus the per-round set tables.
pub fn partition_levels_traced(m: &ReachabilityMatrix) -> Result<(LevelPartition, Vec<LevelIteration>)> {
    let n = m.len();
    let ids = m.factor_ids();
    let mut remaining = vec![true; n];
    let mut left = n;
    let mut levels = Vec::new();
    let mut trace = Vec::new();

    while left > 0 {
        let mut rows = Vec::with_capacity(left);
        let mut chosen = Vec::new();
        for i in (0..n).filter(|&i| remaining[i]) {
            let reach: Vec<usize> = (0..n).filter(|&j| remaining[j] && m.get(i, j)).collect();
            let ante: Vec<usize> = (0..n).filter(|&j| remaining[j] && m.get(j, i)).collect();
            let inter: Vec<usize> = reach.iter().copied().filter(|j| ante.contains(j)).collect();
            let assigned = inter.len() == reach.len();
            if assigned {
                chosen.push(i);
            }
            let names = |v: &[usize]| v.iter().map(|&k| ids[k].clone()).collect::<Vec<_>>();
            rows.push(LevelRow {
                id: ids[i].clone(),
                reachability: names(&reach),
                antecedent: names(&ante),
                intersection: names(&inter),
                assigned,
            });
        }
        if chosen.is_empty() {
            return Err(Error::NoProgress {
                remaining: (0..n).filter(|&i| remaining[i]).map(|i| ids[i].clone()).collect(),
            });
        }
        for &i in &chosen {
            remaining[i] = false;
        }
        left -= chosen.len();
        levels.push(chosen.iter().map(|&i| ids[i].clone()).collect());
        trace.push(LevelIteration {
            level: levels.len(),
            rows,
        });
    }
    Ok((LevelPartition { levels }, trace))
}

/// Plain-text level tables, one per extraction round. Columns are sized to
/// their widest entry.
pub fn format_level_table(trace: &[LevelIteration]) -> String {
    let mut out = String::new();
    for it in trace {
        let cells: Vec<[String; 5]> = it
            .rows
            .iter()
            .map(|row| {
                [
                    row.id.clone(),
                    row.reachability.join(" "),
                    row.antecedent.join(" "),
                    row.intersection.join(" "),
                    if row.assigned {
                        it.level.to_string()
                    } else {
                        String::new()
                    },
                ]
            })
            .collect();
        let header = ["Factor", "Reachability set", "Antecedent set", "Intersection", "Level"].map(String::from);
        let mut width = header.clone().map(|h| h.len());
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let _ = writeln!(out, "Iteration {}", it.level);
        for row in std::iter::once(&header).chain(&cells) {
            let line = format!(
                "{:<w0$}  {:<w1$}  {:<w2$}  {:<w3$}  {}",
                row[0],
                row[1],
                row[2],
                row[3],
                row[4],
                w0 = width[0],
                w1 = width[1],
                w2 = width[2],
                w3 = width[3]
            );
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out.push('\n');
    }
    out
}
