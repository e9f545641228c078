//! Five-point Likert survey frequency analysis.
//!
//! Scores 4 and 5 collapse to "agree", 3 is "neutral", 1 and 2 are
//! "disagree". Percentages are kept exact; integer display values round half
//! up.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::ids::natural_cmp;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LikertResponse {
    pub respondent_id: String,
    pub item_id: String,
    /// 5 strongly agree, 4 agree, 3 neutral, 2 disagree, 1 strongly disagree.
    pub score: u8,
}

impl LikertResponse {
    pub fn new(respondent_id: impl Into<String>, item_id: impl Into<String>, score: u8) -> Result<Self> {
        let item_id = item_id.into();
        if item_id.is_empty() {
            return Err(Error::Invalid("response has an empty item_id".into()));
        }
        if !(1..=5).contains(&score) {
            return Err(Error::Invalid(format!(
                "score {score} for `{item_id}` is outside 1..=5"
            )));
        }
        Ok(LikertResponse {
            respondent_id: respondent_id.into(),
            item_id,
            score,
        })
    }
}

/// Parsed response file: the responses plus any demographic columns, kept
/// per response row.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResponseSet {
    pub responses: Vec<LikertResponse>,
    columns: Vec<String>,
    attributes: Vec<Vec<String>>,
}

impl ResponseSet {
    pub fn demographic_columns(&self) -> &[String] {
        &self.columns
    }

    pub fn respondent_count(&self) -> usize {
        self.responses
            .iter()
            .map(|r| r.respondent_id.as_str())
            .collect::<HashSet<_>>()
            .len()
    }
}

const REQUIRED: [&str; 3] = ["respondent_id", "item_id", "score"];

/// Reads `respondent_id,item_id,score[,demographic...]` CSV. Errors carry
/// the 1-based line number of the offending row.
pub fn parse_responses(source: &str) -> Result<ResponseSet> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());
    let header = reader
        .headers()
        .map_err(|source| Error::Csv {
            context: "response file header".into(),
            source,
        })?
        .clone();
    let position = |name: &str| header.iter().position(|h| h == name);
    let mut required = [0usize; 3];
    for (slot, name) in required.iter_mut().zip(REQUIRED) {
        *slot = position(name)
            .ok_or_else(|| Error::syntax("line 1", format!("response file header lacks the `{name}` column")))?;
    }
    let demographic: Vec<(usize, String)> = header
        .iter()
        .enumerate()
        .filter(|(_, h)| !REQUIRED.contains(h))
        .map(|(k, h)| (k, h.to_string()))
        .collect();

    let mut set = ResponseSet {
        columns: demographic.iter().map(|(_, h)| h.clone()).collect(),
        ..ResponseSet::default()
    };
    for rec in reader.records() {
        let rec = rec.map_err(|source| Error::Csv {
            context: "response file".into(),
            source,
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let at = format!("line {line}");
        let field = |k: usize| rec.get(k).unwrap_or("");
        let [rid, item, score] = required.map(field);
        if rid.is_empty() {
            return Err(Error::syntax(at, "empty respondent_id"));
        }
        if item.is_empty() {
            return Err(Error::syntax(at, "empty item_id"));
        }
        let score: u8 = match score.parse() {
            Ok(s @ 1..=5) => s,
            _ => return Err(Error::syntax(at, format!("score `{score}` is not an integer in 1..=5"))),
        };
        set.responses.push(LikertResponse {
            respondent_id: rid.to_string(),
            item_id: item.to_string(),
            score,
        });
        set.attributes
            .push(demographic.iter().map(|(k, _)| field(*k).to_string()).collect());
    }
    Ok(set)
}

/// Rounds half up to a whole percent.
pub fn display_percent(exact: f64) -> u32 {
    (exact + 0.5).floor() as u32
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyRow {
    pub item_id: String,
    pub n: usize,
    pub agree: usize,
    pub neutral: usize,
    pub disagree: usize,
    pub pct_agree: f64,
    pub pct_neutral: f64,
    pub pct_disagree: f64,
}

impl FrequencyRow {
    fn from_counts(item_id: String, agree: usize, neutral: usize, disagree: usize) -> Self {
        let n = agree + neutral + disagree;
        let pct = |k: usize| (100 * k) as f64 / n as f64;
        FrequencyRow {
            item_id,
            n,
            agree,
            neutral,
            disagree,
            pct_agree: pct(agree),
            pct_neutral: pct(neutral),
            pct_disagree: pct(disagree),
        }
    }

    /// `(agree, neutral, disagree)` as displayed whole percents.
    pub fn display(&self) -> (u32, u32, u32) {
        (
            display_percent(self.pct_agree),
            display_percent(self.pct_neutral),
            display_percent(self.pct_disagree),
        )
    }
}

impl fmt::Display for FrequencyRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, n, d) = self.display();
        write!(
            f,
            "{:<8} n={:<4} agree {a:>3}%  neutral {n:>3}%  disagree {d:>3}%",
            self.item_id, self.n
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyTable {
    pub rows: Vec<FrequencyRow>,
    pub warnings: Vec<String>,
}

impl FrequencyTable {
    pub fn row(&self, item_id: &str) -> Option<&FrequencyRow> {
        self.rows.iter().find(|r| r.item_id == item_id)
    }

    /// Expected items that received no responses.
    pub fn missing<'a>(&self, expected: impl IntoIterator<Item = &'a str>) -> Vec<String> {
        expected
            .into_iter()
            .filter(|id| self.row(id).is_none())
            .map(str::to_string)
            .collect()
    }
}

/// Collapses responses into per-item agree/neutral/disagree shares, rows in
/// natural id order. A repeated (respondent, item) pair keeps its first
/// score and adds a warning.
pub fn aggregate_frequencies(responses: &[LikertResponse]) -> Result<FrequencyTable> {
    if responses.is_empty() {
        return Err(Error::Invalid("no survey responses to aggregate".into()));
    }
    let mut seen: HashSet<(&str, &str)> = HashSet::new();
    let mut counts: HashMap<&str, [usize; 3]> = HashMap::new();
    let mut warnings = Vec::new();
    for r in responses {
        if !(1..=5).contains(&r.score) {
            return Err(Error::Invalid(format!(
                "score {} from `{}` for `{}` is outside 1..=5",
                r.score, r.respondent_id, r.item_id
            )));
        }
        if !seen.insert((&r.respondent_id, &r.item_id)) {
            warnings.push(format!(
                "duplicate response from `{}` for `{}` ignored; first occurrence kept",
                r.respondent_id, r.item_id
            ));
            continue;
        }
        let bucket = match r.score {
            4 | 5 => 0,
            3 => 1,
            _ => 2,
        };
        counts.entry(&r.item_id).or_default()[bucket] += 1;
    }
    let mut rows: Vec<FrequencyRow> = counts
        .into_iter()
        .map(|(item, [a, n, d])| FrequencyRow::from_counts(item.to_string(), a, n, d))
        .collect();
    rows.sort_by(|x, y| natural_cmp(&x.item_id, &y.item_id));
    Ok(FrequencyTable { rows, warnings })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupAverage {
    pub items: Vec<String>,
    pub pct_agree: f64,
    pub pct_neutral: f64,
    pub pct_disagree: f64,
}

impl GroupAverage {
    pub fn display(&self) -> (u32, u32, u32) {
        (
            display_percent(self.pct_agree),
            display_percent(self.pct_neutral),
            display_percent(self.pct_disagree),
        )
    }
}

/// Unweighted mean of the exact item percentages over a group.
pub fn group_average(table: &FrequencyTable, group: &[String]) -> Result<GroupAverage> {
    if group.is_empty() {
        return Err(Error::Invalid("group is empty".into()));
    }
    let mut rows = Vec::with_capacity(group.len());
    for id in group {
        rows.push(
            table
                .row(id)
                .ok_or_else(|| Error::Invalid(format!("group item `{id}` has no frequency row")))?,
        );
    }
    let k = rows.len() as f64;
    let mean = |f: fn(&FrequencyRow) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / k;
    Ok(GroupAverage {
        items: group.to_vec(),
        pct_agree: mean(|r| r.pct_agree),
        pct_neutral: mean(|r| r.pct_neutral),
        pct_disagree: mean(|r| r.pct_disagree),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryShare {
    pub category: String,
    pub count: usize,
    pub percent: f64,
}

/// Respondents per value of a demographic column, each respondent counted
/// once (first row wins). Sorted by descending count, then category.
pub fn breakdown_by(set: &ResponseSet, column: &str) -> Result<Vec<CategoryShare>> {
    let k = set.columns.iter().position(|c| c == column).ok_or_else(|| {
        let available = if set.columns.is_empty() {
            "none".to_string()
        } else {
            set.columns.join(", ")
        };
        Error::Invalid(format!(
            "unknown demographic column `{column}`; available columns: {available}"
        ))
    })?;
    let mut seen = HashSet::new();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for (r, attrs) in set.responses.iter().zip(&set.attributes) {
        if seen.insert(r.respondent_id.as_str()) {
            let value = attrs[k].as_str();
            *counts
                .entry(if value.is_empty() { "unspecified" } else { value })
                .or_default() += 1;
        }
    }
    let total = seen.len() as f64;
    let mut shares: Vec<CategoryShare> = counts
        .into_iter()
        .map(|(category, count)| CategoryShare {
            category: category.to_string(),
            count,
            percent: 100.0 * count as f64 / total,
        })
        .collect();
    shares.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.category.cmp(&b.category)));
    Ok(shares)
}
