use serde::Serialize;

use super::{
    build_digraph, conical_matrix, partition_levels_traced, transitive_closure, Digraph, LevelIteration,
    LevelPartition, Origin, PowerProfile, ReachabilityMatrix,
};
use crate::ssim::{to_initial_reachability, SsimMatrix};
use crate::Result;

/// Everything the ISM pipeline derives from one SSIM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsmReport {
    pub initial: ReachabilityMatrix,
    pub closed: ReachabilityMatrix,
    pub profile: PowerProfile,
    pub partition: LevelPartition,
    pub iterations: Vec<LevelIteration>,
    pub conical: ReachabilityMatrix,
    pub digraph: Digraph,
}

/// SSIM → initial matrix → closure → powers → levels → conical matrix → digraph.
pub fn run_ism(ssim: &SsimMatrix) -> Result<IsmReport> {
    let initial = to_initial_reachability(ssim);
    let closed = transitive_closure(&initial);
    let profile = PowerProfile::from_matrix(&closed);
    let (partition, iterations) = partition_levels_traced(&closed)?;
    let conical = conical_matrix(&closed, &partition)?;
    let digraph = build_digraph(&initial, &closed, &partition)?;
    Ok(IsmReport {
        initial,
        closed,
        profile,
        partition,
        iterations,
        conical,
        digraph,
    })
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    matrix: MatrixSection<'a>,
    powers: Vec<PowerEntry<'a>>,
    ranks: Vec<PowerEntry<'a>>,
    levels: Vec<LevelEntry<'a>>,
    edges: &'a [super::DigraphEdge],
}

#[derive(Serialize)]
struct MatrixSection<'a> {
    factor_ids: &'a [String],
    initial: Vec<Vec<Origin>>,
    #[serde(rename = "final")]
    closed: Vec<Vec<Origin>>,
    conical: ConicalSection<'a>,
}

#[derive(Serialize)]
struct ConicalSection<'a> {
    factor_ids: &'a [String],
    cells: Vec<Vec<Origin>>,
}

#[derive(Serialize)]
struct PowerEntry<'a> {
    id: &'a str,
    driving: usize,
    dependence: usize,
}

#[derive(Serialize)]
struct LevelEntry<'a> {
    level: usize,
    factors: &'a [String],
}

impl IsmReport {
    /// JSON document with `matrix`, `powers`, `ranks`, `levels` and `edges`
    /// sections. Cells are `0`, `1` or `"1*"`. Output is byte-stable.
    pub fn to_json(&self) -> String {
        let p = &self.profile;
        let entries = |a: &'_ [usize], b: &'_ [usize]| -> Vec<(usize, usize)> {
            a.iter().copied().zip(b.iter().copied()).collect()
        };
        let to_entries = |pairs: Vec<(usize, usize)>| {
            p.factor_ids
                .iter()
                .zip(pairs)
                .map(|(id, (driving, dependence))| PowerEntry {
                    id,
                    driving,
                    dependence,
                })
                .collect::<Vec<_>>()
        };
        let doc = ReportDocument {
            matrix: MatrixSection {
                factor_ids: self.closed.factor_ids(),
                initial: self.initial.rows(),
                closed: self.closed.rows(),
                conical: ConicalSection {
                    factor_ids: self.conical.factor_ids(),
                    cells: self.conical.rows(),
                },
            },
            powers: to_entries(entries(&p.driving, &p.dependence)),
            ranks: to_entries(entries(&p.driving_rank, &p.dependence_rank)),
            levels: self
                .partition
                .levels
                .iter()
                .enumerate()
                .map(|(k, factors)| LevelEntry { level: k + 1, factors })
                .collect(),
            edges: &self.digraph.edges,
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }
}
