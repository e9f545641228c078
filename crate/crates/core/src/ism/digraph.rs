use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use super::conical::level_order;
use super::{transitive_closure, LevelPartition, Origin, ReachabilityMatrix};
use crate::factor::FactorCatalog;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigraphNode {
    pub id: String,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DigraphEdge {
    pub from: String,
    pub to: String,
}

/// Leveled ISM digraph. Nodes are ordered by level, then matrix order;
/// edges in row-major matrix order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Digraph {
    pub nodes: Vec<DigraphNode>,
    pub edges: Vec<DigraphEdge>,
}

/// Builds the digraph from the expert-stated relation.
///
/// Candidate edges are the `Direct` cells of `direct`. They are visited in
/// row-major order and an edge is dropped when its head stays reachable from
/// its tail through the edges still present. Every drop preserves
/// reachability, so the closure of the result equals `closed`, and no kept
/// edge is implied by a path through the others.
pub fn build_digraph(direct: &ReachabilityMatrix, closed: &ReachabilityMatrix, p: &LevelPartition) -> Result<Digraph> {
    if direct.factor_ids() != closed.factor_ids() {
        return Err(Error::Invalid(
            "direct and closed matrices name different factors".into(),
        ));
    }
    let n = direct.len();
    let recomputed = transitive_closure(direct);
    for i in 0..n {
        for j in 0..n {
            if recomputed.get(i, j) != closed.get(i, j) {
                return Err(Error::Invalid(format!(
                    "closed matrix is not the closure of the direct relation at ({}, {})",
                    direct.factor_ids()[i],
                    direct.factor_ids()[j]
                )));
            }
        }
    }
    let order = level_order(direct, p)?;

    let mut edges = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            edges[i * n + j] = direct.origin(i, j) == Origin::Direct;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !edges[i * n + j] {
                continue;
            }
            edges[i * n + j] = false;
            if !reachable(&edges, n, i, j) {
                edges[i * n + j] = true;
            }
        }
    }

    let ids = direct.factor_ids();
    let nodes = order
        .iter()
        .map(|&i| DigraphNode {
            id: ids[i].clone(),
            level: p.level_of(&ids[i]).expect("level_order checked membership"),
        })
        .collect();
    let edges = (0..n * n)
        .filter(|&k| edges[k])
        .map(|k| DigraphEdge {
            from: ids[k / n].clone(),
            to: ids[k % n].clone(),
        })
        .collect();
    Ok(Digraph { nodes, edges })
}

fn reachable(edges: &[bool], n: usize, from: usize, to: usize) -> bool {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if edges[u * n + v] && !seen[v] {
                if v == to {
                    return true;
                }
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    false
}

fn quote(s: &str) -> String {
    format!(
        "\"{}\"",
        s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
    )
}

impl Digraph {
    /// Graphviz DOT with one same-rank cluster per level, level 1 drawn on
    /// top. With a catalog, nodes are labeled with short names.
    pub fn to_dot(&self, catalog: Option<&FactorCatalog>) -> String {
        let mut out = String::new();
        out.push_str("digraph ism {\n");
        out.push_str("  rankdir=BT;\n");
        out.push_str("  node [shape=box, style=rounded];\n");
        let depth = self.nodes.iter().map(|n| n.level).max().unwrap_or(0);
        for level in 1..=depth {
            let _ = writeln!(out, "  subgraph cluster_level_{level} {{");
            let _ = writeln!(out, "    label={};", quote(&format!("Level {level}")));
            out.push_str("    rank=same;\n");
            for node in self.nodes.iter().filter(|n| n.level == level) {
                match catalog.and_then(|c| c.lookup(&node.id)) {
                    Some(f) => {
                        let _ = writeln!(
                            out,
                            "    {} [label={}];",
                            quote(&node.id),
                            quote(&format!("{}\n{}", node.id, f.short_name))
                        );
                    }
                    None => {
                        let _ = writeln!(out, "    {};", quote(&node.id));
                    }
                }
            }
            out.push_str("  }\n");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -> {};", quote(&e.from), quote(&e.to));
        }
        out.push_str("}\n");
        out
    }
}
