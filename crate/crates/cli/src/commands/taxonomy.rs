use std::fmt::Write as _;

use ismkit::factor::{validate_mapping, FactorCatalog, FactorKind, Polarity, TaxonomyMapping};
use serde::Serialize;

use super::{catalog_or_bundled, chosen_format};
use crate::args::{Format, GlobalArgs, TaxonomyArgs};
use crate::failure::{read_input, write_output, Failure, Outcome, EXIT_VALIDATION};

#[derive(Serialize)]
struct Counts {
    motivators: usize,
    demotivators: usize,
    principles: usize,
}

#[derive(Serialize)]
struct TaxonomyDocument<'a> {
    catalog_version: &'a str,
    counts: Counts,
    edges: &'a [ismkit::factor::MappingEdge],
}

/// Two-column DOT: drivers on the left, principles on the right. Hindering
/// edges are dashed.
fn to_dot(mapping: &TaxonomyMapping, catalog: &FactorCatalog) -> String {
    let mut sources: Vec<&str> = Vec::new();
    let mut targets: Vec<&str> = Vec::new();
    for e in &mapping.edges {
        if !sources.contains(&e.source.as_str()) {
            sources.push(&e.source);
        }
        if !targets.contains(&e.target.as_str()) {
            targets.push(&e.target);
        }
    }
    let node = |id: &str| match catalog.lookup(id) {
        Some(f) => format!("\"{id}\" [label=\"{id}\\n{}\"];", f.short_name.replace('"', "\\\"")),
        None => format!("\"{id}\";"),
    };
    let mut out = String::from("digraph taxonomy {\n  rankdir=LR;\n  node [shape=box, style=rounded];\n");
    for (name, label, ids) in [
        ("drivers", "Motivators and demotivators", &sources),
        ("principles", "Principles", &targets),
    ] {
        let _ = writeln!(out, "  subgraph cluster_{name} {{\n    label=\"{label}\";");
        for id in ids.iter() {
            let _ = writeln!(out, "    {}", node(id));
        }
        out.push_str("  }\n");
    }
    for e in &mapping.edges {
        let style = match e.polarity {
            Polarity::Supports => "solid",
            Polarity::Hinders => "dashed",
        };
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [style={style}];", e.source, e.target);
    }
    out.push_str("}\n");
    out
}

pub fn run(g: &GlobalArgs, a: &TaxonomyArgs) -> Outcome {
    let format = chosen_format(g, "taxonomy", &[Format::Json, Format::Dot])?;
    let catalog = catalog_or_bundled(g)?;
    let mapping = match &a.mapping {
        Some(path) => {
            let src = read_input(path)?;
            TaxonomyMapping::from_json(&src).map_err(|e| Failure::at(path.display(), e))?
        }
        None => TaxonomyMapping::default(),
    };

    let violations = validate_mapping(&mapping, &catalog);
    if !violations.is_empty() {
        let source = a
            .mapping
            .as_ref()
            .map_or("mapping".to_string(), |p| p.display().to_string());
        let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        return Err(Failure::new(
            EXIT_VALIDATION,
            format!("{source}: {} invalid edge(s)\n{}", violations.len(), lines.join("\n")),
        ));
    }

    let dot = to_dot(&mapping, &catalog);
    if a.dot {
        write_output(&g.out, "taxonomy.dot", &dot)?;
    }
    match format {
        Some(Format::Json) => {
            let doc = TaxonomyDocument {
                catalog_version: catalog.version(),
                counts: Counts {
                    motivators: catalog.count(FactorKind::Motivator),
                    demotivators: catalog.count(FactorKind::Demotivator),
                    principles: catalog.count(FactorKind::Principle),
                },
                edges: &mapping.edges,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("taxonomy document serializes")
            );
        }
        Some(_) => print!("{dot}"),
        None => {
            println!("{}", catalog.summary());
            println!("{} mapping edges", mapping.edges.len());
            for e in &mapping.edges {
                println!("  {} -> {} ({:?})", e.source, e.target, e.polarity);
            }
            if a.dot {
                println!("wrote taxonomy.dot to {}", g.out.display());
            }
        }
    }
    Ok(())
}
