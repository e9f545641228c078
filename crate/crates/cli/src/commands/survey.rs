use std::collections::BTreeMap;

use ismkit::factor::{FactorCatalog, FactorKind};
use ismkit::survey::{
    aggregate_frequencies, breakdown_by, display_percent, group_average, parse_responses, CategoryShare, FrequencyRow,
    GroupAverage,
};
use serde::Serialize;

use super::{catalog_or_bundled, chosen_format};
use crate::args::{Format, GlobalArgs, SurveyArgs};
use crate::failure::{read_input, write_output, Failure, Outcome};

#[derive(Serialize)]
struct NamedGroup {
    name: String,
    #[serde(flatten)]
    average: GroupAverage,
}

#[derive(Serialize)]
struct SurveyDocument<'a> {
    respondents: usize,
    rows: &'a [FrequencyRow],
    warnings: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    missing: Option<Vec<String>>,
    groups: Vec<NamedGroup>,
    breakdowns: BTreeMap<String, Vec<CategoryShare>>,
}

/// Item ids named by a `--group` value.
fn group_items(spec: &str, catalog: &FactorCatalog) -> Vec<String> {
    let kind = match spec {
        "motivators" => Some(FactorKind::Motivator),
        "demotivators" => Some(FactorKind::Demotivator),
        "principles" => Some(FactorKind::Principle),
        _ => None,
    };
    match kind {
        Some(k) => catalog.of_kind(k).map(|f| f.id.clone()).collect(),
        None => spec
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
    }
}

pub fn run(g: &GlobalArgs, a: &SurveyArgs) -> Outcome {
    let format = chosen_format(g, "survey", &[Format::Json])?;
    let path = a.responses.display().to_string();
    let set = parse_responses(&read_input(&a.responses)?).map_err(|e| Failure::at(&path, e))?;
    let table = aggregate_frequencies(&set.responses).map_err(|e| Failure::at(&path, e))?;

    let needs_catalog = a.coverage || !a.group.is_empty();
    let catalog = if needs_catalog {
        Some(catalog_or_bundled(g)?)
    } else {
        None
    };
    let missing = match (&catalog, a.coverage) {
        (Some(c), true) => Some(table.missing(c.ids())),
        _ => None,
    };
    let mut groups = Vec::new();
    for spec in &a.group {
        let items = group_items(spec, catalog.as_ref().expect("loaded for groups"));
        let average = group_average(&table, &items).map_err(|e| Failure::at(format!("group `{spec}`"), e))?;
        groups.push(NamedGroup {
            name: spec.clone(),
            average,
        });
    }
    let mut breakdowns = BTreeMap::new();
    for column in &a.by {
        breakdowns.insert(
            column.clone(),
            breakdown_by(&set, column).map_err(|e| Failure::at(&path, e))?,
        );
    }

    let doc = SurveyDocument {
        respondents: set.respondent_count(),
        rows: &table.rows,
        warnings: &table.warnings,
        missing,
        groups,
        breakdowns,
    };
    let mut json = serde_json::to_string_pretty(&doc).expect("survey document serializes");
    json.push('\n');
    write_output(&g.out, "survey.json", &json)?;

    for w in doc.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(m) = doc.missing.as_ref().filter(|m| !m.is_empty()) {
        eprintln!("warning: no responses for {}", m.join(", "));
    }
    if format.is_some() {
        print!("{json}");
        return Ok(());
    }
    println!("{} respondents, {} items", doc.respondents, doc.rows.len());
    for row in doc.rows {
        println!("  {row}");
    }
    for group in &doc.groups {
        let (agree, neutral, disagree) = group.average.display();
        println!(
            "group {} ({} items): agree {agree}%  neutral {neutral}%  disagree {disagree}%",
            group.name,
            group.average.items.len()
        );
    }
    for (column, shares) in &doc.breakdowns {
        println!("by {column}:");
        for s in shares {
            println!(
                "  {:<16} {:>4}  {:>3}%",
                s.category,
                s.count,
                display_percent(s.percent)
            );
        }
    }
    println!("wrote survey.json to {}", g.out.display());
    Ok(())
}
