use ismkit::ism::{format_level_table, run_ism};

use super::{chosen_format, load_ssim};
use crate::args::{Format, GlobalArgs, SsimInput};
use crate::failure::{write_output, Outcome};

pub fn run(g: &GlobalArgs, input: &SsimInput) -> Outcome {
    let format = chosen_format(g, "ism", &[Format::Json, Format::Dot])?;
    let (table, catalog) = load_ssim(g, input)?;
    let report = run_ism(&table)?;

    let json = report.to_json();
    let dot = report.digraph.to_dot(catalog.as_ref());
    write_output(&g.out, "report.json", &json)?;
    write_output(&g.out, "digraph.dot", &dot)?;
    write_output(&g.out, "levels.txt", &format_level_table(&report.iterations))?;
    write_output(&g.out, "reachability.csv", &report.closed.to_csv())?;

    match format {
        Some(Format::Json) => print!("{json}"),
        Some(_) => print!("{dot}"),
        None => {
            println!(
                "{} factors, {} levels, {} digraph edges",
                report.closed.len(),
                report.partition.depth(),
                report.digraph.edges.len()
            );
            for (k, level) in report.partition.levels.iter().enumerate() {
                println!("  level {}: {}", k + 1, level.join(", "));
            }
            println!(
                "wrote report.json, digraph.dot, levels.txt, reachability.csv to {}",
                g.out.display()
            );
        }
    }
    Ok(())
}
