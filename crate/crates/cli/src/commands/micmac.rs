use ismkit::ism::run_ism;
use ismkit::micmac::{chart_data, classify, render_svg, Cluster, MicmacThresholds};

use super::{chosen_format, load_ssim};
use crate::args::{Format, GlobalArgs, MicmacArgs};
use crate::failure::{write_output, Outcome};

pub fn run(g: &GlobalArgs, a: &MicmacArgs) -> Outcome {
    let format = chosen_format(g, "micmac", &[Format::Json, Format::Svg])?;
    let (table, _) = load_ssim(g, &a.input)?;
    let n = table.len();
    let thresholds = MicmacThresholds::resolve(n, a.driving_cutoff, a.dependence_cutoff)?;
    let report = run_ism(&table)?;
    let c = classify(&report.profile, Some(thresholds))?;
    if n == 1 {
        eprintln!("warning: a single factor makes the quadrant analysis degenerate");
    }

    let json = c.to_json();
    let svg = render_svg(&chart_data(&c));
    write_output(&g.out, "micmac.json", &json)?;
    write_output(&g.out, "micmac.svg", &svg)?;

    match format {
        Some(Format::Json) => print!("{json}"),
        Some(_) => print!("{svg}"),
        None => {
            println!(
                "{} factors, driving cutoff {}, dependence cutoff {}",
                n,
                c.thresholds.driving_cutoff(),
                c.thresholds.dependence_cutoff()
            );
            for cluster in Cluster::ALL {
                println!("  {cluster}: {}", c.members(cluster).join(", "));
            }
            println!("wrote micmac.json, micmac.svg to {}", g.out.display());
        }
    }
    Ok(())
}
