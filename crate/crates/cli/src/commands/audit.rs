use std::path::Path;

use ismkit::audit::AuditReport;
use ismkit::corpus;
use ismkit::ism::{parse_reference_matrix, run_ism, LevelClaims, ReachabilityMatrix};
use ismkit::micmac::ClusterReference;
use ismkit::ssim::parse_ssim;

use super::{chosen_format, given_catalog, BUNDLED_SSIM};
use crate::args::{AuditArgs, Format, GlobalArgs};
use crate::failure::{read_input, write_output, Failure, Outcome};

/// Reads `path` if given, else falls back to the bundled text when allowed.
fn source(path: Option<&Path>, bundled: Option<&'static str>, label: &str) -> Outcome<Option<(String, String)>> {
    match (path, bundled) {
        (Some(p), _) => Ok(Some((read_input(p)?, p.display().to_string()))),
        (None, Some(text)) => Ok(Some((text.to_string(), format!("bundled {label}")))),
        (None, None) => Ok(None),
    }
}

fn computed_matrix(g: &GlobalArgs, a: &AuditArgs) -> Outcome<ReachabilityMatrix> {
    if let Some(path) = &a.computed {
        let src = read_input(path)?;
        return Ok(parse_reference_matrix(&src)
            .map_err(|e| Failure::at(path.display(), e))?
            .matrix);
    }
    let (src, label, catalog) = match (&a.ssim, a.paper_corpus) {
        (Some(path), _) => (read_input(path)?, path.display().to_string(), given_catalog(g)?),
        (None, true) => (
            corpus::SSIM_TABLE.to_string(),
            BUNDLED_SSIM.to_string(),
            Some(corpus::catalog()),
        ),
        (None, false) => return Err(Failure::parameter("audit needs --ssim, --computed or --paper-corpus")),
    };
    let table = parse_ssim(&src, catalog.as_ref()).map_err(|e| Failure::at(&label, e))?;
    Ok(run_ism(&table).map_err(|e| Failure::at(&label, e))?.closed)
}

pub fn run(g: &GlobalArgs, a: &AuditArgs) -> Outcome {
    let format = chosen_format(g, "audit", &[Format::Json])?;
    let bundled = |text: &'static str| a.paper_corpus.then_some(text);

    let computed = computed_matrix(g, a)?;
    let (ref_src, ref_label) = source(
        a.reference.as_deref(),
        bundled(corpus::REACHABILITY_TABLE),
        "reference matrix",
    )?
    .ok_or_else(|| Failure::parameter("audit needs --reference or --paper-corpus"))?;
    let reference = parse_reference_matrix(&ref_src).map_err(|e| Failure::at(&ref_label, e))?;
    let claims = match source(a.levels.as_deref(), bundled(corpus::LEVEL_CLAIMS), "level claims")? {
        Some((src, label)) => Some(LevelClaims::from_json(&src).map_err(|e| Failure::at(label, e))?),
        None => None,
    };
    let clusters = match source(a.clusters.as_deref(), bundled(corpus::MICMAC_CLUSTERS), "cluster lists")? {
        Some((src, label)) => Some(ClusterReference::from_json(&src).map_err(|e| Failure::at(label, e))?),
        None => None,
    };

    let report = AuditReport::new(&computed, &reference, claims.as_ref(), clusters.as_ref())
        .map_err(|e| Failure::at(&ref_label, e))?;
    let json = report.to_json();
    write_output(&g.out, "audit.json", &json)?;

    if format.is_some() {
        print!("{json}");
        return Ok(());
    }
    let m = &report.matrix;
    println!(
        "matrix: {} cell mismatches, {} marking mismatches",
        m.cells.len(),
        m.origins.len()
    );
    for flag in m.driving_arithmetic() {
        println!(
            "  driving power of {} printed {} but its row sums to {}",
            flag.id, flag.printed, flag.recount
        );
    }
    if let Some(l) = &report.levels {
        println!("levels: {} of {} claims agree", l.agreement, l.total);
        if let Some(top) = &l.top_level {
            println!(
                "  claimed top [{}], computed top [{}], all at computed top: {}",
                top.claimed.join(", "),
                top.computed.join(", "),
                top.all_at_computed_top
            );
        }
    }
    if let Some(c) = &report.clusters {
        println!("clusters: {} of {} factors agree", c.agreement, c.total);
    }
    println!("wrote audit.json to {}", g.out.display());
    Ok(())
}
