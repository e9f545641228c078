pub mod audit;
pub mod elicit;
pub mod ism;
pub mod micmac;
pub mod survey;
pub mod taxonomy;

use ismkit::corpus;
use ismkit::factor::{load_catalog, FactorCatalog};
use ismkit::ssim::{parse_ssim, SsimMatrix};

use crate::args::{Format, GlobalArgs, SsimInput};
use crate::failure::{read_input, Failure, Outcome};

pub const BUNDLED_SSIM: &str = "bundled SSIM";

/// The `--catalog` file, if one was given.
pub fn given_catalog(g: &GlobalArgs) -> Outcome<Option<FactorCatalog>> {
    match &g.catalog {
        Some(path) => {
            let src = read_input(path)?;
            load_catalog(&src).map(Some).map_err(|e| Failure::at(path.display(), e))
        }
        None => Ok(None),
    }
}

/// The `--catalog` file, else the bundled catalog.
pub fn catalog_or_bundled(g: &GlobalArgs) -> Outcome<FactorCatalog> {
    Ok(given_catalog(g)?.unwrap_or_else(corpus::catalog))
}

/// Parses the SSIM named on the command line (or the bundled one) and
/// returns it with the catalog it was checked against.
pub fn load_ssim(g: &GlobalArgs, input: &SsimInput) -> Outcome<(SsimMatrix, Option<FactorCatalog>)> {
    let (source, label, catalog) = match &input.ssim {
        Some(path) => (read_input(path)?, path.display().to_string(), given_catalog(g)?),
        None => (
            corpus::SSIM_TABLE.to_string(),
            BUNDLED_SSIM.to_string(),
            Some(catalog_or_bundled(g)?),
        ),
    };
    let table = parse_ssim(&source, catalog.as_ref()).map_err(|e| Failure::at(label, e))?;
    Ok((table, catalog))
}

/// `--format`, rejected when the command cannot produce it.
pub fn chosen_format(g: &GlobalArgs, command: &str, allowed: &[Format]) -> Outcome<Option<Format>> {
    match g.format {
        Some(f) if !allowed.contains(&f) => {
            let names: Vec<String> = allowed.iter().map(|a| format!("{a:?}").to_lowercase()).collect();
            Err(Failure::parameter(format!(
                "`{command}` cannot emit {} output; choose one of: {}",
                format!("{f:?}").to_lowercase(),
                names.join(", ")
            )))
        }
        other => Ok(other),
    }
}
