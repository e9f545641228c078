use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use ismkit::factor::{FactorCatalog, FactorKind};
use ismkit::ssim::{parse_partial_ssim, PartialSsim, RelationSymbol};

use super::{catalog_or_bundled, given_catalog};
use crate::args::{ElicitArgs, GlobalArgs, KindArg};
use crate::failure::{read_input, Failure, Outcome, EXIT_OUTPUT};

/// How a session ended.
#[derive(Debug, PartialEq, Eq)]
pub enum SessionEnd {
    Complete,
    InputEnded,
}

fn label(id: &str, catalog: Option<&FactorCatalog>) -> String {
    match catalog.and_then(|c| c.lookup(id)) {
        Some(f) => format!("{id} ({})", f.short_name),
        None => id.to_string(),
    }
}

/// Asks every pending pair in order, re-asking after an illegal answer.
/// `save` runs after each accepted answer.
pub fn run_session(
    ssim: &mut PartialSsim,
    catalog: Option<&FactorCatalog>,
    input: &mut impl BufRead,
    prompt: &mut impl Write,
    warn: &mut impl Write,
    mut save: impl FnMut(&PartialSsim) -> Outcome,
) -> Outcome<SessionEnd> {
    let total = ssim.total();
    let io_err = |e: io::Error| Failure::new(EXIT_OUTPUT, format!("terminal I/O failed: {e}"));
    for (i, j) in ssim.pending() {
        let ids = ssim.factor_ids();
        let question = format!(
            "[{}/{}] {} vs {} (V/A/X/O): ",
            ssim.answered() + 1,
            total,
            label(&ids[i], catalog),
            label(&ids[j], catalog)
        );
        loop {
            prompt
                .write_all(question.as_bytes())
                .and_then(|_| prompt.flush())
                .map_err(io_err)?;
            let mut line = String::new();
            if input.read_line(&mut line).map_err(io_err)? == 0 {
                return Ok(SessionEnd::InputEnded);
            }
            match line.trim().parse::<RelationSymbol>() {
                Ok(symbol) => {
                    ssim.set(i, j, symbol);
                    save(ssim)?;
                    break;
                }
                Err(e) => writeln!(warn, "{e}; answer V, A, X or O").map_err(io_err)?,
            }
        }
    }
    Ok(SessionEnd::Complete)
}

fn start(g: &GlobalArgs, a: &ElicitArgs, output: &Path) -> Outcome<(PartialSsim, Option<FactorCatalog>)> {
    if a.resume {
        let catalog = given_catalog(g)?;
        let src = read_input(output)?;
        let ssim = parse_partial_ssim(&src, catalog.as_ref()).map_err(|e| Failure::at(output.display(), e))?;
        return Ok((ssim, catalog));
    }
    if output.exists() {
        return Err(Failure::parameter(format!(
            "`{}` already exists; pass --resume to continue it",
            output.display()
        )));
    }
    if !a.factors.is_empty() {
        return Ok((PartialSsim::new(a.factors.clone())?, given_catalog(g)?));
    }
    let catalog = catalog_or_bundled(g)?;
    let kind = match a.kind {
        KindArg::Motivators => FactorKind::Motivator,
        KindArg::Demotivators => FactorKind::Demotivator,
        KindArg::Principles => FactorKind::Principle,
    };
    let ids: Vec<String> = catalog.of_kind(kind).map(|f| f.id.clone()).collect();
    if ids.is_empty() {
        return Err(Failure::new(
            crate::failure::EXIT_VALIDATION,
            format!("catalog has no {}", kind.plural_label()),
        ));
    }
    Ok((PartialSsim::new(ids)?, Some(catalog)))
}

pub fn run(g: &GlobalArgs, a: &ElicitArgs) -> Outcome {
    let output: PathBuf = a.output.clone().unwrap_or_else(|| g.out.join("ssim.csv"));
    let (mut ssim, catalog) = start(g, a, &output)?;
    let save = |s: &PartialSsim| -> Outcome {
        if let Some(dir) = output.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)
                .map_err(|e| Failure::new(EXIT_OUTPUT, format!("cannot create `{}`: {e}", dir.display())))?;
        }
        std::fs::write(&output, s.to_csv())
            .map_err(|e| Failure::new(EXIT_OUTPUT, format!("cannot write `{}`: {e}", output.display())))
    };
    save(&ssim)?;

    let stdin = io::stdin();
    let end = run_session(
        &mut ssim,
        catalog.as_ref(),
        &mut stdin.lock(),
        &mut io::stdout(),
        &mut io::stderr(),
        save,
    )?;
    match end {
        SessionEnd::Complete => println!("\nall {} pairs answered; wrote {}", ssim.total(), output.display()),
        SessionEnd::InputEnded => println!(
            "\ninput ended after {} of {} pairs; progress saved to {} (continue with --resume)",
            ssim.answered(),
            ssim.total(),
            output.display()
        ),
    }
    Ok(())
}
