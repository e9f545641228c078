use std::fmt;
use std::path::Path;

use ismkit::error::ErrorClass;

pub const EXIT_OUTPUT: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_PARAMETER: u8 = 4;

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn parameter(message: impl Into<String>) -> Self {
        Failure::new(EXIT_PARAMETER, message)
    }

    /// A library error raised while handling `source`.
    pub fn at(source: impl fmt::Display, err: ismkit::Error) -> Self {
        Failure::new(code_for(&err), format!("{source}: {err}"))
    }
}

impl From<ismkit::Error> for Failure {
    fn from(err: ismkit::Error) -> Self {
        Failure::new(code_for(&err), err.to_string())
    }
}

fn code_for(err: &ismkit::Error) -> u8 {
    match err.class() {
        ErrorClass::Parse => EXIT_PARSE,
        ErrorClass::Validation => EXIT_VALIDATION,
        ErrorClass::Parameter => EXIT_PARAMETER,
    }
}

pub type Outcome<T = ()> = std::result::Result<T, Failure>;

pub fn read_input(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read `{}`: {e}", path.display())))
}

pub fn write_output(dir: &Path, name: &str, contents: &str) -> Outcome {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::new(EXIT_OUTPUT, format!("cannot create `{}`: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| Failure::new(EXIT_OUTPUT, format!("cannot write `{}`: {e}", path.display())))
}
