#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn finish(out: Output) -> Run {
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn command(dir: &Path, args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ismkit"));
    cmd.args(args).current_dir(dir).env_remove("ISMKIT_OUT");
    cmd
}

/// Runs the binary in `dir` with an empty stdin.
pub fn ismkit(dir: &Path, args: &[&str]) -> Run {
    finish(command(dir, args).stdin(Stdio::null()).output().unwrap())
}

/// Runs the binary in `dir`, feeding `input` on stdin.
pub fn ismkit_with_input(dir: &Path, args: &[&str], input: &str) -> Run {
    let mut child = command(dir, args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    finish(child.wait_with_output().unwrap())
}

pub fn ismkit_with_env(dir: &Path, args: &[&str], key: &str, value: &str) -> Run {
    finish(
        command(dir, args)
            .env(key, value)
            .stdin(Stdio::null())
            .output()
            .unwrap(),
    )
}

pub fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

pub fn bundled(name: &str) -> String {
    core_dir().join("data/corpus").join(name).display().to_string()
}

pub fn survey_fixture() -> String {
    core_dir()
        .join("data/fixtures/survey_synthetic_113.csv")
        .display()
        .to_string()
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(core_dir().join("tests/golden").join(name)).unwrap()
}

pub fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}
