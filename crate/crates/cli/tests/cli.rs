mod common;

use common::{bundled, golden, ismkit, ismkit_with_env, ismkit_with_input, read, survey_fixture};
use tempfile::TempDir;

fn tmp() -> TempDir {
    tempfile::tempdir().unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p.display().to_string()
}

#[test]
fn ism_on_bundled_corpus() {
    let d = tmp();
    let r = ismkit(d.path(), &["ism", "--paper-corpus", "--out", "run"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("17 factors, 4 levels"));
    let report: serde_json::Value = serde_json::from_str(&read(d.path().join("run/report.json"))).unwrap();
    let mut keys: Vec<&String> = report.as_object().unwrap().keys().collect();
    keys.sort();
    assert_eq!(keys, ["edges", "levels", "matrix", "powers", "ranks"]);
    assert_eq!(report["powers"].as_array().unwrap().len(), 17);
    for f in ["digraph.dot", "levels.txt", "reachability.csv"] {
        assert!(d.path().join("run").join(f).is_file(), "{f}");
    }
    assert_eq!(read(d.path().join("run/report.json")), golden("corpus_report.json"));
    assert_eq!(read(d.path().join("run/digraph.dot")), golden("corpus_digraph.dot"));
}

#[test]
fn ism_format_prints_artifact() {
    let d = tmp();
    let r = ismkit(d.path(), &["ism", "--paper-corpus", "--format", "dot"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("digraph ism {"));
    assert_eq!(ismkit(d.path(), &["ism", "--paper-corpus", "--format", "svg"]).code, 4);
}

#[test]
fn missing_file_is_a_parse_failure() {
    let d = tmp();
    let r = ismkit(d.path(), &["ism", "no/such/ssim.csv"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("no/such/ssim.csv"), "{}", r.stderr);
}

#[test]
fn malformed_ssim_names_row_and_column() {
    let d = tmp();
    let p = write(&d, "bad.csv", ",A,B,C\nA,*,V,Q\nB,*,*,O\nC,*,*,*\n");
    let r = ismkit(d.path(), &["ism", &p]);
    assert_eq!(r.code, 2);
    assert!(
        r.stderr.contains("bad.csv") && r.stderr.contains("row A") && r.stderr.contains("column C"),
        "{}",
        r.stderr
    );
}

#[test]
fn unknown_factor_under_catalog_is_a_validation_failure() {
    let d = tmp();
    let p = write(&d, "ssim.csv", ",P1,P99\nP1,*,V\nP99,*,*\n");
    let r = ismkit(d.path(), &["ism", &p, "--catalog", &bundled("catalog.json")]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stderr.contains("P99"));
    assert_eq!(ismkit(d.path(), &["ism", &p]).code, 0);
}

#[test]
fn micmac_auto_and_overrides() {
    let d = tmp();
    let r = ismkit(d.path(), &["micmac", "--paper-corpus", "--out", "m"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let c: serde_json::Value = serde_json::from_str(&read(d.path().join("m/micmac.json"))).unwrap();
    assert_eq!(c["points"].as_array().unwrap().len(), 17);
    assert_eq!(c["thresholds"]["driving_cutoff"], 8.5);
    assert!(read(d.path().join("m/micmac.svg")).starts_with("<svg"));

    assert_eq!(
        ismkit(d.path(), &["micmac", "--paper-corpus", "--driving-cutoff", "0"]).code,
        4
    );
    assert_eq!(
        ismkit(d.path(), &["micmac", "--paper-corpus", "--dependence-cutoff", "-2"]).code,
        4
    );
    let r = ismkit(
        d.path(),
        &["micmac", "--paper-corpus", "--driving-cutoff", "14", "--format", "json"],
    );
    let c: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(c["points"][0]["cluster"], "Independent");
    assert_eq!(c["points"][1]["cluster"], "Dependent");
}

#[test]
fn micmac_single_factor_warns() {
    let d = tmp();
    let p = write(&d, "one.csv", ",F1\nF1,*\n");
    let r = ismkit(d.path(), &["micmac", &p]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stderr.contains("degenerate"));
    let c: serde_json::Value = serde_json::from_str(&read(d.path().join("ismkit-out/micmac.json"))).unwrap();
    assert_eq!(c["points"].as_array().unwrap().len(), 1);
}

#[test]
fn audit_bundled_corpus_matches_golden() {
    let d = tmp();
    let r = ismkit(d.path(), &["audit", "--paper-corpus", "--out", "a"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r
        .stdout
        .contains("driving power of P4 printed 9 but its row sums to 10"));
    assert_eq!(read(d.path().join("a/audit.json")), golden("corpus_audit.json"));
}

#[test]
fn audit_identical_and_mismatched_files() {
    let d = tmp();
    assert_eq!(ismkit(d.path(), &["ism", "--paper-corpus", "--out", "run"]).code, 0);
    let m = d.path().join("run/reachability.csv").display().to_string();
    let r = ismkit(
        d.path(),
        &["audit", "--computed", &m, "--reference", &m, "--format", "json"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let a: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(a["matrix"]["cells"].as_array().unwrap().len(), 0);
    assert_eq!(a["matrix"]["origins"].as_array().unwrap().len(), 0);

    let small = write(&d, "small.csv", ",P1,P2\nP1,1,0\nP2,0,1\n");
    let r = ismkit(d.path(), &["audit", "--computed", &m, "--reference", &small]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("dimension"), "{}", r.stderr);
    assert_eq!(ismkit(d.path(), &["audit", "--reference", &m]).code, 4);
}

#[test]
fn elicit_three_factors() {
    let d = tmp();
    let r = ismkit_with_input(
        d.path(),
        &["elicit", "--factors", "A,B,C", "--output", "s.csv"],
        "V\nO\nA\n",
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(read(d.path().join("s.csv")), ",A,B,C\nA,*,V,O\nB,*,*,A\nC,*,*,*\n");
    assert_eq!(ismkit(d.path(), &["ism", "s.csv"]).code, 0);
}

#[test]
fn elicit_reprompts_on_illegal_symbol() {
    let d = tmp();
    let r = ismkit_with_input(d.path(), &["elicit", "--factors", "A,B", "--output", "s.csv"], "q\nv\n");
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.matches("[1/1] A vs B").count(), 2);
    assert_eq!(r.stderr.lines().count(), 1);
    assert_eq!(read(d.path().join("s.csv")), ",A,B\nA,*,V\nB,*,*\n");
}

#[test]
fn elicit_resume_asks_only_what_is_left() {
    let d = tmp();
    let hundred = "O\n".repeat(100);
    let r = ismkit_with_input(d.path(), &["elicit", "--output", "p.csv"], &hundred);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("after 100 of 136 pairs"));
    assert_eq!(ismkit(d.path(), &["elicit", "--output", "p.csv"]).code, 4);

    let r = ismkit_with_input(
        d.path(),
        &["elicit", "--resume", "--output", "p.csv"],
        &"X\n".repeat(50),
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.matches("(V/A/X/O)").count(), 36);
    assert!(r.stdout.contains("all 136 pairs answered"));
    let r = ismkit(d.path(), &["ism", "p.csv", "--catalog", &bundled("catalog.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn survey_fixture_table() {
    let d = tmp();
    let f = survey_fixture();
    let r = ismkit(
        d.path(),
        &["survey", &f, "--group", "motivators", "--by", "gender", "--coverage"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let p1 = r.stdout.lines().find(|l| l.trim_start().starts_with("P1 ")).unwrap();
    assert!(p1.contains("agree  86%"), "{p1}");
    assert!(r.stdout.contains("group motivators (14 items): agree 75%"));
    assert!(r.stdout.contains("male") && r.stdout.contains(" 69%"));
    let doc: serde_json::Value = serde_json::from_str(&read(d.path().join("ismkit-out/survey.json"))).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 43);
    assert_eq!(doc["groups"][0]["items"].as_array().unwrap().len(), 14);
    assert_eq!(doc["missing"].as_array().unwrap().len(), 0);
}

#[test]
fn survey_errors() {
    let d = tmp();
    let p = write(&d, "r.csv", "respondent_id,item_id,score\nr1,P1,5\nr2,P1,7\n");
    let r = ismkit(d.path(), &["survey", &p]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);

    let p = write(&d, "ok.csv", "respondent_id,item_id,score\nr1,P1,5\nr1,P1,2\n");
    let r = ismkit(d.path(), &["survey", &p, "--group", "P1,P2"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("P2"));
    let r = ismkit(d.path(), &["survey", &p, "--by", "gender"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("available columns"));
    let r = ismkit(d.path(), &["survey", &p, "--coverage"]);
    assert_eq!(r.code, 0);
    assert!(r.stderr.contains("duplicate") && r.stderr.contains("no responses for M1"));
}

#[test]
fn taxonomy_summary_and_mapping() {
    let d = tmp();
    let r = ismkit(d.path(), &["taxonomy"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("14 motivators, 12 demotivators, 17 principles\n"));

    let bad = write(
        &d,
        "bad.json",
        r#"{"edges":[{"source":"M99","target":"P1","polarity":"Supports"}]}"#,
    );
    let r = ismkit(d.path(), &["taxonomy", "--mapping", &bad]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("M99"));

    let good = write(
        &d,
        "good.json",
        r#"{"edges":[
            {"source":"M9","target":"P4","polarity":"Supports"},
            {"source":"M1","target":"P2","polarity":"Supports"},
            {"source":"DM6","target":"P14","polarity":"Hinders"}]}"#,
    );
    let r = ismkit(d.path(), &["taxonomy", "--mapping", &good, "--dot", "--out", "t"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let dot = read(d.path().join("t/taxonomy.dot"));
    assert_eq!(dot.matches(" -> ").count(), 3);
    assert!(dot.contains("\"DM6\" -> \"P14\" [style=dashed];"));
}

#[test]
fn help_documents_every_flag() {
    let d = tmp();
    let cases: [(&str, &[&str]); 6] = [
        ("ism", &["--paper-corpus", "--out", "--format", "--catalog"]),
        ("micmac", &["--driving-cutoff", "--dependence-cutoff", "--paper-corpus"]),
        (
            "audit",
            &["--ssim", "--computed", "--reference", "--levels", "--clusters"],
        ),
        ("elicit", &["--factors", "--kind", "--output", "--resume"]),
        ("survey", &["--group", "--by", "--coverage"]),
        ("taxonomy", &["--mapping", "--dot"]),
    ];
    for (cmd, flags) in cases {
        let r = ismkit(d.path(), &[cmd, "--help"]);
        assert_eq!(r.code, 0, "{cmd}");
        for flag in flags {
            assert!(r.stdout.contains(flag), "{cmd} --help lacks {flag}");
        }
    }
    let r = ismkit(d.path(), &["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("Exit codes"));
    assert_eq!(ismkit(d.path(), &["frobnicate"]).code, 4);
}

#[test]
fn output_directory_from_environment() {
    let d = tmp();
    let r = ismkit_with_env(d.path(), &["ism", "--paper-corpus"], "ISMKIT_OUT", "from-env");
    assert_eq!(r.code, 0);
    assert!(d.path().join("from-env/report.json").is_file());
    let r = ismkit_with_env(
        d.path(),
        &["ism", "--paper-corpus", "--out", "from-flag"],
        "ISMKIT_OUT",
        "from-env2",
    );
    assert_eq!(r.code, 0);
    assert!(d.path().join("from-flag/report.json").is_file());
    assert!(!d.path().join("from-env2").exists());
}
