use std::process::Command;

use drinfeld_core::Caps;
use drinfeld_rh::{run, sample_module, sample_modules, Check, Format, Outcome, ReportRecord, RunConfig, RECORD_SCHEMA};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_drinfeld-rh");

fn small_config() -> RunConfig {
    RunConfig {
        q: 2,
        n: 1..=2,
        r: 1..=2,
        samples: 4,
        seed: 7,
        checks: Check::ALL.to_vec(),
        timing: false,
        ..RunConfig::default()
    }
}

fn run_to_string(config: &RunConfig) -> (Outcome, String) {
    let mut out = Vec::new();
    let outcome = run(config, &mut out).expect("valid config");
    (outcome, String::from_utf8(out).unwrap())
}

fn exit_code(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn sampling_is_deterministic_and_seed_sensitive() {
    let a = sample_modules(3, 2, 2, 20, 42).unwrap();
    let b = sample_modules(3, 2, 2, 20, 42).unwrap();
    let c = sample_modules(3, 2, 2, 20, 43).unwrap();
    assert!(a == b);
    assert!(a != c);
    assert!(a.iter().all(|phi| phi.rank() == 2));
    // one sample does not depend on how many others were drawn
    assert!(sample_module(3, 2, 2, 42, 13).unwrap() == a[13]);
}

#[test]
fn sampling_rejects_bad_parameters() {
    assert!(sample_modules(2, 1, 1, 0, 0).is_err());
    assert!(sample_modules(6, 1, 1, 1, 0).is_err());
    assert!(sample_modules(2, 0, 1, 1, 0).is_err());
    assert!(sample_modules(2, 1, 0, 1, 0).is_err());
}

#[test]
fn records_are_independent_of_job_count() {
    let mut config = small_config();
    config.jobs = Some(1);
    let (o1, serial) = run_to_string(&config);
    config.jobs = Some(4);
    let (o4, parallel) = run_to_string(&config);
    assert_eq!(o1, o4);
    assert_eq!(serial, parallel);
    assert_eq!(serial.lines().count(), 2 * 2 * 4);
}

#[test]
fn every_record_matches_the_schema() {
    let schema: Value = serde_json::from_str(RECORD_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut config = small_config();
    config.caps = Caps {
        max_field_bits: 3,
        max_ext_multiple: 3,
    };
    let (_, text) = run_to_string(&config);
    let mut skipped = 0;
    for line in text.lines() {
        let value: Value = serde_json::from_str(line).unwrap();
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{line}: {errors:?}");
        let record: ReportRecord = serde_json::from_value(value).unwrap();
        assert_eq!(record.checks.len(), Check::ALL.len());
        assert_eq!(record.ms, 0);
        skipped += usize::from(record.skipped());
    }
    assert!(skipped > 0, "tight caps should skip something");
}

#[test]
fn selected_checks_only() {
    let mut config = small_config();
    config.checks = vec![Check::Bounds, Check::Switch];
    let (outcome, text) = run_to_string(&config);
    assert_eq!(outcome, Outcome::Pass);
    for line in text.lines() {
        let record: ReportRecord = serde_json::from_str(line).unwrap();
        assert_eq!(record.checks.keys().copied().collect::<Vec<_>>(), [Check::Bounds, Check::Switch]);
    }
}

#[test]
fn csv_has_fixed_columns() {
    let mut config = small_config();
    config.format = Format::Csv;
    config.checks = vec![Check::A0, Check::Degdet];
    let (_, text) = run_to_string(&config);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["q", "n", "r", "seed", "sample", "g", "a0", "degdet"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|row| &row[6] == "pass" && &row[7] == "pass"));
}

#[test]
fn invalid_configs_are_rejected() {
    let mut config = small_config();
    config.samples = 0;
    assert!(run(&config, Vec::new()).is_err());
    let mut config = small_config();
    config.q = 4 * 9;
    assert!(run(&config, Vec::new()).is_err());
}

#[test]
fn exit_codes() {
    let (code, stdout, _) = exit_code(&["verify", "--q", "2", "--n", "1", "--r", "1:2", "--samples", "2", "--no-timing"]);
    assert_eq!(code, Some(0));
    assert_eq!(stdout.lines().count(), 4);

    let (code, stdout, _) = exit_code(&["check", "--module", "q=2,n=1,g=1;1;1", "--charpoly", "1,1|0,1|1"]);
    assert_eq!(code, Some(1));
    assert!(stdout.contains("i=1: deg a_1 = 1 > 0"), "{stdout}");

    for args in [
        &["verify", "--q", "2", "--n", "1", "--r", "1", "--bogus"][..],
        &["verify", "--q", "6", "--n", "1", "--r", "1"],
        &["verify", "--q", "2", "--n", "1", "--r", "1", "--checks", "nonsense"],
        &["verify", "--q", "2", "--n", "3:1", "--r", "1"],
        &["check", "--module", "q=2,n=1,g=1;0"],
    ] {
        let (code, _, stderr) = exit_code(args);
        assert_eq!(code, Some(2), "{args:?}");
        assert!(!stderr.is_empty(), "{args:?}");
    }

    let (code, _, _) = exit_code(&[
        "verify", "--q", "2", "--n", "1", "--r", "2", "--samples", "2", "--max-field-bits", "1",
    ]);
    assert_eq!(code, Some(3));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.jsonl");
    let args = ["verify", "--q", "3", "--n", "1", "--r", "1", "--samples", "3", "--seed", "5", "--no-timing"];
    let (code, stdout, _) = exit_code(&args);
    assert_eq!(code, Some(0));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let (code, quiet, _) = exit_code(&with_out);
    assert_eq!(code, Some(0));
    assert!(quiet.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
}

#[test]
fn schema_subcommand_prints_the_schema() {
    let (code, stdout, _) = exit_code(&["schema"]);
    assert_eq!(code, Some(0));
    let printed: Value = serde_json::from_str(&stdout).unwrap();
    let embedded: Value = serde_json::from_str(RECORD_SCHEMA).unwrap();
    assert_eq!(printed, embedded);
}
