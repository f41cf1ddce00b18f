//! End-to-end tests against the compiled `spirale` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn spirale(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spirale"))
        .args(args)
        .env_remove("SPIRALE_ALPHABET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const WORKED_KEYS: &str = "NVIKKIH,CTSQEOU,DNGDKSZ,EAIWDSH";

#[test]
fn permute_prints_alphabet_and_rank_row() {
    let out = spirale(&["permute", "--key", "BHMAY"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "YQDCZWNVUKITAXSPEMLFRHGBOJ");
    let ranks = lines.next().unwrap();
    assert!(ranks.starts_with("13 24 4 3 17"));
}

#[test]
fn keystream_prints_worked_example() {
    let out = spirale(&["keystream", "--keys", WORKED_KEYS, "--length", "75"]);
    assert!(out.status.success());
    let line = stdout(&out);
    let line = line.trim();
    assert_eq!(line.len(), 75);
    assert!(line.starts_with("BHVUBSBOYAGVLGKOASTQPPIXADVTJFFKIZGNPPMOXUTYCYDGH"));
    assert!(line.ends_with("WSINJKRPCOPSZKVGJBOULOZEKP"));
}

#[test]
fn keystream_dump_longkey() {
    let out = spirale(&["keystream", "--keys", WORKED_KEYS, "--length", "75", "--dump-longkey"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "BHVUBSBOYAGVLGKOASTQPPIXADVTJFFKIZGNPPMOXUTYCYDGH");
}

#[test]
fn missing_keys_is_a_usage_error() {
    let out = spirale(&["encrypt", "--in", "x", "--out", "y"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wrong_key_count_is_a_usage_error() {
    let out = spirale(&["keystream", "--keys", "AB,CD", "--length", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("ERROR UsageError:"));
}

#[test]
fn domain_errors_use_exit_code_1() {
    let out = spirale(&["permute", "--key", "BH MAY"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("ERROR NotInAlphabet:"));
}

#[test]
fn encrypt_decrypt_roundtrip_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("plain.txt");
    let cipher = dir.path().join("cipher.txt");
    let output = dir.path().join("out.txt");
    fs::write(&input, "We got into Milan, dead tired.\n").unwrap();

    let out = spirale(&[
        "encrypt",
        "--keys",
        WORKED_KEYS,
        "--in",
        input.to_str().unwrap(),
        "--out",
        cipher.to_str().unwrap(),
        "--group",
        "5",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let grouped = fs::read_to_string(&cipher).unwrap();
    assert!(grouped.trim().split(' ').all(|chunk| chunk.len() <= 5));

    let out = spirale(&[
        "decrypt",
        "--keys",
        WORKED_KEYS,
        "--in",
        cipher.to_str().unwrap(),
        "--out",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(fs::read_to_string(&output).unwrap().trim(), "WEGOTINTOMILANDEADTIRED");
}

#[test]
fn table_dump_matches_worked_example() {
    let out = spirale(&["table", "--keys", "NVIKKIH,CTSQEOU", "--format", "tsv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    let row_alphabet: Vec<String> =
        "MQGVIYOWRDLUEPKNTJCAXBSZHF".chars().map(String::from).collect();
    assert_eq!(lines[0], format!("rows\t{}", row_alphabet.join("\t")));
    assert!(lines[1].starts_with("cols\tX\tD\tJ\tQ\tL"));
    // row A: rank 20, first body cell combine(A, A) = F
    let row_a: Vec<&str> = lines[4].split('\t').collect();
    assert_eq!(row_a[0], "A");
    assert_eq!(row_a[1], "20");
    assert_eq!(row_a[2], "F");
}

#[test]
fn derive_keys_from_extracts_file() {
    let dir = tempfile::tempdir().unwrap();
    let extracts = dir.path().join("extracts.txt");
    fs::write(&extracts, "wegotin\ndedusin\nsaidthi\nhisneck\n").unwrap();

    let out = spirale(&["derive-keys", "--extracts", extracts.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "nnikiih ctsteou dngdise eaiwdsh");

    let out = spirale(&["derive-keys", "--extracts", extracts.to_str().unwrap(), "--correct"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "NVIKKIH CTSQEOU DNGDKSZ EAIWDSH");
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/challenges")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn analyze_ic_on_challenge_fixture() {
    let out = spirale(&["analyze", "--mode", "ic", "--in", &fixture("ciphertext1.txt")]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "0.039622");
}

#[test]
fn analyze_freq_counts_sum_to_length() {
    let out = spirale(&["analyze", "--mode", "freq", "--in", &fixture("ciphertext2.txt")]);
    assert!(out.status.success());
    let total: u64 =
        stdout(&out).lines().map(|l| l.rsplit('\t').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 634);
}

#[test]
fn analyze_autocorr_requires_lag() {
    let out = spirale(&["analyze", "--mode", "autocorr", "--in", &fixture("ciphertext1.txt")]);
    assert_eq!(out.status.code(), Some(2));
    let out = spirale(&[
        "analyze",
        "--mode",
        "autocorr",
        "--lag",
        "1",
        "--in",
        &fixture("ciphertext1.txt"),
    ]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((0.0..1.0).contains(&value));
}

#[test]
fn analyze_errprop_lists_affected_positions() {
    let out = spirale(&[
        "analyze",
        "--mode",
        "errprop",
        "--keys",
        WORKED_KEYS,
        "--flip",
        "1",
        "--horizon",
        "98",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "1 50 74 98");
}

#[test]
fn custom_alphabet_via_env_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = dir.path().join("digits.txt");
    fs::write(&alpha, "0123456789\n").unwrap();

    // flag
    let out = spirale(&["permute", "--key", "3", "--alphabet", alpha.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next().unwrap().len(), 10);

    // environment variable
    let out = Command::new(env!("CARGO_BIN_EXE_spirale"))
        .args(["permute", "--key", "3"])
        .env("SPIRALE_ALPHABET", alpha.to_str().unwrap())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next().unwrap().len(), 10);
}

#[test]
fn deterministic_output() {
    let a = spirale(&["keystream", "--keys", WORKED_KEYS, "--length", "120"]);
    let b = spirale(&["keystream", "--keys", WORKED_KEYS, "--length", "120"]);
    assert_eq!(stdout(&a), stdout(&b));
}
