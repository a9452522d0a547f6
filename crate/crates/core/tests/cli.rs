use std::path::Path;
use std::process::{Command, Output};

use psldpc::construct::{gcd_base, hamming_4x8};
use psldpc::girth::girth_exponent;
use psldpc::io::{read_alist, read_exponent, read_file, read_maskset};
use psldpc::matrix::expand;

fn psldpc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psldpc"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = psldpc(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn default_file_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen-base", "gcd", "--p", "64", "--l", "8"]);
    ok(d, &["gen-mask", "h", "--m", "4", "--n", "8"]);
    ok(d, &["splice", "--n", "4", "--latin", "circulant"]);
    assert_eq!(ok(d, &["girth", "--cap", "12"]).trim(), "girth=8");

    let e = read_file(&d.join("compound.exp"), read_exponent).unwrap();
    assert_eq!((e.rows(), e.cols(), e.lift()), (16, 32, 64));
    assert_eq!(read_file(&d.join("base.exp"), read_exponent).unwrap(), gcd_base(64, 8).unwrap());

    ok(d, &["expand"]);
    let h = read_file(&d.join("compound.alist"), read_alist).unwrap();
    assert_eq!(h, expand(&e));
    assert_eq!(ok(d, &["girth", "--alist", "compound.alist"]).trim(), "girth=8");
}

#[test]
fn worked_example_from_shipped_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let base = data("girth4_base.exp");
    let mask = data("girth4_base.mask");
    assert_eq!(ok(d, &["girth", "--exponent", &base]).trim(), "girth=4");
    ok(d, &["splice", "--base", &base, "--mask", &mask, "--n", "2"]);
    let out = ok(d, &["girth", "--witness", "--cap", "12"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("girth=8"));
    assert!(lines.next().is_some(), "witness line missing");

    let json: serde_json::Value =
        serde_json::from_str(&ok(d, &["girth", "--json", "--witness"])).unwrap();
    assert_eq!(json["result"]["kind"], "exact");
    assert_eq!(json["result"]["value"], 8);
}

#[test]
fn special_and_random_latin_splices() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen-base", "gcd", "--p", "31", "--l", "8"]);
    ok(d, &["splice", "--special", "--out", "special.exp"]);
    let e = read_file(&d.join("special.exp"), read_exponent).unwrap();
    assert_eq!((e.rows(), e.cols()), (8, 16));
    let base = girth_exponent(&gcd_base(31, 8).unwrap(), 12).unwrap();
    let g = girth_exponent(&e, 12).unwrap();
    assert!(g >= base);
    assert_eq!(ok(d, &["girth", "--exponent", "special.exp"]).trim(), g.to_string());

    ok(d, &["gen-mask", "t", "--m", "4", "--n", "8", "--count", "3"]);
    ok(d, &["gen-latin", "random", "--n", "3", "--seed", "5"]);
    ok(d, &["splice", "--latin", "latin.latin"]);
    let first = std::fs::read_to_string(d.join("compound.exp")).unwrap();
    ok(d, &["splice", "--latin", "random", "--n", "3", "--seed", "5"]);
    assert_eq!(std::fs::read_to_string(d.join("compound.exp")).unwrap(), first);
}

#[test]
fn overlapping_masks_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.mask"), "2 2\n1 1\n0 0\n2 2\n1 0\n1 1\n").unwrap();
    let out = psldpc(d, &["gen-mask", "custom", "--from", "bad.mask"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = psldpc(d, &["splice", "--mask", "bad.mask"]);
    assert!(!out.status.success());
}

#[test]
fn malformed_latin_square_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.latin"), "3\n0 1 2\n1 2 0\n1 0 2\n").unwrap();
    let out = psldpc(d, &["gen-latin", "custom", "--from", "bad.latin"]);
    assert!(!out.status.success());
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 4") && msg.contains("Latin"), "{msg}");
}

#[test]
fn profile_of_rate_two_thirds_compound() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen-base", "gcd", "--p", "144", "--l", "12"]);
    ok(d, &["gen-mask", "h", "--m", "4", "--n", "12", "--count", "3"]);
    ok(d, &["splice"]);
    let out = ok(d, &["profile"]);
    assert!(out.contains("rows=1728 cols=5184"), "{out}");
    assert!(out.contains("designed_rate=2/3"), "{out}");
    assert!(out.contains("regular=(4,12)"), "{out}");
}

#[test]
fn shipped_hamming_mask_reads_exactly() {
    let ms = read_file(Path::new(&data("hamming_4x8.mask")), read_maskset).unwrap();
    assert_eq!(ms.mask(0), &hamming_4x8());
    assert_eq!(ms.mask(1), &hamming_4x8().complement());

    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["gen-mask", "h", "--m", "4", "--n", "8", "--out", "-"]);
    let shipped = std::fs::read_to_string(data("hamming_4x8.mask")).unwrap();
    let body: String = shipped
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(out.starts_with(&body), "{out}");
}

#[test]
fn simulate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(d, &["gen-base", "gcd", "--p", "16", "--l", "6"]);
    let args = [
        "simulate", "--exponent", "base.exp", "--snr", "1.0,2.0", "--min-errors", "5",
        "--max-frames", "200", "--quiet",
    ];
    let out = ok(d, &args);
    let mut rows = csv::Reader::from_reader(out.as_bytes());
    let headers = rows.headers().unwrap().clone();
    assert_eq!(&headers[0], "eb_n0_db");
    let records: Vec<_> = rows.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 2);
    assert_eq!(ok(d, &args), out, "same seed must reproduce the run");
}

#[test]
fn bad_arguments_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(!psldpc(d, &["girth"]).status.success(), "missing compound.exp");
    assert!(!psldpc(d, &["girth", "--cap", "7", "--exponent", &data("girth4_base.exp")]).status.success());
    assert!(!psldpc(d, &["gen-mask", "h", "--m", "4"]).status.success());
}
