use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ppdesign::DesignFile;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn ppdesign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppdesign")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn plan_first_lines() {
    for (n, rho, expected) in [
        ("11", "5", "N=66, Method-W with W(6,5)"),
        ("14", "4", "N=14, saturated W(14,4)"),
        ("3", "2", "N=6, Method-H with H2"),
        ("10", "3", "N=20, Method-W with W(4,3)"),
        ("12", "6", "N=16, Method-H with H8"),
    ] {
        let o = ppdesign(&["plan", "--n", n, "--rho", rho]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).lines().next(), Some(expected));
    }
    let o = ppdesign(&["plan", "--n", "10", "--rho", "3"]);
    let text = stdout(&o);
    assert!(text.contains("N1=20 (nu=4)"), "{text}");
    assert!(text.contains("N2=40 (h=4)"), "{text}");
    assert!(text.contains("(nu=8, K=40)"), "{text}");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["plan", "--n", "3", "--rho", "5"][..],
        &["plan", "--n", "3", "--rho", "0"],
        &["plan", "--n", "three", "--rho", "2"],
        &["plan", "--n", "3"],
        &["frobnicate"],
        &["construct", "--n", "8", "--rho", "6", "--m", "3", "--generators", "1110000x"],
        &["construct", "--n", "8", "--rho", "5", "--fixed", "2"],
    ] {
        assert_eq!(ppdesign(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(ppdesign(&["--help"]).status.code(), Some(0));
}

#[test]
fn construct_five_options_matches_fixture() {
    let o = ppdesign(&["construct", "--n", "8", "--rho", "6", "--m", "5", "--generators", "11100000,00111100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let built = DesignFile::parse(&stdout(&o)).unwrap();
    let expected = DesignFile::parse(&std::fs::read_to_string(fixture("d5.design")).unwrap()).unwrap();
    assert_eq!(built.design().unwrap(), expected.design().unwrap());
    let cert = built.certificate.unwrap();
    assert!(cert.contains(&("status".into(), "PASS".into())));
    assert!(cert.contains(&("trace".into(), "9/400".into())));
}

#[test]
fn construct_broader_doubles() {
    let o = ppdesign(&[
        "construct", "--n", "8", "--rho", "6", "--m", "5", "--model", "broader", "--generators", "11100000,00111100",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let f = DesignFile::parse(&stdout(&o)).unwrap();
    assert_eq!(f.sets.len(), 16);
    assert_eq!(f.model.to_string(), "broader");
}

#[test]
fn construct_reports_unavailable_extensions() {
    let o = ppdesign(&["construct", "--n", "8", "--rho", "4", "--m", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty generator weight range"), "{}", stderr(&o));

    let o = ppdesign(&["construct", "--n", "8", "--rho", "6", "--m", "3", "--generators", "11000000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("weight 2"), "{}", stderr(&o));
}

#[test]
fn constructed_files_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (n, rho, m, model) in [
        (8, 5, 2, "main"),
        (10, 3, 4, "main"),
        (7, 5, 3, "broader"),
        (9, 3, 5, "main"),
        (12, 6, 2, "broader"),
        (6, 2, 3, "main"),
    ] {
        let path = dir.path().join(format!("d{n}_{rho}_{m}.design"));
        let p = path.to_str().unwrap();
        let (ns, rs, ms) = (n.to_string(), rho.to_string(), m.to_string());
        let o = ppdesign(&["construct", "--n", &ns, "--rho", &rs, "--m", &ms, "--model", model, "--out", p]);
        assert_eq!(o.status.code(), Some(0), "{n} {rho} {m}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("wrote "));
        let v = ppdesign(&["verify", p, "--oracle"]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
        let expected = if n <= 10 { "oracle max-discrepancy" } else { "oracle skipped" };
        assert!(stdout(&v).contains(expected), "{}", stdout(&v));
    }
}

#[test]
fn verify_outcomes() {
    let ex1 = fixture("example1.design");
    let o = ppdesign(&["verify", ex1.to_str().unwrap(), "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("status         PASS"), "{text}");
    assert!(text.contains("trace          5/256"), "{text}");

    let o = ppdesign(&["verify", fixture("flipped.design").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("unbalanced eta1 (1, 2)"), "{text}");
    assert!(text.contains("unbalanced levels set 1 factor 1"), "{text}");

    let o = ppdesign(&["verify", fixture("d5.design").to_str().unwrap(), "--model", "broader"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("unbalanced eta2") || text.contains("unbalanced eta3"), "{text}");
    assert_eq!(ppdesign(&["verify", fixture("d5.design").to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn parse_errors_have_positions() {
    let o = ppdesign(&["verify", fixture("malformed.design").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 6, column 7"), "{}", stderr(&o));
    let o = ppdesign(&["verify", "/nonexistent/file.design"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tables_match_golden_files() {
    let t1 = ppdesign(&["tables", "--table", "1"]);
    assert_eq!(stdout(&t1), golden("table1.txt"));
    let t2 = ppdesign(&["tables", "--table", "2"]);
    assert_eq!(stdout(&t2), golden("table2.txt"));
    let both = ppdesign(&["tables"]);
    assert_eq!(stdout(&both), format!("{}\n{}", golden("table1.txt"), golden("table2.txt")));
    assert_eq!(stdout(&ppdesign(&["tables"])), stdout(&both));
}

#[test]
fn export_rows() {
    let o = ppdesign(&["export", fixture("example1.design").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 17);
    assert_eq!(lines[0], "set,option,f1,f2,f3,f4,f5,f6,f7,f8,active");
    assert_eq!(lines[1], "1,1,1,1,1,1,1,0,0,0,11111000");
    assert_eq!(lines[4], "2,2,0,1,0,1,0,0,0,0,11110100");

    let o = ppdesign(&["export", fixture("d5.design").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 41);

    let o = ppdesign(&["export", fixture("empty.design").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "set,option,f1,f2,f3,f4,active\n");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d5.csv");
    let o = ppdesign(&["export", fixture("d5.design").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 41);
}

#[test]
fn extend_existing_file() {
    let dir = tempfile::tempdir().unwrap();
    let paired = dir.path().join("paired.design");
    let o = ppdesign(&["construct", "--n", "8", "--rho", "6", "--out", paired.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let o = ppdesign(&["extend", paired.to_str().unwrap(), "--m", "5", "--generators", "11100000,00111100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let built = DesignFile::parse(&stdout(&o)).unwrap();
    let expected = DesignFile::parse(&std::fs::read_to_string(fixture("d5.design")).unwrap()).unwrap();
    assert_eq!(built.design().unwrap(), expected.design().unwrap());

    let o = ppdesign(&["extend", paired.to_str().unwrap(), "--m", "6", "--auto-generators"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = ppdesign(&["extend", paired.to_str().unwrap(), "--m", "3", "--generators", "11110000,00001111"]);
    assert_eq!(o.status.code(), Some(2));

    let o = ppdesign(&["extend", fixture("d5.design").to_str().unwrap(), "--m", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m = 2"), "{}", stderr(&o));

    let o = ppdesign(&["extend", fixture("flipped.design").to_str().unwrap(), "--m", "3"]);
    assert_eq!(o.status.code(), Some(3));
}
