use std::fs;
use std::path::Path;
use std::process::Command;

use rellaws::cli::{self, EXIT_MISMATCH, EXIT_USAGE};
use rellaws::enumerate::{vector_census, VectorCensus};
use rellaws::golden::published_laws;
use rellaws::lawmine::write_laws_csv;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rellaws").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_census(path: &Path, c: &VectorCensus) {
    let mut buf = Vec::new();
    c.write_to(&mut buf).unwrap();
    fs::write(path, buf).unwrap();
}

#[test]
fn count() {
    assert_eq!(
        run(&["count", "--n", "3"]),
        (0, "512\n".into(), String::new())
    );
    assert_eq!(run(&["count", "--n", "4", "--pruned"]).1, "6170\n");
    assert_eq!(run(&["count", "--n", "7", "--pruned"]).1, "827507617792\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["count"],
        &["count", "--n", "0"],
        &["count", "--n", "9"],
        &["witness", "--n", "3", "--require", "Transitive"],
        &["witness", "--n", "3", "--require", "Sym", "--forbid", "Sym"],
        &["witness", "--n", "7", "--require", "Sym"],
        &["witness", "--n", "3", "--seed", "4"],
        &["mincard", "--require", "Sym", "--max", "7"],
        &["props", "/nonexistent/relation.txt"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}{err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn props_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    fs::write(&path, "11\n.1\n").unwrap();
    let (code, out, _) = run(&["props", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n=2");
    assert!(lines[2].split(' ').any(|w| w == "Trans"));
    assert!(!lines[2].split(' ').any(|w| w == "Sym"));
    assert!(lines[3].contains("NonStrictPartialOrder"));

    fs::write(&path, "11\n.\n").unwrap();
    assert_eq!(run(&["props", path.to_str().unwrap()]).0, EXIT_USAGE);
}

#[test]
fn census_then_mine() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n3.census");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["census", "--n", "3", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n=3 pruned=0 relations=512 "));
    let census = VectorCensus::read_from(fs::read(&path).unwrap().as_slice()).unwrap();
    assert_eq!(census, vector_census(3, false).unwrap());

    let (code, text, _) = run(&["mine", "--census", p, "--max-level", "2"]);
    assert_eq!(code, 0);
    assert!(text.lines().all(|l| l.len() > 5 && &l[3..5] == ": "));
    let (_, csv, _) = run(&["mine", "--census", p, "--max-level", "2", "--csv"]);
    assert_eq!(
        csv.lines().next(),
        Some("seq,level,mask_hex,value_hex,law_text")
    );
    assert_eq!(csv.lines().count(), text.lines().count() + 1);

    assert_eq!(
        run(&["mine", "--census", p, "--max-level", "25"]).0,
        EXIT_USAGE
    );
    fs::write(&path, "relcensus v1 n=3 pruned=0 props=24\nnothex,1\n").unwrap();
    assert_eq!(run(&["mine", "--census", p]).0, EXIT_USAGE);
}

#[test]
fn mine_level_two_from_five_element_census() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n5.census");
    write_census(&path, &vector_census(5, true).unwrap());
    let (code, out, _) = run(&[
        "mine",
        "--census",
        path.to_str().unwrap(),
        "--max-level",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 94);
    assert_eq!(out.lines().last(), Some("094: Refl ~RgSerial"));
}

#[test]
fn star_adds_redundant_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("laws.csv");
    let mut buf = Vec::new();
    write_laws_csv(&published_laws(), None, &mut buf).unwrap();
    fs::write(&path, buf).unwrap();
    let (code, out, _) = run(&["star", "--laws", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("seq,level,mask_hex,value_hex,law_text,redundant")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 274);
    assert_eq!(rows[43], "44,2,004200,004200,ASym Refl,1");
    assert!(rows.iter().all(|r| r.ends_with(",0") || r.ends_with(",1")));
}

#[test]
fn witness_output() {
    let args = [
        "witness",
        "--n",
        "4",
        "--require",
        "LfUnique,RgUnique,IncTrans",
        "--forbid",
        "Empty",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let r: rellaws::Relation = out.parse().unwrap();
    assert_eq!(r.card(), 4);

    let mut with_dot = args.to_vec();
    with_dot.push("--dot");
    let (_, dot, _) = run(&with_dot);
    assert!(dot.starts_with("digraph R {\n"));
    assert_eq!(dot.matches(" -> ").count(), r.pair_count());

    let (code, out, _) = run(&[
        "witness",
        "--n",
        "3",
        "--require",
        "ASym,Dense",
        "--forbid",
        "Empty",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("none (no relation"));

    let heuristic = [
        "witness",
        "--n",
        "5",
        "--require",
        "Trans,Connex",
        "--forbid",
        "Univ",
        "--heuristic",
        "--seed",
        "9",
    ];
    let first = run(&heuristic);
    assert_eq!(first.0, 0);
    assert_eq!(first, run(&heuristic));
}

#[test]
fn mincard() {
    assert_eq!(
        run(&[
            "mincard",
            "--require",
            "ASym",
            "--forbid",
            "Empty",
            "--max",
            "4"
        ])
        .1,
        "2\n"
    );
    assert_eq!(
        run(&[
            "mincard",
            "--require",
            "Connex",
            "--forbid",
            "Refl",
            "--max",
            "3"
        ])
        .1,
        "none up to 3\n"
    );
}

#[test]
fn verify_reads_cache_and_reports_mismatches() {
    // the only test touching the environment
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(cli::CACHE_ENV, dir.path());

    let (code, out, err) = run(&["verify"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.starts_with("PASS relation counts: 22/22"));
    assert!(err.contains("no cached n=5 census"));

    let (_, csv, _) = run(&["verify", "--csv"]);
    assert!(csv.starts_with("table,cell,expected,actual,pass\n"));
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",1")));

    // a doctored census is caught cell by cell
    let mut census = vector_census(3, false).unwrap();
    census.n = 5;
    write_census(&cli::cache_path(dir.path(), 5, false), &census);
    let (code, out, _) = run(&["verify"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("FAIL n=5 property census: "));
    assert!(out.contains("MISMATCH n=5 property census [Trans] expected 154303 got "));
    assert!(out.contains("FAIL n=5 on/off split"));
}

#[test]
fn binary_forwards_exit_status() {
    let exe = env!("CARGO_BIN_EXE_rellaws");
    let ok = Command::new(exe)
        .args(["count", "--n", "2"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert_eq!(ok.stdout, b"16\n");
    let bad = Command::new(exe)
        .args(["count", "--n", "abc"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let help = Command::new(exe).arg("--help").output().unwrap();
    assert!(help.status.success());
}
