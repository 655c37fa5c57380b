use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grpforge::report::Report;

fn grpforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    grpforge(args).status.code().expect("exit code")
}

fn report(args: &[&str], dir: &Path) -> Report {
    let path = dir.join("report.json");
    let mut full = args.to_vec();
    full.extend(["--json", path.to_str().unwrap()]);
    assert_eq!(code(&full), 0, "{args:?}");
    Report::from_json(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["witt", "3", "3"]), 0);
    assert_eq!(code(&["witt", "three", "3"]), 2);
    assert_eq!(code(&["verify", "nonsense"]), 2);
    assert_eq!(code(&["aut", "C3 ⋊"]), 2);
    assert_eq!(code(&["construct", "holomorph", "--p", "4"]), 2);
    assert_eq!(code(&["verify", "lemma-aut", "C7 ⋊{pow1} C3"]), 2);
    assert_eq!(code(&["aut", "S5", "--bound", "50"]), 3);
    assert_eq!(code(&["verify", "outhol", "--timeout", "0"]), 3);
    assert_eq!(code(&["verify", "cornulier-struct", "S3", "--p", "7"]), 3);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn syntax_errors_carry_a_position() {
    let out = grpforge(&["aut", "C3 x (S3"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1, column"), "{err}");
}

#[test]
fn json_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["witt", "2", "3", "--p", "5"],
        vec!["aut", "Q8"],
        vec!["construct", "holomorph", "--p", "3", "--n", "2"],
        vec!["verify", "p3", "--p", "2"],
    ] {
        let r = report(&args, dir.path());
        assert_eq!(r.schema, 1);
        assert_eq!(r.command[..args.len()], args[..]);
        assert!(r.passed);
        let text = r.to_json();
        let again = Report::from_json(&text).unwrap();
        assert_eq!(again, r);
        assert_eq!(again.to_json(), text);
    }
}

#[test]
fn reports_carry_factored_orders_and_fingerprints() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&["construct", "pettet", "C2"], dir.path());
    assert_eq!(r.orders["Ĝ"].text, "2·3^3·7^2");
    assert_eq!((r.primes["p"], r.primes["q"]), (3, 7));
    assert_eq!(r.enumeration[0].order, 2646);
    let r = report(&["verify", "lie", "--n", "3", "--p", "5"], dir.path());
    assert_eq!(r.values["n=3 p=5: pairs"], 10);
}

#[test]
fn deterministic_given_seed() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |mut r: Report| {
        r.timings_us.clear();
        r
    };
    let a = strip(report(&["verify", "genrel", "--seed", "11"], dir.path()));
    let b = strip(report(&["verify", "genrel", "--seed", "11"], dir.path()));
    let c = strip(report(&["verify", "genrel", "--seed", "12"], dir.path()));
    assert_eq!(a, b);
    assert_eq!(a.seed, Some(11));
    assert_ne!(a.checks, c.checks);
}

#[test]
fn cache_hits_and_recovers_from_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache_arg = cache.to_str().unwrap();
    let run = || report(&["aut", "Q8", "--cache", cache_arg], dir.path());
    let first = run();
    assert_eq!(first.values["cache"], "miss");
    let second = run();
    assert_eq!(second.values["cache"], "hit");
    assert_eq!(second.orders["Out"], first.orders["Out"]);
    assert_eq!(second.values["Out ≅"], "S3");

    let entries: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    fs::write(&entries[0], "garbage").unwrap();
    let third = run();
    assert_eq!(third.values["cache"], "recomputed");
    assert_eq!(third.orders["Aut"], first.orders["Aut"]);
    assert_eq!(run().values["cache"], "hit");
}
