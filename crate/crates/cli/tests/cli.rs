use std::collections::BTreeMap;
use std::process::{Command, Output};

fn adams(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adams")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `(q, w) -> dim` from the text rendering of a `pi` report.
fn pi_rows(o: &Output) -> BTreeMap<(usize, usize), usize> {
    stdout(o)
        .lines()
        .filter_map(|l| l.strip_prefix("row "))
        .map(|l| {
            let v: Vec<usize> = l.split(' ').map(|x| x.parse().unwrap()).collect();
            ((v[0], v[1]), v[2])
        })
        .collect()
}

#[test]
fn validate_fixture_passes() {
    let o = adams(&["validate", "k1", "--max-degree", "3", "--max-weight", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn mutant_names_the_identity() {
    let o = adams(&["validate", "mutant", "--max-degree", "4", "--max-weight", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("d_i d_j = d_{j-1} d_i (i < j)"));
    assert!(stdout(&o).contains("FALSIFIED"));
}

#[test]
fn malformed_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "field q\ntruncation 2 2\ngen 1 x 1\nface 0 1 x = 2*\n").unwrap();
    let o = adams(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn exported_file_round_trips() {
    let text = stdout(&adams(&["export", "k2", "--max-degree", "3", "--max-weight", "2"]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k2.txt");
    std::fs::write(&path, &text).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(adams(&["validate", p]).status.code(), Some(0));
    let from_file = pi_rows(&adams(&["pi", p, "--out", "text"]));
    let from_fixture = pi_rows(&adams(&["pi", "k2", "--max-degree", "3", "--max-weight", "2", "--out", "text"]));
    assert_eq!(from_file, from_fixture);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(adams(&["validate", "k1", "--field", "fp:4"]).status.code(), Some(2));
    assert_eq!(adams(&["validate", "no-such-fixture"]).status.code(), Some(2));
    assert_eq!(adams(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(adams(&["pi", "k1", "--max-degree", "0"]).status.code(), Some(2));
    // π_3 needs degree 4
    assert_eq!(adams(&["pi", "k1", "--max-degree", "3", "--q-max", "3"]).status.code(), Some(2));
}

#[test]
fn pi_of_k2() {
    let o = adams(&["pi", "k2", "--q-max", "3", "--max-degree", "4", "--max-weight", "2", "--out", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = pi_rows(&o);
    assert!(!rows.is_empty());
    for (&(q, w), &d) in &rows {
        assert_eq!(d, usize::from(q == 2 && w == 1), "q={q} w={w}");
    }
}

#[test]
fn pi_of_sum_is_componentwise() {
    let args = |x: &'static str| ["pi", x, "--max-degree", "4", "--max-weight", "2", "--out", "text"];
    let sum = pi_rows(&adams(&args("sum")));
    let k1 = pi_rows(&adams(&args("k1")));
    let k2 = pi_rows(&adams(&args("k2")));
    for (key, d) in &sum {
        assert_eq!(*d, k1.get(key).unwrap_or(&0) + k2.get(key).unwrap_or(&0), "{key:?}");
    }
}

#[test]
fn bar_weight_one_column_matches_input() {
    let base = pi_rows(&adams(&["pi", "k1", "--max-degree", "3", "--max-weight", "2", "--out", "text"]));
    let bar = pi_rows(&adams(&["pi", "k1", "--bar", "1", "--max-degree", "3", "--max-weight", "2", "--out", "text"]));
    for q in 0..=2 {
        assert_eq!(base[&(q, 1)], bar[&(q, 1)], "q={q}");
    }
}

#[test]
fn reports_are_byte_deterministic() {
    for args in [
        vec!["validate", "free2", "--seed", "7", "--max-degree", "3", "--max-weight", "3", "--out", "csv"],
        vec!["verify", "e0", "--max-degree", "3", "--max-weight", "3", "--out", "text"],
        vec!["verify", "connectivity", "--max-degree", "3", "--max-weight", "3"],
    ] {
        let a = adams(&args);
        let b = adams(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let out = stdout(&adams(&["validate", "free", "--seed", "11", "--out", "text", "--max-degree", "2"]));
    for key in ["field q", "truncation 2 4", "seed 11", "input free sha256 "] {
        assert!(out.contains(key), "missing {key}");
    }
}

#[test]
fn convergence_records_vacuity() {
    let o = adams(&["verify", "convergence", "--t", "2", "--q", "0", "--max-degree", "2", "--out", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("note vacuous yes"));
    assert!(out.contains("suite convergence 1"));
}

#[test]
fn appendix_over_f2() {
    let o = adams(&["verify", "appendix", "--field", "fp:2", "--max-degree", "3", "--max-weight", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("field       fp:2"), "{}", stdout(&o));
}

#[test]
fn small_cap_skips_blocks() {
    let o = adams(&["verify", "tower", "-x", "k1", "--cap", "5", "--max-degree", "2", "--max-weight", "3", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("blocks skipped by the cap 5"), "{out}");
    assert!(out.contains("above the cap"));
}

#[test]
fn verify_all_small() {
    let o = adams(&["verify", "all", "--max-degree", "2", "--max-weight", "3", "--r-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for suite in ["appendix", "tower", "twisting", "connectivity", "convergence", "dold-puppe", "e0"] {
        assert!(out.contains(&format!("suite       {suite} 1")), "{suite}");
    }
}

#[test]
fn disconnected_input_fails_dold_puppe() {
    let o = adams(&["verify", "dold-puppe", "-x", "k0", "--max-degree", "2", "--max-weight", "2"]);
    // K(k,0) is not connected, so Sym^2 has π_0
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn fixture_listing() {
    let out = stdout(&adams(&["fixtures", "--out", "csv"]));
    for name in ["k0", "k3", "free2", "mutant"] {
        assert!(out.contains(name));
    }
}

#[test]
fn verify_all_default_set() {
    // the full campaign at (N, W) = (4, 4); takes a few minutes
    let o = adams(&["verify", "all", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FALSIFIED"));
}
