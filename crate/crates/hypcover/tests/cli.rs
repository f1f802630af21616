use std::path::Path;
use std::process::{Command, Output};

use hypcover::commands::{
    BOUNDS_COLUMNS, CENSUS_COLUMNS, FAMILY_COLUMNS, FAMILY_MEMBER_COLUMNS, NERVE_COLUMNS,
    RANDOM_GRAPH_COLUMNS, SCAN_COLUMNS,
};
use serde_json::Value;

fn hypcover(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypcover"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn sidecar(dir: &Path, command: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{command}.json"))).unwrap())
        .unwrap()
}

#[test]
fn census_to_five() {
    let dir = tempfile::tempdir().unwrap();
    let out = hypcover(dir.path(), &["census", "--max-index", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("census.csv"));
    let pairs: Vec<(&str, &str)> = rows
        .iter()
        .map(|r| (r[0].as_str(), r[1].as_str()))
        .collect();
    assert_eq!(
        pairs,
        [
            ("1", "1"),
            ("2", "3"),
            ("3", "13"),
            ("4", "71"),
            ("5", "461")
        ]
    );
    assert!(rows.iter().all(|r| r[5] == "true" && r[1] == r[2]));

    let meta = sidecar(dir.path(), "census");
    for key in [
        "schema_version",
        "command",
        "params",
        "seed",
        "version",
        "duration_ms",
    ] {
        assert!(meta.get(key).is_some(), "missing {key}");
    }
    assert_eq!(meta["command"], "census");
    assert_eq!(meta["params"]["max_index"], 5);
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn family_sixty_four_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = hypcover(dir.path(), &["family", "--r", "64", "--verify-reps"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("all representatives valid, max length ≤ 3(1+log₂ 31)"),
        "{stdout}"
    );
    let rows = csv_rows(&dir.path().join("family.csv"));
    assert_eq!(rows.len(), 64);
    assert!(rows.iter().all(|r| r[5] == "true"));
    let coset_62 = rows.iter().find(|r| r[0] == "62").unwrap();
    // 31 = 11111₂
    assert_eq!(coset_62[2], "a a b a a b a a b a a b a a");
    let meta = sidecar(dir.path(), "family");
    // 33!
    assert_eq!(
        meta["summary"]["family_size"],
        "8683317618811886495518194401280000000"
    );
}

#[test]
fn family_members_listing() {
    let dir = tempfile::tempdir().unwrap();
    // |S| = 4! = 24 fits the budget, so no seed is needed
    let out = hypcover(dir.path(), &["family", "--r", "6", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("family-members.csv"));
    assert_eq!(rows.len(), 24);
    assert_eq!(rows[0][1], "0 2 4 1 3 5");

    let out = hypcover(dir.path(), &["family", "--r", "12", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let out = hypcover(
        dir.path(),
        &["family", "--r", "12", "--budget", "10", "--seed", "4"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(csv_rows(&dir.path().join("family-members.csv")).len(), 10);
}

#[test]
fn bounds_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = hypcover(
        dir.path(),
        &["bounds", "--n", "3", "--d", "10", "--a", "1", "--b", "1"],
    );
    assert_eq!(out.status.code(), Some(0));
    let summary = &sidecar(dir.path(), "bounds")["summary"];
    assert_eq!(summary["lnln_lower"].as_f64().unwrap(), 10.0);
    let upper = summary["ln_upper"].as_f64().unwrap();
    assert!(((upper - 10.0 * 50f64.exp()) / upper).abs() < 1e-15);
    let defaulted: Vec<&str> = summary["defaulted_constants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(defaulted.contains(&"c") && !defaulted.contains(&"a"));
    let rows = csv_rows(&dir.path().join("bounds.csv"));
    assert_eq!(rows[0], ["lnln_lower", "10"]);
    assert_eq!(rows[1], ["ln_upper", "5.18470552859e+22"]);
}

#[test]
fn randomized_runs_write_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = hypcover(
        dir.path(),
        &[
            "diameter-scan",
            "--r-grid",
            "16,32",
            "--samples",
            "3",
            "--seed",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(csv_rows(&dir.path().join("diameter-scan.csv")).len(), 6);
    assert_eq!(sidecar(dir.path(), "diameter-scan")["seed"], 1);

    let out = hypcover(
        dir.path(),
        &[
            "random-graph",
            "--n-grid",
            "64",
            "--k",
            "5",
            "--trials",
            "0",
            "--seed",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(csv_rows(&dir.path().join("random-graph.csv")).is_empty());

    let out = hypcover(
        dir.path(),
        &["nerve", "--points", "500", "--radius", "0.4", "--seed", "9"],
    );
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("nerve.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "hyperbolic");
    assert_eq!(&rows[0][12..], ["true", "true"]);
}

#[test]
fn validation_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["census", "--max-index", "8"],
        &["census", "--max-index", "0"],
        &["census", "--max-index", "3", "--unknown"],
        &["family", "--r", "4"],
        &["family", "--r", "16", "--mode", "odd"],
        &["family", "--r", "16", "--seed", "1"],
        &["diameter-scan", "--r-grid", "16", "--samples", "3"],
        &[
            "random-graph",
            "--n-grid",
            "64",
            "--k",
            "4",
            "--trials",
            "2",
            "--seed",
            "1",
        ],
        &[
            "random-graph",
            "--n-grid",
            "1",
            "--k",
            "5",
            "--trials",
            "2",
            "--seed",
            "1",
        ],
        &["bounds", "--n", "2", "--d", "1"],
        &["bounds", "--n", "3", "--d", "-1"],
        &["nerve", "--points", "10", "--radius", "0", "--seed", "1"],
        &[
            "nerve",
            "--points",
            "10",
            "--radius",
            "0.1",
            "--seed",
            "1",
            "--dimension",
            "2",
        ],
        &["no-such-command"],
        &[],
    ];
    for args in cases {
        let out = hypcover(dir.path(), args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_documents_every_column() {
    let dir = tempfile::tempdir().unwrap();
    let tables: &[(&str, &[&[&str]])] = &[
        ("census", &[CENSUS_COLUMNS]),
        ("family", &[FAMILY_COLUMNS, FAMILY_MEMBER_COLUMNS]),
        ("diameter-scan", &[SCAN_COLUMNS]),
        ("random-graph", &[RANDOM_GRAPH_COLUMNS]),
        ("bounds", &[BOUNDS_COLUMNS]),
        ("nerve", &[NERVE_COLUMNS]),
    ];
    for (command, column_sets) in tables {
        let out = hypcover(dir.path(), &[command, "--help"]);
        assert_eq!(out.status.code(), Some(0));
        let help = String::from_utf8(out.stdout).unwrap();
        for column in column_sets.iter().flat_map(|c| c.iter()) {
            assert!(
                help.lines()
                    .any(|l| l.split_whitespace().next() == Some(column)),
                "{command} --help lacks {column}"
            );
        }
    }
    let out = hypcover(dir.path(), &["--version"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bounds_quantities_are_documented() {
    let dir = tempfile::tempdir().unwrap();
    hypcover(dir.path(), &["bounds", "--n", "4", "--d", "2"]);
    let out = hypcover(dir.path(), &["bounds", "--help"]);
    let help = String::from_utf8(out.stdout).unwrap();
    for row in csv_rows(&dir.path().join("bounds.csv")) {
        assert!(
            help.lines()
                .any(|l| l.split_whitespace().next() == Some(row[0].as_str())),
            "{} undocumented",
            row[0]
        );
    }
}

#[test]
fn library_entry_point_matches_binary() {
    let dir = tempfile::tempdir().unwrap();
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = hypcover::run(
        [
            "hypcover",
            "--out-dir",
            dir.path().to_str().unwrap(),
            "census",
            "--max-index",
            "4",
        ],
        &mut stdout,
        &mut stderr,
    );
    assert_eq!(code, 0);
    let in_process = std::fs::read(dir.path().join("census.csv")).unwrap();
    let other = tempfile::tempdir().unwrap();
    hypcover(other.path(), &["census", "--max-index", "4"]);
    assert_eq!(
        in_process,
        std::fs::read(other.path().join("census.csv")).unwrap()
    );
}
