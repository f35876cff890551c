use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use vertex_energy::{compute, named_graph, Method, NamedGraphId};

fn run(args: &[&str]) -> Output {
    run_with(args, None, &[])
}

fn run_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vertex-energy"));
    cmd.args(args)
        .env_remove("VE_TOLERANCE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn csv_energies(text: &str) -> Vec<f64> {
    text.lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn catalog_rows() {
    let o = run(&["catalog"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for row in [
        "frucht 12 3 12",
        "shrikhande 16 6 3",
        "petersen 10 3 3",
        "heawood 14 3 4",
    ] {
        assert!(text.lines().any(|l| l == row), "missing {row}:\n{text}");
    }
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn frucht_weights_csv() {
    let o = run(&[
        "energy", "--graph", "frucht", "--method", "weights", "--format", "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("graph,n,method,vertex,energy"));
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("frucht,12,weights,1,"));
    let mut got = csv_energies(&text);
    got.sort_by(f64::total_cmp);
    let mut want = [
        1.50636, 1.55632, 1.45627, 1.44865, 1.54705, 1.52488, 1.48642, 1.54800, 1.43233, 1.44129,
        1.55632, 1.56952,
    ];
    want.sort_by(f64::total_cmp);
    assert_eq!(got.len(), 12);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= 1e-3, "{g} vs {w}");
    }
}

#[test]
fn petersen_all_methods() {
    let o = run(&[
        "energy", "--graph", "petersen", "--method", "all", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let g = &v[0];
    let records = g["records"].as_array().unwrap();
    let methods: Vec<&str> = records
        .iter()
        .map(|r| r["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, ["spectral", "weights", "moments"]);
    for r in records {
        for e in r["energies"].as_array().unwrap() {
            assert!((e.as_f64().unwrap() - 1.6).abs() < 1e-9);
        }
    }
    assert!(g["max_pairwise_discrepancy"].as_f64().unwrap() < 1e-9);

    let table = stdout(&run(&["energy", "--graph", "petersen", "--method", "all"]));
    assert!(table.contains("max pairwise discrepancy"));
    assert_eq!(table.matches("1.600000").count(), 30);
}

#[test]
fn k2_json_energies() {
    let o = run(&["energy", "--graph6", "A_", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rec = &v[0]["records"][0];
    assert_eq!(rec["graph"], "A_");
    assert_eq!(rec["n"], 2);
    let e: Vec<f64> = rec["energies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(e.len(), 2);
    assert!(e.iter().all(|x| (x - 1.0).abs() < 1e-12));
}

#[test]
fn json_numbers_round_trip() {
    let o = run(&[
        "energy", "--graph", "frucht", "--method", "all", "--format", "json",
    ]);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let g = named_graph(NamedGraphId::Frucht);
    for (rec, method) in v[0]["records"]
        .as_array()
        .unwrap()
        .iter()
        .zip(["spectral", "weights", "moments"])
    {
        let want = compute(&g, method.parse::<Method>().unwrap()).unwrap();
        let got: Vec<f64> = rec["energies"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        assert_eq!(got, want.energies, "{method}");
        assert_eq!(rec["total"].as_f64().unwrap(), want.total);
        for (k, x) in want.diagnostics.entries() {
            assert_eq!(rec["diagnostics"][k].as_f64().unwrap(), x, "{k}");
        }
    }
    let first = text
        .lines()
        .find(|l| l.trim_start().starts_with("1.5"))
        .unwrap();
    let digits = first
        .trim()
        .trim_end_matches(',')
        .chars()
        .filter(char::is_ascii_digit)
        .count();
    assert_eq!(digits, 17, "{first}");
}

#[test]
fn walks_tables() {
    let o = run(&[
        "walks", "--graph", "frucht", "--kmax", "11", "--format", "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<Vec<i64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 12);
    assert!(text.starts_with("k,v1,v2,v3,v4,v5,v6,v7,v8,v9,v10,v11,v12\n"));
    let mut last = rows[11].clone();
    last.sort();
    let mut want = vec![
        15422, 14732, 12796, 14870, 15452, 14708, 15422, 15286, 12188, 14532, 14732, 13132,
    ];
    want.sort();
    assert_eq!(last, want);

    let text = stdout(&run(&[
        "walks", "--graph", "petersen", "--kmax", "2", "--format", "csv",
    ]));
    assert_eq!(text.lines().nth(3).unwrap(), "2,3,3,3,3,3,3,3,3,3,3");

    let text = stdout(&run(&[
        "walks", "--graph", "heawood", "--kmax", "5", "--format", "csv",
    ]));
    for k in [1, 3, 5] {
        let row = text.lines().nth(k + 1).unwrap();
        assert!(row.split(',').skip(1).all(|x| x == "0"), "{row}");
    }

    // Default kmax is (distinct eigenvalues) - 1 = 2 for Petersen.
    let text = stdout(&run(&["walks", "--graph", "petersen", "--format", "csv"]));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn verify_outcomes() {
    let o = run(&["verify", "--all-catalog", "--tolerance", "1e-6"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = run(&["verify", "--graph", "frucht"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let line = text.lines().find(|l| l.contains("conservation")).unwrap();
    let rest = line
        .strip_prefix("PASS conservation: Σ energies = ")
        .expect(line);
    let (sum, energy) = rest.split_once(" = Σ|λ| = ").expect(line);
    for x in [sum, energy] {
        assert!((x.parse::<f64>().unwrap() - 18.0734).abs() < 1e-3, "{line}");
    }

    let o = run(&["verify", "--graph6", "@"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn tolerance_sources() {
    let o = run_with(
        &["verify", "--graph", "frucht"],
        None,
        &[("VE_TOLERANCE", "0")],
    );
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));

    let o = run_with(
        &["verify", "--graph", "frucht", "--tolerance", "1e-6"],
        None,
        &[("VE_TOLERANCE", "0")],
    );
    assert_eq!(code(&o), 0);

    let o = run(&["verify", "--graph", "frucht", "--tolerance", "0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn figure_data() {
    let text = stdout(&run(&["figure-data", "--graph6", "A_"]));
    assert_eq!(text, "vertex,energy\n1,1.000000\n2,1.000000\n");

    let text = stdout(&run(&["figure-data", "--graph", "desargues"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 21);
    assert!(lines[1..].iter().all(|l| l.ends_with(",1.600000")));

    let o = run(&["figure-data", "--graph", "frucht"]);
    let mut got = csv_energies(&stdout(&o));
    got.sort_by(f64::total_cmp);
    assert!((got[0] - 1.43233).abs() < 1e-3 && (got[11] - 1.56952).abs() < 1e-3);
}

#[test]
fn batch_stdin_preserves_order() {
    let input = "A_\nBw\n\n@\nIheA@GUAo\n";
    let o = run_with(&["energy", "--stdin", "--format", "csv"], Some(input), &[]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let labels: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    let mut expected = vec!["A_"; 2];
    expected.extend(["Bw"; 3]);
    expected.push("@");
    expected.extend(["IheA@GUAo"; 10]);
    assert_eq!(labels, expected);

    let o = run_with(&["energy", "--stdin", "--format", "json"], Some(input), &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn file_input() {
    let dir = std::env::temp_dir().join(format!("ve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("graphs.g6");
    std::fs::write(&path, ">>graph6<<Bw\nA_\n").unwrap();
    let o = run(&[
        "energy",
        "--file",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 3 + 2);
}

#[test]
fn deterministic_output() {
    for args in [
        &[
            "energy", "--graph", "frucht", "--method", "all", "--format", "json",
        ][..],
        &["walks", "--graph", "tutte_coxeter", "--kmax", "20"][..],
        &["verify", "--all-catalog"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let input = "IheA@GUAo\nBw\nA_\nCF\nDQc\n".repeat(20);
    let a = run_with(
        &["energy", "--stdin", "--method", "all", "--format", "json"],
        Some(&input),
        &[],
    );
    let b = run_with(
        &["energy", "--stdin", "--method", "all", "--format", "json"],
        Some(&input),
        &[],
    );
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_for_bad_input() {
    let o = run(&["energy", "--graph6", "zz"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("graph6"));

    assert_eq!(code(&run(&["energy", "--graph", "nonexistent"])), 2);
    assert_eq!(code(&run(&["energy"])), 2);
    assert_eq!(
        code(&run(&["energy", "--graph", "frucht", "--method", "bogus"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "energy",
            "--graph6",
            "Bg",
            "--method",
            "transitive"
        ])),
        2
    );
    assert_eq!(
        code(&run_with(
            &["figure-data", "--stdin"],
            Some("A_\nBw\n"),
            &[]
        )),
        2
    );
    assert_eq!(
        code(&run_with(
            &["energy", "--stdin"],
            Some("A_\nnot-a-graph\n"),
            &[]
        )),
        2
    );
    assert_eq!(
        code(&run_with(
            &["verify", "--graph", "frucht"],
            None,
            &[("VE_TOLERANCE", "abc")]
        )),
        2
    );
}

#[test]
fn exit_code_for_numerical_failure() {
    let o = run(&["walks", "--graph", "tutte_coxeter", "--kmax", "100"]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("overflow"), "{err}");
}
