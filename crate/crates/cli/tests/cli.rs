use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dir(name: &str) -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&d).unwrap();
    d
}

/// Writes `docs` into a fresh directory and returns their paths.
fn docs(test: &str, docs: &[(&str, String)]) -> Vec<PathBuf> {
    let d = dir(test);
    docs.iter()
        .map(|(name, body)| {
            let p = d.join(name);
            std::fs::write(&p, body).unwrap();
            p
        })
        .collect()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epsmean"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn grid_doc(n: usize) -> String {
    let pts: Vec<String> = (0..n)
        .map(|k| format!(r#"{{"coords":[{}]}}"#, k as f64 / (n - 1) as f64))
        .collect();
    format!(r#"{{"points":[{}],"metric":"euclidean"}}"#, pts.join(","))
}

fn e5() -> String {
    r#"{"points":[{"coords":[0]},{"coords":[0.25]},{"coords":[0.5]},{"coords":[0.75]},{"coords":[1]}],"metric":"euclidean"}"#.into()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn space_validate_exit_codes() {
    let p = docs(
        "validate",
        &[
            ("ok.json", e5()),
            (
                "tri.json",
                r#"{"metric":{"matrix":[[0,1,5],[1,0,1],[5,1,0]]}}"#.into(),
            ),
            ("bad.json", "{\"points\": [".into()),
        ],
    );
    assert_eq!(run(&["space-validate", s(&p[0])]).status.code(), Some(0));
    let tri = run(&["space-validate", s(&p[1])]);
    assert_eq!(tri.status.code(), Some(1));
    assert!(stdout(&tri).contains("triangle,0,1,2,"));
    assert_eq!(run(&["space-validate", s(&p[2])]).status.code(), Some(2));
    let missing = run(&["space-validate", "/nonexistent/space.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn lattice_listing() {
    let p = docs("lattices", &[("e5.json", e5())]);
    for (eps, rows) in [("0.3", 4), ("0.2", 1), ("2.0", 5)] {
        let o = run(&["lattices", s(&p[0]), "--eps", eps]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert_eq!(out.lines().count(), rows + 2, "{out}");
        assert!(out.ends_with(&format!("count={rows}\n")));
    }
    let out = stdout(&run(&["lattices", s(&p[0]), "--eps", "0.3"]));
    assert_eq!(out.lines().nth(1), Some("0,3,0 2 4"));
    let capped = run(&["lattices", s(&p[0]), "--eps", "0.3", "--cap", "3"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(stdout(&capped).starts_with("CapExceeded"));
    assert_eq!(
        run(&["lattices", s(&p[0]), "--eps=-1"]).status.code(),
        Some(4)
    );
}

#[test]
fn sweep_verdicts() {
    let interleaved: Vec<String> = (0..17)
        .map(|j| format!(r#"{{"coords":[{}]}}"#, j as f64 / 16.0))
        .collect();
    let p = docs(
        "sweep",
        &[
            ("e5.json", e5()),
            ("const.json", r#"{"type":"constant","value":2.5}"#.into()),
            ("grid.json", grid_doc(64)),
            ("x.json", r#"{"type":"coordinate","axis":0}"#.into()),
            (
                "il.json",
                format!(
                    r#"{{"points":[{}],"metric":"euclidean"}}"#,
                    interleaved.join(",")
                ),
            ),
            (
                "cls.json",
                r#"{"type":"indicator","ids":[0,2,4,6,8,10,12,14,16]}"#.into(),
            ),
        ],
    );
    let c = stdout(&run(&["sweep", s(&p[0]), s(&p[1]), "--steps", "4"]));
    assert!(
        c.ends_with("HasMean estimate=2.5000000000000000e0\n"),
        "{c}"
    );

    let g = run(&[
        "sweep",
        s(&p[2]),
        s(&p[3]),
        "--eps0",
        "0.5",
        "--ratio",
        "0.5",
        "--steps",
        "8",
    ]);
    assert_eq!(g.status.code(), Some(0));
    let out = stdout(&g);
    assert_eq!(out.lines().count(), 10);
    let est: f64 = out
        .lines()
        .last()
        .unwrap()
        .strip_prefix("HasMean estimate=")
        .unwrap()
        .parse()
        .unwrap();
    assert!((est - 0.5).abs() <= 1e-9);

    let nm = stdout(&run(&[
        "sweep",
        s(&p[4]),
        s(&p[5]),
        "--eps0",
        "0.125",
        "--ratio",
        "0.75",
        "--steps",
        "3",
    ]));
    assert!(nm.ends_with("NoMean\n"), "{nm}");
    assert_eq!(
        nm.lines().nth(1).unwrap().split(',').nth(3),
        Some("1.0000000000000000e0")
    );

    assert_eq!(run(&["sweep", s(&p[0]), s(&p[0])]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", s(&p[0]), s(&p[1]), "--ratio", "1.5"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn sweep_output_is_deterministic_and_json_mirrors_csv() {
    let d = dir("determinism");
    let p = docs(
        "determinism",
        &[
            ("grid.json", grid_doc(40)),
            ("x.json", r#"{"type":"coordinate","axis":0}"#.into()),
        ],
    );
    let args = [
        "sweep",
        s(&p[0]),
        s(&p[1]),
        "--eps0",
        "0.6",
        "--steps",
        "6",
        "--seed",
        "9",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let out = d.join("sweep.csv");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", s(&out)]);
    assert!(run(&with_out).stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let j: serde_json::Value = serde_json::from_slice(&run(&json_args).stdout).unwrap();
    let csv = stdout(&a);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for (row, line) in rows.iter().zip(csv.lines().skip(1)) {
        for (key, cell) in header.iter().zip(line.split(',')) {
            let v = &row[*key];
            match v {
                serde_json::Value::Bool(b) => assert_eq!(cell, if *b { "1" } else { "0" }),
                serde_json::Value::Null => assert_eq!(cell, ""),
                _ => assert_eq!(cell.parse::<f64>().unwrap(), v.as_f64().unwrap(), "{key}"),
            }
        }
    }
}

#[test]
fn measure_values_and_preconditions() {
    let p = docs(
        "measure",
        &[
            ("e5.json", e5()),
            ("a.json", r#"{"ids":[0,1]}"#.into()),
            ("b.json", r#"{"ids":[0,1,2,3]}"#.into()),
        ],
    );
    let same = stdout(&run(&[
        "measure",
        s(&p[0]),
        s(&p[1]),
        s(&p[1]),
        "--steps",
        "5",
    ]));
    assert!(
        same.contains("relative HasMean value=1.0000000000000000e0"),
        "{same}"
    );
    assert!(
        same.contains("thin ThinBoundary value=1.0000000000000000e0"),
        "{same}"
    );
    let o = run(&["measure", s(&p[0]), s(&p[2]), s(&p[1])]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn measure_nested_intervals() {
    let p = docs(
        "nested",
        &[
            ("grid.json", grid_doc(201)),
            ("a.json", r#"{"box":{"min":[0],"max":[0.25]}}"#.into()),
            ("b.json", r#"{"box":{"min":[0],"max":[0.5]}}"#.into()),
            ("k.json", r#""all""#.into()),
        ],
    );
    let o = run(&[
        "measure",
        s(&p[0]),
        s(&p[1]),
        s(&p[2]),
        "--superset",
        s(&p[2]),
        "--superset",
        s(&p[3]),
        "--eps0",
        "0.016",
        "--ratio",
        "0.5",
        "--steps",
        "5",
        "--agreement-tol",
        "1e-12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let value = |prefix: &str| -> f64 {
        let line = out.lines().find(|l| l.starts_with(prefix)).unwrap();
        line.rsplit('=').next().unwrap().parse().unwrap()
    };
    assert!(
        (value("relative HasMean") - 51.0 / 101.0).abs() <= 1e-12,
        "{out}"
    );
    assert!(
        (value("thin ThinBoundary") - 51.0 / 101.0).abs() <= 1e-12,
        "{out}"
    );
}

#[test]
fn verify_is_repeatable() {
    let args = [
        "verify",
        "--seed",
        "5",
        "--instances",
        "60",
        "--max-points",
        "10",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("PASS seed=5 instances=60"));
}
