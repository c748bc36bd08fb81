use std::process::{Command, Output};

use search_paths::search::{rc_total_time, SearchInstance};
use search_paths::trajectories::{trajectory, Algorithm};
use search_paths::State;
use serde_json::Value as Json;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_search-paths"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bin(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows as floats (empty field -> None), then footer `label -> value`.
type Parsed = (Vec<String>, Vec<Vec<Option<f64>>>, Vec<(String, f64)>);

fn parse_csv(text: &str) -> Parsed {
    let mut r = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    let (mut rows, mut footer) = (Vec::new(), Vec::new());
    for rec in r.records() {
        let rec = rec.unwrap();
        match rec[0].parse::<f64>() {
            Ok(_) => rows.push(
                rec.iter()
                    .map(|f| (!f.is_empty()).then(|| f.parse::<f64>().unwrap()))
                    .collect(),
            ),
            Err(_) => footer.push((rec[0].to_string(), rec[1].parse().unwrap())),
        }
    }
    (header, rows, footer)
}

fn column(p: &Parsed, name: &str) -> Vec<Option<f64>> {
    let k = p.0.iter().position(|h| h == name).unwrap();
    p.1.iter().map(|r| r[k]).collect()
}

fn footer(p: &Parsed, label: &str) -> f64 {
    p.2.iter().find(|(l, _)| l == label).unwrap().1
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["trajectory", "--algorithm", "rc", "--samples", "21"][..],
        &[
            "equivalence",
            "--N",
            "1024",
            "--format",
            "json",
            "--reproducible",
        ][..],
        &[
            "norms",
            "--algorithm",
            "fenner",
            "--format",
            "json",
            "--reproducible",
        ][..],
    ] {
        assert_eq!(bin(args).stdout, bin(args).stdout, "{args:?}");
    }
}

#[test]
fn timestamp_only_without_reproducible() {
    let with: Json = serde_json::from_str(&stdout(&["gap", "--format", "json"])).unwrap();
    let without: Json =
        serde_json::from_str(&stdout(&["gap", "--format", "json", "--reproducible"])).unwrap();
    assert!(with["metadata"]["timestamp"].is_u64());
    assert!(without["metadata"].get("timestamp").is_none());
}

#[test]
fn csv_round_trips_every_value() {
    let i = SearchInstance::new(1024).unwrap();
    for alg in Algorithm::ALL {
        let text = stdout(&[
            "trajectory",
            "--N",
            "1024",
            "--algorithm",
            alg.name(),
            "--samples",
            "33",
        ]);
        let p = parse_csv(&text);
        let tr = trajectory(alg, &i, 33).unwrap();
        assert_eq!(p.1.len(), tr.len());
        for (row, s) in p.1.iter().zip(tr.samples()) {
            let expect = [
                Some(s.t),
                s.s,
                Some(s.state.a_w().re),
                Some(s.state.a_w().im),
                Some(s.state.a_r().re),
                Some(s.state.a_r().im),
                Some(s.bloch.x),
                Some(s.bloch.y),
                Some(s.bloch.z),
                Some(s.state.success_probability()),
            ];
            // Bitwise equality, not a tolerance.
            assert_eq!(&row[1..], &expect[..], "{alg}");
        }
    }
}

#[test]
fn json_mirrors_csv() {
    let args = [
        "equivalence",
        "--N",
        "2",
        "--samples",
        "9",
        "--reproducible",
    ];
    let csv_text = stdout(&args);
    let json_text = stdout(&[&args[..], &["--format", "json"]].concat());
    let p = parse_csv(&csv_text);
    let doc: Json = serde_json::from_str(&json_text).unwrap();
    let columns: Vec<&str> = doc["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(columns, p.0);
    for (obj, row) in doc["rows"].as_array().unwrap().iter().zip(&p.1) {
        for (c, v) in columns.iter().zip(row) {
            assert_eq!(obj[*c].as_f64(), *v, "{c}");
        }
    }
    assert_eq!(
        doc["summary"]["max_deviation"].as_f64().unwrap(),
        footer(&p, "max_deviation")
    );
    let meta = &doc["metadata"];
    assert_eq!(meta["N"], 2);
    assert_eq!(meta["eps"], 1.0);
    assert_eq!(meta["gamma"], 0.5);
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert!(meta["algorithm"].is_string());
}

#[test]
fn walk_leaves_the_xz_plane() {
    let p = parse_csv(&stdout(&["trajectory", "--algorithm", "fg", "--N", "1024"]));
    let y = column(&p, "y");
    assert!(y.iter().any(|v| v.unwrap().abs() > 0.5));
    let start = State::uniform(1024).bloch();
    let (x, z) = (column(&p, "x"), column(&p, "z"));
    assert!((x[0].unwrap() - start.x).abs() < 1e-15 && (z[0].unwrap() - start.z).abs() < 1e-15);
    assert!((z.last().unwrap().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn gap_minimum_at_midpoint() {
    let p = parse_csv(&stdout(&["gap", "--N", "64"]));
    let (s, g) = (column(&p, "s"), column(&p, "g"));
    let (k, min) = g
        .iter()
        .map(|v| v.unwrap())
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert_eq!(s[k], Some(0.5));
    assert!((min - 0.125).abs() < 1e-15);
}

#[test]
fn schedule_endpoints() {
    let p = parse_csv(&stdout(&["schedule", "--N", "64", "--eps", "1"]));
    let (t, s) = (column(&p, "t"), column(&p, "s"));
    let total = 64.0 / 63f64.sqrt() * 63f64.sqrt().atan();
    assert_eq!((t[0], s[0]), (Some(0.0), Some(0.0)));
    assert!((t.last().unwrap().unwrap() - total).abs() < 1e-12 * total);
    assert!((s.last().unwrap().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(
        t.last().unwrap().unwrap(),
        rc_total_time(&SearchInstance::<f64>::new(64).unwrap())
    );
    let s: Vec<f64> = s.into_iter().map(Option::unwrap).collect();
    assert!(s.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn equivalence_interior_is_pole_free() {
    // The only pole sits at s = 1, which the interior grid never reaches.
    let p = parse_csv(&stdout(&["equivalence", "--N", "3", "--samples", "7"]));
    assert_eq!(column(&p, "s")[5], Some(0.75));
    assert!(column(&p, "lhs").iter().all(Option::is_some));
    assert!(column(&p, "rhs").iter().all(Option::is_some));
    assert!(footer(&p, "max_deviation") < 1e-12);
}

#[test]
fn compare_examples() {
    let p = parse_csv(&stdout(&[
        "compare",
        "--N",
        "64",
        "--algorithm",
        "rc-ground",
        "--against",
        "fenner",
        "--align",
        "reparametrized",
    ]));
    assert!(footer(&p, "max_bloch_distance") < 1e-6);

    let p = parse_csv(&stdout(&[
        "compare",
        "--N",
        "64",
        "--algorithm",
        "grover",
        "--against",
        "fenner",
        "--align",
        "time",
    ]));
    assert!(footer(&p, "max_bloch_distance") < 1e-9);
    assert_eq!(p.1.len(), 7);

    let p = parse_csv(&stdout(&[
        "compare",
        "--N",
        "1024",
        "--algorithm",
        "fg",
        "--against",
        "rc-ground",
    ]));
    assert!(footer(&p, "max_bloch_distance") > 0.5);
}

#[test]
fn fullspace_agrees_with_plane() {
    for alg in ["grover", "fg", "fenner", "rc"] {
        let p = parse_csv(&stdout(&[
            "fullspace",
            "--N",
            "32",
            "--algorithm",
            alg,
            "--samples",
            "11",
        ]));
        assert!(1.0 - footer(&p, "min_fidelity") < 1e-8, "{alg}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin(args).status.code().unwrap();
    assert_eq!(code(&["gap"]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["nonsense"]), 1);
    assert_eq!(code(&["gap", "--N", "1"]), 1);
    assert_eq!(code(&["gap", "--samples", "1"]), 1);
    assert_eq!(code(&["gap", "--format", "xml"]), 1);
    assert_eq!(code(&["gap", "--algorithm", "grover"]), 1);
    assert_eq!(
        code(&["compare", "--algorithm", "grover", "--against", "fenner"]),
        1
    );
    assert_eq!(
        code(&[
            "fullspace",
            "--N",
            "64",
            "--gamma",
            "1000",
            "--samples",
            "3"
        ]),
        2
    );
    assert_eq!(code(&["gap", "-o", "/nonexistent-dir/out.csv"]), 3);
}

#[test]
fn output_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("search-paths-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    assert!(bin(&["synth", "--N", "16", "-o", p]).status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&["synth", "--N", "16"]));
    let q = parse_csv(&written);
    assert!(column(&q, "walk_fidelity")
        .iter()
        .all(|f| 1.0 - f.unwrap() < 1e-10));
}
