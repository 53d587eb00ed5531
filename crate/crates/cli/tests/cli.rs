// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coretruss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Two bridged 4-cliques with a pendant, plus 20 disjoint triangles.
fn sample_graph(dir: &TempDir) -> PathBuf {
    let mut body = String::from("# sample\n");
    for (a, b) in [
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        (2, 3),
        (4, 5),
        (4, 6),
        (4, 7),
        (5, 6),
        (5, 7),
        (6, 7),
        (3, 4),
        (7, 8),
    ] {
        body.push_str(&format!("v{a} v{b}\n"));
    }
    for t in 0..20 {
        let base = 100 + 3 * t;
        body.push_str(&format!(
            "v{} v{}\nv{} v{}\nv{} v{}\n",
            base,
            base + 1,
            base + 1,
            base + 2,
            base,
            base + 2
        ));
    }
    write(dir, "sample.txt", &body)
}

#[test]
fn stats_on_a_triangle() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.txt", "a b\nb c\nc a\n");
    let json: Value =
        serde_json::from_str(&stdout(&run(&["stats", "--input", s(&input)]))).unwrap();
    assert_eq!(
        json,
        serde_json::json!({"V": 3, "E": 3, "core_degen": 2, "truss_degen": 1})
    );
    let csv = stdout(&run(&["stats", "--input", s(&input), "--format", "csv"]));
    assert_eq!(csv, "V,E,core_degen,truss_degen\n3,3,2,1\n");
}

#[test]
fn decompose_writes_documented_csv() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.txt", "x y\ny z\nz x\nz w\n");
    let core = stdout(&run(&["decompose", "--input", s(&input)]));
    assert_eq!(core, "vertex_label,core\nx,2\ny,2\nz,2\nw,1\n");
    let truss = stdout(&run(&[
        "decompose",
        "--kind",
        "truss",
        "--input",
        s(&input),
    ]));
    assert_eq!(
        truss,
        "label_u,label_v,truss,support\nx,y,1,1\nx,z,1,1\ny,z,1,1\nz,w,0,0\n"
    );
    let json: Value = serde_json::from_str(&stdout(&run(&[
        "decompose",
        "--input",
        s(&input),
        "--format",
        "json",
    ])))
    .unwrap();
    assert_eq!(json[3], serde_json::json!({"vertex_label": "w", "core": 1}));
}

#[test]
fn interplay_tables_have_documented_headers() {
    let dir = TempDir::new().unwrap();
    let input = sample_graph(&dir);
    let vi = stdout(&run(&["vi", "--input", s(&input)]));
    let mut lines = vi.lines();
    assert_eq!(
        lines.next(),
        Some("value,population,min_mean,min_q1,min_q3,max_mean,max_q1,max_q3")
    );
    let population: usize = lines
        .map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(population, 9 + 60);

    let ei = stdout(&run(&[
        "ei",
        "--input",
        s(&input),
        "--vertex-measure",
        "degree",
        "--edge-measure",
        "triangles",
    ]));
    let mut lines = ei.lines();
    assert_eq!(lines.next(), Some("value_lo,value_hi,population,mean"));
    let population: usize = lines
        .map(|l| l.split(',').nth(2).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(population, 14 + 60);

    let json: Value = serde_json::from_str(&stdout(&run(&[
        "vi",
        "--input",
        s(&input),
        "--format",
        "json",
    ])))
    .unwrap();
    assert!(json
        .as_array()
        .unwrap()
        .iter()
        .all(|row| row.get("max_q3").is_some()));
}

#[test]
fn generate_er_with_no_edges() {
    let out = stdout(&run(&[
        "generate", "--model", "er", "--n", "10", "--m", "0", "--seed", "7",
    ]));
    assert_eq!(out, "");
}

#[test]
fn generate_is_seeded_and_writes_a_label_map() {
    let dir = TempDir::new().unwrap();
    let reference = sample_graph(&dir);
    for model in ["er", "config", "bter"] {
        let a = dir.path().join(format!("{model}_a.txt"));
        let b = dir.path().join(format!("{model}_b.txt"));
        for path in [&a, &b] {
            stdout(&run(&[
                "generate",
                "--model",
                model,
                "--reference",
                s(&reference),
                "--seed",
                "5",
                "--out",
                s(path),
            ]));
        }
        let edges = fs::read_to_string(&a).unwrap();
        assert_eq!(edges, fs::read_to_string(&b).unwrap(), "{model}");
        let mut previous = None;
        for line in edges.lines() {
            let pair: Vec<u32> = line.split(' ').map(|t| t.parse().unwrap()).collect();
            assert!(pair[0] < pair[1]);
            assert!(previous < Some((pair[0], pair[1])));
            previous = Some((pair[0], pair[1]));
        }
        let labels = fs::read_to_string(dir.path().join(format!("{model}_a.txt.labels"))).unwrap();
        assert_eq!(labels.lines().count(), 69);
        assert!(labels.starts_with("0\tv0\n1\tv1\n"), "{model}: {labels}");
    }
    let er = fs::read_to_string(dir.path().join("er_a.txt")).unwrap();
    assert_eq!(er.lines().count(), 74);
}

#[test]
fn anomaly_report_matches_schema_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let input = sample_graph(&dir);
    let args = [
        "anomaly",
        "--input",
        s(&input),
        "--clusters",
        "2",
        "--seed",
        "1",
    ];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let mut sequential = args.to_vec();
    sequential.push("--sequential");
    assert_eq!(first, stdout(&run(&sequential)));

    let report: Value = serde_json::from_str(&first).unwrap();
    assert!(report["threshold"].is_u64());
    assert_eq!(report["clusters"].as_array().unwrap().len(), 2);
    assert_eq!(report["sse_curve"], serde_json::json!([]));
    for c in report["clusters"].as_array().unwrap() {
        for key in ["id", "size", "mu", "sigma", "histogram"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
    for o in report["outliers"].as_array().unwrap() {
        for key in ["label", "cluster", "core", "z", "max_truss", "class"] {
            assert!(o.get(key).is_some(), "{key}");
        }
    }

    let elbow: Value = serde_json::from_str(&stdout(&run(&[
        "anomaly",
        "--input",
        s(&input),
        "--kmax",
        "5",
    ])))
    .unwrap();
    assert!(!elbow["sse_curve"].as_array().unwrap().is_empty());
}

#[test]
fn custom_comments_and_delimiter() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c.csv", "; header\na,b\nb,c\nc,a\n");
    let out = stdout(&run(&[
        "stats",
        "--input",
        s(&input),
        "--comment-prefix",
        ";",
        "--delimiter",
        ",",
    ]));
    let json: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["truss_degen"], 1);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "t.txt", "a b\nb c\nc a\n");
    let out = dir.path().join("core.csv");
    let printed = stdout(&run(&["decompose", "--input", s(&input), "--out", s(&out)]));
    assert_eq!(printed, "");
    assert_eq!(
        fs::read_to_string(out).unwrap(),
        "vertex_label,core\na,2\nb,2\nc,2\n"
    );
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.txt", "a b\nb c\nc a\n");
    let bad = write(&dir, "bad.txt", "a b\nlonely\n");
    let empty = write(&dir, "empty.txt", "# nothing\n");

    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["stats", "--input", s(&good)]), Some(0));
    assert_eq!(
        code(&["stats", "--input", "/nonexistent/graph.txt"]),
        Some(2)
    );
    assert_eq!(code(&["stats"]), Some(2));
    assert_eq!(
        code(&["stats", "--input", s(&good), "--frobnicate"]),
        Some(2)
    );
    assert_eq!(
        code(&["vi", "--input", s(&good), "--vertex-measure", "pagerank"]),
        Some(2)
    );
    assert_eq!(code(&["generate", "--model", "er", "--n", "5"]), Some(2));
    assert_eq!(
        code(&["generate", "--model", "er", "--n", "3", "--m", "4"]),
        Some(2)
    );
    assert_eq!(code(&["generate", "--model", "bter"]), Some(2));
    assert_eq!(
        code(&["anomaly", "--input", s(&good), "--format", "csv"]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "anomaly",
            "--input",
            s(&good),
            "--threshold-fraction",
            "1.5"
        ]),
        Some(2)
    );

    let out = run(&["stats", "--input", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let message = String::from_utf8_lossy(&out.stderr);
    assert!(
        message.contains("bad.txt") && message.contains("line 2"),
        "{message}"
    );
    assert_eq!(code(&["stats", "--input", s(&empty)]), Some(1));
}
