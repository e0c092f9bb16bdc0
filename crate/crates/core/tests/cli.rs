use std::process::{Command, Output};

fn perc_route(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perc-route"))
        .args(args)
        .output()
        .expect("spawn perc-route")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn route_across_4x4() {
    let o = perc_route(&[
        "route", "--planes", "4", "--slots", "4", "--from", "0,0", "--to", "2,2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(field(&text, "distance"), "4");
    assert_eq!(field(&text, "hops"), "4");
    let path: Vec<_> = field(&text, "path").split(" -> ").collect();
    assert_eq!(path.len(), 5);
    assert_eq!(path[0], "(0,0)");
    assert_eq!(path[4], "(2,2)");
    assert_eq!(field(&text, "relaxations"), "64");
    assert!(stderr(&o).is_empty());
}

#[test]
fn route_to_self() {
    let o = perc_route(&[
        "route", "--planes", "4", "--slots", "4", "--from", "0,0", "--to", "0,0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "distance"), "0");
    assert_eq!(field(&text, "path"), "(0,0)");
}

#[test]
fn route_with_flat_ids_and_other_solvers() {
    for algorithm in ["percolation", "naive", "heap"] {
        let o = perc_route(&[
            "route",
            "--planes",
            "4",
            "--slots",
            "4",
            "--from",
            "0",
            "--to",
            "10",
            "--algorithm",
            algorithm,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(field(&stdout(&o), "distance"), "4");
        assert_eq!(field(&stdout(&o), "algorithm"), algorithm);
    }
}

#[test]
fn route_rejects_two_planes() {
    let o = perc_route(&["route", "--planes", "2", "--slots", "4", "--from", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("planes must be >= 3"), "{err}");
}

#[test]
fn route_rejects_out_of_range_node() {
    let o = perc_route(&["route", "--planes", "3", "--slots", "3", "--from", "5,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn route_timing_goes_to_stderr() {
    let args = ["route", "--planes", "5", "--slots", "5", "--timing"];
    let a = perc_route(&args);
    let b = perc_route(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stderr(&a).starts_with("elapsed_ns: "));
}

#[test]
fn route_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("grid.cfg");
    std::fs::write(&cfg, "planes=4\nslots=4\n").unwrap();
    let o = perc_route(&[
        "route",
        "--grid-config",
        cfg.to_str().unwrap(),
        "--to",
        "2,2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(field(&stdout(&o), "distance"), "4");

    std::fs::write(&cfg, "planes=1\nslots=4\n").unwrap();
    let o = perc_route(&["route", "--grid-config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn estimate_x_is_byte_stable() {
    let args = [
        "estimate-x",
        "--planes",
        "18",
        "--slots",
        "36",
        "--trials",
        "100",
        "--seed",
        "7",
    ];
    let a = perc_route(&args);
    let b = perc_route(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(field(&text, "trials"), "100");
    assert!(field(&text, "reference_ratio").starts_with("0.133333"));
    let ratio: f64 = field(&text, "ratio_to_n").parse().unwrap();
    assert!(ratio > 0.0 && ratio < 1.0);
}

#[test]
fn estimate_x_rejects_zero_trials() {
    let o = perc_route(&[
        "estimate-x",
        "--planes",
        "4",
        "--slots",
        "4",
        "--trials",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
    assert!(stderr(&o).contains("trials"));
}

#[test]
fn bench_typical_writes_twelve_json_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let o = perc_route(&[
        "bench",
        "--typical",
        "--repetitions",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = value.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let labels: Vec<_> = rows.iter().map(|r| r["label"].as_str().unwrap()).collect();
    for label in ["oneweb", "kuiper", "starlink-a", "starlink-b"] {
        assert_eq!(labels.iter().filter(|&&l| l == label).count(), 3);
    }
    assert!(stdout(&o).contains("wrote 12 records"));
}

#[test]
fn bench_sweep_writes_102_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results.csv");
    let o = perc_route(&[
        "bench",
        "--sweep",
        "--repetitions",
        "1",
        "--stable",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 102);
    assert_eq!(
        lines[0],
        "label,planes,slots,n,algorithm,repetitions,median_ns,min_search_comparisons,relaxations,frontier_peak,measured_x"
    );
    assert!(stderr(&o).contains("median_ns"));
    assert!(!stdout(&o).contains("median_ns"));
}

#[test]
fn bench_requires_out_and_mode() {
    let o = perc_route(&["bench", "--sweep"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
    let o = perc_route(&["bench", "--out", "x.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = perc_route(&["bench", "--sweep", "--typical", "--out", "x.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_unwritable_destination_is_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nope").join("t.csv");
    let o = perc_route(&[
        "bench",
        "--typical",
        "--repetitions",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert_eq!(err.lines().filter(|l| l.starts_with("error: ")).count(), 1);
    assert!(err.contains("nope"));
}

#[test]
fn generate_dumps_adjacency() {
    let o = perc_route(&["generate", "--planes", "4", "--slots", "4", "--seam"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 16);
    assert_eq!(v["edges"], 28);
    assert_eq!(v["seam"], "seam");
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 16);
    assert_eq!(nodes[0]["neighbors"].as_array().unwrap().len(), 3);
    assert_eq!(nodes[5]["neighbors"].as_array().unwrap().len(), 4);
}

#[test]
fn generate_uniform_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let args = [
        "generate",
        "--planes",
        "3",
        "--slots",
        "5",
        "--weights",
        "uniform",
        "--lo",
        "2",
        "--hi",
        "3",
        "--weight-seed",
        "4",
        "--out",
        out.to_str().unwrap(),
    ];
    assert_eq!(perc_route(&args).status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for node in v["nodes"].as_array().unwrap() {
        for nb in node["neighbors"].as_array().unwrap() {
            let w = nb["weight"].as_f64().unwrap();
            assert!((2.0..=3.0).contains(&w));
        }
    }
}
