use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use moind_core::moea::{nsga2_run, EvolutionConfig};
use moind_core::{Problem, ProblemKind};
use moind_harness::io::{read_population, write_population};
use tempfile::TempDir;

fn moind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moind")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn dtlz2_population(dir: &Path) -> std::path::PathBuf {
    let p = Problem::new(ProblemKind::Dtlz2, 3).unwrap();
    let cfg = EvolutionConfig { pop_size: 20, max_evaluations: 400, ..Default::default() };
    let pop = nsga2_run(&p, &cfg).unwrap().final_population;
    let path = dir.join("pop.csv");
    write_population(&path, &pop).unwrap();
    path
}

fn value_of(out: &str, metric: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{metric}\t")))
        .unwrap_or_else(|| panic!("no {metric} in {out}"))
        .parse()
        .unwrap()
}

#[test]
fn front_writes_unit_sphere_points() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = moind(&["front", "--problem", "dtlz2", "--count", "100", "--seed", "7", "--out", path_str(path)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let file = read_population(&a, None).unwrap();
    assert_eq!(file.problem_tag.as_deref(), Some("dtlz2"));
    assert!(!file.population.has_decisions());
    assert_eq!(file.population.len(), 100);
    for m in file.population.members() {
        let s: f64 = m.objectives().values().iter().map(|v| v * v).sum();
        assert!((s - 1.0).abs() <= 1e-12);
    }
    let zero = moind(&["front", "--problem", "dtlz2", "--count", "0", "--out", path_str(&a)]);
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn entropy_of_decision_bearing_file() {
    let dir = TempDir::new().unwrap();
    let pop = dtlz2_population(dir.path());
    let manifest = dir.path().join("m.json");
    let o = moind(&[
        "indicators",
        "--population",
        path_str(&pop),
        "--metrics",
        "entropy,hv,igd",
        "--front-size",
        "200",
        "--manifest",
        path_str(&manifest),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let h = value_of(&stdout(&o), "entropy");
    assert!((0.0..=0.265375).contains(&h), "{h}");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    let values = json["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    assert_eq!(values[0]["indicator"], "entropy");
    assert_eq!(values[1]["parameters"]["method"], "exact");
    assert_eq!(json["config"]["front_size"], 200);
}

#[test]
fn delta_p_against_itself_is_zero() {
    let dir = TempDir::new().unwrap();
    let pop = dtlz2_population(dir.path());
    let o = moind(&[
        "indicators",
        "--population",
        path_str(&pop),
        "--reference",
        path_str(&pop),
        "--metrics",
        "delta_p:2,igd,gd",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    for metric in ["delta_p:2", "igd", "gd"] {
        assert_eq!(value_of(&stdout(&o), metric), 0.0);
    }
}

#[test]
fn unknown_metric_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let pop = dtlz2_population(dir.path());
    let o = moind(&["indicators", "--population", path_str(&pop), "--metrics", "igd,spread"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("spread") && err.contains("delta_p:<p>") && err.contains("entropy"), "{err}");
}

#[test]
fn objective_only_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("f.csv");
    fs::write(&path, "# problem: dtlz2\nf1,f2,f3\n1,0,0\n0,1,0\n0,0,1\n0.6,0.6,0.6\n").unwrap();
    let ok = moind(&["indicators", "--population", path_str(&path), "--metrics", "gd,igd,hv"]);
    assert!(ok.status.success(), "{}", stderr(&ok));
    let h = moind(&["indicators", "--population", path_str(&path), "--metrics", "entropy"]);
    assert_eq!(h.status.code(), Some(1));
    assert!(stderr(&h).contains("decision vectors required"), "{}", stderr(&h));
}

#[test]
fn data_errors_exit_one_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "f1,f2\n0.1,0.2\n0.3\n").unwrap();
    let o = moind(&["indicators", "--population", path_str(&path), "--metrics", "hv", "--hv-ref", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.csv:3:"), "{}", stderr(&o));
    let missing = moind(&["indicators", "--population", "/no/such.csv"]);
    assert_eq!(missing.status.code(), Some(2));
    let no_ref = moind(&["indicators", "--population", path_str(&path), "--metrics", "igd"]);
    assert_eq!(no_ref.status.code(), Some(1));
}

#[test]
fn raw_hypervolume_with_explicit_reference() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.csv");
    fs::write(&path, "f1,f2\n0.5,0.5\n").unwrap();
    let o = moind(&["indicators", "--population", path_str(&path), "--metrics", "hv", "--hv-ref", "1,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(value_of(&stdout(&o), "hv"), 0.25);
    let wrong = moind(&["indicators", "--population", path_str(&path), "--metrics", "hv", "--hv-ref", "1,1,1"]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn run_writes_tables_and_manifest() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("exp.toml");
    fs::write(
        &cfg,
        r#"
problems = ["dtlz2"]
algorithms = ["nsga2", "random"]
runs = 1
indicators = ["delta_p:2", "hv", "entropy"]
reference_front_size = 200
output = "out"

[evolution]
pop_size = 20
max_evaluations = 400
"#,
    )
    .unwrap();
    let o = moind(&["run", "--config", path_str(&cfg)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("out");
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 2 * 3);
    for line in summary.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[4].parse::<f64>().unwrap(), 0.0, "{line}");
        assert_eq!(cells[5], "1");
    }
    assert_eq!(fs::read_to_string(out.join("raw.csv")).unwrap().lines().count(), 1 + 6);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seeds"], serde_json::json!([1]));
    assert_eq!(manifest["config"]["evolution"]["pop_size"], 20);

    assert_eq!(moind(&["run", "--config", "/no/such/exp.toml"]).status.code(), Some(2));
}

#[test]
fn trace_emits_one_row_per_generation() {
    let dir = TempDir::new().unwrap();
    let o = moind(&[
        "trace", "--problem", "zdt2", "--algo", "nsga2", "--evals", "1000", "--pop-size", "20", "--seed", "1", "--out",
        path_str(dir.path()),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 50);
    assert!(dir.path().join("manifest.json").is_file());
}

#[test]
fn timing_emits_rows_per_indicator() {
    let dir = TempDir::new().unwrap();
    let o = moind(&["timing", "--mode", "popsize", "--sizes", "100,200,400", "--out", path_str(dir.path())]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("timing_popsize.csv")).unwrap();
    for indicator in ["delta_p:2", "hv", "entropy"] {
        assert_eq!(csv.lines().filter(|l| l.split(',').nth(5) == Some(indicator)).count(), 3);
    }
    let bad = moind(&["timing", "--mode", "sideways", "--out", path_str(dir.path())]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn help_exits_cleanly() {
    let o = moind(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("indicators"));
    assert_eq!(moind(&["frobnicate"]).status.code(), Some(2));
}
