use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use upset_core::embedder::grid_embed;
use upset_core::graphs::build_gadget;
use upset_core::io::{read_points, write_gadget, write_points};
use upset_core::montecarlo::{run_trials, SampleMode, TrialConfig};
use upset_core::permutations::theorem_threshold;

fn upset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_upset"))
        .args(args)
        .env_remove("UPSET_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn strip_timestamps(mut v: Value) -> Value {
    if let Some(m) = v.get_mut("manifest").and_then(Value::as_object_mut) {
        m.remove("started_at");
        m.remove("finished_at");
    }
    v
}

#[test]
fn gadget_header() {
    let out = upset(&["gadget", "--n", "36"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("36 102"));
    assert_eq!(text, write_gadget(&build_gadget(36).unwrap()));
}

#[test]
fn gadget_rejects_bad_n() {
    let out = upset(&["gadget", "--n", "13"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "InvalidN");
}

#[test]
fn certify_small_set() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("u.csv");
    std::fs::write(&pts, "lattice_bits=40\n1,2\n2,4\n3,1\n4,3\n").unwrap();
    let v = json(&upset(&["certify", "--points", path_str(&pts), "--n", "36"]));
    assert_eq!(v["certified"], true);
    assert_eq!(v["lis"], 2);
    assert_eq!(v["lds"], 2);
    assert_eq!(v["ell"], 3);
}

#[test]
fn certify_inconclusive_and_precondition() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("u.csv");
    std::fs::write(&pts, "lattice_bits=40\n1,1\n2,2\n3,3\n").unwrap();
    let v = json(&upset(&["certify", "--points", path_str(&pts), "--n", "24"]));
    assert_eq!(v["certified"], false);
    let out = upset(&["certify", "--points", path_str(&pts), "--n", "11"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Precondition");
}

#[test]
fn bound_matches_library() {
    let v = json(&upset(&["bound", "--n", "24"]));
    assert_eq!(v["m_max"], 0);
    assert_eq!(v["tail"], 0.5);
    assert_eq!(v["boundary_flag"], false);
    for n in [131u64, 1305, 5000] {
        let v = json(&upset(&["bound", "--n", &n.to_string()]));
        let t = theorem_threshold(n).unwrap();
        assert_eq!(v["m_max"], t.m_max);
        let tail = v["tail"].as_f64().unwrap();
        assert!(
            (tail - t.tail).abs() <= 1e-15 * t.tail,
            "n={n}: {tail} vs {}",
            t.tail
        );
    }
}

#[test]
fn lis_command() {
    let v = json(&upset(&["lis", "--perm", "5,1,4,2,3"]));
    assert_eq!((v["lis"].as_u64(), v["lds"].as_u64()), (Some(3), Some(3)));
    let out = upset(&["lis", "--perm", "1,1,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chain_reports_steps() {
    let v = json(&upset(&["chain", "--m", "100", "--ell", "55"]));
    let names: Vec<&str> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(&names[..3], &["union", "stirling", "collected"]);
    assert_eq!(v["monotone"], true);
    assert!(v["union_exact"]["capped"].is_string());
}

#[test]
fn pipeline_gadget_grid_witness() {
    let dir = TempDir::new().unwrap();
    for n in (12..=120).step_by(12) {
        let g = dir.path().join(format!("g{n}.txt"));
        let p = dir.path().join(format!("p{n}.csv"));
        let pl = dir.path().join(format!("pl{n}.json"));
        let out = upset(&["gadget", "--n", &n.to_string(), "-o", path_str(&g)]);
        assert!(out.status.success());

        let out = upset(&["grid-embed", "--graph", path_str(&g), "-o", path_str(&p)]);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["verified"], true);
        std::fs::write(&pl, &out.stdout).unwrap();

        // CLI output equals the library result.
        let lib = grid_embed(build_gadget(n).unwrap().graph()).unwrap();
        let written = std::fs::read_to_string(&p).unwrap();
        assert_eq!(written, write_points(lib.placement()));
        assert_eq!(read_points(&written).unwrap().1, lib.placement());

        let out = upset(&[
            "witness",
            "--graph",
            path_str(&g),
            "--points",
            path_str(&p),
            "--placement",
            path_str(&pl),
        ]);
        assert!(
            out.status.success(),
            "n={n}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        let w = json(&out);
        let size = w["size"].as_u64().unwrap();
        assert!(size as usize >= n / 12, "n={n}: witness {size}");
        let pts = w["witness"]["points"].as_array().unwrap();
        assert_eq!(pts.len() as u64, size);
        let ys: Vec<i64> = pts.iter().map(|p| p["y"].as_i64().unwrap()).collect();
        let xs: Vec<i64> = pts.iter().map(|p| p["x"].as_i64().unwrap()).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        match w["witness"]["direction"].as_str().unwrap() {
            "increasing" => assert!(ys.windows(2).all(|w| w[0] < w[1])),
            "decreasing" => assert!(ys.windows(2).all(|w| w[0] > w[1])),
            d => panic!("direction {d}"),
        }
    }
}

#[test]
fn witness_rejects_foreign_points() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.txt");
    let p = dir.path().join("p.csv");
    let pl = dir.path().join("pl.json");
    upset(&["gadget", "--n", "12", "-o", path_str(&g)]);
    let out = upset(&["grid-embed", "--graph", path_str(&g)]);
    std::fs::write(&pl, &out.stdout).unwrap();
    std::fs::write(&p, "lattice_bits=40\n0,0\n").unwrap();
    let out = upset(&[
        "witness",
        "--graph",
        path_str(&g),
        "--points",
        path_str(&p),
        "--placement",
        path_str(&pl),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Precondition");
}

#[test]
fn embed_check_outcomes() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("k4.txt");
    std::fs::write(&g, "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let convex = dir.path().join("convex.csv");
    std::fs::write(&convex, "lattice_bits=40\n0,0\n10,0\n10,10\n0,10\n").unwrap();
    let good = dir.path().join("good.csv");
    std::fs::write(&good, "lattice_bits=40\n0,0\n10,0\n5,10\n5,3\n").unwrap();

    let out = upset(&[
        "embed-check",
        "--graph",
        path_str(&g),
        "--points",
        path_str(&good),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], "yes");
    assert_eq!(v["placement"].as_array().unwrap().len(), 4);

    let out = upset(&[
        "embed-check",
        "--graph",
        path_str(&g),
        "--points",
        path_str(&convex),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], "no");

    let out = upset(&[
        "embed-check",
        "--graph",
        path_str(&g),
        "--points",
        path_str(&convex),
        "--budget",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"], "unknown");
}

#[test]
fn mc_matches_library_and_worker_count() {
    let lib = run_trials(&TrialConfig {
        m: 6,
        ell: 4,
        trials: 5000,
        master_seed: 9,
        mode: SampleMode::Points,
    })
    .unwrap();
    let base = [
        "mc", "--m", "6", "--ell", "4", "--trials", "5000", "--seed", "9", "--json",
    ];
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let mut args = base.to_vec();
        args.extend(["--workers", workers]);
        let v = json(&upset(&args));
        assert_eq!(v["hits"], lib.hits);
        assert_eq!(v["manifest"]["master_seed"], 9);
        outputs.push(v);
    }
    assert_eq!(outputs[0]["mean_max_monotone"], outputs[1]["mean_max_monotone"]);

    let out = Command::new(env!("CARGO_BIN_EXE_upset"))
        .args(base)
        .env("UPSET_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(json(&out)["hits"], lib.hits);
}

#[test]
fn runs_are_reproducible_modulo_timestamps() {
    let args = [
        "thm1", "--n", "1200", "--trials", "50", "--seed", "4", "--m", "500",
    ];
    let a = strip_timestamps(json(&upset(&args)));
    let b = strip_timestamps(json(&upset(&args)));
    assert_eq!(a, b);
    for key in ["subcommand", "argv", "config", "tool_version", "master_seed"] {
        assert!(a["manifest"].get(key).is_some(), "manifest lacks {key}");
    }
}

#[test]
fn csv_output() {
    let out = upset(&[
        "mc", "--m", "4", "--ell", "4", "--trials", "100", "--seed", "1", "--csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
    assert!(lines[0].starts_with("n,m,ell,trials"));
}

#[test]
fn thm1_vacuous_below_threshold() {
    let v = json(&upset(&["thm1", "--n", "24", "--trials", "10", "--seed", "1"]));
    assert_eq!(v["vacuous"], true);
    assert_eq!(v["config"]["m"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(upset(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(upset(&["bound"]).status.code(), Some(64));
    assert_eq!(upset(&["bound", "--n", "x"]).status.code(), Some(64));
    assert_eq!(upset(&["--help"]).status.code(), Some(0));
    assert_eq!(upset(&["--version"]).status.code(), Some(0));
    assert_eq!(upset(&["bound", "--n", "3"]).status.code(), Some(1));
    let missing = upset(&["certify", "--points", "/nonexistent/u.csv", "--n", "24"]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(json(&missing)["error"]["kind"], "Io");
}
