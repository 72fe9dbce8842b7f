use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use omega_cli::parse::parse;
use omega_cli::{CliError, EXIT_INCONSISTENT, EXIT_PARSE, EXIT_RESOURCE_CAP, EXIT_ZERO_MODULE};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn omega(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_omega"));
    cmd.args(args)
        .env_remove("OMEGA_MAX_SPAIRS")
        .env_remove("OMEGA_MAX_PIECE_DEGREE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn fixture(name: &str) -> String {
    corpus().join(name).to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_reports_two_planes() {
    let out = omega(
        &["check", &fixture("fixtures/two_planes.gmod"), "--json"],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["label"], "two-planes");
    let inv = &v["invariants"];
    assert_eq!(
        [
            &inv["depth"],
            &inv["dim"],
            &inv["codim"],
            &inv["pd"],
            &inv["omega"]
        ],
        [1, 2, 2, 3, 2]
    );
    let c = &v["conditions"];
    assert_eq!(c["agree"], true);
    assert_eq!(c["depth_equals_omega"], false);
    assert_eq!(c["tor_nonzero"], false);
    assert_eq!(v["gap_one"]["verdict"], "refuted");
    assert_eq!(v["gap_one"]["needs_review"], false);
    assert_eq!(v["ring"]["sigma"], 4);
}

#[test]
fn json_keys_come_in_a_fixed_order() {
    let out = omega(
        &["invariants", &fixture("fixtures/xx_xy.gmod"), "--json"],
        &[],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = [
        "\"label\"",
        "\"engine\"",
        "\"ring\"",
        "\"module\"",
        "\"invariants\"",
        "\"wall_time_ms\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
    assert!(!text.contains("\"conditions\""));
}

#[test]
fn invariants_text_has_betti_table() {
    let out = omega(&["invariants", &fixture("fixtures/two_planes.gmod")], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("depth 1  dim 2  codim 2  pd 3  omega 2"),
        "{text}"
    );
    assert!(text.contains("total:  1 4 4 1"), "{text}");
    assert!(
        text.contains("hilbert numerator: 1 - 4t^2 + 4t^3 - t^4"),
        "{text}"
    );
}

#[test]
fn resolve_prints_differentials() {
    let out = omega(&["resolve", &fixture("fixtures/xx_xy.gmod")], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("F_1: rank 2, generator degrees [2, 2]"),
        "{text}"
    );
    assert!(text.contains("[x^2, x*y]"), "{text}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gmod");
    std::fs::write(&bad, "ring char 2 vars x(1)\nrel x+\n").unwrap();
    let out = omega(&["check", bad.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(EXIT_PARSE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 7"));

    let missing = dir.path().join("missing.gmod");
    assert_eq!(
        omega(&["check", missing.to_str().unwrap()], &[])
            .status
            .code(),
        Some(EXIT_PARSE)
    );

    let zero = omega(&["check", &fixture("degenerate/zero.gmod")], &[]);
    assert_eq!(zero.status.code(), Some(EXIT_ZERO_MODULE));
    assert!(String::from_utf8_lossy(&zero.stderr).contains("zero module"));

    let capped = omega(
        &["check", &fixture("fixtures/two_planes.gmod")],
        &[("OMEGA_MAX_SPAIRS", "1")],
    );
    assert_eq!(capped.status.code(), Some(EXIT_RESOURCE_CAP));
    assert!(capped.stdout.is_empty());

    let config = omega(
        &["check", &fixture("fixtures/free.gmod")],
        &[("OMEGA_MAX_SPAIRS", "many")],
    );
    assert_eq!(config.status.code(), Some(EXIT_PARSE));
}

#[test]
fn engine_errors_map_to_exit_codes() {
    use omega_kernel::Error;
    let code = |e: Error| CliError::Engine(e).exit_code();
    assert_eq!(code(Error::Inconsistent("x".into())), EXIT_INCONSISTENT);
    assert_eq!(code(Error::ZeroModule), EXIT_ZERO_MODULE);
    assert_eq!(code(Error::ResourceCap("x".into())), EXIT_RESOURCE_CAP);
}

#[test]
fn empty_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = omega(&["corpus", dir.path().to_str().unwrap(), "--json"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["files"], 0);
    assert_eq!(v["results"].as_array().unwrap().len(), 0);
}

#[test]
fn unparsable_files_are_isolated() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("a.gmod"),
        "ring char 2 vars x(1) y(1)\nrel x*y\n",
    )
    .unwrap();
    std::fs::write(dir.path().join("b.gmod"), "ring char 4 vars x(1)\n").unwrap();
    std::fs::write(
        dir.path().join("c.gmod"),
        "ring char 3 vars x(1)\nrel x^2\n",
    )
    .unwrap();
    std::fs::write(dir.path().join("notes.txt"), "not a presentation").unwrap();
    let out = omega(
        &[
            "corpus",
            dir.path().to_str().unwrap(),
            "--json",
            "--jobs",
            "3",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let results = v["results"].as_array().unwrap();
    let files: Vec<&str> = results
        .iter()
        .map(|r| r["file"].as_str().unwrap())
        .collect();
    assert_eq!(files, ["a.gmod", "b.gmod", "c.gmod"]);
    let status: Vec<&str> = results
        .iter()
        .map(|r| r["status"].as_str().unwrap())
        .collect();
    assert_eq!(status, ["agree", "error", "agree"]);
    assert_eq!(results[1]["exit_code"], EXIT_PARSE);
    assert!(results[1]["error"].as_str().unwrap().contains("line 1"));
    assert_eq!(v["summary"]["errors"], 1);
    assert_eq!(v["summary"]["agree"], 2);
}

#[test]
fn shipped_corpus_summary() {
    let out = omega(
        &[
            "corpus",
            corpus().to_str().unwrap(),
            "--json",
            "--jobs",
            "4",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let s = &json(&out)["summary"];
    assert_eq!(s["inconsistent"], 0);
    assert_eq!(s["errors"], 1);
    assert_eq!(s["refuted_with_claim"], 0);
    assert_eq!(s["gap_one_refuted"], 1);
}

fn random_presentation(rng: &mut StdRng) -> String {
    let p = [2, 3, 5, 7][rng.random_range(0..4)];
    let names = ["x", "y", "z", "w"];
    let n = rng.random_range(1..=4);
    let weights: Vec<i64> = (0..n).map(|_| rng.random_range(1..=3)).collect();
    let mut text = format!("ring char {p} vars");
    for v in 0..n {
        text.push_str(&format!(" {}({})", names[v], weights[v]));
    }
    text.push('\n');
    let rank = rng.random_range(1..=2);
    let gdeg: Vec<i64> = (0..rank).map(|_| rng.random_range(-1..=2)).collect();
    text.push_str("gens");
    for (k, d) in gdeg.iter().enumerate() {
        text.push_str(&format!(" e{k}({d})"));
    }
    text.push('\n');
    // each relation is homogeneous of a chosen degree: every term is a
    // monomial of degree `target - gdeg[k]` on generator k
    for _ in 0..rng.random_range(0..=3) {
        let target = gdeg.iter().max().unwrap() + rng.random_range(1..=4);
        let mut terms = Vec::new();
        for (k, &d) in gdeg.iter().enumerate() {
            for _ in 0..rng.random_range(0..=2) {
                if let Some(m) = monomial_of_degree(rng, &weights, target - d) {
                    let c = rng.random_range(1..p);
                    let mono: Vec<String> = m
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| {
                            if e == 1 {
                                names[v].to_string()
                            } else {
                                format!("{}^{e}", names[v])
                            }
                        })
                        .collect();
                    let mono = if mono.is_empty() {
                        String::new()
                    } else {
                        format!("{}*", mono.join("*"))
                    };
                    terms.push(format!("{c}*{mono}e{k}"));
                }
            }
        }
        if !terms.is_empty() {
            text.push_str(&format!("rel {}\n", terms.join(" + ")));
        }
    }
    text.push_str("meta label random\n");
    text
}

fn monomial_of_degree(rng: &mut StdRng, weights: &[i64], d: i64) -> Option<Vec<u32>> {
    for _ in 0..20 {
        let mut left = d;
        let mut exps = vec![0u32; weights.len()];
        while left > 0 {
            let v = rng.random_range(0..weights.len());
            if weights[v] <= left {
                exps[v] += 1;
                left -= weights[v];
            } else if weights.iter().all(|&w| w > left) {
                break;
            }
        }
        if left == 0 {
            return Some(exps);
        }
    }
    None
}

#[test]
fn parser_round_trip() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..300 {
        let text = random_presentation(&mut rng);
        let p = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let canonical = p.to_text();
        let q = parse(&canonical).unwrap_or_else(|e| panic!("{e}\n{canonical}"));
        assert_eq!(p, q, "{text}\n{canonical}");
        assert_eq!(q.to_text(), canonical);
    }
}
