// Copyright (C) 2026, The maxdep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License in the LICENSE file at the
// root of this repository, or online at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::collections::HashMap;
use std::fs;

use maxdep_cli::{run, CliError};

fn invoke(args: &[&str], env_seed: Option<&str>) -> Result<String, CliError> {
    let mut out = Vec::new();
    let argv = std::iter::once("maxdep").chain(args.iter().copied());
    run(argv, env_seed, &mut out)?;
    Ok(String::from_utf8(out).unwrap())
}

fn ok(args: &[&str]) -> String {
    invoke(args, None).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

/// Rows of a CSV table as column-name maps, skipping the metadata line.
fn rows(text: &str) -> Vec<HashMap<String, String>> {
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# maxdep "));
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_owned).collect();
    lines
        .map(|l| header.iter().cloned().zip(l.split(',').map(str::to_owned)).collect())
        .collect()
}

fn num(r: &HashMap<String, String>, k: &str) -> f64 {
    r[k].parse().unwrap_or_else(|_| panic!("{k} = {:?}", r[k]))
}

#[test]
fn diagonal_examples() {
    let out = ok(&["diagonal", "--model", "movingmax", "--k", "1", "--n", "3", "--u-grid", "0.5"]);
    let r = &rows(&out)[0];
    assert!((num(r, "delta") - 0.25).abs() < 1e-15);
    assert!((num(r, "distortion") - 0.5f64.powf(2.0 / 3.0)).abs() < 1e-12);

    let out = ok(&["diagonal", "--model", "iid", "--rate", "n", "--n", "1,7,40"]);
    for r in rows(&out) {
        assert!((num(&r, "distortion") - num(&r, "u")).abs() < 1e-14);
    }

    let out = ok(&["diagonal", "--model", "clayton", "--theta", "1", "--n", "2", "--u-grid", "0.5"]);
    assert!((num(&rows(&out)[0], "delta") - 1.0 / 3.0).abs() < 1e-14);
}

#[test]
fn distortion_examples() {
    let out = ok(&["distortion", "--generator", "gumbel", "--theta", "2"]);
    for r in rows(&out) {
        assert!((num(&r, "density") - 1.0).abs() < 1e-12);
    }
    let out = ok(&["distortion", "--generator", "clayton", "--theta", "1", "--u-grid", "1"]);
    assert!((num(&rows(&out)[0], "density") - 1.0).abs() < 1e-12);

    let a = rows(&ok(&["distortion", "--model", "efgm", "--theta", "0.5"]));
    let b = rows(&ok(&["distortion", "--model", "efgm", "--theta", "-0.5"]));
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x["cdf"], y["cdf"]);
    }
}

#[test]
fn figure1_matches_golden() {
    let golden = include_str!("golden/figure1.csv");
    let fresh = ok(&["distortion", "--preset", "figure1"]);
    assert_eq!(fresh.lines().take(2).collect::<Vec<_>>(), golden.lines().take(2).collect::<Vec<_>>());
    let (a, b) = (rows(&fresh), rows(golden));
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x["distortion"], y["distortion"]);
        for k in ["u", "cdf", "density", "quantile"] {
            let (p, q) = (num(x, k), num(y, k));
            assert!(p == q || (p - q).abs() <= 1e-12 * p.abs().max(q.abs()), "{} {k}: {p} vs {q}", x["distortion"]);
        }
    }
    // independent spot checks on the stored file
    for r in rows(golden) {
        let u = num(&r, "u");
        match r["distortion"].as_str() {
            "archimedean[gumbel(2)]" | "archimedean[independence]" => {
                assert!((num(&r, "density") - 1.0).abs() < 1e-12);
                assert!((num(&r, "cdf") - u).abs() < 1e-12);
            }
            "archimedean[clayton(1)]" if u > 0.0 => {
                let l = 1.0 - u.ln();
                assert!((num(&r, "cdf") - 1.0 / l).abs() < 1e-12);
                assert!((num(&r, "density") - 1.0 / (u * l * l)).abs() < 1e-9);
            }
            _ => {}
        }
    }
}

#[test]
fn bound_examples() {
    let out = ok(&["bound", "--model", "movingmax", "--k", "1", "--margin", "normal", "--n", "10000"]);
    assert!((num(&rows(&out)[0], "bound") - 0.5707).abs() < 1e-4);

    let out = ok(&["bound", "--model", "cuadras-auge", "--theta", "0.5", "--n", "10"]);
    let r = &rows(&out)[0];
    assert!((num(r, "distortion_term") - 3.60e-4).abs() < 1e-6);
    assert!((num(r, "distortion_bound") - 1.078e-3).abs() < 1e-6);

    let out = ok(&["bound", "--model", "iid", "--margin", "frechet", "--n", "10,100,1000"]);
    for r in rows(&out) {
        assert_eq!(num(&r, "bound"), 0.0);
    }
}

#[test]
fn converge_examples() {
    let out = ok(&["converge", "--model", "movingmax", "--k", "1", "--margin", "frechet", "--n", "64,256,1024", "--reps", "20000"]);
    for r in rows(&out) {
        let s = maxdep::ratebounds::movingmax_s(num(&r, "n") as u64, 1);
        assert!(num(&r, "sup_distance") <= s + 4.0 * num(&r, "max_se"));
    }
    let out = ok(&["converge", "--model", "iid", "--margin", "frechet", "--n", "10,100", "--reps", "20000"]);
    for r in rows(&out) {
        assert!(num(&r, "sup_distance") <= 4.0 * num(&r, "max_se"));
    }
    let out = ok(&[
        "converge", "--model", "clayton", "--theta", "2", "--margin", "exponential", "--rate", "canonical",
        "--n", "100,1000,10000", "--reps", "100000",
    ]);
    let d: Vec<f64> = rows(&out).iter().map(|r| num(r, "sup_distance")).collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
}

#[test]
fn mixing_examples() {
    let out = ok(&["mixing", "--model", "logistic", "--theta", "2", "--n", "1000000"]);
    let r = &rows(&out)[0];
    assert!((num(r, "discrepancy") - (0.5f64.powf(1.0 / 2f64.sqrt()) - 0.5)).abs() < 5e-3);

    for r in rows(&ok(&["mixing", "--model", "iid"])) {
        assert!(num(&r, "discrepancy").abs() < 1e-12);
    }
    let plateau: Vec<f64> = rows(&ok(&["mixing", "--model", "clayton", "--theta", "1"]))
        .iter()
        .map(|r| num(r, "discrepancy"))
        .collect();
    assert!(plateau.iter().all(|&d| d > 0.01));
    assert!((plateau[plateau.len() - 1] - plateau[plateau.len() - 2]).abs() < 1e-3);
}

#[test]
fn exit_codes() {
    let usage = [
        vec!["diagonal", "--model", "nosuchfamily"],
        vec!["frobnicate"],
        vec!["converge", "--model", "iid", "--reps", "3"],
        vec!["diagonal", "--n", "2^x..4"],
    ];
    for args in usage {
        let e = invoke(&args, None).unwrap_err();
        assert_eq!(e.exit_code(), 2, "{args:?}: {e}");
    }
    let e = invoke(&["converge", "--model", "iid", "--margin", "normal", "--n", "1", "--reps", "1000"], None).unwrap_err();
    assert_eq!(e.exit_code(), 3, "{e}");
    let e = invoke(&["diagonal", "--config", "/nonexistent/maxdep.conf"], None).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(invoke(&["--help"], None).is_ok());
}

#[test]
fn metadata_records_config_and_seed() {
    let out = ok(&["diagonal", "--model", "clayton", "--theta", "2", "--n", "3"]);
    let meta = out.lines().next().unwrap();
    assert!(meta.starts_with("# maxdep "));
    for needle in ["command=diagonal", "model=clayton", "theta=2", "n=3", "seed=20240601"] {
        assert!(meta.contains(needle), "{meta}");
    }
    assert_eq!(out.lines().nth(1).unwrap(), "n,u,delta,distortion");
}

#[test]
fn config_file_flags_and_env_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.conf");
    fs::write(&path, "# study\ncommand = converge\nmodel = iid\nmargin = frechet\nn = 10\nreps = 1000\nseed = 5\n").unwrap();
    let p = path.to_str().unwrap();

    let from_file = ok(&["converge", "--config", p]);
    assert!(from_file.lines().next().unwrap().contains("seed=5"));
    assert!(from_file.contains("\n10,"));

    let flagged = ok(&["converge", "--config", p, "--n", "20", "--seed", "6"]);
    let meta = flagged.lines().next().unwrap();
    assert!(meta.contains("n=20") && meta.contains("seed=6"), "{meta}");

    let env = invoke(&["converge", "--config", p, "--seed", "6"], Some("7")).unwrap();
    let meta = env.lines().next().unwrap();
    assert!(meta.contains("seed=7") && meta.contains("n=10"), "{meta}");

    let e = invoke(&["diagonal", "--config", p], None).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert_eq!(invoke(&["converge", "--config", p], Some("abc")).unwrap_err().exit_code(), 2);
}

#[test]
fn out_files_are_byte_identical_for_one_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &std::path::Path| {
        vec![
            "converge".to_owned(), "--model".into(), "clayton".into(), "--theta".into(), "2".into(),
            "--n".into(), "50,500".into(), "--reps".into(), "5000".into(), "--seed".into(), "99".into(),
            "--out".into(), p.to_str().unwrap().to_owned(),
        ]
    };
    let mut sink = Vec::new();
    run(std::iter::once("maxdep".to_owned()).chain(args(&a)), None, &mut sink).unwrap();
    run(std::iter::once("maxdep".to_owned()).chain(args(&b)), None, &mut sink).unwrap();
    assert!(sink.is_empty());
    let (ta, tb) = (fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
    // metadata differs only in the out path
    assert_eq!(ta.lines().skip(1).collect::<Vec<_>>(), tb.lines().skip(1).collect::<Vec<_>>());
    let other = ok(&["converge", "--model", "clayton", "--theta", "2", "--n", "50,500", "--reps", "5000", "--seed", "100"]);
    assert_ne!(ta.lines().skip(2).collect::<Vec<_>>(), other.lines().skip(2).collect::<Vec<_>>());
}

#[test]
fn jsonl_output() {
    let out = ok(&["diagonal", "--model", "movingmax", "--k", "1", "--n", "3", "--u-grid", "0.5", "--format", "jsonl"]);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["command"], "diagonal");
    assert_eq!(lines[0]["config"]["seed"], "20240601");
    assert_eq!(lines[1]["columns"], serde_json::json!(["n", "u", "delta", "distortion"]));
    assert_eq!(lines[2]["n"], 3);
    assert_eq!(lines[2]["delta"], 0.25);
}

#[test]
fn threads_do_not_change_output() {
    let base = ["converge", "--model", "berman", "--rho-corr", "0.5", "--n", "100", "--reps", "10000"];
    let one = ok(&[&base[..], &["--threads", "1"]].concat());
    let three = ok(&[&base[..], &["--threads", "3"]].concat());
    assert_eq!(one, three);
}
