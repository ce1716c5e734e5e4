use std::path::PathBuf;
use std::process::Command;

use lpath::format::{parse_graph, write_graph};
use lpath_core::generators::{gen_block_graph, gen_dag, gen_tree};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn fixtures() -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".lpp"))
        .collect();
    names.sort();
    names
}

/// Run in-process with the given stdin; returns (code, stdout, stderr).
fn lpath(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lpath").chain(args.iter().copied());
    let code = lpath::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn stdout_of(args: &[&str]) -> String {
    let (code, out, err) = lpath(args, "");
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn length_examples() {
    assert_eq!(
        stdout_of(&["length", &fixture("b2.lpp")]),
        "class=uniform-block-graph length=4 chain=2\n"
    );
    assert_eq!(stdout_of(&["length", &fixture("p5.lpp")]), "class=tree length=4\n");
    assert_eq!(stdout_of(&["length", &fixture("tree_d7.lpp")]), "class=tree length=7\n");
    assert_eq!(
        stdout_of(&["length", "--epsilon", "4", &fixture("tree_d7.lpp")]),
        "class=tree lo=4 hi=8\n"
    );
    assert_eq!(stdout_of(&["length", &fixture("diamond.lpp")]), "class=dag length=2\n");
    assert_eq!(
        stdout_of(&["length", &fixture("k4.lpp")]),
        "class=complete-graph length=3 chain=1\n"
    );
    assert_eq!(
        stdout_of(&["length", &fixture("k3_k4.lpp")]),
        "class=block-graph length=5 chain=2\n"
    );
}

#[test]
fn paths_count_chains_classify() {
    assert_eq!(
        stdout_of(&["paths", &fixture("b2.lpp")]),
        "1 2 3 4 5\n1 2 3 5 4\n2 1 3 4 5\n2 1 3 5 4\n"
    );
    assert_eq!(stdout_of(&["paths", &fixture("diamond.lpp")]), "1 2 4\n1 3 4\n");
    assert_eq!(stdout_of(&["count", &fixture("b2.lpp")]), "4\n");
    assert_eq!(stdout_of(&["count", &fixture("k4.lpp")]), "12\n");
    assert_eq!(stdout_of(&["count", &fixture("k3_k4.lpp")]), "12\n");
    assert_eq!(stdout_of(&["chains", &fixture("b2.lpp")]), "1 2 3 | 3 4 5\n");
    assert_eq!(
        stdout_of(&["chains", &fixture("mixed_star.lpp")]),
        "1 2 3 | 1 6 7 8\n1 4 5 | 1 6 7 8\n"
    );
    assert_eq!(stdout_of(&["classify", &fixture("star.lpp")]), "class=tree\n");
    assert_eq!(stdout_of(&["classify", &fixture("cycle4.lpp")]), "class=other\n");
}

#[test]
fn stdin_input() {
    let (code, out, _) = lpath(&["length", "-"], "p lpp d 3 2\ne 1 2\ne 2 3\n");
    assert_eq!((code, out.as_str()), (0, "class=dag length=2\n"));
}

#[test]
fn json_matches_text() {
    for name in fixtures() {
        if name == "cycle4.lpp" {
            continue;
        }
        let f = fixture(&name);
        for eps in ["1", "2", "4"] {
            let text = stdout_of(&["length", "--epsilon", eps, &f]);
            let json: serde_json::Value =
                serde_json::from_str(&stdout_of(&["length", "--epsilon", eps, "--format", "json", &f])).unwrap();
            let mut fields: Vec<String> = vec![format!("class={}", json["class"].as_str().unwrap())];
            match json.get("interval") {
                Some(iv) => fields.push(format!("lo={} hi={}", iv[0], iv[1])),
                None => fields.push(format!("length={}", json["length"])),
            }
            if let Some(c) = json.get("chain_length") {
                fields.push(format!("chain={c}"));
            }
            assert_eq!(text, fields.join(" ") + "\n", "{name} eps={eps}");
        }

        let text = stdout_of(&["paths", &f]);
        let json: serde_json::Value = serde_json::from_str(&stdout_of(&["paths", "--format", "json", &f])).unwrap();
        let from_json: String = json["paths"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| {
                p.as_array().unwrap().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n"
            })
            .collect();
        assert_eq!(text, from_json, "{name}");

        let count = stdout_of(&["count", &f]);
        let json: serde_json::Value = serde_json::from_str(&stdout_of(&["count", "--format", "json", &f])).unwrap();
        assert_eq!(count.trim(), json["count"].to_string(), "{name}");
    }
}

#[test]
fn oracle_check_all_fixtures() {
    for name in fixtures() {
        let (code, out, err) = lpath(&["oracle-check", &fixture(&name)], "");
        if name == "cycle4.lpp" {
            assert_eq!(code, 3, "{err}");
        } else {
            assert_eq!(code, 0, "{name}: {out}{err}");
            assert!(out.starts_with("ok "), "{out}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(lpath(&[], "").0, 1);
    assert_eq!(lpath(&["frobnicate"], "").0, 1);
    assert_eq!(lpath(&["--help"], "").0, 0);
    assert_eq!(lpath(&["--version"], "").0, 0);
    assert_eq!(lpath(&["length", "/nonexistent/graph.lpp"], "").0, 1);
    assert_eq!(lpath(&["length", "--epsilon", "0", &fixture("p5.lpp")], "").0, 1);

    let (code, _, err) = lpath(&["length", "-"], "p lpp u 2 1\ne 1 1\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 2") && err.contains("self-loop"), "{err}");
    assert_eq!(lpath(&["length", "-"], "p lpp u 3 5\ne 1 2\n").0, 2);
    assert_eq!(lpath(&["length", "-"], "p lpp u 4 2\ne 1 2\ne 3 4\n").0, 2);
    let (code, out, _) = lpath(&["classify", "--allow-disconnected", "-"], "p lpp u 4 2\ne 1 2\ne 3 4\n");
    assert_eq!((code, out.as_str()), (0, "class=other\n"));

    assert_eq!(lpath(&["length", &fixture("cycle4.lpp")], "").0, 3);
    assert_eq!(lpath(&["paths", "--cap", "3", &fixture("b2.lpp")], "").0, 4);

    // K21 is past the exhaustive-search guard
    let k21 = write_graph(&gen_block_graph(&[21], 0).unwrap());
    assert_eq!(lpath(&["oracle-check", "-"], &k21).0, 4);
}

#[test]
fn gen_writes_parseable_files() {
    let out = stdout_of(&["gen", "--seed", "3", "tree", "--n", "12"]);
    assert_eq!(parse_graph(&out).unwrap(), gen_tree(12, 3).unwrap());
    let out = stdout_of(&["gen", "--seed", "3", "dag", "--n", "9", "--p", "0.4"]);
    assert_eq!(parse_graph(&out).unwrap(), gen_dag(9, 0.4, 3).unwrap());
    let out = stdout_of(&["gen", "--seed", "3", "block", "--orders", "3,4,3"]);
    assert_eq!(parse_graph(&out).unwrap(), gen_block_graph(&[3, 4, 3], 3).unwrap());
    assert_eq!(lpath(&["gen", "block", "--orders", "2,3"], "").0, 1);
}

#[test]
fn bench_rows() {
    let out = stdout_of(&["bench", "--sizes", "16,32", "--reps", "1"]);
    let ns: Vec<&str> = out.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(ns, ["16", "32"]);
    for line in out.lines() {
        let secs: f64 = line.split(' ').nth(1).unwrap().parse().unwrap();
        assert!(secs >= 0.0);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lpath");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["length", &fixture("b2.lpp")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "class=uniform-block-graph length=4 chain=2\n");
    assert_eq!(status(&["length", &fixture("cycle4.lpp")]).status.code(), Some(3));
    assert_eq!(status(&["nope"]).status.code(), Some(1));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_graphs_round_trip(seed in any::<u64>(), n in 1usize..40, orders in proptest::collection::vec(3usize..6, 1..5)) {
        for g in [gen_tree(n, seed).unwrap(), gen_dag(n, 0.3, seed).unwrap(), gen_block_graph(&orders, seed).unwrap()] {
            let text = write_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph(&back), text);
        }
    }
}
