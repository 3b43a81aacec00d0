use std::path::{Path, PathBuf};
use std::process::Command;

use finspace::graphs::{dag_to_space, HasseDiagram};
use finspace_cli::dot::{dag_to_dot, hasse_to_dot, parse_dot};
use finspace_cli::genotypes::ingest_genotypes;
use finspace_cli::json::{parse_space, space_to_json};

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn read(rel: &str) -> String {
    std::fs::read_to_string(data(rel)).unwrap()
}

/// Runs the command in-process; returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("finspace").chain(args.iter().copied());
    let code = finspace_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(rel: &str) -> String {
    data(rel).display().to_string()
}

#[test]
fn enumerate_prints_table_two_counts() {
    let (code, out, _) = run(&["enumerate", "--n", "3", "--t0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "distinct_t0: 19, inequivalent_t0: 5\n");
    let (_, out, _) = run(&["enumerate", "--n", "4", "--threads", "3"]);
    assert_eq!(out, "distinct: 355, inequivalent: 33\n");
    let (_, out, _) = run(&["enumerate", "--n", "5", "--t0", "--up-to", "homeo"]);
    assert_eq!(out, "inequivalent_t0: 63, minimal_t0: 4\n");
}

#[test]
fn enumerate_list_streams_one_space_per_line() {
    let (code, out, err) = run(&["enumerate", "--n", "3", "--t0", "--up-to", "homeo", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(err, "inequivalent_t0: 5, minimal_t0: 1\n");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    for l in lines {
        assert!(parse_space(l, "line").unwrap().is_t0());
    }
    let (_, out, _) = run(&["enumerate", "--n", "4", "--list", "--up-to", "labeled"]);
    assert_eq!(out.lines().count(), 355);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = run(&["enumerate", "--n", "5", "--t0", "--threads", "1"]);
    let many = run(&["enumerate", "--n", "5", "--t0", "--threads", "8"]);
    assert_eq!(one, many);
}

#[test]
fn cap_override_from_environment() {
    let bin = env!("CARGO_BIN_EXE_finspace");
    let out = Command::new(bin).args(["enumerate", "--n", "5", "--t0"]).env("FINSPACE_MAX_N", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at most 4"));
    let out = Command::new(bin).args(["enumerate", "--n", "7", "--up-to", "labeled"]).env("FINSPACE_MAX_N", "7").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "distinct: 9535241\n");
    let out = Command::new(bin).args(["enumerate", "--n", "2"]).env("FINSPACE_MAX_N", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_covid_dag_to_space() {
    let (code, out, _) = run(&["convert", "--from", "dag", "--to", "space", &path("covid.dot")]);
    assert_eq!(code, 0);
    let s = parse_space(&out, "out").unwrap();
    let u = |x: &str| {
        let mut v: Vec<&str> = s.labels_of(s.min_open(s.index_of(x).unwrap()));
        v.sort();
        v.into_iter().map(str::to_owned).collect::<Vec<_>>()
    };
    assert_eq!(u("AZV"), vec!["AZV", "VITT"]);
    assert_eq!(u("VITT"), vec!["VITT"]);
    assert_eq!(out, read("covid.json"));
}

#[test]
fn convert_between_formats() {
    let (_, out, _) = run(&["convert", "--from", "space", "--to", "dag", &path("covid.json")]);
    assert_eq!(out, read("covid.dot"));
    let (_, latent, _) = run(&["convert", "--from", "hyper", "--to", "space", &path("covid-admg.json")]);
    let s = parse_space(&latent, "out").unwrap();
    assert_eq!(s.min_open(s.index_of("*").unwrap()).len(), 3);
    let (code, _, err) = run(&["convert", "--from", "space", "--to", "hasse", &path("table1/row5.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("not T0"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("cg.dot");
    std::fs::write(&chain, "digraph { a -> b; a -> c; b -- c }\n").unwrap();
    let (_, out, _) = run(&["convert", "--from", "chain", "--to", "space", chain.to_str().unwrap()]);
    let s = parse_space(&out, "out").unwrap();
    assert!(!s.is_t0() && s.is_connected());
    let q = finspace::homotopy::t0_quotient(&s).0;
    assert_eq!(q.len(), 2);
    assert!(parse_dot(&std::fs::read_to_string(&chain).unwrap(), "cg").unwrap().to_dag("cg").is_err());

    let trans = dir.path().join("t.dot");
    std::fs::write(&trans, "digraph { a -> b -> c; a -> c }\n").unwrap();
    let (_, out, _) = run(&["convert", "--from", "dag", "--to", "hasse", trans.to_str().unwrap()]);
    assert_eq!(out, "digraph {\n  a;\n  b;\n  c;\n  a -> b;\n  b -> c;\n}\n");
    let (_, out, _) = run(&["convert", "--from", "dag", "--to", "dag", trans.to_str().unwrap()]);
    assert!(out.contains("a -> c"));
}

#[test]
fn dsep_on_the_collider() {
    let (code, out, _) = run(&["dsep", &path("collider.json"), "--u", "b", "--v", "c", "--z", "a"]);
    assert_eq!(code, 0);
    assert_eq!(out, "false\nfence: b -- a -- c\n");
    let (_, out, _) = run(&["dsep", &path("collider.json"), "--u", "b", "--v", "c"]);
    assert_eq!(out, "true\n");
    let (code, out, _) = run(&["dsep", &path("covid.dot"), "--u", "AZV", "--v", "VITT"]);
    assert_eq!((code, out.as_str()), (0, "false\nfence: AZV -- VITT\n"));
    let (code, _, err) = run(&["dsep", &path("collider.json"), "--u", "b", "--v", "q"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown element `q`"));
}

#[test]
fn reduce_core_traces_removals() {
    let (code, out, _) = run(&["reduce-core", &path("table1/row3.json"), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["core_size"], 1);
    assert_eq!(v["removals"].as_array().unwrap().len(), 2);
    let (_, out, _) = run(&["reduce-core", &path("table1/row1.json"), "--format", "dot"]);
    assert_eq!(out, "digraph {\n  a;\n  b;\n  c;\n}\n");
}

#[test]
fn learn_interventional_and_antichain() {
    let (code, out, _) = run(&[
        "learn",
        "--truth",
        &path("chain-model.json"),
        "--family",
        &path("chain-family.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["interventions"], 2);
    assert_eq!(v["hasse"], serde_json::json!([["x", "y"], ["y", "z"]]));
    for fam in ["closed", "antichain"] {
        let (code, out, _) = run(&["learn", "--truth", &path("chain-model.json"), "--family", fam, "--format", "dot"]);
        assert_eq!(code, 0);
        assert_eq!(out, "digraph {\n  x;\n  y;\n  z;\n  x -> y;\n  y -> z;\n}\n");
    }
    let args = ["learn", "--truth", &path("chain-model.json"), "--family", "closed", "--sampled", "5000", "--seed", "3"];
    let a = run(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, run(&args));
}

#[test]
fn learn_usage_errors() {
    assert_eq!(run(&["learn", "--data", &path("pancreatic.csv")]).0, 2);
    assert_eq!(run(&["learn"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn classify_family_labels() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    let case = |text: &str| {
        std::fs::write(&f, text).unwrap();
        let (code, out, _) = run(&["classify-family", f.to_str().unwrap()]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        v["label"].as_str().unwrap().to_owned()
    };
    assert_eq!(case(r#"{"universe": ["a", "b"], "sets": [["a", "b"]]}"#), "trivial");
    assert_eq!(case(r#"[["a"], ["b"], ["c"]]"#), "singleton_closed");
    assert_eq!(case(r#"[["a", "b"], ["c"]]"#), "partition");
    assert_eq!(case(r#"[["a"], ["a", "b"], ["c"]]"#), "separating");
    std::fs::write(&f, "[[\"a\"],\n  oops]").unwrap();
    let (code, _, err) = run(&["classify-family", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("f.json:2:"), "{err}");
}

#[test]
fn ingest_the_cancer_fragment() {
    let d = ingest_genotypes(&read("pancreatic.csv"), "pancreatic.csv").unwrap();
    let mut got: Vec<(Vec<&str>, u64)> = d.genotype_labels();
    for g in &mut got {
        g.0.sort();
    }
    got.sort();
    let mut want = vec![
        (vec!["KRAS", "TP53"], 1),
        (vec!["KRAS"], 1),
        (vec!["KRAS", "SMAD4", "TP53"], 1),
        (vec!["CDKN2A"], 1),
    ];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn ingest_edge_cases() {
    let d = ingest_genotypes("tumor,gene\n", "e.csv").unwrap();
    assert!(d.events().is_empty() && d.genotypes().is_empty());
    let d = ingest_genotypes("tumor,gene\nt1,KRAS\nt1,KRAS\nt2,KRAS\nt2,TP53\n", "d.csv").unwrap();
    assert_eq!(d.genotypes().len(), 2);
    assert_eq!(d.genotypes()[0].0.len(), 1);
    let d = ingest_genotypes("tumor,gene\nt1,A\nt2,A\nt3,B\n", "m.csv").unwrap();
    assert_eq!(d.total(), 3);
    assert_eq!(d.genotypes().len(), 2);

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("h.csv");
    std::fs::write(&f, "tumor,gene\n").unwrap();
    let (code, out, _) = run(&["separability", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("\"separable\": true"));
    let (code, _, err) = run(&["learn", "--data", f.to_str().unwrap(), "--mode", "observational"]);
    assert_eq!(code, 1);
    assert!(err.contains("no genotypes"));
}

#[test]
fn pathway_table_separability() {
    let (code, out, _) = run(&["separability", &path("pathways.csv")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["genotypes"], 12);
    // Genes listed under a single pathway are only told apart from genes of
    // other pathways.
    let unseparated = v["unseparated"].as_array().unwrap();
    assert!(unseparated.contains(&serde_json::json!(["KRAS", "MAP2K4"])));
    assert!(!unseparated.contains(&serde_json::json!(["KRAS", "TP53"])));
}

#[test]
fn json_and_dot_round_trips_on_bundled_examples() {
    let spaces = ["covid.json", "collider.json", "table1/row1.json", "table1/row2.json", "table1/row3.json", "table1/row4.json", "table1/row5.json"];
    for f in spaces {
        let first = space_to_json(&parse_space(&read(f), f).unwrap());
        let second = space_to_json(&parse_space(&first, f).unwrap());
        assert_eq!(first, second, "{f}");
        let s = parse_space(&read(f), f).unwrap();
        if s.is_t0() {
            let h = hasse_to_dot(&HasseDiagram::from_space(&s).unwrap());
            let back = dag_to_space(&parse_dot(&h, f).unwrap().to_dag(f).unwrap());
            assert_eq!(back, s, "{f}");
            assert_eq!(hasse_to_dot(&HasseDiagram::from_space(&back).unwrap()), h, "{f}");
        }
    }
    for canonical in ["covid.json", "collider.json"] {
        assert_eq!(space_to_json(&parse_space(&read(canonical), canonical).unwrap()), read(canonical));
    }
    let dot = read("covid.dot");
    assert_eq!(dag_to_dot(&parse_dot(&dot, "covid.dot").unwrap().to_dag("covid.dot").unwrap()), dot);
}

#[test]
fn genotype_golden() {
    let (code, out, _) = run(&["learn", "--data", &path("pancreatic.csv"), "--mode", "observational", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(out, read("golden/pancreatic.json"));
}
