//! End-to-end CLI tests: the documented invocations, golden JSON stability,
//! stdin handling and the exit-code contract (0 success, 1 domain error,
//! 2 usage error).

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_raagp"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn classify_l3_json_is_stable_and_correct() {
    let first = run(&["classify", &fixture("L3.json"), "--json"]);
    assert!(first.status.success());
    let second = run(&["classify", &fixture("L3.json"), "--json"]);
    assert_eq!(first.stdout, second.stdout, "golden stability");
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&first)).unwrap();
    assert_eq!(doc["verdict"], "forbidden");
    assert_eq!(doc["forbidden_cert"]["kind"], "path4");
    assert_eq!(
        doc["forbidden_cert"]["witness"],
        serde_json::json!(["x", "y", "z", "w"])
    );
    assert_eq!(doc["coherent"], true);
    assert_eq!(doc["universally_koszul"], false);
    let flags = doc["equivalent_properties"].as_array().unwrap();
    assert_eq!(flags.len(), 6);
    assert!(flags.iter().all(|f| f["holds"] == false));
}

#[test]
fn abelianize_v_fixture_matches_the_documented_output() {
    for p in ["2", "3", "5", "7"] {
        let out = run(&["abelianize", &fixture("V.json"), "-p", p, "--json"]);
        assert!(out.status.success());
        assert_eq!(stdout_of(&out), "{\"free_rank\":3,\"torsion\":[1]}\n", "p = {p}");
    }
}

#[test]
fn construct_k3_prints_the_expression() {
    let out = run(&["construct", &fixture("K3.json")]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "(Zp x (Zp x Zp))\n");
}

#[test]
fn construct_on_a_forbidden_graph_is_a_domain_error() {
    let out = run(&["construct", &fixture("C4.json"), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["kind"], "forbidden");
    assert_eq!(err["detail"]["kind"], "square");
}

#[test]
fn chordal_reports_both_verdicts() {
    let out = run(&["chordal", &fixture("kite.json")]);
    assert!(out.status.success());
    assert!(stdout_of(&out).starts_with("chordal\npeo: "));

    let out = run(&["chordal", &fixture("C4.json"), "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["verdict"], "not_chordal");
    assert_eq!(doc["chordless_cycle"].as_array().unwrap().len(), 4);
}

#[test]
fn decompose_rejects_non_chordal_with_certificate() {
    let out = run(&["decompose", &fixture("C4.json"), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["kind"], "not_chordal");
    assert_eq!(err["detail"]["verdict"], "not_chordal");
}

#[test]
fn tree_rank_of_the_path_file() {
    let out = run(&["tree-rank", &fixture("path5.edges"), "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["rank"], 4);

    let out = run(&["tree-rank", &fixture("K3.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stdin_dash_reads_edge_lists() {
    let out = run_with_stdin(&["classify", "-"], "a-b\nb-c\n");
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("verdict: elementary type"));
    assert!(stdout_of(&out).contains("construction: (Zp x (Zp * Zp))"));
}

#[test]
fn subgroup_pipeline_from_presentation_json() {
    let pres = run(&["presentation", &fixture("L3.json"), "--json"]);
    assert!(pres.status.success());
    let out = run_with_stdin(
        &["subgroup", "-", "--character", &fixture("L3_character_p3.json"), "--json"],
        &stdout_of(&pres),
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    // 2p + 2 generators at p = 3 after cleanup.
    assert_eq!(doc["generators"].as_array().unwrap().len(), 8);

    let raw = run_with_stdin(
        &["subgroup", "-", "--character", &fixture("L3_character_p3.json"), "--json", "--raw"],
        &stdout_of(&pres),
    );
    let raw_doc: serde_json::Value = serde_json::from_str(&stdout_of(&raw)).unwrap();
    // p*n - (p-1) generators before cleanup.
    assert_eq!(raw_doc["generators"].as_array().unwrap().len(), 10);
}

#[test]
fn subgroup_defaults_to_the_exponent_character() {
    let out = run_with_stdin(
        &["subgroup", "-", "-p", "2", "--json"],
        r#"{"generators":["a","b"],"relators":["[a,b]"]}"#,
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn fundamental_of_the_l3_decomposition_equals_the_direct_presentation() {
    let via_gog = run(&["fundamental", &fixture("L3_gog.json"), "--json"]);
    let direct = run(&["presentation", &fixture("L3.json"), "--json"]);
    assert!(via_gog.status.success() && direct.status.success());
    assert_eq!(via_gog.stdout, direct.stdout);
}

#[test]
fn fundamental_of_the_v_loop_abelianizes_correctly() {
    let pres = run(&["fundamental", &fixture("V_gog.json"), "-p", "5", "--json"]);
    assert!(pres.status.success());
    let out = run_with_stdin(&["abelianize", "-", "-p", "5", "--json"], &stdout_of(&pres));
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "{\"free_rank\":3,\"torsion\":[1]}\n");
}

#[test]
fn paper_fixtures_passes() {
    let out = run(&["paper-fixtures"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.lines().filter(|l| l.starts_with("ok ")).count() >= 40);
    assert!(!text.contains("FAIL"));

    let json = run(&["paper-fixtures", "--json", "--seed", "7"]);
    assert!(json.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert_eq!(doc["all_ok"], true);
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage error: unknown subcommand.
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // Usage error: bad flag value.
    let out = run(&["classify", "--format", "yaml", &fixture("L3.json")]);
    assert_eq!(out.status.code(), Some(2));
    // Usage error: the cap must be at least 1.
    let out = run(&["cohomology", &fixture("L3.json"), "--cap", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // Domain errors: composite prime, cap, loop edge, missing file.
    let out = run(&["abelianize", &fixture("V.json"), "-p", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["cohomology", &fixture("L3.json"), "--cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run_with_stdin(&["classify", "-"], "a-a\n");
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["classify", "no_such_file.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn all_fixture_outputs_are_byte_stable() {
    let graph_fixtures =
        ["L3.json", "C4.json", "K3.json", "kite.json", "P3.json", "path5.edges"];
    let graph_commands = [
        "classify",
        "construct",
        "chordal",
        "decompose",
        "cohomology",
        "presentation",
        "tree-rank",
    ];
    let mut pairs: Vec<Vec<String>> = Vec::new();
    for f in graph_fixtures {
        for c in graph_commands {
            pairs.push(vec![c.into(), fixture(f), "--json".into()]);
        }
    }
    for p in ["2", "3", "5", "7"] {
        pairs.push(vec!["abelianize".into(), fixture("V.json"), "-p".into(), p.into(), "--json".into()]);
        pairs.push(vec!["fundamental".into(), fixture("V_gog.json"), "-p".into(), p.into(), "--json".into()]);
    }
    pairs.push(vec!["abelianize".into(), fixture("H.json"), "--json".into()]);
    pairs.push(vec!["fundamental".into(), fixture("L3_gog.json"), "--json".into()]);
    for args in pairs {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&argv);
        let second = run(&argv);
        assert_eq!(
            (first.status.code(), &first.stdout, &first.stderr),
            (second.status.code(), &second.stdout, &second.stderr),
            "unstable output for {args:?}"
        );
    }
}

#[test]
fn json_errors_are_one_line_objects_on_stderr() {
    let out = run_with_stdin(&["classify", "-", "--json"], "a-a\n");
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1);
    let doc: serde_json::Value = serde_json::from_str(stderr.trim()).unwrap();
    assert_eq!(doc["kind"], "loop_edge");
    assert!(out.stdout.is_empty());
}
