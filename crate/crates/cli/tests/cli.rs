use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: Option<&str>) -> (Option<i32>, Value, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_projlink"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(input) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(input.as_bytes())
            .unwrap();
    }
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code(), doc, stdout)
}

fn triple(space: &str, p: i64, q: i64, n: i64) -> Value {
    json!({ "space": space, "p": p, "q": q, "n": n })
}

#[test]
fn canon_hopf_link() {
    let (code, doc, _) = run(&["canon", "--space", "s3", "2", "2", "0"], None);
    assert_eq!(code, Some(0));
    assert_eq!(doc["schema"], "projlink/canon/v1");
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["payload"]["components"], 2);
    assert_eq!(doc["payload"]["normal_form"], triple("s3", 0, 0, 2));
    assert_eq!(
        doc["payload"]["classification"]["kind"],
        "SEIFERT_COMPLEMENT"
    );
    assert_eq!(doc["payload"]["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn canon_empty_link() {
    let (code, doc, _) = run(&["canon", "--space", "rp3", "0", "0", "0"], None);
    assert_eq!(code, Some(0));
    assert_eq!(doc["payload"]["classification"]["kind"], "EMPTY");
    assert_eq!(doc["payload"]["components"], 0);
}

#[test]
fn canon_rejects_bad_core_count() {
    let (code, doc, _) = run(&["canon", "--space", "s3", "1", "1", "3"], None);
    assert_eq!(code, Some(2));
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["payload"]["code"], "INVALID_N");
}

#[test]
fn isotopic_examples() {
    for (args, expected) in [
        (["--space", "s3", "3", "5", "0", "5", "3", "0"], true),
        (["--space", "rp3", "4", "0", "0", "2", "0", "2"], true),
        (["--space", "s3", "2", "3", "0", "2", "5", "0"], false),
    ] {
        let mut full = vec!["isotopic"];
        full.extend(args);
        let (code, doc, _) = run(&full, None);
        assert_eq!(code, Some(0));
        assert_eq!(doc["payload"]["isotopic"], expected, "{args:?}");
        assert_eq!(doc["payload"]["witness"].is_null(), !expected);
    }
}

#[test]
fn lift_examples() {
    for ((p, q, n), (lp, lq)) in [
        ((2, 1, 1), (2, 0)),
        ((0, 0, 2), (0, 0)),
        ((1, 3, 0), (1, 5)),
    ] {
        let args = ["lift", &p.to_string(), &q.to_string(), &n.to_string()];
        let (code, doc, _) = run(&args.each_ref().map(|s| s.as_ref()), None);
        assert_eq!(code, Some(0));
        assert_eq!(doc["payload"]["lift"], triple("s3", lp, lq, n));
    }
    let (_, doc, _) = run(&["lift", "-3", "-1", "0"], None);
    assert_eq!(doc["payload"]["lift"], triple("s3", -3, 1, 0));
}

#[test]
fn verify_reports() {
    let (code, doc, _) = run(&["verify", "lift-injectivity", "--bound", "20"], None);
    assert_eq!(code, Some(0));
    assert_eq!(doc["payload"]["violations"], json!([]));
    assert_eq!(doc["payload"]["bound"], 20);
    assert!(doc["payload"].get("elapsed_ms").is_none());

    let (code, doc, _) = run(&["verify", "confluence", "--bound", "10"], None);
    assert_eq!(code, Some(0));
    assert_eq!(doc["payload"]["violations"], json!([]));

    let (code, doc, _) = run(&["verify", "relation-lift", "--bound", "4"], None);
    assert_eq!(code, Some(0));
    assert_eq!(doc["payload"]["bound"], 4);
}

#[test]
fn verify_default_bounds() {
    let (_, doc, _) = run(&["verify", "lift-injectivity"], None);
    assert_eq!(doc["payload"]["bound"], 20);
    let (_, doc, _) = run(&["verify", "confluence", "--space", "rp3"], None);
    assert_eq!(doc["payload"]["bound"], 10);
}

#[test]
fn verify_rejects_negative_bound() {
    let (code, doc, _) = run(&["verify", "lift-injectivity", "--bound", "-1"], None);
    assert_eq!(code, Some(2));
    assert_eq!(doc["status"], "error");
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["verify", "confluence", "--bound", "3"][..],
        &["atlas", "--space", "rp3", "--bound", "2"],
        &["jsj", "sample-cover", "--seed", "11", "--vertices", "12"],
    ] {
        let (_, _, first) = run(args, None);
        let (_, _, second) = run(args, None);
        assert_eq!(first, second, "{args:?}");
    }
    let (_, _, one) = run(&["--jobs", "1", "atlas", "--bound", "3"], None);
    let (_, _, two) = run(&["--jobs", "2", "atlas", "--bound", "3"], None);
    assert_eq!(one, two);
}

#[test]
fn atlas_counts() {
    let (code, doc, _) = run(&["atlas", "--space", "rp3", "--bound", "1"], None);
    assert_eq!(code, Some(0));
    assert_eq!(doc["payload"]["classes"].as_array().unwrap().len(), 10);
    assert_eq!(doc["payload"]["space"], "rp3");
}

#[test]
fn outermost_single_vertex() {
    let tree = r#"{"vertices": [{"id": "v", "geometry": "seifert"}], "edges": []}"#;
    let (code, doc, _) = run(&["jsj", "outermost", "-"], Some(tree));
    assert_eq!(code, Some(0));
    assert_eq!(
        doc["payload"],
        json!({ "outermost": ["v"], "potential": { "v": 0 } })
    );
}

#[test]
fn outermost_heegaard_edge() {
    let tree = r#"{
        "vertices": [{"id": "a", "geometry": "seifert"}, {"id": "b", "geometry": "hyperbolic"}],
        "edges": [{"u": "a", "v": "b", "label_beyond_u": "st", "label_beyond_v": "st"}]
    }"#;
    let (code, doc, _) = run(&["jsj", "outermost", "-"], Some(tree));
    assert_eq!(code, Some(0));
    assert_eq!(doc["payload"]["outermost"], json!(["a", "b"]));
}

#[test]
fn outermost_rejects_forbidden_pair() {
    let tree = r#"{
        "vertices": [{"id": "a", "geometry": "seifert"}, {"id": "b", "geometry": "seifert"}],
        "edges": [{"u": "a", "v": "b", "label_beyond_u": "st", "label_beyond_v": "khb"}]
    }"#;
    let (code, doc, _) = run(&["jsj", "outermost", "-"], Some(tree));
    assert_eq!(code, Some(1));
    assert_eq!(doc["payload"]["code"], "FORBIDDEN_LABEL_PAIR");
}

#[test]
fn outermost_rejects_malformed_input() {
    let (code, doc, _) = run(&["jsj", "outermost", "-"], Some(r#"{"vertices": 3}"#));
    assert_eq!(code, Some(2));
    assert_eq!(doc["payload"]["code"], "MALFORMED_INPUT");
}

#[test]
fn cover_check_path_cover() {
    let cover = r#"{
        "vertices": [
            {"id": "a", "geometry": "seifert"},
            {"id": "b1", "geometry": "hyperbolic"},
            {"id": "b2", "geometry": "hyperbolic"}
        ],
        "edges": [
            {"u": "a", "v": "b1", "label_beyond_u": "khb", "label_beyond_v": "other"},
            {"u": "a", "v": "b2", "label_beyond_u": "khb", "label_beyond_v": "other"}
        ],
        "involution": {"vertex_map": {"b1": "b2", "b2": "b1"}}
    }"#;
    let (code, doc, _) = run(&["jsj", "cover-check", "-"], Some(cover));
    assert_eq!(code, Some(0));
    assert_eq!(doc["payload"]["mismatches"], 0);
    let rows = doc["payload"]["vertices"].as_array().unwrap();
    let a = rows.iter().find(|r| r["vertex"] == "a").unwrap();
    assert_eq!(a["criterion"], true);
    assert_eq!(a["outermost"], true);
    assert_eq!(a["non_solid_torus_regions"], 2);
    let b = rows.iter().find(|r| r["vertex"] == "b1").unwrap();
    assert_eq!(b["connected"], false);
    assert_eq!(b["outermost"], false);
}

#[test]
fn cover_check_rejects_bad_involution() {
    let cover = r#"{
        "vertices": [{"id": "a", "geometry": "seifert"}, {"id": "b", "geometry": "hyperbolic"}],
        "edges": [{"u": "a", "v": "b", "label_beyond_u": "st", "label_beyond_v": "other"}],
        "involution": {"vertex_map": {"a": "b", "b": "a"}}
    }"#;
    let (code, doc, _) = run(&["jsj", "cover-check", "-"], Some(cover));
    assert_eq!(code, Some(1));
    assert_eq!(doc["payload"]["code"], "INVALID_INVOLUTION");
}

#[test]
fn sampled_cover_passes_check() {
    let (_, doc, _) = run(
        &["jsj", "sample-cover", "--seed", "5", "--vertices", "40"],
        None,
    );
    let input = doc["payload"].to_string();
    let (code, report, _) = run(&["jsj", "cover-check", "-"], Some(&input));
    assert_eq!(code, Some(0));
    assert_eq!(report["payload"]["vertices"].as_array().unwrap().len(), 40);
}
