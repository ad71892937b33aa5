//! End-to-end tests for the `fano3` binary: output text, exit codes, and
//! JSON schemas, including the cross-check that the link enumeration and
//! the embedded catalog describe the same twelve links.

use std::path::PathBuf;
use std::process::Output;

use serde_json::Value;

fn fano3(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_fano3"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(&stdout_of(out)).expect("stdout is JSON")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout_of(out),
        stderr_of(out)
    );
}

#[test]
fn euler_reports_the_closed_form_agreement() {
    let out = fano3(&["euler", "--bundle", "0,0,0,1,1", "--divisors", "2M,2M"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), "Eu=-16 (closed form agrees)\n");

    let out = fano3(&["euler", "--bundle", "0,0,1,1,1", "--divisors", "2M-F,2M"]);
    assert_exit(&out, 0);
    assert!(stdout_of(&out).starts_with("Eu=-12"), "got {}", stdout_of(&out));
}

#[test]
fn euler_without_the_two_divisor_shape_prints_only_the_number() {
    // Three divisors: a curve, not covered by the closed form.
    let out = fano3(&["euler", "--bundle", "0,0,0,0,0,0", "--divisors", "2M,2M,M"]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("Eu="), "got {text}");
    assert!(!text.contains("closed form"), "got {text}");
}

#[test]
fn euler_rejects_malformed_and_nonlinear_divisors() {
    let out = fano3(&["euler", "--bundle", "0,0,0,1,1", "--divisors", "2X"]);
    assert_exit(&out, 2);
    assert!(stderr_of(&out).contains("syntax error"), "got {}", stderr_of(&out));

    let out = fano3(&["euler", "--bundle", "0,0,0,1,1", "--divisors", "M^2,2M"]);
    assert_exit(&out, 2);
    assert!(stderr_of(&out).contains("not linear"), "got {}", stderr_of(&out));
}

#[test]
fn euler_json_carries_the_schema_tag() {
    let out = fano3(&[
        "euler", "--bundle", "0,0,0,1,1", "--divisors", "2M,2M", "--json",
    ]);
    assert_exit(&out, 0);
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "fano3/1");
    assert_eq!(doc["eu"], "-16");
    assert_eq!(doc["closed_form_applies"], true);
    assert_eq!(doc["divisors"], serde_json::json!(["2M", "2M"]));
}

#[test]
fn links_by_genus_returns_the_expected_rows() {
    let out = fano3(&["links", "--genus", "8", "--json"]);
    assert_exit(&out, 0);
    let doc = json_of(&out);
    let links = doc["links"].as_array().expect("links array");
    let mut rows: Vec<i64> = links.iter().map(|l| l["row"].as_i64().unwrap()).collect();
    rows.sort_unstable();
    assert_eq!(rows, vec![4, 12]);

    // Genus 7 is admissible but carries no links.
    let out = fano3(&["links", "--genus", "7"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), "");
}

#[test]
fn links_rejects_a_genus_outside_the_universe() {
    let out = fano3(&["links", "--genus", "11"]);
    assert_exit(&out, 2);
    assert!(stderr_of(&out).contains("outside"), "got {}", stderr_of(&out));
}

#[test]
fn links_all_agrees_with_the_catalog() {
    let links_doc = json_of(&fano3(&["links", "--all", "--json"]));
    let catalog_doc = json_of(&fano3(&["catalog", "--json"]));
    assert_eq!(links_doc["schema"], "fano3/1");
    assert_eq!(catalog_doc["schema"], "fano3/1");

    let links = links_doc["links"].as_array().expect("links array");
    let rows = catalog_doc["rows"].as_array().expect("rows array");
    assert_eq!(links.len(), 12);
    assert_eq!(rows.len(), 12);

    // Join on (genus, left signature, right signature); every link must hit
    // exactly one catalog row and agree with it field by field.
    for link in links {
        let matches: Vec<&Value> = rows
            .iter()
            .filter(|row| {
                row["genus"] == link["genus"]
                    && row["left_sig"] == link["left"]
                    && row["right_sig"] == link["right"]
            })
            .collect();
        assert_eq!(matches.len(), 1, "link {link} matched {}", matches.len());
        let row = matches[0];
        assert_eq!(row["row"], link["row"]);
        assert_eq!(row["nodes"], link["nodes"]);
        assert_eq!(row["nonrational"], link["nonrational"]);
    }
}

#[test]
fn catalog_row_seven_has_six_nodes() {
    let doc = json_of(&fano3(&["catalog", "--json"]));
    let rows = doc["rows"].as_array().expect("rows array");
    let row7 = rows
        .iter()
        .find(|r| r["row"] == 7)
        .expect("row 7 present");
    assert_eq!(row7["nodes"], 6);
}

#[test]
fn effcone_reports_every_case() {
    let out = fano3(&["effcone"]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(text.contains("g=5  r=4  degrees [4, 4, 4, 4]"), "got {text}");
    assert!(text.contains("status: realized"), "got {text}");
    assert!(text.contains("g=7  r=3  degrees [4, 4, 4]"), "got {text}");
    assert!(text.contains("excluded by the triple-product pairing"), "got {text}");
    // An extra arithmetic solution exists and must be surfaced.
    assert!(text.contains("extra arithmetic solution"), "got {text}");

    let doc = json_of(&fano3(&["effcone", "--json"]));
    let solutions = doc["solutions"].as_array().expect("solutions array");
    let realized: Vec<&Value> = solutions
        .iter()
        .filter(|s| s["status"] == "realized")
        .collect();
    assert_eq!(realized.len(), 1);
    assert_eq!(realized[0]["g"], 5);
    assert_eq!(realized[0]["r"], 4);
    assert_eq!(realized[0]["degrees"], serde_json::json!([4, 4, 4, 4]));
}

#[test]
fn castelnuovo_prints_the_bound() {
    let out = fano3(&["castelnuovo", "7", "3"]);
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), "pi(7,3) = 6\n");

    let doc = json_of(&fano3(&["castelnuovo", "5", "3", "--json"]));
    assert_eq!(doc["bound"], 2);
    assert_eq!(doc["schema"], "fano3/1");

    let out = fano3(&["castelnuovo", "2", "3"]);
    assert_exit(&out, 2);
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("fano3-cli-{}-{name}", std::process::id()))
}

#[test]
fn quadrics_nodes_seeded_and_from_file_agree() {
    let out = fano3(&["quadrics", "nodes", "--seed", "1", "--json"]);
    assert_exit(&out, 0);
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "fano3/1");
    let report = &doc["report"];
    let points = report["points"].as_array().expect("points array");
    assert_eq!(points.len(), 4);
    assert_eq!(report["all_nodes_certified"], true);
    let total: i64 = points
        .iter()
        .map(|p| p["multiplicity"].as_i64().unwrap())
        .sum();
    assert_eq!(total, 4);

    // Re-feed the generated forms through a file; the report must agree.
    let path = temp_path("net.json");
    std::fs::write(
        &path,
        serde_json::to_string(&serde_json::json!({ "forms": doc["forms"] })).unwrap(),
    )
    .unwrap();
    let from_file = fano3(&["quadrics", "nodes", "--file", path.to_str().unwrap(), "--json"]);
    assert_exit(&from_file, 0);
    assert_eq!(json_of(&from_file)["report"], *report);
    std::fs::remove_file(&path).ok();
}

#[test]
fn quadrics_nodes_human_output_summarizes() {
    let out = fano3(&["quadrics", "nodes", "--seed", "1"]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(
        text.starts_with("distinct points: 4  total multiplicity: 4  all nodes certified: true"),
        "got {text}"
    );
}

#[test]
fn quadrics_skew_classifies_seeded_and_constructed_pencils() {
    let out = fano3(&["quadrics", "skew", "--seed", "1", "--json"]);
    assert_exit(&out, 0);
    let doc = json_of(&out);
    assert_eq!(doc["classification"]["case"], "all_smooth");

    // A pencil through two decomposable forms: e0^e1 and e2^e3.
    let z = "0";
    let a = serde_json::json!([
        [z, "1", z, z, z],
        ["-1", z, z, z, z],
        [z, z, z, z, z],
        [z, z, z, z, z],
        [z, z, z, z, z]
    ]);
    let b = serde_json::json!([
        [z, z, z, z, z],
        [z, z, z, z, z],
        [z, z, z, "1", z],
        [z, z, "-1", z, z],
        [z, z, z, z, z]
    ]);
    let path = temp_path("pencil.json");
    std::fs::write(
        &path,
        serde_json::to_string(&serde_json::json!({ "pencil": { "a": a, "b": b } })).unwrap(),
    )
    .unwrap();
    let out = fano3(&["quadrics", "skew", "--file", path.to_str().unwrap(), "--json"]);
    assert_exit(&out, 0);
    let doc = json_of(&out);
    assert_eq!(doc["classification"]["case"], "two_singular_members");
    assert_eq!(doc["classification"]["skew_lines"], true);
    assert_eq!(doc["classification"]["locus"]["kind"], "split_pair");

    let human = fano3(&["quadrics", "skew", "--file", path.to_str().unwrap()]);
    assert_exit(&human, 0);
    assert!(
        stdout_of(&human).contains("two rank-2 members"),
        "got {}",
        stdout_of(&human)
    );
    std::fs::remove_file(&path).ok();
}

#[test]
fn quadrics_rejects_a_bad_input_file() {
    let path = temp_path("bad.json");
    std::fs::write(&path, "{\"forms\": []}").unwrap();
    let out = fano3(&["quadrics", "nodes", "--file", path.to_str().unwrap()]);
    assert_exit(&out, 2);
    assert!(
        stderr_of(&out).contains("expected exactly 3 forms"),
        "got {}",
        stderr_of(&out)
    );
    std::fs::remove_file(&path).ok();

    let out = fano3(&["quadrics", "nodes", "--file", "/nonexistent/net.json"]);
    assert_exit(&out, 2);
}

#[test]
fn classify_returns_the_verdicts_of_the_two_reference_models() {
    let out = fano3(&["classify", "--bundle", "0,0,0,1,1", "--divisors", "2M,2M"]);
    assert_exit(&out, 0);
    let text = stdout_of(&out);
    assert!(text.contains("verdict: nonrational"), "got {text}");
    assert!(text.contains("Eu = -16"), "got {text}");

    let doc = json_of(&fano3(&[
        "classify", "--bundle", "0,0,1,1,1", "--divisors", "2M-F,2M", "--json",
    ]));
    assert_eq!(doc["schema"], "fano3/1");
    assert_eq!(doc["verdict"], "Nonrational");
    assert!(doc["rule"].as_str().unwrap().contains("Eu = -12"));

    // A model outside the two-divisor quartic shape is a usage error.
    let out = fano3(&["classify", "--bundle", "0,0,0,1,1", "--divisors", "M,2M"]);
    assert_exit(&out, 2);
}

#[test]
fn missing_required_flags_are_usage_errors() {
    assert_exit(&fano3(&["links"]), 2);
    assert_exit(&fano3(&["euler", "--bundle", "0,0,0,1,1"]), 2);
    assert_exit(&fano3(&["quadrics", "nodes"]), 2);
    assert_exit(
        &fano3(&["quadrics", "nodes", "--seed", "1", "--file", "x.json"]),
        2,
    );
}
