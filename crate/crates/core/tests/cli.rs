use std::io::Write;
use std::process::{Command, Stdio};

use qform::cli::FormSpecDocument;
use serde_json::Value;

fn qform(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qform"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn phi_hyperbolic_plane_over_kbar() {
    let (code, out) = qform(&["phi", "--form", r#"{"field":{"kind":"Q"},"diag":[1,-1]}"#, "--member", "kbar"], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["lines"][0]["text"], "Z/2(1)[1]");
    assert_eq!(v["lines"][0]["recovered"]["witt_index"], 1);
}

#[test]
fn witt_over_f3() {
    let (code, out) = qform(&["witt", "--form", r#"{"field":{"kind":"Fp","p":3},"diag":[1,1,1]}"#], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!((v["witt_index"].as_u64(), v["kernel_dim"].as_u64()), (Some(1), Some(1)));
    // The kernel is itself a form document.
    let kernel = FormSpecDocument::parse(&v["kernel"].to_string()).unwrap().form().unwrap();
    assert_eq!(kernel.dim(), 1);
}

#[test]
fn affine_equiv_identical_forms() {
    let f = r#"{"field":{"kind":"Q"},"diag":[2,"-5/3",7]}"#;
    let (code, out) = qform(&["affine-equiv", "--form", f, "--other", f], None);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "Isometric");
    assert_eq!(v["result"]["witness"]["lambda"], "1");
}

#[test]
fn distinguished_exits_one() {
    let (code, out) = qform(
        &[
            "equiv",
            "--form",
            r#"{"field":{"kind":"Q"},"diag":[1,1,1]}"#,
            "--other",
            r#"{"field":{"kind":"Q"},"diag":[1,1,-1]}"#,
        ],
        None,
    );
    assert_eq!(code, 1);
    assert_eq!(json(&out)["result"]["member"], "R");
}

#[test]
fn input_errors_exit_two() {
    let (code, out) = qform(&["invariants", "--form", r#"{"field":{"kind":"Q"},"diag":[1,"#], None);
    assert_eq!(code, 2);
    assert!(json(&out)["error"].as_str().unwrap().contains("column"));
    let (code, _) = qform(&["invariants", "--form", r#"{"field":{"kind":"Fp","p":3},"diag":[3]}"#], None);
    assert_eq!(code, 2);
    let (code, _) = qform(
        &["profile", "--form", r#"{"field":{"kind":"Fp","p":3},"diag":[1]}"#, "--family", "Q,kbar"],
        None,
    );
    assert_eq!(code, 2);
    let (code, _) = qform(&["witt", "--form", r#"{"field":{"kind":"Q"},"diag":[1],"gram":[[1]]}"#], None);
    assert_eq!(code, 2);
}

#[test]
fn stdin_gram_and_table() {
    let (code, out) = qform(&["invariants", "--format", "table"], Some(r#"{"field":{"kind":"Q"},"gram":[[0,1],[1,0]]}"#));
    assert_eq!(code, 0);
    assert!(out.contains("det\t-1"), "{out}");
    assert!(out.contains("dim\t2"));
}

#[test]
fn family_override_and_profile() {
    let (code, out) = qform(
        &["profile", "--form", r#"{"field":{"kind":"Fp","p":3},"diag":[1,1]}"#, "--family", "F_3,F_3^2,F_3^4"],
        None,
    );
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["family"], serde_json::json!(["F_3", "F_3^2", "F_3^4"]));
    assert_eq!(v["splitting_pattern"], serde_json::json!([0, 1]));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("qform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let form = r#"{"field":{"kind":"Q"},"diag":[3,-5,7,11,-13]}"#;
    let mut outputs = Vec::new();
    for cmd in ["invariants", "witt", "profile", "shells", "phi", "motive"] {
        let (c1, a) = qform(&[cmd, "--form", form], None);
        let (c2, b) = qform(&[cmd, "--form", form], None);
        assert_eq!((c1, c2), (0, 0), "{cmd}");
        assert_eq!(a, b, "{cmd}");
        outputs.push(a);
    }
    let (code, printed) = qform(&["motive", "--form", form, "--out", path.to_str().unwrap()], None);
    assert_eq!((code, printed.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), outputs[5]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_small() {
    let (code, out) = qform(&["selftest", "--p", "3", "--max-dim", "3"], None);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["ok"], true);
}

#[test]
fn schema_is_shipped() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../docs/form-spec.schema.json")).unwrap();
    assert_eq!(schema["properties"]["field"]["properties"]["kind"]["enum"][0], "Q");
}
