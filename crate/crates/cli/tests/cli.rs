use std::io::Write;
use std::process::{Command, Output, Stdio};

use qga_core::{corner_algebra, idempotent_cut, parse_algebra, quadratic_dual, serialize_document};

const FILES: [&str; 9] = [
    "a1_ones.json",
    "a1_zero_one.json",
    "a2_quiver.json",
    "cut_surface.json",
    "kronecker.json",
    "linear.json",
    "loop.json",
    "not_gentle.json",
    "two_cycle.json",
];

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn qga_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qga"));
    cmd.args(args).env_remove("QGA_MAX_LEN");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn qga(args: &[&str], stdin: &str) -> Output {
    qga_env(args, stdin, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dual_twice_is_the_identity() {
    for f in FILES {
        let text = std::fs::read_to_string(data(f)).unwrap();
        let once = qga(&["dual", "-"], &text);
        let twice = qga(&["dual", "-"], &stdout(&once));
        assert_eq!(stdout(&twice), text, "{f}");
    }
}

#[test]
fn reports_are_byte_deterministic() {
    let verbs: [&[&str]; 6] = [
        &["invariants"],
        &["surface", "--emit", "dot"],
        &["ext"],
        &["--json", "classify"],
        &["resolve"],
        &["--json", "surface"],
    ];
    for verb in verbs {
        let mut args: Vec<String> = verb.iter().map(|s| s.to_string()).collect();
        args.push(data("a1_ones.json"));
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = qga(&refs, "");
        assert!(first.status.success(), "{verb:?}");
        for _ in 0..3 {
            assert_eq!(qga(&refs, "").stdout, first.stdout, "{verb:?}");
        }
    }
}

#[test]
fn pipelines_match_library_compositions() {
    let text = std::fs::read_to_string(data("cut_surface.json")).unwrap();
    let a = parse_algebra(&text).unwrap();
    let piped = qga(
        &["cut", "--remove", "2", "-"],
        &stdout(&qga(&["dual", "-"], &text)),
    );
    let d = quadratic_dual(&a);
    let e = d.idempotent(&["2"]).unwrap();
    let lib = idempotent_cut(&d, &e, None).unwrap();
    assert_eq!(stdout(&piped), serialize_document(&lib.algebra, None));

    let corner = qga(&["corner", "--keep", "1,3", &data("cut_surface.json")], "");
    let e = a.idempotent(&["1", "3"]).unwrap();
    let lib = corner_algebra(&a, &e, None).unwrap();
    assert_eq!(stdout(&corner), serialize_document(&lib.algebra, None));
}

#[test]
fn exit_codes() {
    let code = |o: Output| o.status.code().unwrap();
    assert_eq!(code(qga(&["validate", &data("linear.json")], "")), 0);
    assert_eq!(code(qga(&["validate", &data("not_gentle.json")], "")), 1);
    assert_eq!(code(qga(&["validate", "-"], "{\"vertices\": [")), 1);
    assert_eq!(code(qga(&["validate", "/nonexistent/file.json"], "")), 1);
    assert_eq!(
        code(qga(&["cut", "--remove", "9", &data("linear.json")], "")),
        1
    );
    assert_eq!(
        code(qga(&["resolve", "--J", "α.ε", &data("linear.json")], "")),
        1
    );
    assert_eq!(
        code(qga(&["--unbounded", "resolve", &data("loop.json")], "")),
        2
    );
    assert_eq!(
        code(qga(&["--unbounded", "ext", &data("loop.json")], "")),
        2
    );
    assert_eq!(code(qga(&["resolve", &data("loop.json")], "")), 0);
    // Unknown is a verdict, not an error
    assert_eq!(code(qga(&["classify", &data("a1_ones.json")], "")), 0);
}

#[test]
fn syntax_errors_report_a_position() {
    let out = qga(&["validate", "-"], "{\n  \"vertices\": [1]\n}\n");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn max_len_comes_from_the_environment() {
    let run = |env: &[(&str, &str)], extra: &[&str]| {
        let mut args = vec!["cut", "--remove", "2"];
        args.extend_from_slice(extra);
        args.push("-");
        let text = std::fs::read_to_string(data("kronecker.json")).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&stdout(&qga_env(&args, &text, env))).unwrap();
        (
            v["arrows"].as_array().unwrap().len(),
            v["truncation_bound"].clone(),
        )
    };
    assert_eq!(run(&[], &[]), (62, serde_json::json!(64)));
    assert_eq!(run(&[("QGA_MAX_LEN", "5")], &[]), (3, serde_json::json!(5)));
    assert_eq!(
        run(&[("QGA_MAX_LEN", "5")], &["--max-len", "4"]),
        (2, serde_json::json!(4))
    );
}

#[test]
fn batches_keep_input_order_under_parallelism() {
    let paths: Vec<String> = FILES.iter().map(|f| data(f)).collect();
    let mut args = vec!["--jobs", "4", "validate"];
    args.extend(paths.iter().map(String::as_str));
    let parallel = qga(&args, "");
    args[1] = "1";
    let serial = qga(&args, "");
    assert_eq!(parallel.stdout, serial.stdout);
    assert_eq!(parallel.status.code(), Some(1));
    let text = stdout(&parallel);
    let headers: Vec<&str> = text.lines().filter(|l| l.starts_with("== ")).collect();
    assert_eq!(headers.len(), FILES.len());
    for (h, p) in headers.iter().zip(&paths) {
        assert_eq!(*h, format!("== {p} =="));
    }

    let mut args = vec!["--json", "--jobs", "3", "invariants"];
    args.extend(paths.iter().take(3).map(String::as_str));
    let v: serde_json::Value = serde_json::from_str(&stdout(&qga(&args, ""))).unwrap();
    let inputs: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["input"].as_str().unwrap())
        .collect();
    assert_eq!(
        inputs,
        paths.iter().take(3).map(String::as_str).collect::<Vec<_>>()
    );
}

#[test]
fn iso_of_a_document_and_its_relabelling() {
    let text = std::fs::read_to_string(data("linear.json")).unwrap();
    let relabelled = text.replace("\"α\"", "\"x\"").replace("\"1\"", "\"one\"");
    let path = std::env::temp_dir().join(format!("qga-iso-{}.json", std::process::id()));
    std::fs::write(&path, relabelled).unwrap();
    let out = qga(&["iso", &data("linear.json"), path.to_str().unwrap()], "");
    std::fs::remove_file(&path).unwrap();
    let s = stdout(&out);
    assert!(s.starts_with("isomorphic: yes"), "{s}");
    assert!(s.contains("vertex 1 -> one"), "{s}");
    assert!(s.contains("arrow α -> x"), "{s}");
}
