use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn wahp(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_wahp")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap()
}

struct Specs {
    _dir: tempfile::TempDir,
    root: PathBuf,
}

impl Specs {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        let specs = Specs { _dir: dir, root };
        specs.write("f2_a.txt", "[group]\nfamily = free\nrank = 2\n[H]\ngenerators = a\n");
        specs.write("f2_a2_a.txt", "# H = <a^2> < K = <a>\n[group]\nfamily = free\nrank = 2\n[H]\ngenerators = a^2\n[K]\ngenerators = a\n");
        specs.write("s3.txt", "[group]\nfamily = perm\ndegree = 3\ngenerators = (1 2), (1 2 3)\n[H]\ngenerators = (1 2)\n");
        specs.write("s3_all.txt", "[group]\nfamily = perm\ndegree = 3\ngenerators = (1 2), (1 2 3)\n[H]\ngenerators = (1 2)\n[K]\ngenerators = (1 2), (1 2 3)\n");
        specs.write("bad_chain.txt", "[group]\nfamily = free\nrank = 2\n[H]\ngenerators = a\n[K]\ngenerators = a^2\n");
        specs.write("bad_word.txt", "[group]\nfamily = free\nrank = 2\n[H]\ngenerators = a, c\n");
        specs
    }

    fn write(&self, name: &str, text: &str) {
        std::fs::write(self.root.join(name), text).unwrap();
    }

    fn path(&self, name: &str) -> String {
        self.root.join(name).display().to_string()
    }
}

#[test]
fn orbit_and_qn() {
    let s = Specs::new();
    let r = wahp(&["orbit", &s.path("f2_a2_a.txt"), "a"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["kind"], "orbit");
    assert_eq!(v["size"], 1);
    assert_eq!(v["covering_family"], serde_json::json!(["a"]));

    let r = wahp(&["orbit", &s.path("f2_a.txt"), "b"]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["status"], "infinite-certified");

    let r = wahp(&["qn", &s.path("s3.txt"), "(1 3)"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["in_qn"], "true");
}

#[test]
fn condition_commands() {
    let s = Specs::new();
    let r = wahp(&["cond3", &s.path("f2_a.txt"), "--radius", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["holds"], "true");
    let r = wahp(&["cond3", &s.path("s3.txt")]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["violations"][0]["g"], "(1 3)");
    assert_eq!(wahp(&["cond3", &s.path("s3_all.txt"), "--all"]).code, 0);

    let r = wahp(&["cond6", &s.path("f2_a.txt"), "--set", "b,b^-1"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["h"], "a");
    let r = wahp(&["cond6", &s.path("s3.txt")]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["kind"], "cond6-falsified");
    assert_eq!(wahp(&["cond6", &s.path("s3_all.txt")]).code, 0);

    let r = wahp(&["cond5", &s.path("s3.txt")]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["witness"].as_array().unwrap().len(), 2);
    assert_eq!(wahp(&["cond4", &s.path("s3_all.txt")]).code, 0);
    let r = wahp(&["cond4", &s.path("s3.txt")]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["witness"][0][0], "(1 3)");
}

#[test]
fn algebra_commands() {
    let s = Specs::new();
    let b = r#"[["b", 1, 0]]"#;
    let r = wahp(&["wahp", &s.path("f2_a.txt"), "--x", b, "--y", b]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["h"], "e");

    let r = wahp(&[
        "wahp", &s.path("s3.txt"), "--x", r#"[["(1 3)",1,0]]"#, "--x", r#"[["(2 3)",1,0]]"#, "--y", r#"[["(1 3)",1,0]]"#, "--y",
        r#"[["(2 3)",1,0]]"#,
    ]);
    assert_eq!(r.code, 1);
    let v = json(&r);
    assert_eq!(v["kind"], "probe");
    assert_eq!(v["common_witness"], Value::Null);
    assert_eq!(v["best_value"], 1.0);

    let r = wahp(&["ineq", &s.path("s3.txt"), "--g", "(1 3)", "--set", "(1 3),(2 3)", "--samples", "30", "--seed", "5"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert!((v["min"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["failure_configuration"], true);

    let r = wahp(&["ineq", &s.path("f2_a.txt"), "--g", "b", "--set", "b^-1", "--samples", "10"]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["failure_configuration"], false);
}

#[test]
fn sweep_command() {
    let r = wahp(&["sweep", "--order-max", "6", "--samples", "3"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["passed"], true);
    let groups: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["trivial", "Z2", "Z4", "V4", "Z6", "S3"]);
}

#[test]
fn input_errors_exit_3() {
    let s = Specs::new();
    let r = wahp(&["cond3", &s.path("bad_chain.txt")]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains(":5:14:") && r.stderr.contains("a is not in K"), "{}", r.stderr);
    assert!(r.stdout.is_empty());

    let r = wahp(&["cond3", &s.path("bad_word.txt")]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains(":5:17:") && r.stderr.contains("unknown generator"), "{}", r.stderr);

    assert_eq!(wahp(&["cond4", &s.path("f2_a.txt")]).code, 3);
    assert_eq!(wahp(&["orbit", &s.path("missing.txt"), "a"]).code, 3);
    assert_eq!(wahp(&["orbit", &s.path("f2_a.txt"), "a^"]).code, 3);
    assert_eq!(wahp(&["cond6", &s.path("f2_a.txt"), "--set", "a"]).code, 3);
    assert_eq!(wahp(&["wahp", &s.path("f2_a.txt"), "--x", "[[\"a\",1,0]]", "--y", "[[\"b\",1,0]]"]).code, 3);
    assert_eq!(wahp(&["wahp", &s.path("f2_a.txt"), "--x", "not json", "--y", "[]"]).code, 3);
    assert_eq!(wahp(&["cond3", &s.path("s3.txt"), "--radius", "2", "--all"]).code, 3);
    assert_eq!(wahp(&["frobnicate"]).code, 3);
    assert_eq!(wahp(&["--help"]).code, 0);
}
