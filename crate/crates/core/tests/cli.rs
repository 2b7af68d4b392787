use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(file: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(file).display().to_string()
}

fn mgb(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mgb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn mgb");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("wait for mgb")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gb_prints_reduced_basis() {
    let o = mgb(&["gb", &data("strictinclusion.mgb")], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[y - z, x + 2*z]");
}

#[test]
fn gb_reads_stdin() {
    let o = mgb(&["gb", "-"], Some("ring QQ[x,y] lex;\nideal(x^2 - y, x*y - 1);\n"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[y^3 - 1, x - y^2]");
}

#[test]
fn universal_denominator_is_factored() {
    let o = mgb(&["universal-denominator", &data("deltone3.mgb")], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "28 = 2^2 * 7");
}

#[test]
fn detect_bad_certifies_primes() {
    let o = mgb(&["detect-bad", &data("badprimedetection.mgb")], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let verdicts: Vec<&str> = out.lines().map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(verdicts, ["TAU_BAD_CERTIFIED", "TAU_BAD_CERTIFIED", "UNDECIDED", "TAU_BAD_CERTIFIED"]);
}

#[test]
fn json_output_carries_schema() {
    let o = mgb(&["gb", "--json", &data("strictinclusion.mgb")], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "gb");
    assert_eq!(v["bases"][0][1], "x + 2*z");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mgb(&["bogus"], None).status.code(), Some(2));
    let o = mgb(&["gb", "-"], Some("ring QQ[x] lex;\nideal(x +);\n"));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("-:2:"), "{err}");
    assert!(err.contains("input grammar"), "{err}");
    assert_eq!(mgb(&["modular-gb", "--prime-bits", "3", &data("deltone3.mgb")], None).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    let o = mgb(&["modular-gb", "--max-primes", "1", &data("manybadprimes.mgb")], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ran out of primes"));
}

#[test]
fn modular_gb_matches_gb() {
    let direct = mgb(&["gb", "--order", "lex", &data("deltone3.mgb")], None);
    let modular = mgb(&["modular-gb", "--order", "lex", &data("deltone3.mgb")], None);
    assert_eq!(modular.status.code(), Some(0));
    assert_eq!(stdout(&modular).lines().next(), stdout(&direct).lines().next());
}
