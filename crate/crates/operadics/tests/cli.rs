//! End-to-end checks of the command line binary.

use std::process::{Command, Output, Stdio};

fn operadics(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_operadics"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn make_assoc_pipes_into_verify() {
    let made = operadics(&["make-assoc", "3"]);
    assert!(made.status.success());

    let mut verify = Command::new(env!("CARGO_BIN_EXE_operadics"))
        .args(["verify-operad", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawns");
    use std::io::Write;
    verify
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(&made.stdout)
        .expect("writes");
    let out = verify.wait_with_output().expect("runs");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn census_prints_the_known_counts_and_passes() {
    let out = operadics(&[
        "coproduct-census",
        "--monoid-idempotent",
        "--level",
        "1",
        "--max-beta",
        "2",
        "--with-oracle",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("words=16 collapsible=14 normal<=k=5"),
        "{text}"
    );
    assert!(text.contains("recursion holds"), "{text}");
    assert!(text.contains("oracle classes agree"), "{text}");
}

#[test]
fn normalize_chain_merges_letters() {
    let out = operadics(&[
        "coproduct-normalize",
        "--monoid-idempotent",
        "--chain",
        "p:a,p:a,q:1,q:a",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("normal:"), "{text}");
    // Two letters survive.
    let normal_line = text.lines().find(|l| l.starts_with("normal:")).unwrap();
    assert_eq!(normal_line.matches(":#").count(), 2, "{normal_line}");
}

#[test]
fn normalize_emits_dot_when_asked() {
    let out = operadics(&[
        "coproduct-normalize",
        "--monoid-idempotent",
        "--chain",
        "p:a,q:a",
        "--format",
        "dot",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph"), "{text}");
    assert!(text.contains("p:a"), "{text}");
}

#[test]
fn compare_subcommand_passes_on_the_two_point_example() {
    let out = operadics(&[
        "cosimplicial",
        "compare",
        "--end-set",
        "2",
        "--mu",
        "max",
        "--eps",
        "0",
        "--N",
        "2",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn limit_reports_both_constants_for_max() {
    let out = operadics(&[
        "cosimplicial",
        "limit",
        "--end-set",
        "2",
        "--mu",
        "max",
        "--eps",
        "0",
        "--N",
        "1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("limit size 2"), "{}", stdout(&out));
}

#[test]
fn hochschild_and_pi0_and_end_operad_run() {
    let out = operadics(&["hochschild", "--assoc", "1", "--n-max", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));

    let out = operadics(&[
        "pi0-j",
        "--generator-levels",
        "2",
        "--k-max",
        "2",
        "--max-level",
        "4",
        "--max-nodes",
        "4",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("[0, 1, 1, 2, 5]"), "{}", stdout(&out));

    let out = operadics(&["end-operad", "--assoc", "2", "--n-max", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("[1, 1, 1]"), "{}", stdout(&out));
}

#[test]
fn malformed_input_exits_with_schema_code() {
    let dir = std::env::temp_dir().join("operadics-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = operadics(&["verify-operad", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupt_operad_fails_verification_with_code_one() {
    // A one-element monoid whose only composition is wrong: a o a = a is
    // fine, but the identity law breaks because e o a names the wrong result.
    let bad = serde_json::json!({
        "name": "broken",
        "levels": [[], ["e", "a"]],
        "identity": "e",
        "compositions": [
            ["e", 1, "e", "e"],
            ["e", 1, "a", "e"],
            ["a", 1, "e", "a"],
            ["a", 1, "a", "a"],
        ],
    });
    let dir = std::env::temp_dir().join("operadics-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corrupt.json");
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let out = operadics(&["verify-operad", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("id o_1 a = e"), "{}", stdout(&out));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = [
        "coproduct-census",
        "--monoid-idempotent",
        "--level",
        "1",
        "--max-beta",
        "3",
        "--format",
        "json",
    ];
    let a = operadics(&args);
    let b = operadics(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // And parallelism does not change the bytes.
    let mut with_jobs: Vec<&str> = args.to_vec();
    with_jobs.extend(["--jobs", "4"]);
    let c = operadics(&with_jobs);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn selftest_passes() {
    let out = operadics(&["selftest", "--jobs", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS: 12 checks, 0 failed"), "{text}");
}

#[test]
fn truncation_problems_exit_with_code_three() {
    let out = operadics(&[
        "cosimplicial",
        "check",
        "--assoc",
        "--N",
        "5",
        "--level-bound",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("operadics-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = operadics(&[
        "verify-operad",
        "-",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    // stdin is empty, so this is a schema error before any file is written.
    assert_eq!(out.status.code(), Some(2));

    let made = operadics(&["make-assoc", "2", "--out", path.to_str().unwrap()]);
    assert!(made.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.contains("\"identity\": \"a1\""), "{content}");
}

#[test]
fn words_load_from_json_files() {
    let dir = std::env::temp_dir().join("operadics-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let word = serde_json::json!({
        "side": "p", "id": "a",
        "children": [ { "side": "q", "id": "1", "children": [null] } ],
    });
    let path = dir.join("word.json");
    std::fs::write(&path, serde_json::to_string(&word).unwrap()).unwrap();
    let out = operadics(&[
        "coproduct-normalize",
        "--monoid-idempotent",
        "--word",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    let normal_line = text.lines().find(|l| l.starts_with("normal:")).unwrap();
    assert_eq!(normal_line.matches(":#").count(), 1, "{normal_line}");
}

#[test]
fn oracle_subcommand_reports_class_counts() {
    let out = operadics(&[
        "coproduct-oracle",
        "--end-monoid",
        "2",
        "--level",
        "1",
        "--max-beta",
        "2",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("classes"), "{}", stdout(&out));
}
