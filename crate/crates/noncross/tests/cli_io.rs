//! End-to-end runs of the `noncross` binary: frozen output bytes, exit
//! codes, and the verify subcommand's report format.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noncross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed with {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("no signal termination")
}

fn write_scores(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).expect("write score file");
    path.to_str().expect("utf-8 path").to_string()
}

#[test]
fn count_prints_one_number() {
    assert_eq!(
        stdout_of(&["count", "--family", "acyclic", "--n", "3"]),
        "25\n"
    );
    assert_eq!(
        stdout_of(&["count", "--family", "acyclic", "--n", "1"]),
        "1\n"
    );
    assert_eq!(
        stdout_of(&["count", "--family", "acyclic", "--n", "10"]),
        "19166868607\n"
    );
    assert_eq!(
        stdout_of(&["count", "--family", "connected-undirected", "--n", "11"]),
        "49826712\n"
    );
}

#[test]
fn per_class_prints_seven_tab_separated_lines() {
    let expected = "minmax-covered\t8\n\
                    maxmin-covered\t8\n\
                    minmax-connected\t1\n\
                    maxmin-connected\t1\n\
                    mix-connected\t2\n\
                    elementary\t0\n\
                    unconnected\t5\n";
    assert_eq!(
        stdout_of(&["count", "--family", "acyclic", "--n", "3", "--per-class"]),
        expected
    );
}

#[test]
fn decode_outputs_are_frozen() {
    let dir = tempfile::tempdir().expect("tempdir");

    let antiparallel = write_scores(
        dir.path(),
        "antiparallel.json",
        r#"{"n": 2, "arcs": [{"src": 1, "dst": 2, "score": 2.0}, {"src": 2, "dst": 1, "score": 3.0}]}"#,
    );
    assert_eq!(
        stdout_of(&["decode", "--family", "digraph", "--input", &antiparallel]),
        "{\"n\":2,\"score\":5.0,\"arcs\":[{\"src\":1,\"dst\":2},{\"src\":2,\"dst\":1}]}\n"
    );
    // The acyclic family cannot keep both arcs; it takes the better one.
    assert_eq!(
        stdout_of(&["decode", "--family", "acyclic", "--input", &antiparallel]),
        "{\"n\":2,\"score\":3.0,\"arcs\":[{\"src\":2,\"dst\":1}]}\n"
    );

    let negative = write_scores(
        dir.path(),
        "negative.json",
        r#"{"n": 2, "arcs": [{"src": 1, "dst": 2, "score": -1.0}, {"src": 2, "dst": 1, "score": -2.5}]}"#,
    );
    // Free families prefer the empty graph; connected ones must pay an arc.
    assert_eq!(
        stdout_of(&["decode", "--family", "acyclic", "--input", &negative]),
        "{\"n\":2,\"score\":0.0,\"arcs\":[]}\n"
    );
    assert_eq!(
        stdout_of(&[
            "decode",
            "--family",
            "connected-undirected",
            "--input",
            &negative
        ]),
        "{\"n\":2,\"score\":-1.0,\"arcs\":[{\"src\":1,\"dst\":2}]}\n"
    );

    let single = write_scores(dir.path(), "single.json", r#"{"n": 1, "arcs": []}"#);
    assert_eq!(
        stdout_of(&[
            "decode",
            "--family",
            "connected-acyclic",
            "--input",
            &single
        ]),
        "{\"n\":1,\"score\":0.0,\"arcs\":[]}\n"
    );

    // Every member ties at zero; the sparsest one is reported.
    let all_zero = write_scores(dir.path(), "all-zero.json", r#"{"n": 3, "arcs": []}"#);
    assert_eq!(
        stdout_of(&["decode", "--family", "acyclic", "--input", &all_zero]),
        "{\"n\":3,\"score\":0.0,\"arcs\":[]}\n"
    );
}

#[test]
fn enumerate_outputs_are_frozen() {
    assert_eq!(
        stdout_of(&["enumerate", "--family", "digraph", "--n", "2"]),
        "{\"n\":2,\"arcs\":[{\"src\":1,\"dst\":2}]}\n\
         {\"n\":2,\"arcs\":[{\"src\":1,\"dst\":2},{\"src\":2,\"dst\":1}]}\n\
         {\"n\":2,\"arcs\":[{\"src\":2,\"dst\":1}]}\n\
         {\"n\":2,\"arcs\":[]}\n"
    );
    assert_eq!(
        stdout_of(&["enumerate", "--family", "undirected", "--n", "1"]),
        "{\"n\":1,\"arcs\":[]}\n"
    );

    let lines: Vec<String> = stdout_of(&["enumerate", "--family", "acyclic", "--n", "3"])
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(lines.len(), 25);
    let mut unique = lines.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), 25, "every line is a distinct graph");
    for line in &lines {
        let parsed: serde_json::Value = serde_json::from_str(line).expect("valid json");
        assert_eq!(parsed["n"], 3);
        assert!(parsed.get("score").is_none(), "enumerate carries no score");
    }
}

#[test]
fn verify_reports_every_check_and_succeeds() {
    let out = run(&["verify", "--family", "connected-undirected", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let lines: Vec<&str> = text.lines().collect();
    // Three checks per n for n in 2..=4, plus the summary.
    assert_eq!(lines.len(), 10, "{text}");
    for line in &lines[..9] {
        assert!(line.starts_with("family=connected-undirected n="), "{line}");
        assert!(line.ends_with(" PASS"), "{line}");
    }
    assert_eq!(lines[9], "verify: all 9 checks passed");
    for check in ["check=count", "check=enumerate", "check=decode"] {
        assert_eq!(
            lines.iter().filter(|l| l.contains(check)).count(),
            3,
            "{check} appears once per n"
        );
    }
}

#[test]
fn usage_and_input_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().expect("tempdir");

    assert_eq!(exit_code(&["count", "--family", "acyclic", "--n", "0"]), 2);
    assert_eq!(exit_code(&["count", "--family", "nonesuch", "--n", "3"]), 2);
    assert_eq!(
        exit_code(&["count", "--family", "acyclic", "--n", "1", "--per-class"]),
        2
    );
    assert_eq!(
        exit_code(&["enumerate", "--family", "acyclic", "--n", "9"]),
        2
    );
    assert_eq!(exit_code(&["frobnicate"]), 2);
    assert_eq!(
        exit_code(&["verify", "--family", "digraph", "--max-n", "6"]),
        2
    );
    assert_eq!(
        exit_code(&["verify", "--family", "undirected", "--max-n", "1"]),
        2
    );

    let missing = dir.path().join("missing.json");
    assert_eq!(
        exit_code(&[
            "decode",
            "--family",
            "acyclic",
            "--input",
            missing.to_str().unwrap()
        ]),
        2
    );

    for (name, body) in [
        ("malformed.json", "{"),
        ("zero-n.json", r#"{"n": 0, "arcs": []}"#),
        (
            "bad-src.json",
            r#"{"n": 2, "arcs": [{"src": 3, "dst": 1, "score": 1.0}]}"#,
        ),
        (
            "self-loop.json",
            r#"{"n": 2, "arcs": [{"src": 1, "dst": 1, "score": 1.0}]}"#,
        ),
        (
            "duplicate.json",
            r#"{"n": 2, "arcs": [{"src": 1, "dst": 2, "score": 1.0}, {"src": 1, "dst": 2, "score": 2.0}]}"#,
        ),
        (
            "infinite.json",
            r#"{"n": 2, "arcs": [{"src": 1, "dst": 2, "score": 1e999}]}"#,
        ),
    ] {
        let path = write_scores(dir.path(), name, body);
        let out = run(&["decode", "--family", "acyclic", "--input", &path]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.starts_with("error:"), "{name}: {stderr}");
    }
}

#[test]
fn errors_leave_stdout_empty() {
    let out = run(&["enumerate", "--family", "acyclic", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}
