use std::path::Path;
use std::process::{Command, Output};

fn qwild(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwild"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn match_and_oracle_agree() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t", "abcab\n");
    let p = write(dir.path(), "p", "a?c\n");
    let o = qwild(&["match", "--text", &t, "--pattern", &p, "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("match at 0"));

    let o = qwild(&[
        "match",
        "--text",
        &t,
        "--pattern",
        &p,
        "--json",
        "--mode",
        "gap-random",
        "--seed",
        "4",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["witness"], 0);
    assert!(v["charges"]["charged_quantum_queries"].as_u64().unwrap() > 0);

    for engine in ["naive", "fft"] {
        let o = qwild(&["oracle", "--text", &t, "--pattern", &p, "--engine", engine]);
        assert_eq!(stdout(&o), "0\n");
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t", "ab\n");
    let p = write(dir.path(), "p", "abc\n");
    assert_eq!(
        qwild(&["match", "--text", &t, "--pattern", &p])
            .status
            .code(),
        Some(2)
    );
    let bad = write(dir.path(), "b", "a$b\n");
    assert_eq!(
        qwild(&["oracle", "--text", &bad, "--pattern", &t])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qwild(&["match", "--text", &t]).status.code(), Some(2));
    assert_eq!(
        qwild(&["match", "--text", &t, "--pattern", &t, "--mode", "fuzzy"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qwild(&["lemmas", "--max-n", "11", "--samples", "0", "--seed", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gen_writes_files_and_reports_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("inst");
    let prefix = prefix.to_str().unwrap();
    let o = qwild(&[
        "gen",
        "--n",
        "8",
        "--m",
        "5",
        "--k",
        "0",
        "--plant",
        "2",
        "--seed",
        "7",
        "--out-prefix",
        prefix,
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let t = format!("{prefix}.text");
    let p = format!("{prefix}.pattern");
    let o = qwild(&["oracle", "--text", &t, "--pattern", &p]);
    assert!(stdout(&o).lines().any(|l| l == "2"));

    let o = qwild(&[
        "gen",
        "--n",
        "20",
        "--m",
        "10",
        "--k",
        "5",
        "--alphabet",
        "2",
        "--case",
        "1",
        "--seed",
        "0",
        "--out-prefix",
        prefix,
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn lemmas_small_sweep_passes() {
    let o = qwild(&[
        "lemmas",
        "--max-n",
        "3",
        "--samples",
        "50",
        "--seed",
        "1",
        "--sequential",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"lemma2\""));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(
        dir.path(),
        "grid.jsonl",
        concat!(
            r#"{"spec":{"n":64,"m":40,"alphabet_size":3,"k":8,"plant":{"match_at":5},"case_bias":"force_case2","seed":1},"cfg":{"mode":"gap-low","seed":1}}"#,
            "\n",
            r#"{"spec":{"n":128,"m":30,"alphabet_size":4,"k":12,"plant":"none","case_bias":"any","seed":2}}"#,
            "\n"
        ),
    );
    let csv = dir.path().join("out.csv");
    let o = qwild(&["bench", "--grid", &grid, "--csv", csv.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let body = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("n,m,k_true,k_prime,k_eff,case,d,"));
    assert!(lines[1].ends_with(",1,gap-low"));

    let empty = write(dir.path(), "empty.jsonl", "");
    let o = qwild(&["bench", "--grid", &empty, "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 1);

    let bad = write(dir.path(), "bad.jsonl", "{\"spec\":1}\n");
    let o = qwild(&["bench", "--grid", &bad, "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
