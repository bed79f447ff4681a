use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use polycurve_core::pointgeom::random_config;
use polycurve_core::Chirotope;

fn polycurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycurve"))
        .args(args)
        .output()
        .unwrap()
}

fn polycurve_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polycurve"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn chirotope_of_cubic_points() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "cubic.txt", "# y = x^3\n0 0\n1 1\n2 8\n3 27\n");
    let o = polycurve(&["chirotope", s(&pts), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n=4 k=2\n+\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn degenerate_points_warn() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "square.txt", "0 0\n1 1\n2 4\n3 9\n");
    let o = polycurve(&["chirotope", s(&pts), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains('0'));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.txt", "1 0\n1 2\n3 4\n4 1\n");
    assert_eq!(polycurve(&["chirotope", s(&dup), "--k", "2"]).status.code(), Some(2));
    let few = write(dir.path(), "few.txt", "1 0\n2 2\n");
    assert_eq!(polycurve(&["chirotope", s(&few), "--k", "2"]).status.code(), Some(2));
    let truncated = write(dir.path(), "trunc.txt", "n=6 k=2\n+++-\n");
    assert_eq!(polycurve(&["check", s(&truncated)]).status.code(), Some(2));
    assert_eq!(polycurve(&["check", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(polycurve(&["enumerate", "--n", "3", "--k", "2"]).status.code(), Some(2));
    assert_eq!(polycurve(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(polycurve(&["enumerate", "--n", "x", "--k", "2"]).status.code(), Some(2));
    assert_eq!(polycurve(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_catalog_members_and_flips() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("n6k2.cat");
    let o = polycurve(&["enumerate", "--n", "6", "--k", "2", "--out", s(&cat)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("degree_k=74"));
    let text = std::fs::read_to_string(&cat).unwrap();
    let members: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(members.len(), 74);
    let mut failures = 0;
    for (i, signs) in members.iter().enumerate() {
        let file = write(dir.path(), "c.txt", &format!("n=6 k=2\n{signs}\n"));
        let o = polycurve(&["check", s(&file)]);
        assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "PASS\n"));
        // flip one character; a valid result must be another member
        let pos = i % signs.len();
        let flipped: String = signs
            .char_indices()
            .map(|(j, ch)| {
                if j == pos {
                    if ch == '+' {
                        '-'
                    } else {
                        '+'
                    }
                } else {
                    ch
                }
            })
            .collect();
        let file = write(dir.path(), "f.txt", &format!("n=6 k=2\n{flipped}\n"));
        let o = polycurve(&["check", s(&file)]);
        let canonical = Chirotope::from_sign_string(6, 2, &flipped)
            .unwrap()
            .canonicalize()
            .unwrap()
            .to_sign_string();
        if members.contains(&canonical.as_str()) {
            assert_eq!(o.status.code(), Some(0));
        } else {
            failures += 1;
            assert_eq!(o.status.code(), Some(1));
            let out = stdout(&o);
            assert!(out.starts_with("FAIL "), "{out}");
            assert!(out.contains('('), "witness tuples expected: {out}");
        }
    }
    assert!(failures > 0);
}

#[test]
fn check_json_output() {
    let o = polycurve_stdin(&["check", "-", "--json"], "n=5 k=2\n+-+-+\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(o.status.code() == Some(0)));
    let o = polycurve_stdin(&["check", "-", "--json"], "n=4 k=2\n+\n");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["uniform"], true);
}

#[test]
fn chirotope_pipes_into_check() {
    let dir = tempfile::tempdir().unwrap();
    for (seed, k) in [(1, 1), (2, 2), (3, 3), (4, 2), (5, 4)] {
        let p = random_config(k + 4, k, seed, 1000).unwrap();
        let pts = write(dir.path(), "p.txt", &p.to_string());
        let o = polycurve(&["chirotope", s(&pts), "--k", &k.to_string()]);
        assert_eq!(o.status.code(), Some(0));
        let o = polycurve_stdin(&["check", "-"], &stdout(&o));
        assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "PASS\n"));
    }
}

#[test]
fn enumerate_shards_and_summary() {
    let full = polycurve(&["enumerate", "--n", "6", "--k", "2"]);
    let line = stdout(&full);
    assert!(line.starts_with("unimodal=") && line.trim_end().ends_with(" degree_k=74"));
    let sharded = polycurve(&[
        "enumerate",
        "--n",
        "6",
        "--k",
        "2",
        "--shards",
        "4",
        "--prefix-depth",
        "4",
        "--jobs",
        "2",
    ]);
    assert_eq!(stdout(&sharded), line);
    let mut total = 0;
    for shard in 0..4 {
        let o = polycurve(&[
            "enumerate",
            "--n",
            "6",
            "--k",
            "2",
            "--shards",
            "4",
            "--shard",
            &shard.to_string(),
            "--prefix-depth",
            "4",
        ]);
        let out = stdout(&o);
        total += out.trim_end().rsplit('=').next().unwrap().parse::<u64>().unwrap();
    }
    assert_eq!(total, 74);
}

#[test]
fn realize_and_scan() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("c.cat");
    polycurve(&["enumerate", "--n", "6", "--k", "2", "--out", s(&cat)]);
    let before = std::fs::read(&cat).unwrap();
    let o = polycurve(&["realize", "--catalog", s(&cat), "--trials", "0", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("realizable=0 unknown=74\n"));
    assert_eq!(std::fs::read(&cat).unwrap(), before);

    let out_a = dir.path().join("a.cat");
    let out_b = dir.path().join("b.cat");
    for out in [&out_a, &out_b] {
        let o = polycurve(&[
            "realize",
            "--catalog",
            s(&cat),
            "--trials",
            "3000",
            "--seed",
            "9",
            "--out",
            s(out),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("known_total=74 known_realizable=74"));
    }
    assert_eq!(std::fs::read(&out_a).unwrap(), std::fs::read(&out_b).unwrap());
    let o = polycurve(&[
        "realize",
        "--catalog",
        s(&cat),
        "--trials",
        "100",
        "--range",
        "5",
        "--range",
        "50",
        "--out",
        s(&out_b),
    ]);
    assert_eq!(o.status.code(), Some(0));

    let scan = polycurve(&["scan", "--catalog", s(&out_a)]);
    assert_eq!(scan.status.code(), Some(0));
    let lines: Vec<String> = stdout(&scan).lines().map(String::from).collect();
    assert_eq!(lines.len(), 74);
    assert!(lines[0].starts_with("record=0 signs="));
    assert!(lines.iter().all(|l| l.contains(" exactly_rank=")));
    assert_eq!(stdout(&polycurve(&["scan", "--catalog", s(&out_a)])), stdout(&scan));
}

#[test]
fn realize_rejects_tampered_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("c.cat");
    polycurve(&["enumerate", "--n", "5", "--k", "2", "--out", s(&cat)]);
    let text = std::fs::read_to_string(&cat).unwrap();
    let tampered = write(dir.path(), "t.cat", &text.replacen("+\n", "-\n", 1));
    let o = polycurve(&["realize", "--catalog", s(&tampered), "--trials", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_structure_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let pts = write(dir.path(), "p.txt", "0 0\n1 3\n2 -1\n4 2\n");
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let o = polycurve(&["render", s(&pts), "--k", "2", "--out", s(out)]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg "));
    assert_eq!(svg.matches(r#"<circle class="point""#).count(), 4);
    assert_eq!(svg.matches(r#"<path class="curve""#).count(), 2);
    assert!(svg.contains(r#"class="frame""#));
    // 256 segments per curve by default
    let path = svg.lines().find(|l| l.contains("class=\"curve\"")).unwrap();
    assert_eq!(path.matches(" L").count(), 256);

    let bad = write(dir.path(), "bad.txt", "0 0\n0 1\n2 2\n3 3\n");
    assert_eq!(
        polycurve(&["render", s(&bad), "--k", "2", "--out", s(&a)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        polycurve(&["render", s(&pts), "--k", "2", "--out", s(&a), "--base", "1,2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn render_annotations_match_chirotope() {
    let dir = tempfile::tempdir().unwrap();
    let p = random_config(6, 2, 42, 50).unwrap();
    let pts = write(dir.path(), "p.txt", &p.to_string());
    let svg_path = dir.path().join("a.svg");
    let o = polycurve(&[
        "render",
        s(&pts),
        "--k",
        "2",
        "--out",
        s(&svg_path),
        "--annotate",
        "--base",
        "1,3,5",
        "--base",
        "6,2,4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    let c: Chirotope = stdout(&polycurve(&["chirotope", s(&pts), "--k", "2"])).parse().unwrap();
    let mut labels = 0;
    for line in svg.lines().filter(|l| l.contains(r#"class="sign""#)) {
        let attr = |name: &str| {
            let start = line.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
            line[start..].split('"').next().unwrap().to_string()
        };
        let base: Vec<usize> = attr("data-base").split(',').map(|v| v.parse().unwrap()).collect();
        let e: usize = attr("data-element").parse().unwrap();
        let label = line.rsplit("\">").next().unwrap().chars().next().unwrap();
        let mut t = base.clone();
        t.push(e);
        assert_eq!(label, c.eval(&t).unwrap().to_char(), "{line}");
        labels += 1;
    }
    assert_eq!(labels, 6);
}
