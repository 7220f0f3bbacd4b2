use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn residua(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_residua"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

struct Case {
    name: String,
    args: Vec<String>,
    expected: String,
}

fn corpus() -> Vec<Case> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .map(|path| {
            let text = fs::read_to_string(&path).unwrap();
            let mut lines = text.lines();
            assert!(lines.next().unwrap().starts_with('#'), "{path:?} lacks a header");
            let cmd = lines.next().unwrap().strip_prefix("$ ").expect("command line");
            let expected: Vec<&str> = lines.collect();
            Case {
                name: path.file_stem().unwrap().to_string_lossy().into_owned(),
                args: cmd.split_whitespace().map(String::from).collect(),
                expected: expected.join("\n") + "\n",
            }
        })
        .collect()
}

fn args(c: &Case) -> Vec<&str> {
    c.args.iter().map(String::as_str).collect()
}

#[test]
fn golden_corpus() {
    let cases = corpus();
    assert!(cases.len() >= 10);
    for c in &cases {
        let out = residua(&args(c), None);
        assert!(out.status.success(), "{}: {}", c.name, String::from_utf8_lossy(&out.stderr));
        assert_eq!(String::from_utf8(out.stdout).unwrap(), c.expected, "{}", c.name);
    }
}

#[test]
fn output_is_deterministic() {
    for c in corpus() {
        let first = residua(&args(&c), None).stdout;
        let second = residua(&args(&c), None).stdout;
        assert_eq!(first, second, "{}", c.name);
        let mut json = vec!["--format", "json"];
        json.extend(args(&c));
        assert_eq!(residua(&json, None).stdout, residua(&json, None).stdout, "{}", c.name);
    }
}

#[test]
fn jumps_round_trip_through_stdin() {
    // Every segment printed by the corpus, in every orbit listing.
    let mut checked = 0;
    for c in corpus().iter().filter(|c| c.args[0] == "orbits") {
        let kind = &c.args[2];
        for line in c.expected.lines() {
            let segment = line.split_whitespace().last().unwrap();
            let jumps = residua(&["segment", "to-jumps", "--type", kind], Some(segment));
            assert!(jumps.status.success());
            let back = residua(&["segment", "from-jumps", "--type", kind], Some(&String::from_utf8_lossy(&jumps.stdout)));
            assert_eq!(String::from_utf8(back.stdout).unwrap().trim(), segment);
            checked += 1;
        }
    }
    assert!(checked > 30);
}

#[test]
fn json_half_integers_are_exact() {
    let out = residua(&["--format", "json", "segment", "to-jumps", "--type", "C", "3/2,1/2,1/2"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["jumps"][0], serde_json::json!({ "num": 3, "den": 2 }));
    assert_eq!(v["partition"], serde_json::json!([4, 2]));
}

#[test]
fn exit_codes() {
    let domain = residua(&["residual-check", "--type", "B", "--eps", "1/2", "3,2,1"], None);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("epsilon"));
    let bad_segment = residua(&["segment", "to-jumps", "--type", "B", "100"], None);
    assert_eq!(bad_segment.status.code(), Some(1));
    assert_eq!(residua(&["no-such-command"], None).status.code(), Some(2));
    assert_eq!(residua(&["orbits", "--type", "B"], None).status.code(), Some(2));
    assert_eq!(residua(&["orbits", "--type", "X", "--rank", "3"], None).status.code(), Some(2));
}

#[test]
fn negative_entries_are_values() {
    let out = residua(&["dominant", "--type", "B", "--rank", "3", "-1,3,2"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "dominant: (3,2,1)\n");
}
