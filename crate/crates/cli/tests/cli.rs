use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arithmetree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn golden_cases() -> Vec<(Vec<String>, String)> {
    let mut cases = Vec::new();
    for d in 2..=4 {
        let d_s = d.to_string();
        cases.push((vec!["enum".into(), d_s.clone()], format!("enum_{d}.txt")));
        cases.push((
            vec!["poset".into(), d_s.clone(), "--dot".into()],
            format!("poset_{d}.dot"),
        ));
        for map in ["tamari", "loday"] {
            cases.push((
                vec!["coords".into(), map.into(), d_s.clone(), "--csv".into()],
                format!("coords_{map}_{d}.csv"),
            ));
        }
    }
    cases
}

#[test]
fn golden_outputs() {
    for (args, file) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(stdout(&args), golden(&file), "{args:?}");
    }
}

#[test]
fn golden_outputs_are_byte_identical_across_runs() {
    for (args, _) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn one_plus_one() {
    assert_eq!(stdout(&["add", "1", "1"]), "(. (. .))\n((. .) .)\n");
    assert_eq!(stdout(&["left", "1", "1"]), "(. (. .))\n");
    assert_eq!(stdout(&["right", "1", "1"]), "((. .) .)\n");
    assert_eq!(stdout(&["add", "2", "1"]), stdout(&["enum", "3"]));
}

#[test]
fn literals_and_integers_mix() {
    assert_eq!(stdout(&["add", "(. .)", "1"]), stdout(&["enum", "2"]));
    assert_eq!(
        stdout(&["mul", "((. .) .)", "(. (. .))"]),
        "((. (. .)) (. .))\n"
    );
    assert_eq!(stdout(&["mul", "2", "2"]), stdout(&["enum", "4"]));
}

#[test]
fn tamari_code_of_degree_two() {
    let csv = stdout(&["coords", "tamari", "2"]);
    assert!(csv.contains(",2,0\n") && csv.contains(",1,1\n"), "{csv}");
}

#[test]
fn json_outputs() {
    assert_eq!(
        stdout(&["add", "1", "1", "--json"]),
        "{\"degree\":2,\"trees\":[\"(. (. .))\",\"((. .) .)\"]}\n"
    );
    assert_eq!(
        stdout(&["poset", "2", "--json"]),
        "{\"degree\":2,\"vertices\":[\"(. (. .))\",\"((. .) .)\"],\"edges\":[[1,0]]}\n"
    );
    assert!(stdout(&["coords", "loday", "3", "--json"]).contains("\"coords\":[1,4,1]"));
}

#[test]
fn interval_canopy_section() {
    assert_eq!(
        stdout(&["interval", "(((. .) .) .)", "(. (. (. .)))"]),
        stdout(&["enum", "3"])
    );
    assert_eq!(stdout(&["interval", "(. (. .))", "((. .) .)"]), "");
    assert_eq!(stdout(&["canopy", "(. ((. .) .))"]), "-+\n");
    assert_eq!(stdout(&["section", "-+"]), "(. ((. .) .))\n");
    assert_eq!(stdout(&["section", "--"]), "(. (. (. .)))\n");
    assert_eq!(stdout(&["decompose", "(. .)"]), "1\n");
}

#[test]
fn checks_pass() {
    let out = stdout(&["check", "theorem", "--max-degree", "5"]);
    assert!(out.starts_with("PASS theorem"), "{out}");
    let out = stdout(&["check", "all", "--max-degree", "4"]);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("PASS")).count(),
        6,
        "{out}"
    );
    assert!(out.contains("right distributivity fails"));
}

fn code(args: &[&str]) -> (i32, String) {
    let out = run(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn error_exit_codes_are_distinct() {
    let (usage, _) = code(&["frobnicate"]);
    let (parse, msg) = code(&["add", "(. (. .)", "1"]);
    let (cap, cap_msg) = code(&["enum", "8"]);
    assert_eq!((usage, parse, cap), (2, 3, 4));
    assert!(msg.contains("position"), "{msg}");
    assert!(cap_msg.contains("cap 7"), "{cap_msg}");
    assert_eq!(code(&["section", "-x"]).0, 3);
    assert_eq!(code(&["check", "relations", "--max-degree", "7"]).0, 4);
    assert_eq!(code(&["poset", "8"]).0, 4);
    assert_eq!(code(&["interval", "(. .)", "(. (. .))"]).0, 5);
    assert_eq!(code(&["canopy", "."]).0, 5);
    for args in [&["frobnicate"][..], &["enum", "8"], &["canopy", "."]] {
        assert_eq!(run(args).stdout, b"", "{args:?}");
    }
}

#[test]
fn caps_can_be_raised() {
    assert_eq!(stdout(&["enum", "8", "--cap", "8"]).lines().count(), 1430);
    assert_eq!(
        stdout(&["coords", "tamari", "8", "--cap", "8"])
            .lines()
            .count(),
        1431
    );
}
