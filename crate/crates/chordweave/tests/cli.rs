use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordweave"))
        .args(args)
        .current_dir(dir)
        .env_remove("CHORDWEAVE_GUARD_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(&golden(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// (expected output file, exit code, arguments)
const CASES: &[(&str, i32, &[&str])] = &[
    ("gamma_cross", 0, &["gamma", "cross.cd"]),
    ("gamma_chain", 0, &["gamma", "chain.cd"]),
    ("gamma_chain_dot", 0, &["gamma", "chain.cd", "--dot"]),
    ("gamma_chain_json", 0, &["gamma", "chain.cd", "--json"]),
    ("check_path", 0, &["check", "path.tree"]),
    ("check_parity", 3, &["check", "parity_bad.tree"]),
    ("check_parity_json", 3, &["check", "parity_bad.tree", "--json"]),
    ("check_multi", 0, &["check", "multi.tree"]),
    ("check_star", 3, &["check", "star.tree"]),
    ("check_star_marked", 3, &["check", "star.tree", "--marked"]),
    ("realize_path", 0, &["realize", "path.tree"]),
    ("realize_multi", 0, &["realize", "multi.tree"]),
    ("census_2_1", 0, &["census", "--chords", "2", "--components", "1"]),
];

#[test]
fn golden_outputs() {
    for (name, code, args) in CASES {
        let o = run(args);
        let expected = std::fs::read_to_string(golden().join(format!("{name}.out"))).unwrap();
        assert_eq!(stdout(&o), expected, "{name}: {args:?}");
        assert_eq!(o.status.code(), Some(*code), "{name}: {}", stderr(&o));
    }
}

#[test]
fn crossing_pair_listing() {
    assert_eq!(stdout(&run(&["gamma", "cross.cd"])), "a{1,1} -- b{1,1}\n");
}

#[test]
fn error_exits() {
    let o = run(&["gamma", "missing.cd"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: cannot read `missing.cd`"));

    let o = run(&["check", "cycle.tree"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cycle"), "{}", stderr(&o));

    assert_eq!(run(&["check"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "cross.cd", "--dot", "--json"]).status.code(), Some(2));
}

#[test]
fn guard_rail_exit() {
    let o = run(&["census", "--chords", "7", "--components", "2"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("--override-guard"));
    let o = run(&["verify-oracle", "--max-vertices", "7", "--colors", "2"]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["census", "--chords", "1", "--components", "5"]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["census", "--chords", "1", "--components", "5", "--override-guard"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn realize_then_gamma_reproduces_the_tree() {
    let dir = tempfile::tempdir().unwrap();
    for tree in ["path.tree", "multi.tree"] {
        let out = dir.path().join("out.cd");
        let o = run(&["realize", tree, "-o", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).is_empty());
        let o = run(&["gamma", out.to_str().unwrap(), "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let back = chordweave::json::tree_from_json(&stdout(&o)).unwrap();
        let text = std::fs::read_to_string(golden().join(tree)).unwrap();
        let original = chordweave::format::parse_tree(&text).unwrap();
        assert!(chordweave::core::tree::tree_iso(&back, &original), "{tree}");
    }
}

#[test]
fn json_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("cross.json");
    std::fs::write(&d, r#"{"components": [["a","b","a","b"]]}"#).unwrap();
    let o = run(&["gamma", d.to_str().unwrap()]);
    assert_eq!(stdout(&o), "a{1,1} -- b{1,1}\n");

    let realized = dir.path().join("path.json");
    let o = run(&["realize", "path.tree", "--json", "-o", realized.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["gamma", realized.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let t = dir.path().join("t.json");
    let tree = chordweave::format::parse_tree(&std::fs::read_to_string(golden().join("path.tree")).unwrap()).unwrap();
    std::fs::write(&t, chordweave::json::tree_to_json(&tree)).unwrap();
    let o = run(&["check", t.to_str().unwrap()]);
    assert_eq!(stdout(&o), std::fs::read_to_string(golden().join("check_path.out")).unwrap());
}

#[test]
fn roundtrip_command() {
    let o = run(&["roundtrip", "path.tree"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "ISO\n"));
    let o = run(&["roundtrip", "parity_bad.tree"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["realize", "star.tree"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).is_empty());
}

#[test]
fn census_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    let args = ["census", "--chords", "3", "--components", "2", "--jobs", "3", "-o", path.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(0));
    let table = chordweave::oracle::CensusTable::from_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(table.diagrams, 15 * 7);
    let single = chordweave::oracle::census(3, 2, false, 1, false).unwrap();
    assert_eq!(table, single);
}

#[test]
fn verify_oracle_small() {
    let o = run(&["verify-oracle", "--max-vertices", "4", "--colors", "3", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 mismatches, 0 roundtrip failures\n"));
}

#[test]
fn stress_is_seeded() {
    let a = run(&["stress", "--seed", "9", "--count", "40", "--max-vertices", "25"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), "40 trees, 0 failures (seed 9)\n");
    assert_eq!(run(&["stress", "--seed", "9", "--colors", "2"]).status.code(), Some(2));
}
