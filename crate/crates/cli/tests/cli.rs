use std::fs;

use tcbound::engine::Report;
use tcbound_cli::{
    builtins, run, ProblemFile, ProblemRef, EXIT_CAP, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK,
};

fn tcbound(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tcbound").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn every_builtin_round_trips() {
    let names = builtins::names();
    assert!(names.len() >= 8);
    for name in names {
        let file = builtins::file(&name).unwrap();
        let (code, json, _) = tcbound(&["examples", &name]);
        assert_eq!(code, EXIT_OK);
        let parsed = ProblemFile::parse(&json, &name).unwrap();
        assert_eq!(parsed, file, "{name}");
        assert_eq!(
            parsed.to_problem(None).unwrap(),
            builtins::problem(&name).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn examples_list_and_unknown_name() {
    let (code, out, _) = tcbound(&["examples", "--list"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 12);
    let (code, _, err) = tcbound(&["examples", "sphere-reflection-n9"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(
        err.contains("torus7") && err.contains("klein-bound"),
        "{err}"
    );
}

#[test]
fn sphere_example_encodes_a_swap_on_the_tetrahedron_boundary() {
    let f = builtins::file("sphere-reflection-n2").unwrap();
    assert_eq!(f.vertex_count, 4);
    assert_eq!(f.maximal_simplices.len(), 4);
    assert!(f.maximal_simplices.iter().all(|s| s.len() == 3));
    assert_eq!(f.generators, vec![vec![1, 0, 2, 3]]);
}

#[test]
fn focused_subcommands() {
    assert_eq!(tcbound(&["betti", "torus7", "--field", "Q"]).1, "1 2 1\n");
    let (code, out, _) = tcbound(&["fixed", "sphere-reflection-n2", "--subgroup", "full"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("betti (Q): 1 1\n"), "{out}");
    let (_, out, _) = tcbound(&["fixed", "sphere-reflection-n2", "--subgroup", "trivial"]);
    assert!(out.contains("betti (Q): 1 0 1\n"), "{out}");
    let (_, out, _) = tcbound(&["fixed", "ngon-antipodal"]);
    assert!(out.contains("fixed set: empty"), "{out}");
    let (code, out, _) = tcbound(&["cupfind", "torus7", "--field", "F2"]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains("zero-divisor length 2, certificate [ā₁, ā₂]"),
        "{out}"
    );
    assert_eq!(
        tcbound(&["cupfind", "torus7", "--depth-cap", "0"]).0,
        EXIT_INVALID
    );
    assert_eq!(
        tcbound(&["betti", "torus7", "--field", "F4"]).0,
        EXIT_INVALID
    );
}

#[test]
fn analyze_headlines() {
    let (code, out, _) = tcbound(&["analyze", "sphere-reflection-n2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("result: TC_G ∈ [3,3]"), "{out}");
    let (_, out, _) = tcbound(&["analyze", "sphere-reflection-n1"]);
    assert!(out.contains("result: TC_G = ∞"));
    assert!(out.contains("witness: fixed set X^G has 2 components"));
    let (_, out, _) = tcbound(&["analyze", "klein-bound"]);
    assert!(out.contains("result: TC(X_G) ≤ 6"), "{out}");
}

#[test]
fn output_is_deterministic_and_json_parses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let a = tcbound(&["analyze", "ngon-rotation-6", "--seed", "7", "--output", p]);
    let b = tcbound(&["analyze", "ngon-rotation-6", "--seed", "7"]);
    assert_eq!(a, b);
    let report: Report = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.config.seed, 7);
    let (_, json, _) = tcbound(&[
        "analyze",
        "ngon-rotation-6",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(json, fs::read_to_string(&path).unwrap());
}

#[test]
fn flags_override_file_config() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = builtins::file("torus7").unwrap();
    f.config.fields = Some(vec!["F3".parse().unwrap()]);
    f.config.seed = Some(5);
    let path = dir.path().join("t.json");
    fs::write(&path, f.to_json()).unwrap();
    let p = path.to_str().unwrap();
    let (_, json, _) = tcbound(&["analyze", p, "--format", "json"]);
    let r: Report = serde_json::from_str(&json).unwrap();
    assert_eq!((r.config.fields.len(), r.config.seed), (1, 5));
    let (_, json, _) = tcbound(&[
        "analyze",
        p,
        "--format",
        "json",
        "--fields",
        "F2,Q",
        "--subgroups",
        "all",
    ]);
    let r: Report = serde_json::from_str(&json).unwrap();
    assert_eq!((r.config.fields.len(), r.config.seed), (2, 5));
}

#[test]
fn associated_space_by_path() {
    let dir = tempfile::tempdir().unwrap();
    let mut main = builtins::file("klein-bound").unwrap();
    let base = match &main.associated_spaces[0].base {
        ProblemRef::Inline(b) => b.clone(),
        ProblemRef::Path(_) => unreachable!(),
    };
    fs::write(dir.path().join("circle.json"), base.to_json()).unwrap();
    main.associated_spaces[0].base = ProblemRef::Path("circle.json".into());
    let path = dir.path().join("klein.json");
    fs::write(&path, main.to_json()).unwrap();
    let (code, out, err) = tcbound(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("result: TC(X_G) ≤ 6"));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\n  \"schema_version\": 1,\n  \"name\": 3\n}\n").unwrap();
    let (code, _, err) = tcbound(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("bad.json:3:"), "{err}");

    let mut f = builtins::file("torus7").unwrap();
    f.schema_version = 2;
    fs::write(&path, f.to_json()).unwrap();
    let (code, _, err) = tcbound(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("schema_version 2"), "{err}");
}

#[test]
fn validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let p = path.to_str().unwrap();
    let cases = [
        (
            r#"{"schema_version":1,"name":"x","vertex_count":3,"maximal_simplices":[[0,1],[1,2],[0,2]],"generators":[[0,0,1]]}"#,
            "generators[0]",
        ),
        (
            r#"{"schema_version":1,"name":"x","vertex_count":4,"maximal_simplices":[[0,1],[1,2],[2,3]],"generators":[[1,0,2,3]]}"#,
            "not a simplicial action",
        ),
        (
            r#"{"schema_version":1,"name":"x","vertex_count":3,"maximal_simplices":[[0,1],[1,5]]}"#,
            "out of range",
        ),
        (
            r#"{"schema_version":1,"name":"x","vertex_count":3,"maximal_simplices":[[0,1],[1,2],[0,2]],"asserted_facts":[{"quantity":"TC(X)","side":"lower","value":0}]}"#,
            "at least 1",
        ),
        (
            r#"{"schema_version":1,"name":"x","vertex_count":3,"maximal_simplices":[[0,1],[1,2],[0,2]],"asserted_facts":[{"quantity":"TC(Y)","side":"lower","value":2}]}"#,
            "unknown quantity",
        ),
    ];
    for (text, needle) in cases {
        fs::write(&path, text).unwrap();
        let (code, _, err) = tcbound(&["analyze", p]);
        assert_eq!(code, EXIT_INVALID, "{text}");
        assert!(err.contains(needle), "{err}");
    }
}

#[test]
fn inconsistency_and_cap_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let mut f = builtins::file("sphere-reflection-n2").unwrap();
    f.asserted_facts[0].value = tcbound::engine::Value::Finite(1);
    fs::write(&path, f.to_json()).unwrap();
    let (code, out, err) = tcbound(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INCONSISTENT);
    assert!(out.contains("inconsistencies:"), "{out}");
    assert!(err.contains("inconsistent"), "{err}");
    let (code, _, err) = tcbound(&["analyze", "ngon-rotation-8", "--group-cap", "4"]);
    assert_eq!(code, EXIT_CAP, "{err}");
}

#[test]
fn binary_exit_code() {
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_tcbound"))
        .args(["analyze", "no-such-thing"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_INVALID));
    let ok = std::process::Command::new(env!("CARGO_BIN_EXE_tcbound"))
        .args(["betti", "torus7"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "1 2 1\n");
}
