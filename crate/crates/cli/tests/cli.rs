use std::io::Write;
use std::process::{Command, Output};

use knotdimer_core::knot::builtin_knot;
use knotdimer_core::twisted::{builtin_coloring_rep, find_coloring};
use knotdimer_core::LaurentPoly;

fn knotdimer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotdimer")).args(args).env_remove("KNOTDIMER_TABLE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Node and edge statements of a DOT graph.
fn dot_counts(dot: &str) -> (usize, usize) {
    let body: Vec<&str> = dot.lines().map(str::trim).filter(|l| l.ends_with("];")).collect();
    let edges = body.iter().filter(|l| l.contains(" -- ")).count();
    (body.len() - edges, edges)
}

#[test]
fn trefoil_alexander_all_methods() {
    let o = knotdimer(&["alexander", "--knot", "trefoil", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "det: t^2 - t + 1\ndimer: t^2 - t + 1\nstatesum: t^2 - t + 1\nAGREE\n");
}

#[test]
fn trefoil_twisted_coloring() {
    let o = knotdimer(&["twisted", "--knot", "trefoil", "--rep", "coloring:3:0,1,2", "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let expected: LaurentPoly = "-t^6 + t^5 + t^4 - 2t^3 + t^2 + t - 1".parse().unwrap();
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for (line, method) in lines.iter().zip(["det: ", "dimer: "]) {
        let p: LaurentPoly = line.strip_prefix(method).unwrap().parse().unwrap();
        assert!(p.equal_up_to_unit(&expected), "{line}");
    }
    assert_eq!(lines[2], "AGREE");
}

#[test]
fn bad_labeling_is_an_input_error() {
    let o = knotdimer(&["alexander", "--pd", "X(1,4,2,5)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    let err = stderr(&o);
    assert!(err.contains("BadLabeling"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn input_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &["twisted", "--knot", "trefoil", "--method", "statesum"],
        &["alexander", "--knot", "no_such_knot"],
        &["alexander", "--knot", "trefoil", "--pd", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"],
        &["alexander", "--knot", "trefoil", "--face", "99"],
        &["twisted", "--knot", "trefoil", "--rep", "coloring:3:0,0,1"],
        &["verify"],
    ];
    for args in cases {
        let o = knotdimer(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = knotdimer(&["alexander", "--knot", "trefoil", "--face", "99"]);
    assert!(stderr(&o).contains("FaceOutOfRange"), "{}", stderr(&o));
}

#[test]
fn record_format() {
    let o = knotdimer(&["alexander", "--knot", "figure8", "--method", "all", "--format", "record"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let records: Vec<Vec<&str>> = text.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(records.len(), 3);
    for (r, method) in records.iter().zip(["det", "dimer", "statesum"]) {
        assert_eq!(r[0], "knot=figure8");
        assert_eq!(r[1], format!("method={method}"));
        assert_eq!(r[2], "polynomial=t^2 - 3t + 1");
        assert_eq!(r[3], "agree=true");
    }
}

#[test]
fn output_is_deterministic() {
    let runs: [&[&str]; 3] = [
        &["twisted", "--knot", "6_1", "--rep", "coloring:3", "--method", "all", "--format", "record"],
        &["export", "--knot", "7_4", "--graph", "planar", "--rep", "coloring:3"],
        &["export", "--knot", "6_1", "--graph", "twisted", "--rep", "coloring:3"],
    ];
    for args in runs {
        let a = knotdimer(args);
        let b = knotdimer(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn alexander_graph_export() {
    let o = knotdimer(&["export", "--knot", "trefoil"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(dot_counts(&stdout(&o)), (6, 7));
}

#[test]
fn twisted_graph_export() {
    let o = knotdimer(&["export", "--knot", "trefoil", "--graph", "twisted", "--rep", "coloring:3:0,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let (nodes, _) = dot_counts(&stdout(&o));
    assert_eq!(nodes, 2 * 3 * 3);
}

#[test]
fn unknot_exports_an_empty_graph() {
    for graph in ["alexander", "twisted", "planar"] {
        let o = knotdimer(&["export", "--knot", "unknot", "--graph", graph]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(dot_counts(&stdout(&o)), (0, 0));
    }
}

#[test]
fn planar_export_has_no_junctions() {
    let o = knotdimer(&["export", "--knot", "6_1", "--graph", "planar", "--rep", "coloring:3"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(!dot.contains("shape=point"));
    let drawn = stdout(&knotdimer(&["export", "--knot", "6_1", "--graph", "twisted", "--rep", "coloring:3"]));
    assert!(drawn.contains("shape=point"));
}

#[test]
fn representation_file_matches_the_shorthand() {
    let d = builtin_knot("figure8").unwrap();
    let colors = find_coloring(&d, 5).unwrap();
    let rho = builtin_coloring_rep(&d, 5, &colors).unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "# figure-eight, dihedral 5\n{rho}").unwrap();
    let path = file.path().to_str().unwrap();
    let from_file = knotdimer(&["twisted", "--knot", "figure8", "--rep", path, "--method", "all"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    let text = stdout(&from_file);
    assert!(text.ends_with("AGREE\n"));
    let det = text.lines().next().unwrap().strip_prefix("det: ").unwrap();
    assert_eq!(det, "t^10 - 3t^9 - 3t^8 + 12t^7 + 2t^6 - 18t^5 + 2t^4 + 12t^3 - 3t^2 - 3t + 1");
}

#[test]
fn representation_file_errors() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "dim 2\narc 0\n1 1\n0 1\narc 1\n1 0\n0 1\narc 2\n1 0\n0 1\n").unwrap();
    let o = knotdimer(&["twisted", "--knot", "trefoil", "--rep", file.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("InvalidRepresentation"), "{}", stderr(&o));
    let o = knotdimer(&["twisted", "--knot", "trefoil", "--rep", "/nonexistent/rep.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pd_from_a_file_and_face_overrides() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# figure-eight\nX(4,2,5,1) X(8,6,1,5)\nX(6,3,7,4) X(2,7,3,8)").unwrap();
    let o = knotdimer(&["alexander", "--file", file.path().to_str().unwrap(), "--method", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("det: t^2 - 3t + 1\n"));
    for face in 0..6 {
        let f = face.to_string();
        let o = knotdimer(&["alexander", "--knot", "figure8", "--unbounded", &f, "--method", "all"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("det: t^2 - 3t + 1\n"));
    }
}

#[test]
fn table_override() {
    let mut table = tempfile::NamedTempFile::new().unwrap();
    writeln!(table, "# small table\nunknot\nmytrefoil X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_knotdimer")).args(args).env("KNOTDIMER_TABLE", table.path()).output().unwrap()
    };
    let o = run(&["alexander", "--knot", "mytrefoil"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "t^2 - t + 1\n");
    assert_eq!(run(&["alexander", "--knot", "trefoil"]).status.code(), Some(2));
    let o = run(&["verify", "--corpus"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS mytrefoil twisted-coloring-3-dimer"));
    assert!(text.ends_with(" 0 failed, 0 skipped\n"), "{text}");
}

#[test]
fn corpus_verification_passes() {
    let o = knotdimer(&["verify", "--corpus"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    for name in ["trefoil", "figure8", "6_1", "8_21"] {
        assert!(text.contains(&format!("PASS {name} alexander-routes")), "{name}");
    }
    assert!(text.contains("PASS 7_4 twisted-coloring-3-dimer"));
}
