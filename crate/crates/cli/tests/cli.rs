use std::path::Path;
use std::process::{Command, Output};

fn rubikmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rubikmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn cube_order() {
    let out = rubikmap(&["order", "cube"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "43252003274489856000");
}

#[test]
fn map_flag_matches_positional() {
    let a = rubikmap(&["order", "prism3"]);
    let b = rubikmap(&["order", "--map", "prism3"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).trim(), "8126654054400");
}

#[test]
fn info_reports_counts() {
    let out = rubikmap(&["info", "dodecahedron", "--format", "doc"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["vertices"], 20);
    assert_eq!(doc["edges"], 30);
    assert_eq!(doc["faces"], 12);
    assert_eq!(doc["genus"], 0);
    assert_eq!(doc["all_odd"], true);
}

#[test]
fn solve_of_nothing_is_empty() {
    let out = rubikmap(&["solve", "cube"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "()");
}

#[test]
fn scramble_depends_only_on_seed() {
    let a = rubikmap(&["scramble", "cube", "--seed", "5", "--length", "12"]);
    let b = rubikmap(&["scramble", "cube", "--seed", "5", "--length", "12"]);
    let c = rubikmap(&["scramble", "cube", "--seed", "6", "--length", "12"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    assert_eq!(stdout(&a).split_whitespace().count(), 12);
}

#[test]
fn solve_undoes_scramble() {
    let scramble = stdout(&rubikmap(&["scramble", "prism4", "--seed", "3"]));
    let solution = stdout(&rubikmap(&["solve", "prism4", "--moves", scramble.trim()]));
    let both = format!("{} {}", scramble.trim(), solution.trim());
    let again = stdout(&rubikmap(&["solve", "prism4", "--moves", &both]));
    assert_eq!(again.trim(), "()");
}

#[test]
fn build_writes_map_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p5.json");
    let out = rubikmap(&["build", "prism5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("prism5: 7 generators on 60 points"));
    assert_eq!(text.lines().filter(|l| l.starts_with('F')).count(), 7);
    let again = rubikmap(&["order", path.to_str().unwrap()]);
    assert_eq!(stdout(&again), stdout(&rubikmap(&["order", "prism5"])));
}

#[test]
fn export_script_lists_generators() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.g");
    let out = rubikmap(&["export-script", "cube", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    for f in 1..=6 {
        assert!(text.contains(&format!("F{f} := ")));
    }
    assert!(text.contains("Group([F1, F2, F3, F4, F5, F6])"));
    let generators = rubikmap::rubik::import_script(&text).unwrap();
    let p = rubikmap::RubikPresentation::new(rubikmap::map::by_name("cube").unwrap()).unwrap();
    assert_eq!(generators, p.generators());
}

fn without_seconds(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            cells[..cells.len() - 1].join(",")
        })
        .collect()
}

#[test]
fn suite_is_deterministic_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["prism3", "prism4", "tetrahedron", "cube"] {
        let m = rubikmap::map::by_name(name).unwrap();
        rubikmap::map::save(&m, dir.path().join(format!("{name}.json"))).unwrap();
    }
    let catalog = dir.path().to_str().unwrap();
    let run = || rubikmap(&["suite", "--catalog", catalog, "--seed", "11", "--format", "csv"]);
    let (a, b) = (run(), run());
    assert!(a.status.success());
    let rows = without_seconds(&stdout(&a));
    assert_eq!(rows, without_seconds(&stdout(&b)));
    assert_eq!(rows.len(), 5);
    assert!(rows[1..].iter().all(|r| r.ends_with(",true")));
}

fn write_catalog(dir: &Path, names: &[&str]) {
    for name in names {
        let m = rubikmap::map::by_name(name).unwrap();
        rubikmap::map::save(&m, dir.join(format!("{name}.json"))).unwrap();
    }
}

#[test]
fn exit_codes() {
    assert_eq!(rubikmap(&["verify", "prism3"]).status.code(), Some(0));
    // genus 1: the planar prediction does not hold
    assert_eq!(rubikmap(&["verify", "hex_torus_2x2"]).status.code(), Some(1));
    let unknown = rubikmap(&["order", "no_such_map"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("no_such_map"));
    assert_eq!(rubikmap(&["solve", "cube", "--moves", "F9"]).status.code(), Some(2));
    assert_eq!(rubikmap(&["solve", "cube", "--moves", "X1"]).status.code(), Some(2));
    assert_eq!(rubikmap(&["verify", "theta"]).status.code(), Some(2));
}

#[test]
fn suite_strict_counts_nonplanar_failures() {
    let dir = tempfile::tempdir().unwrap();
    write_catalog(dir.path(), &["prism3", "hex_torus_2x2"]);
    let catalog = dir.path().to_str().unwrap();
    assert_eq!(rubikmap(&["suite", "--catalog", catalog]).status.code(), Some(0));
    let strict = rubikmap(&["suite", "--catalog", catalog, "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn suite_doc_format_parses() {
    let dir = tempfile::tempdir().unwrap();
    write_catalog(dir.path(), &["prism3"]);
    let out_path = dir.path().join("out").with_extension("txt");
    let out = rubikmap(&[
        "suite",
        "--catalog",
        dir.path().to_str().unwrap(),
        "--format",
        "doc",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["reports"][0]["name"], "prism3");
    assert_eq!(doc["reports"][0]["predicted"], "8126654054400");
}
