use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coalg_kernel::interchange::Report;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn coalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coalg")).args(args).env_remove("COALG_KERNEL_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn dual_numbers_validate() {
    let o = coalg(&["validate", path(&data("dual_numbers.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid coalgebra, dim 2"), "{}", stdout(&o));
}

#[test]
fn f4_dual_has_no_group_likes() {
    let o = coalg(&["grouplikes", path(&data("F4dual.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 group-like elements"), "{}", stdout(&o));
}

#[test]
fn garbage_is_a_parse_error_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("garbage.json");
    std::fs::write(&p, "{\"version\": 1,\n  \"kind\": \"coalgebra\" \"dim\": 2}\n").unwrap();
    let o = coalg(&["validate", path(&p)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("garbage.json") && err.contains("line 2"), "{err}");
}

#[test]
fn schema_violations_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"version": 1, "kind": "coalgebra", "field": {"kind": "Q"}, "dim": "two", "delta": [], "epsilon": []}"#)
        .unwrap();
    let o = coalg(&["validate", path(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dim"), "{}", stderr(&o));

    std::fs::write(&p, r#"{"version": 7, "kind": "gset", "size": 1, "action": [[0]]}"#).unwrap();
    assert_eq!(coalg(&["validate", path(&p)]).status.code(), Some(2));
}

#[test]
fn invalid_coalgebra_exits_3() {
    let o = coalg(&["validate", path(&data("not_cocommutative.json"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("cocommutativity fails"));
    // other commands refuse invalid input too
    let o = coalg(&["etale", path(&data("not_cocommutative.json"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn degree_cap_is_a_computation_error() {
    let c = data("cube_root_two.json");
    assert_eq!(coalg(&["decompose", path(&c)]).status.code(), Some(0));
    let o = coalg(&["--degree-cap", "2", "decompose", path(&c)]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("cap"));
}

#[test]
fn json_reports_round_trip_and_are_deterministic() {
    let runs = [
        vec!["etale", "F4dual.json"],
        vec!["decompose", "cube_root_two.json"],
        vec!["grouplikes", "dual_numbers.json"],
        vec!["galois-adjunction", "F8.json", "orbits.json"],
        vec!["day-subgen", "graded.json", "--at", "1:1"],
    ];
    for run in runs {
        let mut args = vec!["--format".to_string(), "json".into(), "--seed".into(), "11".into(), run[0].into()];
        args.extend(run[1..].iter().map(|a| if a.ends_with(".json") { path(&data(a)).to_string() } else { a.to_string() }));
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = coalg(&args);
        let b = coalg(&args);
        assert_eq!(a.status.code(), Some(0), "{run:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{run:?} is not deterministic");
        let text = stdout(&a);
        let report = Report::parse(&text).unwrap();
        assert_eq!(report.seed, Some(11));
        assert_eq!(report.command, run[0]);
        assert_eq!(report.to_canonical() + "\n", text);
    }
}

#[test]
fn seed_falls_back_to_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_coalg"))
        .args(["--format", "json", "validate", path(&data("F4dual.json"))])
        .env("COALG_KERNEL_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(Report::parse(&stdout(&o)).unwrap().seed, Some(99));
}

#[test]
fn day_convolution_in_both_spellings() {
    let (cat, f, g) = (data("cat.json"), data("F.json"), data("G.json"));
    let nested = coalg(&["--format", "json", "day", "convolve", path(&cat), path(&f), path(&g)]);
    let flat = coalg(&["--format", "json", "day-convolve", path(&cat), path(&f), path(&g)]);
    assert_eq!(nested.status.code(), Some(0), "{}", stderr(&nested));
    assert_eq!(nested.stdout, flat.stdout);
    let r = Report::parse(&stdout(&nested)).unwrap();
    assert_eq!(r.data["dims"], serde_json::json!([3, 3]));

    let o = coalg(&["day-hom", "--load", path(&cat), path(&f), path(&g)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("[G, H] has dims [3, 3]"), "{}", stdout(&o));
}

#[test]
fn entity_selection_in_workspaces() {
    let ws = data("counit.json");
    let o = coalg(&["retract", path(&ws)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("#NAME"));
    let o = coalg(&["retract", &format!("{}#eps", path(&ws))]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = coalg(&["subgen", &format!("{}#D", path(&ws)), "--vector", "1,0"]);
    assert!(stdout(&o).contains("generated subcoalgebra of dim 1"), "{}", stdout(&o));
}

#[test]
fn presheaf_commands() {
    let p = format!("{}#P", path(&data("chain.json")));
    for cmd in ["etale", "grouplikes", "adjunction-gp"] {
        let o = coalg(&[cmd, &p]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stderr(&o));
    }
}

#[test]
fn duplicate_names_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    std::fs::create_dir(&a).unwrap();
    let copy = a.join("dual_numbers.json");
    std::fs::copy(data("dual_numbers.json"), &copy).unwrap();
    let o = coalg(&["validate", path(&data("dual_numbers.json")), path(&copy)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("already taken"));
}

#[test]
fn suite_subset_runs() {
    let o = coalg(&["--format", "json", "suite", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::parse(&stdout(&o)).unwrap();
    assert!(r.ok);
    assert!(r.checks.iter().all(|c| c.name.starts_with("suite 5/")));
    assert_eq!(coalg(&["suite", "10"]).status.code(), Some(3));
}
