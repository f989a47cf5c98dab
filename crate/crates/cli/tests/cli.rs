use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn diskpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diskpack"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn dist_of_tilted_pair_is_half() {
    let o = diskpack(&["dist", "--n1", "0,0,1", "--n2", "0.5,0,0.8660254037844386", "--s", "0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0.5");
}

#[test]
fn dist_accepts_negative_components() {
    let o = diskpack(&["dist", "--n1", "-1,0,0", "--n2", "0,-1,0", "--s", "0,0,-1"]);
    assert_eq!(o.status.code(), Some(0));
    let d: f64 = stdout(&o).trim().parse().unwrap();
    assert!((0.0..=2.0).contains(&d));
}

#[test]
fn generate_pack_verify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("grid.json");
    let sol = dir.path().join("sol.json");
    let mesh = dir.path().join("sol.obj");

    let o = diskpack(&["gen", "sphere-grid", "--n", "64", "--c", "0.5", "--output", p(&inst)]);
    assert_eq!(o.status.code(), Some(0));
    let o = diskpack(&["pack", "--input", p(&inst), "--output", p(&sol), "--mesh", p(&mesh)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("volume:") && out.contains("lower bound:") && out.contains("certified ratio:"));
    assert!(fs::read_to_string(&mesh).unwrap().lines().any(|l| l.starts_with("v ")));

    let o = diskpack(&["verify", "--solution", p(&sol)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verification: pass"));
}

#[test]
fn stab_single_disk_has_zero_length() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("one.json");
    fs::write(&inst, r#"{"disks":[[0.1,0.2,0.9]]}"#).unwrap();
    let o = diskpack(&["stab", "--input", p(&inst), "--axis", "z"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().any(|l| l == "length: 0"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    let mut prints = Vec::new();
    for run in 0..2 {
        let inst = dir.path().join(format!("cap{run}.json"));
        let sol = dir.path().join(format!("sol{run}.json"));
        let mesh = dir.path().join(format!("mesh{run}.obj"));
        let o = diskpack(&[
            "gen", "random-cap", "--n", "40", "--axis", "y", "--max-angle", "0.6", "--seed", "9",
            "--output", p(&inst),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let o = diskpack(&["pack", "--input", p(&inst), "--output", p(&sol), "--mesh", p(&mesh)]);
        assert_eq!(o.status.code(), Some(0));
        prints.push(o.stdout);
        files.push((fs::read(&inst).unwrap(), fs::read(&sol).unwrap(), fs::read(&mesh).unwrap()));
    }
    assert_eq!(prints[0], prints[1]);
    assert_eq!(files[0], files[1]);
}

#[test]
fn sequential_flag_matches_parallel_output() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("grid.json");
    diskpack(&["gen", "sphere-grid", "--n", "49", "--c", "0.5", "--output", p(&inst)]);
    let a = diskpack(&["stab", "--input", p(&inst), "--axis", "z"]);
    let b = diskpack(&["stab", "--input", p(&inst), "--axis", "z", "--sequential"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn growth_prints_one_row_per_size() {
    let o = diskpack(&["growth", "--sizes", "16,64", "--c", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("16\t")));
    assert!(out.lines().any(|l| l.starts_with("64\t")));
    assert!(out.contains("stab bound slope:"));
}

#[test]
fn validation_failures_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"disks\": [[0,0]]}").unwrap();

    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["dist", "--n1", "0,0,1", "--n2", "0,1,0", "--s", "0,0,1", "--bogus"],
        vec!["dist", "--n1", "0,0,0", "--n2", "0,1,0", "--s", "0,0,1"],
        vec!["dist", "--n1", "0,0", "--n2", "0,1,0", "--s", "0,0,1"],
        vec!["pack", "--input", "/nonexistent/in.json", "--output", p(&out)],
        vec!["pack", "--input", p(&bad), "--output", p(&out)],
        vec!["pack", "--input", p(&bad), "--output", p(&out), "--exact-threshold", "21"],
        vec!["stab", "--input", p(&bad), "--axis", "w"],
        vec!["gen", "sphere-grid", "--n", "10", "--c", "0.5", "--output", p(&out)],
        vec!["verify", "--solution", p(&bad)],
    ];
    for args in cases {
        let o = diskpack(&args);
        assert_eq!(o.status.code(), Some(1), "args {args:?}");
        assert!(!o.stderr.is_empty(), "args {args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(diskpack(&["--help"]).status.code(), Some(0));
    assert_eq!(diskpack(&["--version"]).status.code(), Some(0));
}
