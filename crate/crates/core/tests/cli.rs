//! End-to-end tests of the `matroid` binary: JSON in, JSON out, exit
//! codes 0 (pass), 1 (failed check), 2 (malformed input or error).

use std::path::PathBuf;
use std::process::{Command, Output};

use matroid_core::constructions::{uniform, vamos};
use matroid_core::io::MatroidFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matroid"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("matroid-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.0.join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn vamos_file(dir: &TempDir) -> PathBuf {
    dir.file("vamos.json", &MatroidFile::from_matroid(&vamos()).to_json_string())
}

#[test]
fn rank_of_vamos_plane() {
    let dir = TempDir::new("rank");
    let path = vamos_file(&dir);
    let out = run(&["rank", path.to_str().unwrap(), "--set", "a,a',b,b'"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["witnesses"]["rank"], 3);
    assert_eq!(json["status"], "pass");
}

#[test]
fn closure_query() {
    let dir = TempDir::new("closure");
    let path = vamos_file(&dir);
    let out = run(&["closure", path.to_str().unwrap(), "--set", "a,a',b"]);
    let json = stdout_json(&out);
    assert_eq!(json["witnesses"]["closure"], serde_json::json!(["a", "a'", "b", "b'"]));
}

#[test]
fn check_axioms_pass_and_fail() {
    let dir = TempDir::new("axioms");
    let good = vamos_file(&dir);
    let out = run(&["check-axioms", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    // rank of one plane bumped to 4: a Z2 violation, exit code 1
    let mut file = MatroidFile::from_matroid(&vamos());
    for entry in &mut file.cyclic_flats {
        if entry.set.len() == 4 && entry.set == ["a", "a'", "b", "b'"] {
            entry.rank = 4;
        }
    }
    let bad = dir.file("bad.json", &file.to_json_string());
    let out = run(&["check-axioms", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert_eq!(json["status"], "fail");
    let violations = json["witnesses"]["violations"].as_array().unwrap();
    assert!(violations.iter().any(|v| v["violation"]["axiom"] == "Z2"));
}

#[test]
fn malformed_json_exits_2() {
    let dir = TempDir::new("malformed");
    let path = dir.file("broken.json", "{ not json");
    let out = run(&["check-axioms", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let json = stdout_json(&out);
    assert_eq!(json["status"], "error");
}

#[test]
fn negative_rank_exits_2() {
    let dir = TempDir::new("negrank");
    let path = dir.file(
        "neg.json",
        r#"{"format":"cyclic-flats-v1","ground_set":["a"],"cyclic_flats":[{"set":[],"rank":-1}]}"#,
    );
    let out = run(&["check-axioms", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flats_and_circuits_queries() {
    let dir = TempDir::new("flats");
    let path = dir.file("u34.json", &MatroidFile::from_matroid(&uniform(3, 4).unwrap()).to_json_string());
    let out = run(&["flats", path.to_str().unwrap(), "--rank", "2"]);
    let json = stdout_json(&out);
    assert_eq!(json["witnesses"]["count"], 6);

    let out = run(&["circuits", path.to_str().unwrap()]);
    let json = stdout_json(&out);
    assert_eq!(json["witnesses"]["circuits"], serde_json::json!([["1", "2", "3", "4"]]));
}

#[test]
fn modular_cut_min_and_extend_roundtrip() {
    let dir = TempDir::new("extend");
    let path = dir.file("u34.json", &MatroidFile::from_matroid(&uniform(3, 4).unwrap()).to_json_string());
    let out = run(&[
        "modular-cut-min",
        path.to_str().unwrap(),
        "--flats",
        "1,2;3,4",
    ]);
    let json = stdout_json(&out);
    assert_eq!(
        json["witnesses"]["members"],
        serde_json::json!([["1", "2"], ["3", "4"], ["1", "2", "3", "4"]])
    );

    let ext_path = dir.path("ext.json");
    let out = run(&[
        "extend",
        path.to_str().unwrap(),
        "--flats",
        "1,2;3,4",
        "--label",
        "p",
        "-o",
        ext_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&ext_path).unwrap();
    let ext = MatroidFile::parse(&written).unwrap().to_matroid().unwrap();
    assert_eq!(ext.size(), 5);
    // p went onto both lines
    let out = run(&["rank", ext_path.to_str().unwrap(), "--set", "1,2,p"]);
    assert_eq!(stdout_json(&out)["witnesses"]["rank"], 2);
}

#[test]
fn from_matrix_builds_the_column_matroid() {
    let dir = TempDir::new("matrix");
    let path = dir.file(
        "mat.json",
        r#"{"format":"exact-matrix-v1","field":"Q",
            "columns":[{"label":"a","entries":["1","0"]},
                       {"label":"b","entries":["0","1"]},
                       {"label":"c","entries":["1","1"]},
                       {"label":"z","entries":["0","0"]}]}"#,
    );
    let out = run(&["from-matrix", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file: MatroidFile = serde_json::from_slice(&out.stdout).unwrap();
    let m = file.to_matroid().unwrap();
    assert_eq!(m.rank(), 2);
    assert_eq!(m.loops().label_vec(), ["z"]);
}

#[test]
fn bundle_fails_on_vamos_with_witness() {
    let dir = TempDir::new("bundle");
    let path = vamos_file(&dir);
    let out = run(&["bundle", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert_eq!(
        json["witnesses"]["quadruple"],
        serde_json::json!([["a", "a'"], ["b", "b'"], ["c", "c'"], ["d", "d'"]])
    );
}

#[test]
fn ip_passes_on_u34() {
    let dir = TempDir::new("ip");
    let path = dir.file("u34.json", &MatroidFile::from_matroid(&uniform(3, 4).unwrap()).to_json_string());
    let out = run(&["ip", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["witnesses"]["pairs_checked"], 3);
}

#[test]
fn amalgam_of_free_extensions() {
    let dir = TempDir::new("amalgam");
    let base = uniform(2, 3).unwrap();
    let full = matroid_core::kernel::ElementSet::full(base.ground());
    let cut = matroid_core::modcuts::ModularCut::new(&base, &[full]).unwrap();
    let n1 = matroid_core::modcuts::extend(&base, &cut, "q").unwrap();
    let n2 = matroid_core::modcuts::extend(&base, &cut, "s").unwrap();
    let p1 = dir.file("n1.json", &MatroidFile::from_matroid(&n1).to_json_string());
    let p2 = dir.file("n2.json", &MatroidFile::from_matroid(&n2).to_json_string());
    let out = run(&["amalgam", p1.to_str().unwrap(), p2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["witnesses"]["amalgam"]["ground_set"].as_array().unwrap().len(), 5);
}

#[test]
fn paper_verify_single_check_and_text_mode() {
    let out = run(&["paper-verify", "--check", "vamos"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    let reports = json.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["command"], "paper-verify:vamos");

    let out = run(&["paper-verify", "--check", "vamos", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));

    let out = run(&["paper-verify", "--check", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn file_roundtrip_is_stable() {
    let dir = TempDir::new("roundtrip");
    let path = vamos_file(&dir);
    let original = std::fs::read_to_string(&path).unwrap();
    let reparsed = MatroidFile::parse(&original).unwrap();
    assert_eq!(reparsed.to_json_string(), original.trim_end());
}
