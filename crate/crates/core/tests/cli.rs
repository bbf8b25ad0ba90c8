use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};
use tautochow::k3::K3Model;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautochow"))
        .env("TAUTOCHOW_CACHE_DIR", cache)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Fixture {
    dir: tempfile::TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("desk2.model"), K3Model::desk(2).to_text()).unwrap();
        std::fs::write(dir.path().join("desk1.model"), K3Model::desk(1).to_text()).unwrap();
        Fixture { dir }
    }

    fn model(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_string()
    }

    fn run(&self, args: &[&str]) -> Output {
        run(&self.dir.path().join("cache"), args)
    }
}

#[test]
fn values_exit_zero() {
    let f = Fixture::new();
    let o = f.run(&["normalize", "--m", "2", "D(1,2)^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "24*o(1)*o(2)");
    let o = f.run(&["fano", "integrate", "l^4"]);
    assert_eq!(stdout(&o).trim(), "108");
    let o = f.run(&["grass", "integrate", "s(1,0)^8"]);
    assert_eq!(stdout(&o).trim(), "14");
    let o = f.run(&["hilbert", "chern-number", "--n", "3", "c(T,6)"]);
    assert_eq!(stdout(&o).trim(), "3200");
}

#[test]
fn verdict_exit_codes() {
    let f = Fixture::new();
    let desk2 = f.model("desk2.model");
    let desk1 = f.model("desk1.model");
    let cases: [(Vec<&str>, i32); 6] = [
        (vec!["fano", "verify", "12*cc*l - 5*l^3"], 0),
        (vec!["fano", "verify", "l^4 - 3*cc^2"], 1),
        (vec!["fano", "verify", "l^2*D(1)*D(2)"], 3),
        (vec!["hilbert", "verify", "--n", "2", "--model", &desk2, "c(O,1)"], 1),
        (
            vec![
                "verify-vanishing",
                "--m",
                "2",
                "--model",
                &desk1,
                "D(1,2)^2 - 4*o(1)*o(2)",
            ],
            0,
        ),
        (vec!["verify-vanishing", "--m", "2", "--model", &desk1, "o(1)"], 1),
    ];
    for (args, code) in cases {
        let o = f.run(&args);
        assert_eq!(
            o.status.code(),
            Some(code),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn errors_exit_two_with_message() {
    let f = Fixture::new();
    let o = f.run(&["normalize", "--m", "2", "D(1,2) + frob(1)"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("error: ") && err.contains("frob"), "{err}");

    let o = f.run(&["--json", "fano", "integrate", "l^3"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error"].as_str().is_some(), "{v}");

    let o = f.run(&["realize", "--m", "2", "--model", "/nonexistent/model", "o(1)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_carries_details() {
    let f = Fixture::new();
    let o = f.run(&[
        "--json",
        "fano",
        "verify",
        "D(1)^4 - 3*qi(l)*q(1)^2*C*o + l^2*cc - 45*o",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "chow_zero");
    assert_eq!(v["exit_code"], 0);
    assert!(
        v["rules"].as_array().is_some_and(|r| r.iter().any(|x| x == "F4")),
        "{v}"
    );

    let desk2 = f.model("desk2.model");
    let o = f.run(&["--json", "hilbert", "verify", "--n", "2", "--model", &desk2, "c(T,3)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "chow_zero");
    assert_eq!(v["certificates"].as_array().map(Vec::len), Some(2), "{v}");
}

#[test]
fn no_cache_flag_leaves_no_records() {
    let f = Fixture::new();
    let cache = f.dir.path().join("cache");
    let o = f.run(&["--no-cache", "grass", "integrate", "s(2,2)^2"]);
    assert_eq!(stdout(&o).trim(), "1");
    let records = std::fs::read_dir(&cache).map(|d| d.count()).unwrap_or(0);
    assert_eq!(records, 0);
    f.run(&["grass", "integrate", "s(2,2)^2"]);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
}
