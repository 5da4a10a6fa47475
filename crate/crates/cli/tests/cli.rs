use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn electodist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_electodist"))
        .args(args)
        .env_remove("ELECTODIST_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const E: &str = "3 3\n0 1 2\n1 2 0\n1 0 2\n";
const F: &str = "3 3\n0 1 2\n0 1 2\n1 0 2\n";

#[test]
fn distance_example_pair() {
    let dir = tempfile::tempdir().unwrap();
    let (e, f) = (write(dir.path(), "e.txt", E), write(dir.path(), "f.txt", F));
    let o = electodist(&["distance", &e, &f, "--metric", "borda"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n");
    let o = electodist(&["distance", &e, &e, "--metric", "swap"]);
    assert_eq!(stdout(&o), "0\n");
    let o = electodist(&["distance", &e, &f, "--metric", "emd-pos", "--witness"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 2);
}

#[test]
fn distance_size_mismatch_fails() {
    let dir = tempfile::tempdir().unwrap();
    let e = write(dir.path(), "e.txt", E);
    let g = write(dir.path(), "g.txt", "3 2\n0 1 2\n2 1 0\n");
    let o = electodist(&["distance", &e, &g, "--metric", "pairwise"]);
    assert!(!o.status.success());
    assert!(!o.stderr.is_empty());
}

#[test]
fn census_rows() {
    let o = electodist(&["census", "--m", "3", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "m,n,anecs,positionwise,pairwise,bordawise\n3,3,10,10,8,8\n");
    assert!(!electodist(&["census", "--m", "7", "--n", "3"]).status.success());
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"m": 3, "n": 4, "seed": 7, "dataset": [{"model": "ic", "count": 2}]}"#);
    let read_all = |out: &Path| -> Vec<(String, Vec<u8>)> {
        let mut v: Vec<_> = fs::read_dir(out)
            .unwrap()
            .map(|e| e.unwrap().path())
            .map(|p| (p.file_name().unwrap().to_str().unwrap().to_string(), fs::read(&p).unwrap()))
            .collect();
        v.sort();
        v
    };
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let o = electodist(&["generate", "--config", &cfg, "--output", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let files = read_all(&a);
    assert_eq!(files.len(), 3);
    assert!(files.iter().any(|(n, _)| n == "manifest.json"));
    assert_eq!(files, read_all(&b));
}

#[test]
fn generate_rejects_unknown_model() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"m": 3, "n": 4, "dataset": [{"model": "bogus", "count": 2}]}"#);
    let o = electodist(&["generate", "--config", &cfg, "--output", dir.path().join("o").to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn map_writes_outputs_independent_of_threads() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"m": 4, "n": 24, "seed": 3, "metrics": ["emd-positionwise", "bordawise"],
            "dataset": [{"model": "ic", "count": 3}, {"model": "sp-walsh", "count": 3}],
            "compass": ["ID", "AN", "UN", "ST"], "layout": {"iterations": 200}}"#,
    );
    let mut outs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}"));
        let o = electodist(&["--threads", threads, "map", "--config", &cfg, "--output", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o).lines().count(), 6);
        outs.push(out);
    }
    for name in ["distances-emd-pos.csv", "map-emd-pos.csv", "map-emd-pos.svg", "map-borda.svg"] {
        assert_eq!(fs::read(outs[0].join(name)).unwrap(), fs::read(outs[1].join(name)).unwrap(), "{name}");
    }
    let csv = fs::read_to_string(outs[0].join("map-emd-pos.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("id,x,y,class"));
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.contains("\nUN,"));
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_electodist"))
        .args(["census", "--m", "3", "--n", "4"])
        .env("ELECTODIST_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("3,4,24,23,17,13\n"));
}

#[test]
fn verify_compass_table() {
    let o = electodist(&["verify-compass", "--m", "4", "--n", "24", "--metrics", "emd-pos,pairwise,borda,l1-pos"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 4 * 6);
    assert!(out.contains("emd-pos,ID-UN,120,120,,PASS"));
    assert!(out.contains("l1-pos,ID-AN,96,96,48,PASS"));
    assert!(!electodist(&["verify-compass", "--m", "3", "--n", "6"]).status.success());
}

#[test]
fn path_listing() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "4 3\n0 1 2 3\n3 2 1 0\n1 3 0 2\n");
    let b = write(dir.path(), "b.txt", "4 3\n2 0 1 3\n0 1 2 3\n0 1 3 2\n");
    let steps = dir.path().join("steps");
    let o = electodist(&["path", &a, &b, "--metric", "emdpos", "--output", steps.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert!(rows.iter().all(|r| r.split(',').nth(1) == Some("2")));
    assert_eq!(fs::read_dir(&steps).unwrap().count(), rows.len() + 1);
    assert!(!electodist(&["path", &a, &b, "--metric", "swap"]).status.success());
}

#[test]
fn realizable_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = electodist(&["realizable", "borda", "--scores", "3,5,1", "--n", "3"]);
    assert!(stdout(&o).starts_with("realizable\n"));
    let o = electodist(&["realizable", "borda", "--scores", "6,6,0,0", "--n", "2"]);
    assert_eq!(stdout(&o), "not realizable\n");
    assert!(o.status.success());

    let pm = write(dir.path(), "p.json", "[[1,2,0],[1,1,1],[1,0,2]]");
    let o = electodist(&["realizable", "position", "--matrix", &pm]);
    assert!(stdout(&o).starts_with("realizable\n3 3\n"));

    let mm = write(dir.path(), "m.json", "[[0,1,2],[2,0,3],[1,0,0]]");
    let o = electodist(&["realizable", "majority", "--matrix", &mm, "--n", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("realizable\n"));
}
