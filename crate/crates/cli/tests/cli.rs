use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn frechet(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frechet")).current_dir(dir).env_remove("FRECHET_SEED").args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn setup() -> tempfile::TempDir {
    let d = tempfile::tempdir().unwrap();
    let w = |n: &str, s: &str| fs::write(d.path().join(n), s).unwrap();
    w("a.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[1,1]]}"#);
    w("b.json", r#"{"dim":2,"vertices":[[0,0.1],[1,0.1],[1,1.2]]}"#);
    w("spike.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0.4,0]]}"#);
    w("back.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0.3,0.4]]}"#);
    w("fwd.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0.3,-0.4]]}"#);
    w("line.json", r#"{"dim":1,"vertices":[[0],[1]]}"#);
    w("enil.json", r#"{"dim":1,"vertices":[[1],[0]]}"#);
    w("space.json", r#"{"dim":3,"vertices":[[0,0,0],[1,0,0]]}"#);
    w("typo.json", r#"{"dim":2,"vertexes":[[0,0],[1,0]]}"#);
    w("broken.json", r#"{"dim":2,"vertices":[[0,0],"#);
    w(
        "tri.json",
        r#"{"dim":2,"vertices":{"a":[0,0],"b":[1,0],"c":[0,1]},"edges":[
            {"id":"e1","from":"a","to":"b","polyline":[[0,0],[1,0]]},
            {"id":"e2","from":"b","to":"c","polyline":[[1,0],[0,1]]},
            {"id":"e3","from":"c","to":"a","polyline":[[0,1],[0,0]]}]}"#,
    );
    d
}

#[test]
fn dist_prints_an_enclosure() {
    let d = setup();
    let o = frechet(d.path(), &["dist", "--kind", "path", "--oriented", "a.json", "b.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // endpoints are 0.1 and 0.2 apart; the vertex-wise coupling achieves 0.2
    let (lo, hi) = (v["lo"].as_f64().unwrap(), v["hi"].as_f64().unwrap());
    assert!(lo <= 0.2 + 1e-9 && hi >= 0.2 - 1e-9 && hi - lo <= 1e-6);
}

#[test]
fn every_kind_runs_on_paths() {
    let d = setup();
    for kind in ["discrete", "continuous", "path", "graph"] {
        let o = frechet(d.path(), &["dist", "--kind", kind, "a.json", "b.json"]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
    }
}

#[test]
fn graph_against_path_is_infinite() {
    let d = setup();
    let o = frechet(d.path(), &["dist", "--kind", "graph", "tri.json", "a.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains(r#""lo":"inf""#), "{}", stdout(&o));
}

#[test]
fn bad_inputs_exit_two_with_one_line() {
    let d = setup();
    for args in [
        vec!["dist", "a.json", "space.json"],
        vec!["dist", "a.json", "typo.json"],
        vec!["dist", "a.json", "broken.json"],
        vec!["dist", "a.json", "missing.json"],
        vec!["dist", "a.json"],
        vec!["frobnicate"],
        vec!["verify", "--suite", "nope"],
    ] {
        let o = frechet(d.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error:"), "{err}");
    }
    let o = frechet(d.path(), &["dist", "a.json", "typo.json"]);
    assert!(stderr(&o).contains("vertexes"));
    let o = frechet(d.path(), &["dist", "a.json", "space.json"]);
    assert!(stderr(&o).contains("dimension"));
}

#[test]
fn classify_reports_the_label() {
    let d = setup();
    let o = frechet(d.path(), &["classify", "spike.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class_label"], "C");
    assert_eq!(v["backtracks"].as_array().unwrap().len(), 1);
}

#[test]
fn morph_writes_frames_and_strip() {
    let d = setup();
    let o = frechet(d.path(), &["morph", "a.json", "b.json", "--class", "immersion", "--frames", "64", "--out", "frames.jsonl", "--svg", "strip.svg"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let frames = fs::read_to_string(d.path().join("frames.jsonl")).unwrap();
    assert_eq!(frames.lines().count(), 64);
    for line in frames.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["t"].is_number() && v["curve"].is_object());
    }
    let svg = fs::read_to_string(d.path().join("strip.svg")).unwrap();
    assert_eq!(svg.matches("<g id=\"frame-").count(), 64);
}

#[test]
fn qtip_event_is_marked_in_the_strip() {
    let d = setup();
    // the hooks swing through a backtrack halfway
    let o = frechet(d.path(), &["morph", "back.json", "fwd.json", "--class", "immersion", "--frames", "9", "--out", "f.jsonl", "--svg", "s.svg"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = fs::read_to_string(d.path().join("s.svg")).unwrap();
    assert!(svg.contains("class=\"event\""));
    assert!(svg.contains("Qtip"), "{svg}");
}

#[test]
fn immersion_refuses_inputs_outside_the_class() {
    let d = setup();
    let o = frechet(d.path(), &["morph", "spike.json", "a.json", "--class", "immersion"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn svg_bytes_are_reproducible() {
    let d = setup();
    let run = |name: &str| {
        let o = frechet(d.path(), &["morph", "a.json", "b.json", "--frames", "2", "--svg", name]);
        assert_eq!(o.status.code(), Some(0));
        fs::read(d.path().join(name)).unwrap()
    };
    let a = run("one.svg");
    assert_eq!(a, run("two.svg"));
    assert_eq!(String::from_utf8(a).unwrap().matches("<polyline").count(), 2);
}

#[test]
fn svg_rejects_space_curves() {
    let d = setup();
    let o = frechet(d.path(), &["morph", "space.json", "space.json", "--frames", "2", "--svg", "s.svg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dimension 3"));
}

#[test]
fn obstruction_exits_one_and_still_writes() {
    let d = setup();
    let o = frechet(d.path(), &["morph", "line.json", "enil.json", "--class", "immersion", "--out", "o.jsonl"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["obstruction"]["kind"], "singleton_collapse");
    assert!(d.path().join("o.jsonl").exists());
}

#[test]
fn gallery_report_passes_and_is_reproducible() {
    let d = setup();
    let o = frechet(d.path(), &["verify", "--suite", "gallery", "--seed", "42", "--report", "r.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let first = fs::read_to_string(d.path().join("r.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["seed"], 42);
    assert!(v["properties"].as_array().unwrap().iter().all(|p| p["pass"] == true));
    frechet(d.path(), &["verify", "--suite", "gallery", "--seed", "42", "--report", "r.json"]);
    assert_eq!(first, fs::read_to_string(d.path().join("r.json")).unwrap());
}

#[test]
fn seed_comes_from_the_environment() {
    let d = setup();
    let o = Command::new(env!("CARGO_BIN_EXE_frechet"))
        .current_dir(d.path())
        .env("FRECHET_SEED", "9")
        .args(["verify", "--suite", "sandwich", "--trials", "2"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 9);
    let o = frechet(d.path(), &["verify", "--suite", "sandwich", "--trials", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 0);
}

#[test]
fn gallery_exports_replayable_curves() {
    let d = setup();
    let o = frechet(d.path(), &["gallery", "--export", "g"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = frechet(d.path(), &["dist", "g/g3_p.json", "g/g3_q.json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.1).abs() <= 0.01);
    let o = frechet(d.path(), &["morph", "g/g3_p.json", "g/g3_q.json", "--class", "embedding", "--lift-4d", "--bump", "0.04", "--out", "f.jsonl"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}
