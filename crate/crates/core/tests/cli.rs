use std::path::PathBuf;

use cubemodel::cli::main_with_args;

struct Run {
    code: i32,
    out: String,
}

fn run(args: &[&str]) -> Run {
    static COUNTER: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);
    let n = COUNTER.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
    let path: PathBuf = std::env::temp_dir().join(format!("cubemodel-cli-{}-{n}.txt", std::process::id()));
    let mut full = vec!["cubemodel"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let code = main_with_args(full);
    let out = std::fs::read_to_string(&path).unwrap_or_default();
    let _ = std::fs::remove_file(&path);
    Run { code, out }
}

#[test]
fn dist_and_median() {
    let r = run(&["dist", "--from", "ε;0,0,0", "--to", "(2,5),(1,0);3,-1,4"]);
    assert_eq!((r.code, r.out.as_str()), (0, "15\n"));
    let r = run(&["dist", "--from", "ε;0,0,0", "--to", "(1,0);0,0,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["distance"], 1);
    assert_eq!(v["separating"].as_array().unwrap().len(), 1);
    let r = run(&["median", "ε;0,0,0", "(2,5),(1,0);3,-1,4", "(2,5);0,2,0"]);
    assert_eq!(r.out, "(2,5);0,0,0\n");
}

#[test]
fn ball_formats() {
    let r = run(&["ball", "--radius", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 10);
    assert_eq!(v["edges"].as_array().unwrap().len(), 9);
    let r = run(&["ball", "--radius", "1", "--format", "dot"]);
    assert!(r.out.starts_with("graph ball {") && r.out.matches(" -- ").count() == 9);
    let r = run(&["ball", "--radius", "2", "--center", "(2,5);1,1,1"]);
    assert!(r.out.starts_with("ball center (2,5);1,1,1 radius 2: 58 vertices"));
}

#[test]
fn hyperplane_commands() {
    let r = run(&["hyperplanes", "--radius", "1"]);
    assert_eq!(r.out.lines().count(), 9);
    let r = run(&["contact", "--from", "T<ε|2>@0", "--to", "T<(2,5)|2>@0"]);
    assert!(r.out.starts_with("2 (Exact, certificate Symbolic"), "{}", r.out);
    let r = run(&["contact", "--radius", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 9);
}

#[test]
fn factored_graph_and_delta() {
    let r = run(&["fcontact", "--radius", "1", "--delta", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["plain"]["twiceDelta"], 0);
    assert_eq!(v["factored"]["twiceDelta"], 1);
}

#[test]
fn disk_commands() {
    let r = run(&["disk-dist", "--from", "<ε|2>", "--to", "<(2,0),(1,0),(2,3)|2>"]);
    assert!(r.out.starts_with("2 "), "{}", r.out);
    let r = run(&["rewrite", "T<ε|1>@0", "S[(2,5)]", "T<ε|3>@0"]);
    assert_eq!(r.out, "T<ε|1>@0 T<ε|2>@0 T<ε|3>@0\n");
}

#[test]
fn exports() {
    for what in ["ball", "contact", "fcontact", "meridians", "closure"] {
        for format in ["text", "json", "dot"] {
            let r = run(&["export", what, "--radius", "1", "--format", format]);
            assert_eq!(r.code, 0, "{what} {format}");
            assert!(!r.out.is_empty(), "{what} {format}");
            if format == "json" {
                serde_json::from_str::<serde_json::Value>(&r.out).unwrap();
            }
        }
    }
}

#[test]
fn verify_reports_and_is_deterministic() {
    let a = run(&["verify", "gates", "--radius", "2", "--seed", "5"]);
    let b = run(&["verify", "gates", "--radius", "2", "--seed", "5"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    assert!(a.out.lines().all(|l| !l.starts_with("FAIL")));
    let j = run(&["verify", "degree", "--radius", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&j.out).unwrap();
    assert_eq!(v["exitCode"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dist", "--from", "nonsense", "--to", "ε;0,0,0"]).code, 2);
    assert_eq!(run(&["verify", "no-such-suite"]).code, 2);
    assert_eq!(run(&["rewrite", "T<ε|1>@0", "T<ε|1>@2"]).code, 2);
    assert_eq!(run(&["ball", "--radius", "3", "--cap", "50"]).code, 3);
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn binary_honours_environment_cap() {
    let bin = env!("CARGO_BIN_EXE_cubemodel");
    let status = std::process::Command::new(bin)
        .args(["ball", "--radius", "3"])
        .env("CUBEMODEL_CAP", "50")
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
    let out = std::process::Command::new(bin).args(["dist", "--from", "ε;0,0,0", "--to", "(1,0);0,0,0"]).output().unwrap();
    assert_eq!((out.status.code(), out.stdout.as_slice()), (Some(0), b"1\n".as_slice()));
    let out = std::process::Command::new(bin).args(["dist", "--from", "ε;0,0,0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
