//! One line per acceptance criterion. Every criterion is reported even
//! when an earlier one fails; the process exits non-zero if any failed.
//!
//! ```text
//! cargo test --release --test acceptance
//! ```

use cubemodel::cli::main_with_args;
use cubemodel::verify::{locked_delta, run_suite, Check, Status, Suite};

struct Outcome {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    summary: String,
}

fn suites(runs: &[(Suite, u32)]) -> (Vec<String>, String) {
    let mut failures = Vec::new();
    let mut total = 0;
    for &(suite, radius) in runs {
        let checks = run_suite(suite, radius, 0).unwrap_or_else(|e| panic!("{suite} at radius {radius}: {e}"));
        total += checks.len();
        failures.extend(checks.iter().filter(|c| c.status == Status::Fail).map(describe));
    }
    let summary = format!("{} checks", total);
    (failures, summary)
}

fn describe(c: &Check) -> String {
    format!("{}/{}: measured {} expected {}", c.suite, c.name, c.measured, c.expected)
}

fn criterion(id: u32, title: &'static str, runs: &[(Suite, u32)]) -> Outcome {
    let (failures, summary) = suites(runs);
    Outcome { id, title, failures, summary }
}

fn quasitree_locked() -> Outcome {
    let first = run_suite(Suite::Quasitree, 3, 0).expect("quasitree");
    let second = run_suite(Suite::Quasitree, 3, 0).expect("quasitree");
    let mut failures: Vec<String> = first.iter().filter(|c| c.status == Status::Fail).map(describe).collect();
    if first != second {
        failures.push("two runs differ".to_string());
    }
    if locked_delta(3).is_none() {
        failures.push("no locked value at radius 3".to_string());
    }
    let delta: Vec<String> = first.iter().filter(|c| c.name.ends_with("graph delta")).map(|c| c.measured.clone()).collect();
    Outcome { id: 9, title: "quasi-tree delta locked and reproducible", failures, summary: delta.join("; ") }
}

fn cli_byte_stable() -> Outcome {
    let dir = std::env::temp_dir().join(format!("cubemodel-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let mut outputs = Vec::new();
    let mut failures = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("verify-{run}.txt"));
        let code = main_with_args(["cubemodel", "verify", "all", "--radius", "3", "--seed", "0", "--out", path.to_str().unwrap()]);
        if code != 0 {
            failures.push(format!("run {run} exited {code}"));
        }
        outputs.push(std::fs::read(&path).expect("report written"));
    }
    let _ = std::fs::remove_dir_all(&dir);
    if outputs[0] != outputs[1] {
        failures.push("outputs differ".to_string());
    }
    let summary = format!("{} bytes", outputs[0].len());
    Outcome { id: 10, title: "verify all --radius 3 --seed 0 is byte-stable", failures, summary }
}

fn main() {
    let outcomes = vec![
        criterion(1, "degree 9 and square structure", &[(Suite::Degree, 4), (Suite::Degree, 2)]),
        criterion(2, "hyperplane metric equals BFS distance", &[(Suite::Metric, 3)]),
        criterion(3, "contact classification matches carrier oracle", &[(Suite::ContactEdges, 3)]),
        criterion(4, "fourteen factor-system members per vertex", &[(Suite::Multiplicity, 4)]),
        criterion(5, "hyperclosure stabilises on the six variants", &[(Suite::Hyperclosure, 3)]),
        criterion(6, "gate laws and gate chains", &[(Suite::Gates, 3)]),
        criterion(7, "parallelism classes and parallel copies", &[(Suite::Parallelism, 3)]),
        criterion(8, "disk graph embedding, rewriting and density", &[(Suite::Iota, 3), (Suite::Density, 3)]),
        quasitree_locked(),
        cli_byte_stable(),
    ];
    let mut failed = 0;
    for o in &outcomes {
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {:>2}: {} ({})", o.id, o.title, o.summary);
        for f in &o.failures {
            println!("       {f}");
        }
        failed += usize::from(!o.failures.is_empty());
    }
    println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
