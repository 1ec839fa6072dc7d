//! One line per acceptance criterion. Runs without the test harness and exits nonzero on any FAIL.

use std::process::Command;
use std::time::{Duration, Instant};

use a2wc::report::SuiteReport;
use a2wc::verify::run_suite;

const SEED: u64 = 0;

struct Line {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn suite_line(id: u32, title: &'static str, suite: &str, trials: u32, budget: Duration) -> Line {
    let start = Instant::now();
    let r: SuiteReport = run_suite(suite, trials, SEED).expect("known suite");
    let took = start.elapsed();
    let enough = r.checks > 0 && r.skipped == 0 && r.checks >= u64::from(trials);
    let in_budget = took <= budget;
    let mut detail = format!(
        "{} trials, {} checks, {} failures, {} skipped, {:.2} s (budget {} s)",
        trials,
        r.checks,
        r.failures,
        r.skipped,
        took.as_secs_f64(),
        budget.as_secs()
    );
    if let Some(c) = r.counterexamples.first() {
        detail.push_str(&format!("; first counterexample: {} {}", c.check, c.detail));
    }
    Line { id, title, pass: r.passed() && enough && in_budget, detail }
}

fn run_binary(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_a2wc"))
        .args(args)
        .env_remove("A2WC_SEED")
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

const NU: &str = "1/5,3/10,-1/2,1/7,2/7,-3/7,1/2,5/6,2/3";

fn determinism_line() -> Line {
    let orbit = ["orbit", "--word", "w3 s1 w2", "--steps", "4", "--nu", NU, "--q", "2", "--p", "3"];
    let mut orbit_csv = orbit.to_vec();
    orbit_csv.extend(["--format", "csv"]);
    let runs: [(&str, Vec<&str>); 3] = [
        ("check", vec!["check", "--suite", "all", "--trials", "5", "--seed", "17"]),
        ("orbit json", orbit.to_vec()),
        ("orbit csv", orbit_csv),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, args) in &runs {
        let (c1, o1) = run_binary(args);
        let (c2, o2) = run_binary(args);
        let same = c1 == Some(0) && c1 == c2 && o1 == o2 && !o1.is_empty();
        pass &= same;
        notes.push(format!("{name} {} bytes {}", o1.len(), if same { "identical" } else { "differ or failed" }));
    }
    Line { id: 10, title: "determinism of check and orbit", pass, detail: notes.join(", ") }
}

fn main() {
    let secs = Duration::from_secs;
    let mut lines = vec![
        suite_line(1, "lattice Coxeter relations", "coxeter", 0, secs(1)),
        suite_line(2, "parameter action presentation", "params", 100, secs(5)),
        suite_line(3, "point correspondence", "points", 20, secs(10)),
        suite_line(4, "cubic uniqueness", "cubic", 50, secs(5)),
        suite_line(5, "normal forms", "normal", 100, secs(10)),
        suite_line(6, "convolution equals the quadratic map", "theorem", 100, secs(30)),
        suite_line(7, "strong matrix equality", "strong", 50, secs(30)),
        suite_line(8, "exponent prediction", "exponents", 50, secs(30)),
        suite_line(9, "diagram automorphisms and gauges", "sigma", 50, secs(30)),
    ];
    lines.push(determinism_line());
    let mut failed = 0;
    for l in &lines {
        println!("{} {:>2} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.title, l.detail);
        if !l.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", lines.len() - failed, lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
