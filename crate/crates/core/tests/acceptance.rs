//! One pass/fail line per acceptance criterion. Set LEAPERS_UPDATE_GOLDEN=1 to rewrite the
//! reference figures instead of comparing against them.

use leaper_core::descent::cycle_type_table;
use leaper_core::suite::{run_suite, Bounds, SuiteResult};
use leaper_core::svg::{reference_figure, FIGURES};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// Wall-clock ceilings for the two criteria that state one.
const SECOND_LEAPER_LIMIT: Duration = Duration::from_secs(10);
const PERFECT_LIMIT: Duration = Duration::from_secs(30);

struct Verdict {
    pass: bool,
    detail: String,
}

fn suites(names: &[&str], bounds: Bounds, limit: Option<Duration>) -> Verdict {
    let start = Instant::now();
    let results: Vec<SuiteResult> = names.iter().map(|n| run_suite(n, bounds).expect("known suite")).collect();
    let elapsed = start.elapsed();
    let cases: usize = results.iter().map(|r| r.cases).sum();
    let failures: Vec<String> = results.iter().flat_map(|r| r.failures.iter().map(|(c, d)| format!("{}/{c}: {d}", r.suite))).collect();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let mut detail = format!("{cases} cases, {} failures, {:.2} s", failures.len(), elapsed.as_secs_f64());
    if let Some(l) = limit {
        detail += &format!(" (limit {} s)", l.as_secs());
    }
    if let Some(first) = failures.first() {
        detail += &format!("; first: {first}");
    }
    Verdict { pass: failures.is_empty() && in_time && cases > 0, detail }
}

fn bounds(max_sum: Option<i64>, max_len: Option<usize>) -> Bounds {
    Bounds { max_sum, max_len }
}

fn third_leaper_instances() -> Verdict {
    let mut v = suites(&["third-leaper"], bounds(Some(25), None), None);
    for (p, q, len) in [(2, 3, 16), (2, 5, 32)] {
        let last = cycle_type_table(p, q).unwrap().pop().unwrap();
        if !(last.third_leaper && last.length == len) {
            v.pass = false;
            v.detail += &format!("; ({p},{q}) deepest type has length {} third leaper {}", last.length, last.third_leaper);
        }
    }
    v
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn figures() -> Verdict {
    let update = std::env::var_os("LEAPERS_UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for name in FIGURES {
        let fresh = reference_figure(name).expect("figure renders");
        let path = golden_dir().join(name);
        if update {
            std::fs::write(&path, &fresh).expect("golden file writable");
        }
        match std::fs::read_to_string(&path) {
            Ok(stored) if stored == fresh => {}
            _ => mismatched.push(name),
        }
    }
    Verdict {
        pass: mismatched.is_empty(),
        detail: if mismatched.is_empty() { format!("{} figures byte-identical", FIGURES.len()) } else { format!("differ: {mismatched:?}") },
    }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("second leaper sweep, p+q ≤ 25", Box::new(|| suites(&["second-leaper", "counts"], bounds(Some(25), None), Some(SECOND_LEAPER_LIMIT)))),
        ("section counts and symmetry, p+q ≤ 25", Box::new(|| suites(&["seclen-symm"], bounds(Some(25), None), None))),
        ("third leaper, p+q ≤ 25", Box::new(third_leaper_instances)),
        ("rectangle freeness, p+q ≤ 13", Box::new(|| suites(&["knuth"], bounds(Some(13), None), None))),
        ("direction graphs and duality identity, |e| ≤ 4", Box::new(|| suites(&["dirgraph"], bounds(Some(25), Some(4)), None))),
        ("rewriting and equivalence, |e| ≤ 4", Box::new(|| suites(&["flip-equiv"], bounds(None, Some(4)), None))),
        ("perfect cycles and dual boards, |e| ≤ 3", Box::new(|| suites(&["perfect"], bounds(None, Some(3)), Some(PERFECT_LIMIT)))),
        ("displacements and ψ, p+q ≤ 25", Box::new(|| suites(&["displacement"], bounds(Some(25), None), None))),
        ("pinwheel boards, p+q ≤ 9, n ≤ 3, d ≤ 2", Box::new(|| suites(&["pinwheel"], bounds(Some(9), None), None))),
        ("figure regression", Box::new(figures)),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        all &= v.pass;
        println!("criterion {:>2} {}: {name} ({})", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
