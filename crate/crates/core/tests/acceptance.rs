//! One PASS/FAIL line per acceptance criterion, at the full level.

use std::time::{Duration, Instant};

use ellipmean::verify::{find, Context, Level, PaperCatalog};

// criterion -> wall-clock limit, where one is stated
fn time_limit(name: &str) -> Option<Duration> {
    match name {
        "AC1" => Some(Duration::from_secs(5)),
        "AC2" => Some(Duration::from_secs(10)),
        _ => None,
    }
}

#[test]
fn acceptance() {
    let ctx = Context {
        level: Level::Full,
        catalog: &PaperCatalog,
    };
    let mut failed = Vec::new();
    for i in 1..=10 {
        let name = format!("AC{i}");
        let check = find(&name).expect("every criterion has a check");
        let start = Instant::now();
        let mut out = check.run(&ctx);
        let took = start.elapsed();
        if let Some(limit) = time_limit(&name) {
            if took > limit {
                out.passed = false;
                out.detail = format!("{} (took {took:?}, limit {limit:?})", out.detail);
            }
        }
        println!("{} [{:.2}s]", out.line(), took.as_secs_f64());
        if !out.passed {
            failed.push(name);
        }
    }
    // reported, never failing: the pointwise consequence of the conjecture
    for note in ["conjecture_inequality", "conjecture_single_peak"] {
        println!("  note {}", find(note).unwrap().run(&ctx).line());
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
