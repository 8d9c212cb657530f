//! Acceptance criteria 1–11, one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hgf_core::suite::{run_criterion, SuiteConfig, CRITERIA};

/// Wall-clock budget per criterion.
fn budget(id: usize) -> Duration {
    let secs = match id {
        1 | 5 | 7 | 8 => 120,
        2 => 300,
        3 => 600,
        4 | 6 | 9 => 60,
        10 => 30,
        _ => 600,
    };
    Duration::from_secs(secs)
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut all = true;
    for &(id, name) in CRITERIA.iter().filter(|(id, _)| filter.is_none_or(|f| f == *id)) {
        let start = Instant::now();
        let rep = run_criterion(id, &cfg);
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget(id);
        let ok = rep.passed && in_time;
        all &= ok;
        let tag = if ok { "PASS" } else { "FAIL" };
        let note = if rep.asserted { "" } else { " (evidence, not asserted)" };
        println!("criterion {id:>2} {tag}: {name}{note}; {} cases, {:.1}s", rep.cases, elapsed.as_secs_f64());
        for f in &rep.failures {
            println!("    {f}");
        }
        if !in_time {
            println!("    over budget of {}s", budget(id).as_secs());
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
