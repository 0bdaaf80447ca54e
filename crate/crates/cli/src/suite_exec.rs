//! Suite execution with a bounded worker pool. Entries are claimed off a
//! shared counter and their results stored by entry index, so the emitted
//! report is ordered identically no matter how the scheduler interleaves.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use gradedlc_core::checks::{run_entry, CheckResult, SuiteConfig, VerificationReport};

use crate::CliError;

/// Worker count: `GRADEDLC_THREADS` when set, otherwise the machine's
/// available parallelism, capped at the number of entries.
pub fn thread_count(entries: usize) -> Result<usize, CliError> {
    let configured = match std::env::var("GRADEDLC_THREADS") {
        Ok(v) => Some(v.trim().parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(
            || CliError::usage(format!("GRADEDLC_THREADS must be a positive integer, got `{v}`")),
        )?),
        Err(std::env::VarError::NotPresent) => None,
        Err(e) => return Err(CliError::usage(format!("GRADEDLC_THREADS: {e}"))),
    };
    let n = configured.unwrap_or_else(|| {
        std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
    });
    Ok(n.min(entries).max(1))
}

pub fn run_parallel(config: &SuiteConfig, threads: usize, timings: bool) -> VerificationReport {
    let entries = &config.entries;
    let slots: Mutex<Vec<Option<Vec<CheckResult>>>> = Mutex::new(vec![None; entries.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= entries.len() {
                    break;
                }
                let start = Instant::now();
                let mut results = run_entry(&entries[k]);
                if timings {
                    // Entry-level wall time: assembly plus the whole check
                    // battery, stamped on each of its checks.
                    let ms = start.elapsed().as_millis() as u64;
                    for r in &mut results {
                        r.runtime_ms = Some(ms);
                    }
                }
                slots.lock().unwrap()[k] = Some(results);
            });
        }
    });
    let mut checks = Vec::new();
    for slot in slots.into_inner().unwrap() {
        checks.extend(slot.expect("every entry ran"));
    }
    VerificationReport { checks }
}
