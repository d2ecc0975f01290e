//! Multi-threaded drivers for the audits. Work is cut into fixed pieces that
//! do not depend on the thread count, and results are merged in piece order,
//! so every thread count produces the same report.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use tightspan_core::oracle::audit::{
    exhaustive_range, exhaustive_size, sample_chunk, sample_chunk_count, AuditMode, AuditResult, TripleIndex,
};
use tightspan_core::Result;

/// Environment variable holding the default thread count.
pub const THREADS_ENV: &str = "TIGHTSPAN_THREADS";

/// Exhaustive audits are cut into this many ranges.
const EXHAUSTIVE_PIECES: u128 = 256;

pub fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&t: &usize| t > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `work(i)` for `i in 0..pieces` on `threads` workers; results come back in index order.
fn run_pieces<T, F>(pieces: usize, threads: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..pieces).map(|_| None).collect();
    let threads = threads.clamp(1, pieces.max(1));
    thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= pieces {
                            break done;
                        }
                        done.push((i, work(i)));
                    }
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("audit worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("every piece ran")).collect()
}

/// Same result as `verify_spanning_component_theorem`, spread over `threads` workers.
pub fn audit_theorem(n: usize, mode: AuditMode, max_triples: usize, threads: usize) -> Result<AuditResult> {
    let index = TripleIndex::new(n)?;
    let parts = match mode {
        AuditMode::Exhaustive => {
            let total = exhaustive_size(n, max_triples)?;
            let pieces = EXHAUSTIVE_PIECES.min(total);
            run_pieces(pieces as usize, threads, |i| {
                let i = i as u128;
                exhaustive_range(&index, total * i / pieces, total * (i + 1) / pieces)
            })
        }
        AuditMode::Sample { count, .. } => {
            let chunks = sample_chunk_count(count) as usize;
            run_pieces(chunks, threads, |c| sample_chunk(&index, mode, c as u64))
        }
    };
    let mut parts = parts.into_iter();
    let mut result = match parts.next() {
        Some(first) => first?,
        // zero samples: still a well-formed empty result
        None => return tightspan_core::oracle::verify_spanning_component_theorem(n, mode, max_triples),
    };
    for p in parts {
        result.merge(p?);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tightspan_core::oracle::verify_spanning_component_theorem;

    #[test]
    fn matches_single_threaded() {
        let seq = verify_spanning_component_theorem(5, AuditMode::Exhaustive, 35).unwrap();
        for t in [1, 3, 8] {
            assert_eq!(audit_theorem(5, AuditMode::Exhaustive, 35, t).unwrap(), seq);
        }
        let mode = AuditMode::Sample { count: 70_000, seed: 4, p_num: 4, p_den: 6 };
        let seq = verify_spanning_component_theorem(6, mode, 35).unwrap();
        assert_eq!(audit_theorem(6, mode, 35, 4).unwrap(), seq);
    }

    #[test]
    fn empty_sample() {
        let mode = AuditMode::Sample { count: 0, seed: 1, p_num: 1, p_den: 2 };
        assert_eq!(audit_theorem(7, mode, 35, 2).unwrap().tested, 0);
    }
}
