//! Execution-mode switch for the batch engines: data-parallel chunks via
//! rayon when the `parallel` feature is on, with a sequential fallback that
//! produces byte-identical results (work is partitioned deterministically
//! and merged in chunk order).

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl ExecMode {
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs == 1 {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        }
    }
}

/// Map the chunk indices `0..chunks` and collect results in chunk order.
#[cfg(feature = "parallel")]
pub fn run_chunks<R: Send>(
    mode: ExecMode,
    chunks: usize,
    f: impl Fn(usize) -> R + Sync + Send,
) -> Vec<R> {
    use rayon::prelude::*;
    match mode {
        ExecMode::Parallel => (0..chunks).into_par_iter().map(f).collect(),
        ExecMode::Sequential => (0..chunks).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_chunks<R: Send>(
    _mode: ExecMode,
    chunks: usize,
    f: impl Fn(usize) -> R + Sync + Send,
) -> Vec<R> {
    (0..chunks).map(f).collect()
}
