//! Worker-pool configuration.
//!
//! Parallel operations run inside a rayon pool sized by the
//! `TRIMODULI_THREADS` environment variable (default: available
//! parallelism). Results never depend on the worker count.

use crate::{Error, Result};

pub const THREADS_ENV: &str = "TRIMODULI_THREADS";

/// Worker count from `TRIMODULI_THREADS`, or the machine's parallelism.
pub fn worker_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::Config(format!(
                "{THREADS_ENV} must be a positive integer, got {raw:?}"
            ))),
        },
        Err(std::env::VarError::NotPresent) => Ok(std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)),
        Err(e) => Err(Error::Config(format!("{THREADS_ENV}: {e}"))),
    }
}

/// Runs `f` on a pool of exactly `threads` workers.
pub fn run_with<F, R>(threads: usize, f: F) -> Result<R>
where
    F: FnOnce() -> R + Send,
    R: Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Runs `f` on the configured pool, or inline when already on a worker
/// (so an enclosing [`run_with`] takes precedence).
pub(crate) fn run<F, R>(f: F) -> Result<R>
where
    F: FnOnce() -> R + Send,
    R: Send,
{
    if rayon::current_thread_index().is_some() {
        return Ok(f());
    }
    run_with(worker_count()?, f)
}
