//! Choice between data-parallel and sequential evaluation.
//!
//! The data-parallel inner loops of the crate (frontier expansion in the
//! symplectic basis search, matching enumeration in complete contraction,
//! batch scans) go through [`map`]. With the `parallel` feature disabled,
//! [`Execution::Parallel`] silently degrades to sequential evaluation, so
//! callers never need their own `cfg` gates.
//!
//! Results are always returned in input order, which keeps every public
//! operation deterministic regardless of thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when this mode actually fans out over threads in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}
