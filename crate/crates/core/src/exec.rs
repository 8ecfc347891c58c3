//! Execution policy for the data-parallel loops (blocks, grid points, suites).
//!
//! With the `parallel` feature the `Parallel` policy fans work out over the
//! rayon pool. Without it, `Parallel` silently degrades to a sequential loop,
//! so callers never need their own `cfg` switches. Results are always
//! returned in input order.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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
    /// Map `op` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, op: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.into_iter().map(op).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(op).collect()
            }
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel => items.into_iter().map(op).collect(),
        }
    }

    /// Like [`Execution::map`] but short-circuits on the first error in input order.
    pub fn try_map<T, R, E, F>(self, items: Vec<T>, op: F) -> Result<Vec<R>, E>
    where
        T: Send,
        R: Send,
        E: Send,
        F: Fn(T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, op).into_iter().collect()
    }
}
