/// How data-parallel loops are executed.
///
/// Results never depend on the choice: every parallel loop in this crate
/// reduces with an order-independent merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon pool; `workers: None` uses the global pool. Without the
    /// `parallel` feature this falls back to sequential execution.
    Parallel {
        workers: Option<usize>,
    },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { workers: None }
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Execution::Parallel { .. })
    }

    /// Sum `f(i)` over `0..len` with an associative, commutative merge.
    pub(crate) fn map_reduce<T, F, R>(&self, len: u64, f: F, identity: T, merge: R) -> T
    where
        T: Send + Sync + Clone,
        F: Fn(u64) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel { workers } => {
                use rayon::prelude::*;
                let run = || {
                    (0..len)
                        .into_par_iter()
                        .map(&f)
                        .reduce(|| identity.clone(), &merge)
                };
                match workers {
                    Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(*w).build() {
                        Ok(pool) => pool.install(run),
                        Err(_) => run(),
                    },
                    None => run(),
                }
            }
            _ => (0..len).map(f).fold(identity, merge),
        }
    }
}
