//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature the map runs on rayon, either on the global pool
//! (`jobs == 0`) or on a dedicated pool of `jobs` threads. `jobs == 1`, or a build
//! without the feature, maps sequentially. Results come back in input order in
//! every mode, so callers see identical output for any job count.

#[cfg(feature = "parallel")]
use std::sync::Arc;

#[derive(Clone)]
pub struct Exec {
    jobs: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl std::fmt::Debug for Exec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Exec").field("jobs", &self.jobs).finish()
    }
}

impl Exec {
    pub fn new(jobs: usize) -> Self {
        #[cfg(feature = "parallel")]
        {
            let pool = (jobs > 1).then(|| {
                Arc::new(rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool"))
            });
            Exec { jobs, pool }
        }
        #[cfg(not(feature = "parallel"))]
        Exec { jobs }
    }

    pub fn sequential() -> Self {
        Self::new(1)
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    pub fn is_sequential(&self) -> bool {
        !cfg!(feature = "parallel") || self.jobs == 1
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if !self.is_sequential() {
            use rayon::prelude::*;
            let run = || items.par_iter().map(&f).collect();
            return match &self.pool {
                Some(pool) => pool.install(run),
                None => run(),
            };
        }
        items.iter().map(f).collect()
    }
}

impl Default for Exec {
    fn default() -> Self {
        Self::new(0)
    }
}
