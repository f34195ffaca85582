//! Index-parallel execution with a sequential fallback.
//!
//! Work items are identified by an index and every random draw is keyed by
//! that index, so the parallel and sequential paths produce identical
//! results. Parallelism is used only when the `parallel` feature is enabled
//! and more than one worker is requested.

/// Maps `f` over `0..count`, preserving index order in the output.
///
/// `init` builds per-worker scratch state (reused across items handled by the
/// same worker); `f` must not let that state influence its result.
pub fn map_indexed<T, S, I, F>(workers: usize, count: u64, init: I, f: F) -> Vec<T>
where
    T: Send,
    I: Fn() -> S + Send + Sync,
    F: Fn(&mut S, u64) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        return pool.install(|| (0..count).into_par_iter().map_init(&init, &f).collect());
    }
    let _ = workers;
    let mut state = init();
    (0..count).map(|i| f(&mut state, i)).collect()
}

/// Maps `f` over `0..count` and folds the results with an exact, associative
/// and commutative `combine` (integer sums, counts). Because the reduction is
/// exact its result does not depend on how work was split.
pub fn reduce_indexed<T, S, I, F, C>(workers: usize, count: u64, init: I, f: F, identity: T, combine: C) -> T
where
    T: Send + Clone + Sync,
    I: Fn() -> S + Send + Sync,
    F: Fn(&mut S, u64) -> T + Send + Sync,
    C: Fn(T, T) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        return pool.install(|| {
            (0..count)
                .into_par_iter()
                .map_init(&init, &f)
                .reduce(|| identity.clone(), &combine)
        });
    }
    let _ = workers;
    let mut state = init();
    (0..count).fold(identity, |acc, i| combine(acc, f(&mut state, i)))
}

/// Number of hardware threads, used as the default worker count.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
