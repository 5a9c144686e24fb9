//! Data-parallel grid evaluation.
//!
//! With the default `parallel` feature, [`map_grid`] fans out over a rayon
//! pool; without it, the same API runs sequentially. Output order always
//! matches input order, so results are bit-identical across both builds.

/// Applies `f` to every grid element, preserving order.
#[cfg(feature = "parallel")]
pub fn map_grid<T, U, F>(grid: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    grid.par_iter().map(f).collect()
}

/// Applies `f` to every grid element, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map_grid<T, U, F>(grid: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    grid.iter().map(f).collect()
}

/// Caps the worker-thread count, reading `CPT_SHIFT_THREADS` when `n` is
/// `None`. Returns the effective count. Must be called before any parallel
/// work; later calls are ignored (the global pool is built once).
#[cfg(feature = "parallel")]
pub fn configure_threads(n: Option<usize>) -> usize {
    let from_env = || {
        std::env::var("CPT_SHIFT_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&v| v > 0)
    };
    match n.or_else(from_env) {
        Some(threads) => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
            rayon::current_num_threads()
        }
        None => rayon::current_num_threads(),
    }
}

/// Sequential build: always a single worker.
#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: Option<usize>) -> usize {
    1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_grid_preserves_order() {
        let grid: Vec<i64> = (0..1000).collect();
        let out = map_grid(&grid, |&x| x * x);
        assert_eq!(out, grid.iter().map(|&x| x * x).collect::<Vec<_>>());
    }

    #[test]
    fn configure_threads_reports_a_positive_count() {
        assert!(configure_threads(None) >= 1);
    }
}
