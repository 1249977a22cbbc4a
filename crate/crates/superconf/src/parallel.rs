//! Parallel grid evaluation with an order-preserving merge.

use rayon::prelude::*;
use superconf_core::grid::Grid;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SUPERCONF_THREADS";

/// Worker count: available parallelism, capped by `SUPERCONF_THREADS` when it
/// holds a positive integer.
pub fn thread_limit() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        Some(n) if n > 0 => n.min(available),
        _ => available,
    }
}

/// Evaluates `f(k, point_k)` for every grid point and returns the results in
/// grid order, whatever the thread count.
pub fn map_grid<T, F>(grid: &Grid, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, (f64, f64)) -> T + Sync + Send,
{
    map_indices(grid.len(), threads, |k| f(k, grid.point_at(k)))
}

/// `(0..n).map(f)` on up to `threads` workers, results in index order.
pub fn map_indices<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if threads <= 1 || n < 2 {
        return (0..n).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        Err(_) => (0..n).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use superconf_core::grid::Rect;

    #[test]
    fn order_is_preserved() {
        let grid = Grid::new(Rect::new(0.0, 1.0, 0.0, 2.0).unwrap(), 7, 5).unwrap();
        let serial = map_grid(&grid, 1, |k, p| (k, p));
        for threads in [2, 3, 8] {
            assert_eq!(map_grid(&grid, threads, |k, p| (k, p)), serial);
        }
        assert_eq!(serial[6], (6, grid.point(1, 1)));
    }
}
