//! Execution strategy for the data-parallel loops (minor enumeration,
//! brute-force distance, table rows, sweeps).
//!
//! With the `parallel` feature the `Parallel` strategy runs on the rayon
//! global pool; without it every strategy runs sequentially. Results never
//! depend on the strategy: reductions are order-independent and collected
//! output keeps input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when this strategy will actually fan out.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<R, F>(self, len: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Minimum of `f` over `range`, `None` when every call returns `None`.
    pub fn min_over<F>(self, range: std::ops::Range<u64>, f: F) -> Option<u64>
    where
        F: Fn(u64) -> Option<u64> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter_map(f).min();
        }
        range.filter_map(f).min()
    }

    /// True when `pred` holds for every chunk index in `0..len`.
    pub fn all_range<F>(self, len: u64, pred: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().all(pred);
        }
        (0..len).all(pred)
    }
}

/// Builds a global rayon pool capped at `threads` workers. Only the first
/// call has any effect; later calls are ignored.
#[cfg(feature = "parallel")]
pub fn init_thread_pool(threads: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
}

#[cfg(not(feature = "parallel"))]
pub fn init_thread_pool(_threads: usize) {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map(&xs, |x| x * 2)[999], 1998);
            assert_eq!(exec.map_range(5, |i| i + 1), vec![1, 2, 3, 4, 5]);
            assert_eq!(
                exec.min_over(3..100, |i| (i % 7 == 0).then_some(i)),
                Some(7)
            );
            assert_eq!(exec.min_over(0..0, Some), None);
            assert!(exec.all_range(100, |i| i < 100));
            assert!(!exec.all_range(100, |i| i != 42));
        }
    }
}
