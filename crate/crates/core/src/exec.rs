//! Execution policy for the data-parallel scans.
//!
//! With the `parallel` feature (default) `Exec::Parallel` runs on the rayon
//! global pool; without it every policy runs sequentially. Results are
//! always collected in index order, so output never depends on the policy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().map(f).collect(),
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// Maps `f` over the inclusive range `lo..=hi`, preserving order.
    pub fn map_range<R, F>(self, lo: u64, hi: u64, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(u64) -> R + Sync + Send,
    {
        if lo > hi {
            return Vec::new();
        }
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (lo..=hi).into_par_iter().map(f).collect(),
            _ => (lo..=hi).map(f).collect(),
        }
    }

    /// Sums `f(i)` for `i` in `0..count`.
    pub fn sum_u64<F>(self, count: u64, f: F) -> u64
    where
        F: Fn(u64) -> u64 + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..count).into_par_iter().map(f).sum(),
            _ => (0..count).map(f).sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree_and_keep_order() {
        let seq = Exec::Sequential.map_range(3, 40, |i| i * i);
        let par = Exec::Parallel.map_range(3, 40, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[0], 9);
        assert!(Exec::Parallel.map_range(5, 4, |i| i).is_empty());
        assert_eq!(Exec::Parallel.sum_u64(10, |i| i), 45);
    }
}
