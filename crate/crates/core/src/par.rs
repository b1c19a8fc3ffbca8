//! Execution strategy for the data-parallel loops (randomized trials and
//! brute-force searches).
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans out over
//! rayon's global pool. Without it every strategy runs sequentially. Results are
//! always returned in index order, so both strategies give identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `(0..n).map(f).collect()` under the given strategy.
pub fn map_range<R, F>(exec: Exec, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// `items.iter().map(f).collect()` under the given strategy.
pub fn map_slice<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Deterministic per-trial seed, independent of scheduling order.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    // splitmix64 finalizer over (seed, trial)
    let mut z = seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let a = map_range(Exec::Sequential, 100, |i| trial_seed(7, i));
        let b = map_range(Exec::Parallel, 100, |i| trial_seed(7, i));
        assert_eq!(a, b);
        let xs: Vec<u64> = (0..50).collect();
        assert_eq!(map_slice(Exec::Parallel, &xs, |x| x * 2), map_slice(Exec::Sequential, &xs, |x| x * 2));
    }
}
