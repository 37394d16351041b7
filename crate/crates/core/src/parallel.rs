//! Ordered data-parallel maps.
//!
//! Every Monte Carlo draw, quadrature node row or check grid point is a pure
//! function of its index, so the map below returns the same vector whether it
//! runs on one thread or many. Reductions are always done sequentially on the
//! collected vector, which keeps floating-point sums independent of the
//! worker count. With the `parallel` feature disabled both modes run
//! sequentially.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// `(0..n).map(f).collect()` under the default execution mode.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_with(Execution::default(), n, f)
}

pub fn map_indexed_with<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(f).collect(),
        Execution::Parallel => parallel_map(n, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_bitwise() {
        let f = |i: usize| ((i as f64).sin() * 1e3).fract();
        let a = map_indexed_with(Execution::Sequential, 10_000, f);
        let b = map_indexed_with(Execution::Parallel, 10_000, f);
        assert_eq!(a, b);
    }
}
