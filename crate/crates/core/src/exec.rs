//! Sequential / data-parallel execution switch.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the data-parallel loops of the crate are run.
///
/// Without the `parallel` feature [`Exec::Parallel`] silently runs
/// sequentially. Every reduction is order-independent (exact arithmetic), so
/// both strategies produce identical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Map over `0..n` and fold the results with an associative operation.
    pub fn map_reduce<R, F, G>(self, n: u64, identity: R, f: F, combine: G) -> R
    where
        R: Send + Sync + Clone,
        F: Fn(u64) -> R + Sync + Send,
        G: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n)
                .into_par_iter()
                .map(f)
                .reduce(|| identity.clone(), &combine),
            _ => (0..n).map(f).fold(identity, combine),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..100).collect();
        let a = Exec::Sequential.map(&items, |x| x * x);
        let b = Exec::Parallel.map(&items, |x| x * x);
        assert_eq!(a, b);
        let s = Exec::Sequential.map_reduce(1000, 0u64, |x| x, |a, b| a + b);
        let p = Exec::Parallel.map_reduce(1000, 0u64, |x| x, |a, b| a + b);
        assert_eq!(s, 499500);
        assert_eq!(s, p);
    }
}
