//! Data-parallel map with a sequential fallback.
//!
//! Batch-level operations (catalog verification, orbit enumeration,
//! per-degree basis computations) take a [`Mode`]; `Mode::Parallel` uses
//! rayon when the `parallel` feature is enabled and degrades to the
//! sequential path otherwise, so benchmarks can compare both.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

impl Default for Mode {
    fn default() -> Self {
        Mode::Parallel
    }
}

impl Mode {
    /// Reads KLEINIAN_SEQUENTIAL=1 to force the sequential path.
    pub fn from_env() -> Self {
        match std::env::var("KLEINIAN_SEQUENTIAL") {
            Ok(v) if v == "1" || v.eq_ignore_ascii_case("true") => Mode::Sequential,
            _ => Mode::Parallel,
        }
    }
}

/// Caps the rayon worker pool; call once at startup. No-op without the
/// `parallel` feature or if a pool was already built.
#[cfg(feature = "parallel")]
pub fn set_workers(n: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global();
}

#[cfg(not(feature = "parallel"))]
pub fn set_workers(_n: usize) {}

#[cfg(feature = "parallel")]
pub fn map<T, U, F>(mode: Mode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    match mode {
        Mode::Sequential => items.into_iter().map(f).collect(),
        Mode::Parallel => items.into_par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, U, F>(_mode: Mode, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u64> = (0..100).collect();
        let seq = map(Mode::Sequential, xs.clone(), |x| x * x);
        let par = map(Mode::Parallel, xs, |x| x * x);
        assert_eq!(seq, par);
    }
}
