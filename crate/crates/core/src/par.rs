//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature enabled and `parallel == true` the closures run
//! on the rayon pool; otherwise they run in order on the calling thread. Both
//! paths return results in input order.

pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// First item (in input order) for which `f` returns `Some`.
pub fn find_first<T, R, F>(items: &[T], parallel: bool, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = parallel;
    items.iter().find_map(f)
}

pub const fn default_parallel() -> bool {
    cfg!(feature = "parallel")
}
