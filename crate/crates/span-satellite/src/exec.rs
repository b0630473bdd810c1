//! Per-object execution strategy. The satellite engines map a pure function
//! over the objects of a category; with the `parallel` feature the default
//! entry points fan out over rayon, and the `*_seq` variants always run the
//! plain sequential loop. Outputs are collected in object order either way,
//! so results never depend on scheduling.

pub(crate) fn map_objects<T, U, F>(items: &[T], parallel: bool, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(&f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
