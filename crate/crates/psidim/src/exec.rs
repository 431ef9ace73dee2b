//! Work-distribution helpers for the exhaustive searches.
//!
//! All heavy loops in this crate funnel through these functions. With the
//! `parallel` feature (default) they run on rayon when asked to; without it
//! the sequential fallback is the only path. Results are identical either
//! way: reductions are order-independent and "first match" always means the
//! lowest index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// First `Some` produced by `f`, scanning items in index order.
pub(crate) fn find_map_first<T, R, F>(parallel: bool, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().find_map_first(&f);
    }
    let _ = parallel;
    items.iter().find_map(|t| f(t))
}

/// Maps `f` over `items`, preserving order.
pub(crate) fn map_collect<T, R, F>(parallel: bool, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(&f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_map_first_returns_lowest_index_match() {
        let items: Vec<u32> = (0..10_000).collect();
        for &parallel in &[false, true] {
            let hit = find_map_first(parallel, &items, |&x| (x % 7 == 3).then_some(x));
            assert_eq!(hit, Some(3));
        }
    }

    #[test]
    fn map_collect_preserves_order() {
        let items: Vec<u32> = (0..1000).collect();
        let seq = map_collect(false, &items, |&x| x * x);
        let par = map_collect(true, &items, |&x| x * x);
        assert_eq!(seq, par);
    }
}
