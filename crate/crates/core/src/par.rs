//! Data-parallel helpers for corpus-level work. With the `parallel` feature the
//! batch helpers run on rayon; without it they fall back to the sequential versions,
//! which stay available under their `_seq` names for benchmarking.

/// Index of the first item (in slice order) satisfying `pred`.
pub fn find_first<T, F>(items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().position_first(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        find_first_seq(items, pred)
    }
}

pub fn find_first_seq<T, F>(items: &[T], pred: F) -> Option<usize>
where
    F: Fn(&T) -> bool,
{
    items.iter().position(pred)
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Whether batch helpers run in parallel in this build.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_leftmost() {
        let xs: Vec<u32> = (0..10_000).collect();
        assert_eq!(find_first(&xs, |&x| x % 977 == 976), Some(976));
        assert_eq!(find_first(&xs, |&x| x > 20_000), None);
        assert_eq!(map(&xs[..4], |x| x * 2), vec![0, 2, 4, 6]);
    }
}
