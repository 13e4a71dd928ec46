//! Order-preserving batch evaluation.
//!
//! With the `parallel` feature (the default) [`map_vec`] runs on the rayon
//! thread pool; without it the call is a plain sequential map. Both paths
//! return results in input order, so output is identical either way.
//! [`map_vec_seq`] is always sequential and exists so benchmarks can compare
//! the two on the same build.

#[cfg(feature = "parallel")]
pub fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_vec_seq(items, f)
}

pub fn map_vec_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let items: Vec<i64> = (0..503).collect();
        let f = |x: &i64| x * x - 7;
        assert_eq!(map_vec(&items, f), map_vec_seq(&items, f));
    }
}
