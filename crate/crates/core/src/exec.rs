//! Data-parallel map helpers. With the `parallel` feature (default) the
//! indexed maps fan out over rayon; without it they run sequentially. Results
//! are returned in index order either way, so outputs are identical.

/// Map `f` over `0..n` sequentially.
pub fn map_indexed_seq<R>(n: usize, f: impl Fn(usize) -> R) -> Vec<R> {
    (0..n).map(f).collect()
}

/// Map `f` over `0..n` on the rayon pool.
#[cfg(feature = "parallel")]
pub fn map_indexed_par<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

/// Map `f` over `0..n`, parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_indexed<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    map_indexed_par(n, f)
}

/// Map `f` over `0..n`, parallel when the `parallel` feature is enabled.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    map_indexed_seq(n, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_agree_and_preserve_order() {
        let sq = |i: usize| (i * i) as u64;
        let seq = map_indexed_seq(1000, sq);
        let auto = map_indexed(1000, sq);
        assert_eq!(seq, auto);
        #[cfg(feature = "parallel")]
        assert_eq!(seq, map_indexed_par(1000, sq));
    }
}
