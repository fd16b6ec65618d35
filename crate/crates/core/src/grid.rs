//! Grid evaluation with a rayon backend and a sequential fallback.
//!
//! Every data-parallel loop in the crate goes through [`map`],
//! [`map_range`] or [`chunked_sum`]. The result is identical with or
//! without the `parallel` feature: maps preserve order and
//! [`chunked_sum`] reduces fixed-size chunks in index order.

/// Number of terms summed per chunk in [`chunked_sum`].
pub const SUM_CHUNK: usize = 4096;

pub fn map_seq<T, F>(xs: &[f64], f: F) -> Vec<T>
where
    F: Fn(f64) -> T,
{
    xs.iter().map(|&x| f(x)).collect()
}

#[cfg(feature = "parallel")]
pub fn map_par<T, F>(xs: &[f64], f: F) -> Vec<T>
where
    F: Fn(f64) -> T + Sync + Send,
    T: Send,
{
    use rayon::prelude::*;
    xs.par_iter().map(|&x| f(x)).collect()
}

/// Evaluates `f` at every grid point, preserving order.
pub fn map<T, F>(xs: &[f64], f: F) -> Vec<T>
where
    F: Fn(f64) -> T + Sync + Send,
    T: Send,
{
    #[cfg(feature = "parallel")]
    {
        map_par(xs, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(xs, f)
    }
}

/// Evaluates `f(i)` for `i in 0..n`, preserving order.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// `Σ_{i<n} f(i)` summed chunk by chunk in index order, so the rounding
/// is the same whichever backend runs the chunks.
pub fn chunked_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let chunks = n.div_ceil(SUM_CHUNK);
    let partial = map_range(chunks, |c| {
        let start = c * SUM_CHUNK;
        let end = (start + SUM_CHUNK).min(n);
        (start..end).map(&f).sum::<f64>()
    });
    partial.iter().sum()
}

/// `n` evenly spaced points on `[lo, hi]`, endpoints included exactly.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let xs = linspace(0.0, 1.0, 1001);
        let ys = map(&xs, |x| x * 2.0);
        assert_eq!(ys, map_seq(&xs, |x| x * 2.0));
    }

    #[test]
    fn chunked_sum_matches_sequential_chunks() {
        let n = 3 * SUM_CHUNK + 17;
        let f = |i: usize| 1.0 / (1.0 + i as f64);
        let mut expected = 0.0;
        for c in 0..n.div_ceil(SUM_CHUNK) {
            let s: f64 = (c * SUM_CHUNK..((c + 1) * SUM_CHUNK).min(n)).map(f).sum();
            expected += s;
        }
        assert_eq!(chunked_sum(n, f), expected);
    }

    #[test]
    fn linspace_endpoints_exact() {
        let xs = linspace(-2.5, 7.25, 13);
        assert_eq!(xs[0], -2.5);
        assert_eq!(xs[12], 7.25);
        assert!(xs.windows(2).all(|w| w[1] > w[0]));
    }
}
