//! Data-parallel helpers. With the `parallel` feature these dispatch to
//! rayon; without it they run the same closures sequentially. Every helper
//! preserves output order, and reductions go through fixed-size chunks
//! summed left to right, so results are bit-identical for any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length used by every floating-point reduction.
pub const REDUCE_CHUNK: usize = 1024;

/// `(0..n).map(f).collect()`, in parallel when enabled.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Map over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Fill `out[i] = f(i)`.
pub fn fill<T, F>(out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        out.par_iter_mut().enumerate().for_each(|(i, o)| *o = f(i));
    }
    #[cfg(not(feature = "parallel"))]
    {
        out.iter_mut().enumerate().for_each(|(i, o)| *o = f(i));
    }
}

/// Deterministic sum of `f(i)` over `0..n`.
pub fn sum_range<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let chunks = n.div_ceil(REDUCE_CHUNK);
    let partial = map_range(chunks, |c| {
        let lo = c * REDUCE_CHUNK;
        let hi = (lo + REDUCE_CHUNK).min(n);
        let mut s = 0.0;
        for i in lo..hi {
            s += f(i);
        }
        s
    });
    partial.iter().sum()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    sum_range(a.len(), |i| a[i] * b[i])
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y -= c * x`
pub fn axpy_neg(y: &mut [f64], c: f64, x: &[f64]) {
    #[cfg(feature = "parallel")]
    {
        y.par_iter_mut().zip(x.par_iter()).for_each(|(yi, xi)| *yi -= c * xi);
    }
    #[cfg(not(feature = "parallel"))]
    {
        y.iter_mut().zip(x.iter()).for_each(|(yi, xi)| *yi -= c * xi);
    }
}

pub fn scale(y: &mut [f64], c: f64) {
    #[cfg(feature = "parallel")]
    {
        y.par_iter_mut().for_each(|yi| *yi *= c);
    }
    #[cfg(not(feature = "parallel"))]
    {
        y.iter_mut().for_each(|yi| *yi *= c);
    }
}

/// Minimum of `f(i)` under a total order, with the lowest index winning
/// ties. Independent of scheduling.
pub fn min_by_key_range<K, F>(n: usize, f: F) -> Option<(usize, K)>
where
    K: Ord + Send,
    F: Fn(usize) -> Option<K> + Sync + Send,
{
    let found = map_range(n, |i| f(i).map(|k| (k, i)));
    found.into_iter().flatten().min().map(|(k, i)| (i, k))
}
