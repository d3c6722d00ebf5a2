//! Deterministic summation and fixed quadrature rules.

use std::num::NonZeroUsize;
use std::ops::Add;

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;

const LEAF: usize = 32;
const CHUNK: usize = 8192;

/// Pairwise (cascade) summation with a fixed split, independent of threading.
pub fn pairwise_sum<T: Copy + Add<Output = T> + Default>(xs: &[T]) -> T {
    if xs.len() <= LEAF {
        xs.iter().fold(T::default(), |a, &b| a + b)
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

/// `Σ f(i)` for `i < n`, evaluated in parallel over fixed chunks and reduced
/// pairwise in index order, so the result does not depend on scheduling.
pub fn par_sum<T, F>(n: usize, f: F) -> T
where
    T: Copy + Add<Output = T> + Default + Send,
    F: Fn(usize) -> T + Sync,
{
    let partial: Vec<T> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let vals: Vec<T> = (c * CHUNK..((c + 1) * CHUNK).min(n)).map(&f).collect();
            pairwise_sum(&vals)
        })
        .collect();
    pairwise_sum(&partial)
}

/// Gauss–Legendre nodes and weights mapped to `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(n.max(1)).expect("nonzero"));
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    rule.iter()
        .map(|(x, w)| (mid + half * x, half * w))
        .collect()
}

/// Composite Gauss–Legendre over equal panels of `[a, b]`.
pub fn composite_gauss_legendre(
    panels: usize,
    per_panel: usize,
    a: f64,
    b: f64,
) -> Vec<(f64, f64)> {
    let width = (b - a) / panels as f64;
    let base = gauss_legendre(per_panel, 0.0, width);
    (0..panels)
        .flat_map(|p| {
            let off = a + p as f64 * width;
            base.iter().map(move |&(x, w)| (off + x, w))
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_exact_sum() {
        let xs: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
        assert_eq!(par_sum(100_000, |i| i as f64), 4_999_950_000.0);
    }

    #[test]
    fn par_sum_is_reproducible() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        assert_eq!(par_sum(50_000, f).to_bits(), par_sum(50_000, f).to_bits());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let q = gauss_legendre(5, 0.0, 2.0);
        let s: f64 = q.iter().map(|&(x, w)| w * x.powi(9)).sum();
        assert!((s - 2f64.powi(10) / 10.0).abs() < 1e-10);
        let c = composite_gauss_legendre(8, 8, 0.0, std::f64::consts::PI);
        let s: f64 = c.iter().map(|&(x, w)| w * x.sin()).sum();
        assert!((s - 2.0).abs() < 1e-13);
    }

    #[test]
    fn slope_of_power_law() {
        let x = [0.1, 0.05, 0.025];
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v * v).collect();
        assert!((log_log_slope(&x, &y) - 2.0).abs() < 1e-12);
    }
}
