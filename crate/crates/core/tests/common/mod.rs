//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// χ²(1) density.
pub fn chi2_df1_density(x: f64) -> f64 {
    (-x / 2.0).exp() / (2.0 * std::f64::consts::PI * x).sqrt()
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        adaptive(f, a, m, left, tol / 2.0, depth - 1) + adaptive(f, m, b, right, tol / 2.0, depth - 1)
    }
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    adaptive(f, a, b, simpson(f, a, b), 1e-13, 50)
}

/// `P(X ≥ c)` for X ~ χ²(1) by quadrature of the density. The `x = t²`
/// substitution removes the singularity at zero: the integrand becomes
/// `2t · f(t²)`.
pub fn chi2_df1_upper_tail(c: f64) -> f64 {
    let g = |t: f64| {
        if t == 0.0 {
            2.0 / (2.0 * std::f64::consts::PI).sqrt()
        } else {
            2.0 * t * chi2_df1_density(t * t)
        }
    };
    1.0 - integrate(&g, 0.0, c.sqrt())
}

/// Critical value with upper-tail probability `alpha`, by bisection on the
/// quadrature tail.
pub fn chi2_df1_critical(alpha: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 50.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if chi2_df1_upper_tail(mid) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Chance agreement by enumerating every ordered pair of pooled
/// assignments and counting label matches.
pub fn chance_agreement_by_pairs<T: Ord + Clone>(pairs: &[(T, T)]) -> f64 {
    let pooled: Vec<T> = pairs
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    let mut categories: BTreeMap<T, f64> = BTreeMap::new();
    for label in &pooled {
        *categories.entry(label.clone()).or_default() += 1.0 / pooled.len() as f64;
    }
    let mut total = 0.0;
    for (ci, pi) in &categories {
        for (cj, pj) in &categories {
            if ci == cj {
                total += pi * pj;
            }
        }
    }
    total
}

/// Entropy in bits via `log2 N − Σ n_i log2 n_i / N`.
pub fn entropy_from_counts(counts: &[u64]) -> f64 {
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let s: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| c as f64 * (c as f64).log2())
        .sum();
    nf.log2() - s / nf
}

/// Gain ratio of a split given `counts[branch][class]`.
pub fn gain_ratio_bruteforce(counts: [[u64; 2]; 2]) -> (f64, f64, f64) {
    let parent = [counts[0][0] + counts[1][0], counts[0][1] + counts[1][1]];
    let n: u64 = parent.iter().sum();
    if n == 0 {
        return (0.0, 0.0, 0.0);
    }
    let sizes = [counts[0][0] + counts[0][1], counts[1][0] + counts[1][1]];
    let remainder: f64 = (0..2)
        .map(|b| sizes[b] as f64 / n as f64 * entropy_from_counts(&counts[b]))
        .sum();
    let gain = entropy_from_counts(&parent) - remainder;
    let split = entropy_from_counts(&sizes);
    (gain, split, if split > 0.0 { gain / split } else { 0.0 })
}
