//! Small numeric helpers shared by the estimators and the experiment runner.

const LEAF: usize = 32;

/// Sums `term(i)` for `i in 0..n` over a fixed binary tree.
///
/// The tree shape depends only on `n`, so a parallel evaluation that splits
/// at the same midpoints reproduces the sequential result bit-for-bit.
pub fn pairwise_sum<F: Fn(usize) -> f64>(n: usize, term: F) -> f64 {
    fn go<F: Fn(usize) -> f64>(lo: usize, hi: usize, term: &F) -> f64 {
        if hi - lo <= LEAF {
            let mut acc = 0.0;
            for i in lo..hi {
                acc += term(i);
            }
            acc
        } else {
            let mid = lo + (hi - lo) / 2;
            go(lo, mid, term) + go(mid, hi, term)
        }
    }
    go(0, n, &term)
}

/// Two sums over the same tree as [`pairwise_sum`], sharing one `term`
/// evaluation per index.
pub fn pairwise_sum_pair<F: Fn(usize) -> (f64, f64)>(n: usize, term: F) -> (f64, f64) {
    fn go<F: Fn(usize) -> (f64, f64)>(lo: usize, hi: usize, term: &F) -> (f64, f64) {
        if hi - lo <= LEAF {
            let mut acc = (0.0, 0.0);
            for i in lo..hi {
                let (a, b) = term(i);
                acc.0 += a;
                acc.1 += b;
            }
            acc
        } else {
            let mid = lo + (hi - lo) / 2;
            let l = go(lo, mid, term);
            let r = go(mid, hi, term);
            (l.0 + r.0, l.1 + r.1)
        }
    }
    go(0, n, &term)
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}

/// `n` points spaced evenly in `log10` from `10^start_exp` to `10^stop_exp`.
pub fn logspace(start_exp: f64, stop_exp: f64, n: usize) -> Vec<f64> {
    linspace(start_exp, stop_exp, n).into_iter().map(|e| 10f64.powf(e)).collect()
}
