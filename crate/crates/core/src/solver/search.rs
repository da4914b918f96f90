//! Golden-section maximization of a unimodal scalar function.

use crate::error::{domain, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Stopping rule for the line search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Final bracket width.
    pub tol: f64,
    /// Largest accepted slope between the two interior golden points once
    /// the bracket is narrow. Not enforced while the bracket still touches
    /// one of the original bounds, where the optimum may be a corner.
    pub grad_tol: f64,
    pub max_iter: usize,
    /// Points of the fallback grid scan used when the evaluated trace is
    /// not unimodal.
    pub fallback_grid: usize,
}

impl SearchOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, grad_tol: 0.1, max_iter: 500, fallback_grid: 1024 }
    }
}

/// Result of a line search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
    pub iterations: usize,
    pub evals: usize,
    /// The evaluated points were not unimodal and the grid fallback ran.
    pub fallback: bool,
}

struct Traced<F> {
    f: F,
    trace: Vec<(f64, f64)>,
}

impl<F: FnMut(f64) -> f64> Traced<F> {
    fn eval(&mut self, x: f64) -> f64 {
        let v = (self.f)(x);
        self.trace.push((x, v));
        v
    }
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// Shrinks the bracket until it is at most `tol` wide and returns its
/// midpoint together with `f` there.
pub fn maximize_unimodal<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Maximum> {
    maximize_with(f, None, lo, hi, &SearchOptions::with_tol(tol))
}

/// Like [`maximize_unimodal`], but first brackets the maximum by walking
/// outward from `start` with doubling steps when `start` is given.
///
/// Every evaluated point is kept. If the trace, sorted by abscissa, rises
/// and falls more than once the function was not unimodal on the range; a
/// uniform grid scan then picks the best cell and the golden search is
/// repeated inside it.
pub fn maximize_with<F: FnMut(f64) -> f64>(
    f: F,
    start: Option<f64>,
    lo: f64,
    hi: f64,
    opts: &SearchOptions,
) -> Result<Maximum> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return domain(format!("search needs lo < hi, got [{lo}, {hi}]"));
    }
    if !(opts.tol > 0.0) {
        return domain(format!("tolerance must be > 0, got {}", opts.tol));
    }
    let mut tf = Traced { f, trace: Vec::with_capacity(64) };
    let (a, b, mut iterations) = match start {
        Some(x0) => bracket(&mut tf, x0.clamp(lo, hi), lo, hi),
        None => (lo, hi, 0),
    };
    let (arg, value, it) = golden(&mut tf, a, b, lo, hi, opts);
    iterations += it;

    if is_unimodal(&mut tf.trace) {
        return Ok(Maximum { arg, value, iterations, evals: tf.trace.len(), fallback: false });
    }

    let n = opts.fallback_grid.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..n {
        let v = tf.eval(lo + step * i as f64);
        if v > best.1 {
            best = (i, v);
        }
    }
    let left = lo + step * best.0.saturating_sub(1) as f64;
    let right = (lo + step * (best.0 + 1) as f64).min(hi);
    let (mut arg, mut value, it) = golden(&mut tf, left, right, lo, hi, opts);
    if best.1 > value {
        arg = lo + step * best.0 as f64;
        value = best.1;
    }
    Ok(Maximum {
        arg,
        value,
        iterations: iterations + it + 1,
        evals: tf.trace.len(),
        fallback: true,
    })
}

/// Walks from `x0` toward increasing values until the function drops.
/// Returns a bracket and the number of steps taken.
fn bracket<F: FnMut(f64) -> f64>(tf: &mut Traced<F>, x0: f64, lo: f64, hi: f64) -> (f64, f64, usize) {
    let mut step = (hi - lo) * 1e-2;
    let f0 = tf.eval(x0);
    let right = (x0 + step).min(hi);
    let fr = tf.eval(right);
    let (dir, mut cur, mut fcur) = if fr > f0 {
        (1.0, right, fr)
    } else {
        let left = (x0 - step).max(lo);
        let fl = tf.eval(left);
        if fl > f0 {
            (-1.0, left, fl)
        } else {
            return (left, right, 1);
        }
    };
    let mut prev = x0;
    let mut steps = 1;
    loop {
        if cur <= lo || cur >= hi {
            return if dir > 0.0 { (prev, hi, steps) } else { (lo, prev, steps) };
        }
        step *= 2.0;
        let next = (cur + dir * step).clamp(lo, hi);
        let fnext = tf.eval(next);
        steps += 1;
        if fnext <= fcur {
            return if dir > 0.0 { (prev, next, steps) } else { (next, prev, steps) };
        }
        prev = cur;
        cur = next;
        fcur = fnext;
    }
}

fn golden<F: FnMut(f64) -> f64>(
    tf: &mut Traced<F>,
    mut a: f64,
    mut b: f64,
    lo: f64,
    hi: f64,
    opts: &SearchOptions,
) -> (f64, f64, usize) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = tf.eval(c);
    let mut fd = tf.eval(d);
    let mut iterations = 0;
    while iterations < opts.max_iter {
        let narrow = b - a <= opts.tol;
        let at_bound = a <= lo || b >= hi;
        let flat = at_bound || ((fd - fc) / (d - c)).abs() <= opts.grad_tol;
        if narrow && flat {
            break;
        }
        if d - c <= f64::EPSILON * (c.abs() + d.abs()) {
            break;
        }
        iterations += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = tf.eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = tf.eval(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, tf.eval(mid), iterations.max(1))
}

/// True when the sorted trace increases and then decreases at most once.
fn is_unimodal(trace: &mut [(f64, f64)]) -> bool {
    trace.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut falling = false;
    for w in trace.windows(2) {
        if w[1].0 == w[0].0 {
            continue;
        }
        let dv = w[1].1 - w[0].1;
        if dv < 0.0 {
            falling = true;
        } else if dv > 0.0 && falling {
            return false;
        }
    }
    true
}
