//! Relay power solvers.
//!
//! Both solvers search the single scalar `p_r` over the open interval
//! `(0, p_tot)`; the node power follows as `(p_tot - p_r) / 2`.
//!
//! * [`solve_exact`] maximizes `w R_EA + (1 - w) R_EB` directly.
//! * [`solve_approx`] minimizes the worst-sample surrogate
//!   `tau = max_k [-(w/2) r_A,k - ((1-w)/2) r_B,k]` over the relay powers
//!   where both nodes clear `max(gamma_T, 1)` at the mean gains. The maximum over
//!   samples is handled by an exchange loop: the line search runs over a
//!   small active set of samples, the full sample set is checked at the
//!   candidate, and the most violating sample joins the set until none
//!   exceeds the active maximum. Each round is exact for the surrogate, and
//!   typically only a few samples ever become active.
//!
//! After either solve, [`apply_threshold_policy`] silences a node whose
//! SNR at the mean gains does not clear its threshold.

mod pareto;
mod search;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::capacity::{EcPoint, RateModel};
use crate::channel::{mean_gains, ChannelSample};
use crate::error::{domain, Error, Result};
use crate::link::{link_snr, optimal_relay_power, Node, PowerAllocation, RelayMode, SystemParams};

pub use pareto::{pareto_epsilon_constraint, pareto_weighted, ParetoFrontier};
pub use search::{maximize_unimodal, maximize_with, Maximum, SearchOptions};

/// How a frontier point or a single allocation was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Weighted sum of the Monte-Carlo effective capacities.
    Exact,
    /// Worst-sample min-max surrogate.
    Approximate,
    /// Maximize `R_EA` subject to `R_EB >= mu`.
    EpsilonConstraint,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Approximate => "approx",
            Method::EpsilonConstraint => "epsilon",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Method::Exact),
            "approx" | "approximate" => Ok(Method::Approximate),
            "epsilon" | "epsilon-constraint" => Ok(Method::EpsilonConstraint),
            _ => domain(format!("unknown method '{s}' (expected exact, approx or epsilon)")),
        }
    }
}

/// Node dropped by the threshold policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Silenced {
    #[default]
    None,
    A,
    B,
}

impl fmt::Display for Silenced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Silenced::None => "none",
            Silenced::A => "A",
            Silenced::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Bracket width as a fraction of `p_tot`.
    pub rel_tol: f64,
    pub grad_tol: f64,
    /// Start the search at the weight-blended closed-form optimum for the
    /// mean gains instead of bracketing the whole interval.
    pub warm_start: bool,
    pub apply_thresholds: bool,
    /// Exchange rounds before the surrogate solve gives up on the active
    /// set and searches over all samples.
    pub max_exchange_rounds: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            grad_tol: 0.1,
            warm_start: true,
            apply_thresholds: true,
            max_exchange_rounds: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveReport {
    /// Effective capacities at the chosen allocation (zero for a silenced node).
    pub ec: EcPoint,
    pub method: Method,
    /// Value of the minimized objective (`J` or `tau`) at the search optimum.
    pub objective: f64,
    pub silenced: Silenced,
    /// Both nodes miss their thresholds; the allocation is left as solved.
    pub degenerate: bool,
    /// Line-search iterations for the exact solve; exchange rounds for
    /// the surrogate solve.
    pub iterations: usize,
    /// Objective evaluations counted in passes over the full sample set,
    /// rounded up. Surrogate evaluations restricted to an active set count
    /// pro rata.
    pub objective_evals: usize,
    /// Per-sample rate-pair evaluations spent in the search.
    pub sample_evals: u64,
    /// A line-search trace was not unimodal and the grid fallback ran, or
    /// the surrogate exchange ran out of rounds and searched all samples.
    pub fallback: bool,
    pub wall_time: Duration,
}

impl SolveReport {
    pub fn alloc(&self) -> PowerAllocation {
        self.ec.alloc
    }
}

/// Grid points of the global scan in each exchange round of the surrogate
/// solve.
const SCAN_POINTS: usize = 256;

/// Open search interval for `p_r`.
pub(crate) fn bounds(p_tot: f64) -> (f64, f64) {
    (p_tot * 1e-9, p_tot * (1.0 - 1e-9))
}

/// Search interval of the surrogate solve: relay powers where both nodes'
/// SNR at the mean gains exceeds `max(gamma_T, 1)`.
///
/// Towards either end of `(0, p_tot)` every per-sample SNR vanishes and the
/// rate formula returns its zero-SNR value `log2(m)/m > 0`, which beats the
/// negative rates of deep-fade samples in the interior. The worst-sample
/// surrogate therefore has spurious minima at the ends. Those allocations
/// are also ones the threshold policy would not keep, so they are excluded.
/// Falls back to the full interval when no such relay power exists.
pub(crate) fn surrogate_bounds(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
) -> Result<(f64, f64)> {
    let g = mean_gains(samples)?;
    let p_tot = params.p_tot;
    let full = bounds(p_tot);
    let (mut a, mut b) = full;
    for node in [Node::A, Node::B] {
        let level = params.gamma_t(node).max(1.0);
        let above = |x: f64| link_snr(mode, alloc_at(x, p_tot), params.omega, g, node) > level;
        let peak = optimal_relay_power(mode, g.h_a, g.h_b, p_tot, params.omega, node)?.clamp(full.0, full.1);
        if !above(peak) {
            return Ok(full);
        }
        // Edge of the superlevel set between `inside` and `outside`.
        let edge = |mut inside: f64, mut outside: f64| {
            while (inside - outside).abs() > p_tot * 1e-12 {
                let mid = 0.5 * (inside + outside);
                if above(mid) {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            inside
        };
        let left = if above(full.0) { full.0 } else { edge(peak, full.0) };
        let right = if above(full.1) { full.1 } else { edge(peak, full.1) };
        a = a.max(left);
        b = b.min(right);
    }
    Ok(if a < b { (a, b) } else { full })
}

#[inline]
pub(crate) fn alloc_at(p_r: f64, p_tot: f64) -> PowerAllocation {
    PowerAllocation { p_r, p_node: (p_tot - p_r) / 2.0 }
}

pub(crate) fn search_options(p_tot: f64, opts: &SolveOptions) -> SearchOptions {
    SearchOptions { tol: opts.rel_tol * p_tot, grad_tol: opts.grad_tol, ..SearchOptions::with_tol(1.0) }
}

fn check_samples(samples: &[ChannelSample]) -> Result<()> {
    if samples.is_empty() {
        return domain("solver needs at least one channel sample");
    }
    Ok(())
}

/// `w p*_A + (1 - w) p*_B` from the closed-form maximizers at the mean gains.
pub fn warm_start(mode: RelayMode, samples: &[ChannelSample], params: &SystemParams) -> Result<f64> {
    let g = mean_gains(samples)?;
    let pa = optimal_relay_power(mode, g.h_a, g.h_b, params.p_tot, params.omega, Node::A)?;
    let pb = optimal_relay_power(mode, g.h_a, g.h_b, params.p_tot, params.omega, Node::B)?;
    Ok(params.w * pa + (1.0 - params.w) * pb)
}

/// Dispatches to [`solve_exact`] or [`solve_approx`].
pub fn solve(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    method: Method,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    match method {
        Method::Exact => solve_exact(mode, samples, params, opts),
        Method::Approximate => solve_approx(mode, samples, params, opts),
        Method::EpsilonConstraint => {
            domain("the epsilon-constraint method produces a frontier, not a single allocation")
        }
    }
}

/// Maximizes the weighted sum of effective capacities.
pub fn solve_exact(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let started = Instant::now();
    check_samples(samples)?;
    let model = RateModel::new(mode, params)?;
    let p_tot = params.p_tot;
    let (lo, hi) = bounds(p_tot);
    let start = if opts.warm_start { Some(warm_start(mode, samples, params)?) } else { None };
    let best = maximize_with(
        |x| -model.weighted_objective(samples, alloc_at(x, p_tot)),
        start,
        lo,
        hi,
        &search_options(p_tot, opts),
    )?;
    let alloc = alloc_at(best.arg, p_tot);
    let report = SolveReport {
        ec: model.ec_point(samples, alloc),
        method: Method::Exact,
        objective: -best.value,
        silenced: Silenced::None,
        degenerate: false,
        iterations: best.iterations,
        objective_evals: best.evals,
        sample_evals: best.evals as u64 * samples.len() as u64,
        fallback: best.fallback,
        wall_time: Duration::ZERO,
    };
    finish(report, mode, samples, params, &model, opts, started)
}

/// Minimizes the worst-sample surrogate and reports the effective
/// capacities at its minimizer.
pub fn solve_approx(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    let started = Instant::now();
    check_samples(samples)?;
    let model = RateModel::new(mode, params)?;
    let p_tot = params.p_tot;
    let (lo, hi) = surrogate_bounds(mode, samples, params)?;
    let sopts = search_options(p_tot, opts);

    // Worst sample and its surrogate value at `x`.
    let worst = |x: f64| -> (usize, f64) {
        let alloc = alloc_at(x, p_tot);
        let mut best = (0, f64::NEG_INFINITY);
        for (k, &s) in samples.iter().enumerate() {
            let v = model.sample_surrogate(s, alloc);
            if v > best.1 {
                best = (k, v);
            }
        }
        best
    };

    // Global minimum of the max over `set` on [lo, hi]: a grid scan picks
    // the best cell, a golden search refines it. Returns the maximum of the
    // negated function and the number of point evaluations.
    let scan = |set: &dyn Fn(f64) -> f64| -> Result<(Maximum, usize)> {
        let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
        let mut best = (0, f64::NEG_INFINITY);
        for i in 0..SCAN_POINTS {
            let v = set(lo + step * i as f64);
            if v > best.1 {
                best = (i, v);
            }
        }
        let a = (lo + step * best.0 as f64 - step).max(lo);
        let b = (lo + step * best.0 as f64 + step).min(hi);
        let mut m = maximize_with(set, None, a, b, &sopts)?;
        if best.1 > m.value {
            m.arg = lo + step * best.0 as f64;
            m.value = best.1;
        }
        Ok((m, SCAN_POINTS))
    };

    let x0 = if opts.warm_start { warm_start(mode, samples, params)?.clamp(lo, hi) } else { 0.5 * (lo + hi) };
    let mut x;
    let mut active = vec![worst(x0).0];
    let mut sample_evals = samples.len() as u64;
    let mut fallback = false;
    let mut objective;
    let mut rounds = 0;
    loop {
        let set = |y: f64| {
            let alloc = alloc_at(y, p_tot);
            -active.iter().map(|&k| model.sample_surrogate(samples[k], alloc)).fold(f64::NEG_INFINITY, f64::max)
        };
        let (m, scanned) = scan(&set)?;
        sample_evals += (m.evals + scanned) as u64 * active.len() as u64;
        fallback |= m.fallback;
        x = m.arg;
        let active_max = -m.value;
        let (k, tau) = worst(x);
        sample_evals += samples.len() as u64;
        rounds += 1;
        objective = tau;
        if tau <= active_max + 1e-12 * active_max.abs().max(1.0) || active.contains(&k) {
            break;
        }
        if rounds >= opts.max_exchange_rounds {
            let (m, scanned) = scan(&|y: f64| -worst(y).1)?;
            sample_evals += (m.evals + scanned) as u64 * samples.len() as u64;
            fallback = true;
            x = m.arg;
            objective = -m.value;
            break;
        }
        active.push(k);
    }

    let alloc = alloc_at(x, p_tot);
    let report = SolveReport {
        ec: model.ec_point(samples, alloc),
        method: Method::Approximate,
        objective,
        silenced: Silenced::None,
        degenerate: false,
        iterations: rounds,
        objective_evals: sample_evals.div_ceil(samples.len() as u64) as usize,
        sample_evals,
        fallback,
        wall_time: Duration::ZERO,
    };
    finish(report, mode, samples, params, &model, opts, started)
}

fn finish(
    report: SolveReport,
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    model: &RateModel,
    opts: &SolveOptions,
    started: Instant,
) -> Result<SolveReport> {
    let mut report = if opts.apply_thresholds {
        threshold_policy(report, mode, samples, params, model)?
    } else {
        report
    };
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Checks both nodes' SNR at the mean gains against their thresholds.
///
/// If exactly one node falls short it is silenced: its effective capacity
/// is reported as zero and the relay power is moved to the closed-form
/// optimum of the other node. If both fall short the report is flagged
/// degenerate and otherwise left alone.
pub fn apply_threshold_policy(
    report: SolveReport,
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
) -> Result<SolveReport> {
    check_samples(samples)?;
    let model = RateModel::new(mode, params)?;
    threshold_policy(report, mode, samples, params, &model)
}

fn threshold_policy(
    mut report: SolveReport,
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    model: &RateModel,
) -> Result<SolveReport> {
    let g = mean_gains(samples)?;
    let fails = |n: Node| link_snr(mode, report.ec.alloc, params.omega, g, n) <= params.gamma_t(n);
    let (fail_a, fail_b) = (fails(Node::A), fails(Node::B));
    let keep = match (fail_a, fail_b) {
        (false, false) => return Ok(report),
        (true, true) => {
            report.degenerate = true;
            return Ok(report);
        }
        (true, false) => Node::B,
        (false, true) => Node::A,
    };
    let p_r = optimal_relay_power(mode, g.h_a, g.h_b, params.p_tot, params.omega, keep)?;
    let mut ec = model.ec_point(samples, alloc_at(p_r, params.p_tot));
    match keep {
        Node::A => {
            ec.r_eb = 0.0;
            report.silenced = Silenced::B;
        }
        Node::B => {
            ec.r_ea = 0.0;
            report.silenced = Silenced::A;
        }
    }
    report.ec = ec;
    Ok(report)
}
