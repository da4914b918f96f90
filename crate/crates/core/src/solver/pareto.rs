//! Pareto frontiers of `(R_EA, R_EB)`.

use crate::capacity::{EcPoint, RateModel};
use crate::channel::ChannelSample;
use crate::error::{domain, Result};
use crate::link::{Node, RelayMode, SystemParams};

use super::{alloc_at, bounds, check_samples, maximize_with, search_options, solve, Method, SolveOptions};

/// Two points closer than this in both coordinates do not dominate each other.
pub const DOMINANCE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoFrontier {
    /// Non-dominated points, in grid order.
    pub points: Vec<EcPoint>,
    /// Weight `w` or constraint level `mu` that produced each point.
    pub parameter_grid: Vec<f64>,
    pub method: Method,
    /// Constraint levels above the largest attainable `R_EB`.
    pub infeasible: Vec<f64>,
    /// Grid values whose points were dominated and dropped.
    pub dominated: Vec<f64>,
}

fn dominates(q: &EcPoint, p: &EcPoint) -> bool {
    q.r_ea >= p.r_ea - DOMINANCE_TOL
        && q.r_eb >= p.r_eb - DOMINANCE_TOL
        && (q.r_ea > p.r_ea + DOMINANCE_TOL || q.r_eb > p.r_eb + DOMINANCE_TOL)
}

fn frontier(candidates: Vec<(f64, EcPoint)>, method: Method, infeasible: Vec<f64>) -> ParetoFrontier {
    let mut out = ParetoFrontier {
        points: Vec::with_capacity(candidates.len()),
        parameter_grid: Vec::with_capacity(candidates.len()),
        method,
        infeasible,
        dominated: Vec::new(),
    };
    for (param, p) in &candidates {
        if candidates.iter().any(|(_, q)| dominates(q, p)) {
            out.dominated.push(*param);
        } else {
            out.points.push(*p);
            out.parameter_grid.push(*param);
        }
    }
    out
}

/// Sweeps the weight `w` and solves each scalarized problem with `method`
/// (exact or approximate), threshold policy included.
pub fn pareto_weighted(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    w_grid: &[f64],
    method: Method,
    opts: &SolveOptions,
) -> Result<ParetoFrontier> {
    check_samples(samples)?;
    if w_grid.is_empty() {
        return domain("weight grid is empty");
    }
    let mut candidates = Vec::with_capacity(w_grid.len());
    for &w in w_grid {
        let p = SystemParams { w, ..*params };
        let report = solve(mode, samples, &p, method, opts)?;
        candidates.push((w, report.ec));
    }
    Ok(frontier(candidates, method, Vec::new()))
}

/// For each `mu`, maximizes `R_EA` subject to `R_EB >= mu`.
///
/// `R_EB` is unimodal in `p_r`, so its superlevel set is an interval
/// `[l, u]` around its maximizer; the end points are found by bisection and
/// `R_EA` is then maximized over the interval. Levels above `max R_EB` are
/// reported as infeasible.
pub fn pareto_epsilon_constraint(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    mu_grid: &[f64],
    opts: &SolveOptions,
) -> Result<ParetoFrontier> {
    check_samples(samples)?;
    if mu_grid.is_empty() {
        return domain("constraint grid is empty");
    }
    if let Some(mu) = mu_grid.iter().find(|m| !m.is_finite()) {
        return domain(format!("constraint level must be finite, got {mu}"));
    }
    let model = RateModel::new(mode, params)?;
    let p_tot = params.p_tot;
    let (lo, hi) = bounds(p_tot);
    let sopts = search_options(p_tot, opts);
    let ec = |x: f64, n: Node| model.effective_capacity(samples, alloc_at(x, p_tot), n);
    let start = |w: f64| super::warm_start(mode, samples, &SystemParams { w, ..*params });

    let best_a = maximize_with(|x| ec(x, Node::A), Some(start(1.0)?), lo, hi, &sopts)?;
    let best_b = maximize_with(|x| ec(x, Node::B), Some(start(0.0)?), lo, hi, &sopts)?;
    let b_at_best_a = ec(best_a.arg, Node::B);

    // Boundary of {R_EB >= mu} between a feasible and an infeasible point;
    // returns a feasible abscissa.
    let crossing = |mut feasible: f64, mut infeasible: f64, mu: f64| -> f64 {
        while (feasible - infeasible).abs() > sopts.tol * 1e-3 {
            let mid = 0.5 * (feasible + infeasible);
            if mid == feasible || mid == infeasible {
                break;
            }
            if ec(mid, Node::B) >= mu {
                feasible = mid;
            } else {
                infeasible = mid;
            }
        }
        feasible
    };

    let mut candidates = Vec::with_capacity(mu_grid.len());
    let mut infeasible = Vec::new();
    for &mu in mu_grid {
        let x = if b_at_best_a >= mu {
            best_a.arg
        } else if mu > best_b.value {
            infeasible.push(mu);
            continue;
        } else {
            let l = if ec(lo, Node::B) >= mu { lo } else { crossing(best_b.arg, lo, mu) };
            let u = if ec(hi, Node::B) >= mu { hi } else { crossing(best_b.arg, hi, mu) };
            let mut best = (l, ec(l, Node::A));
            let mut consider = |x: f64| {
                if ec(x, Node::B) >= mu {
                    let v = ec(x, Node::A);
                    if v > best.1 {
                        best = (x, v);
                    }
                }
            };
            consider(u);
            if l < u {
                let inner = maximize_with(|x| ec(x, Node::A), None, l, u, &sopts)?;
                consider(inner.arg);
            }
            best.0
        };
        candidates.push((mu, model.ec_point(samples, alloc_at(x, p_tot))));
    }
    Ok(frontier(candidates, Method::EpsilonConstraint, infeasible))
}
