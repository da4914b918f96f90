//! One function per subcommand, each returning a finished table.
//!
//! Grid points run on the rayon pool; results are collected in grid order,
//! so the table does not depend on the number of workers. Timing is only
//! written where asked for (`bench`, `--wall-time`).

use std::time::Instant;

use rayon::prelude::*;
use relayec_core::capacity::{ec_point, RateModel};
use relayec_core::channel::{read_samples_csv, sample_channels};
use relayec_core::numeric::linspace;
use relayec_core::solver::{pareto_epsilon_constraint, pareto_weighted, solve};
use relayec_core::{
    ChannelSample, EcPoint, Geometry, Method, PowerAllocation, RelayMode, SolveOptions, SystemParams,
};

use crate::config::{Axis, ExperimentConfig};
use crate::error::{CliError, Result};
use crate::table::{Cell, Table};

const SCENARIO_COLUMNS: [&str; 9] = ["mode", "d_a", "omega", "eps_a", "eps_b", "theta_a", "theta_b", "w", "p_tot"];
const EC_COLUMNS: [&str; 5] = ["p_r", "p_node", "r_ea", "r_eb", "weighted_sum"];
const REPORT_COLUMNS: [&str; 5] = ["silenced", "degenerate", "fallback", "iterations", "objective_evals"];

/// How a row's allocation was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Solve(Method),
    /// `p_r = p_node = p_tot / 3`.
    Equal,
}

impl Strategy {
    fn name(self) -> String {
        match self {
            Strategy::Solve(m) => m.to_string(),
            Strategy::Equal => "equal".into(),
        }
    }
}

/// Gains for `geom`: drawn from the configured seed, or read from
/// `samples_from`. Imported gains already carry their path loss, so they
/// only fit the configured geometry.
pub fn samples_for(cfg: &ExperimentConfig, geom: Geometry) -> Result<Vec<ChannelSample>> {
    match &cfg.samples_from {
        Some(path) => {
            if geom != cfg.params.geom {
                return Err(CliError::config(
                    "--samples-from fixes the geometry; it cannot be combined with a d_a family or sweep",
                ));
            }
            Ok(read_samples_csv(path)?)
        }
        None => Ok(sample_channels(geom, cfg.samples, cfg.seed)?),
    }
}

fn scenario_cells(mode: RelayMode, p: &SystemParams) -> Vec<Cell> {
    vec![
        mode.to_string().into(),
        p.geom.d_a().into(),
        p.omega.into(),
        p.eps_a.into(),
        p.eps_b.into(),
        p.theta_a.into(),
        p.theta_b.into(),
        p.w.into(),
        p.p_tot.into(),
    ]
}

fn ec_cells(ec: &EcPoint, w: f64) -> Vec<Cell> {
    vec![ec.alloc.p_r.into(), ec.alloc.p_node.into(), ec.r_ea.into(), ec.r_eb.into(), ec.weighted_sum(w).into()]
}

fn eval_table() -> Table {
    Table::new(SCENARIO_COLUMNS.iter().chain(&EC_COLUMNS).copied())
}

fn solve_table(wall_time: bool) -> Table {
    let mut cols: Vec<&str> = SCENARIO_COLUMNS.to_vec();
    cols.push("strategy");
    cols.extend(EC_COLUMNS);
    cols.extend(REPORT_COLUMNS);
    if wall_time {
        cols.push("wall_time_ms");
    }
    Table::new(cols)
}

/// Rows for a curve of fixed allocations.
fn eval_rows(mode: RelayMode, p: &SystemParams, samples: &[ChannelSample], grid: &[f64]) -> Result<Vec<Vec<Cell>>> {
    let model = RateModel::new(mode, p)?;
    grid.par_iter()
        .map(|&p_r| {
            let alloc = PowerAllocation::split(p_r, p.p_tot)?;
            let mut row = scenario_cells(mode, p);
            row.extend(ec_cells(&model.ec_point(samples, alloc), p.w));
            Ok(row)
        })
        .collect()
}

/// One allocation decision and its row.
pub fn solve_row(
    mode: RelayMode,
    p: &SystemParams,
    samples: &[ChannelSample],
    strategy: Strategy,
    wall_time: bool,
) -> Result<Vec<Cell>> {
    let mut row = scenario_cells(mode, p);
    row.push(strategy.name().into());
    match strategy {
        Strategy::Solve(method) => {
            let r = solve(mode, samples, p, method, &SolveOptions::default())?;
            row.extend(ec_cells(&r.ec, p.w));
            row.extend([
                r.silenced.to_string().into(),
                r.degenerate.into(),
                r.fallback.into(),
                r.iterations.into(),
                r.objective_evals.into(),
            ]);
            if wall_time {
                row.push((r.wall_time.as_secs_f64() * 1e3).into());
            }
        }
        Strategy::Equal => {
            let ec = ec_point(mode, samples, p, PowerAllocation::equal(p.p_tot))?;
            row.extend(ec_cells(&ec, p.w));
            row.extend(["none".into(), false.into(), false.into(), 0usize.into(), 0usize.into()]);
            if wall_time {
                row.push(0.0.into());
            }
        }
    }
    Ok(row)
}

/// Solves every job in parallel, keeping job order. Samples are drawn once
/// per distinct geometry.
fn solve_jobs(cfg: &ExperimentConfig, jobs: &[(RelayMode, SystemParams, Strategy)]) -> Result<Table> {
    let mut pools: Vec<(Geometry, Vec<ChannelSample>)> = Vec::new();
    for (_, p, _) in jobs {
        if !pools.iter().any(|(g, _)| *g == p.geom) {
            pools.push((p.geom, samples_for(cfg, p.geom)?));
        }
    }
    let lookup = |g: Geometry| &pools.iter().find(|(h, _)| *h == g).expect("pool exists").1;
    let rows: Vec<Vec<Cell>> = jobs
        .par_iter()
        .map(|(mode, p, s)| solve_row(*mode, p, lookup(p.geom), *s, cfg.wall_time))
        .collect::<Result<_>>()?;
    let mut t = solve_table(cfg.wall_time);
    t.extend(rows);
    Ok(t)
}

fn with_d_a(p: &SystemParams, d_a: f64) -> Result<SystemParams> {
    Axis::DA.apply(p, d_a)
}

fn with_omega(p: &SystemParams, omega: f64) -> Result<SystemParams> {
    Axis::Omega.apply(p, omega)
}

fn configured_solver(cfg: &ExperimentConfig) -> Strategy {
    Strategy::Solve(cfg.method)
}

/// Node-A and node-B capacity against relay power, half duplex, for
/// `d_a` in {0.1, 0.5, 0.8}.
pub fn fig2(cfg: &ExperimentConfig) -> Result<Table> {
    let grid = cfg.sweep_grid(Axis::PR)?;
    let mut t = eval_table();
    for d_a in [0.1, 0.5, 0.8] {
        let p = with_d_a(&cfg.params, d_a)?;
        t.extend(eval_rows(RelayMode::Hd, &p, &samples_for(cfg, p.geom)?, &grid)?);
    }
    Ok(t)
}

/// Capacity against relay power, full duplex at `d_a = 0.1`, for
/// `omega` in {0.1, 0.3, 0.5}.
pub fn fig3(cfg: &ExperimentConfig) -> Result<Table> {
    let grid = cfg.sweep_grid(Axis::PR)?;
    let base = with_d_a(&cfg.params, 0.1)?;
    let samples = samples_for(cfg, base.geom)?;
    let mut t = eval_table();
    for omega in [0.1, 0.3, 0.5] {
        t.extend(eval_rows(RelayMode::Fd, &with_omega(&base, omega)?, &samples, &grid)?);
    }
    Ok(t)
}

const STRATEGIES: [Strategy; 3] =
    [Strategy::Solve(Method::Exact), Strategy::Solve(Method::Approximate), Strategy::Equal];

/// Weighted capacity against the error probability, half duplex, for the
/// exact solve, the min-max approximation and the equal split.
pub fn fig4(cfg: &ExperimentConfig) -> Result<Table> {
    let mut jobs = Vec::new();
    for eps in cfg.sweep_grid(Axis::Eps)? {
        let p = Axis::Eps.apply(&cfg.params, eps)?;
        jobs.extend(STRATEGIES.map(|s| (RelayMode::Hd, p, s)));
    }
    solve_jobs(cfg, &jobs)
}

/// As [`fig4`] in full duplex, for `omega` in {0.01, 0.05, 0.1}.
pub fn fig5(cfg: &ExperimentConfig) -> Result<Table> {
    let grid = cfg.sweep_grid(Axis::Eps)?;
    let mut jobs = Vec::new();
    for omega in [0.01, 0.05, 0.1] {
        for &eps in &grid {
            let p = Axis::Eps.apply(&with_omega(&cfg.params, omega)?, eps)?;
            jobs.extend(STRATEGIES.map(|s| (RelayMode::Fd, p, s)));
        }
    }
    solve_jobs(cfg, &jobs)
}

/// Weighted capacity against the QoS exponent, both modes.
pub fn fig6(cfg: &ExperimentConfig) -> Result<Table> {
    let grid = cfg.sweep_grid(Axis::Theta)?;
    let mut jobs = Vec::new();
    for mode in [RelayMode::Hd, RelayMode::Fd] {
        for &theta in &grid {
            jobs.push((mode, Axis::Theta.apply(&cfg.params, theta)?, configured_solver(cfg)));
        }
    }
    solve_jobs(cfg, &jobs)
}

/// Weighted capacity against the priority weight, both modes, for `d_a` in
/// {0.1, 0.3, 0.5}.
pub fn fig7(cfg: &ExperimentConfig) -> Result<Table> {
    let grid = cfg.sweep_grid(Axis::W)?;
    let mut jobs = Vec::new();
    for mode in [RelayMode::Hd, RelayMode::Fd] {
        for d_a in [0.1, 0.3, 0.5] {
            let p = with_d_a(&cfg.params, d_a)?;
            for &w in &grid {
                jobs.push((mode, Axis::W.apply(&p, w)?, configured_solver(cfg)));
            }
        }
    }
    solve_jobs(cfg, &jobs)
}

/// Full-duplex Pareto frontiers from the weighted sum and from the
/// epsilon-constraint method. The constraint levels span the `R_EB` range
/// of the weighted frontier with as many points as the weight grid.
pub fn fig8(cfg: &ExperimentConfig) -> Result<Table> {
    let w_grid = cfg.sweep_grid(Axis::W)?;
    let curves = [(0.5, 0.01), (0.2, 0.01), (0.2, 0.1)];
    let opts = SolveOptions::default();
    let blocks: Vec<Vec<Vec<Cell>>> = curves
        .par_iter()
        .map(|&(d_a, omega)| -> Result<Vec<Vec<Cell>>> {
            let p = with_omega(&with_d_a(&cfg.params, d_a)?, omega)?;
            let samples = samples_for(cfg, p.geom)?;
            let weighted = pareto_weighted(RelayMode::Fd, &samples, &p, &w_grid, cfg.method, &opts)?;
            let (lo, hi) = weighted
                .points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| (lo.min(e.r_eb), hi.max(e.r_eb)));
            let mu_grid = if w_grid.len() > 1 && lo < hi { linspace(lo, hi, w_grid.len()) } else { vec![lo] };
            let eps = pareto_epsilon_constraint(RelayMode::Fd, &samples, &p, &mu_grid, &opts)?;
            let mut rows = Vec::new();
            for (front, name) in [(&weighted, "weighted"), (&eps, "epsilon")] {
                for (e, param) in front.points.iter().zip(&front.parameter_grid) {
                    rows.push(vec![
                        d_a.into(),
                        omega.into(),
                        name.into(),
                        (*param).into(),
                        e.alloc.p_r.into(),
                        e.alloc.p_node.into(),
                        e.r_ea.into(),
                        e.r_eb.into(),
                    ]);
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(["d_a", "omega", "method", "parameter", "p_r", "p_node", "r_ea", "r_eb"]);
    t.extend(blocks.into_iter().flatten());
    Ok(t)
}

/// Generic one-axis sweep in the configured mode. The `p_r` axis evaluates
/// fixed allocations; every other axis solves with the configured method.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Table> {
    let axis = cfg.axis.ok_or_else(|| CliError::config("sweep needs an axis (--axis or `axis =`)"))?;
    let grid = cfg.sweep_grid(axis)?;
    if axis == Axis::PR {
        let mut t = eval_table();
        t.extend(eval_rows(cfg.mode, &cfg.params, &samples_for(cfg, cfg.params.geom)?, &grid)?);
        return Ok(t);
    }
    let jobs = grid
        .iter()
        .map(|&v| Ok((cfg.mode, axis.apply(&cfg.params, v)?, configured_solver(cfg))))
        .collect::<Result<Vec<_>>>()?;
    solve_jobs(cfg, &jobs)
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Column names of the [`run_bench`] table; the last five hold timings.
pub const BENCH_COLUMNS: [&str; 18] = [
    "mode",
    "parameter",
    "value",
    "samples",
    "repeats",
    "exact_p_r",
    "approx_p_r",
    "exact_weighted_sum",
    "approx_weighted_sum",
    "exact_objective_evals",
    "approx_objective_evals",
    "exact_sample_evals",
    "approx_sample_evals",
    "exact_mean_ms",
    "exact_std_ms",
    "approx_mean_ms",
    "approx_std_ms",
    "time_ratio",
];

/// Wall time of the exact and the approximate solve on one sample set,
/// `repeats` times each, for error probabilities {1e-8, 1e-5, 1e-2} in half
/// duplex and `omega` in {0.01, 0.05, 0.1} in full duplex. Runs serially
/// so the solves do not compete for cores; the two solvers alternate.
pub fn run_bench(cfg: &ExperimentConfig, repeats: usize) -> Result<Table> {
    if repeats == 0 {
        return Err(CliError::config("repeats must be >= 1"));
    }
    let samples = samples_for(cfg, cfg.params.geom)?;
    let mut cells = Vec::new();
    for eps in [1e-8, 1e-5, 1e-2] {
        cells.push((RelayMode::Hd, "eps", eps, Axis::Eps.apply(&cfg.params, eps)?));
    }
    for omega in [0.01, 0.05, 0.1] {
        cells.push((RelayMode::Fd, "omega", omega, with_omega(&cfg.params, omega)?));
    }
    let opts = SolveOptions::default();
    let mut t = Table::new(BENCH_COLUMNS);
    for (mode, name, value, p) in cells {
        let mut times = [Vec::with_capacity(repeats), Vec::with_capacity(repeats)];
        let mut first = [None, None];
        for _ in 0..repeats {
            for (k, method) in [Method::Exact, Method::Approximate].into_iter().enumerate() {
                let started = Instant::now();
                let r = solve(mode, &samples, &p, method, &opts)?;
                times[k].push(started.elapsed().as_secs_f64() * 1e3);
                match &first[k] {
                    None => first[k] = Some(r),
                    Some(f) if f.ec != r.ec => {
                        return Err(CliError::config(format!("{method} solve is not repeatable at {name} = {value}")))
                    }
                    Some(_) => {}
                }
            }
        }
        let [ex, ap] = first.map(|r| r.expect("repeats >= 1"));
        let (em, es) = mean_std(&times[0]);
        let (am, as_) = mean_std(&times[1]);
        t.push(vec![
            mode.to_string().into(),
            name.into(),
            value.into(),
            samples.len().into(),
            repeats.into(),
            ex.ec.alloc.p_r.into(),
            ap.ec.alloc.p_r.into(),
            ex.ec.weighted_sum(p.w).into(),
            ap.ec.weighted_sum(p.w).into(),
            ex.objective_evals.into(),
            ap.objective_evals.into(),
            ex.sample_evals.into(),
            ap.sample_evals.into(),
            em.into(),
            es.into(),
            am.into(),
            as_.into(),
            (em / am).into(),
        ]);
    }
    Ok(t)
}

/// The gains themselves, `h_a,h_b`.
pub fn samples_table(cfg: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(["h_a", "h_b"]);
    for s in samples_for(cfg, cfg.params.geom)? {
        t.push(vec![s.h_a.into(), s.h_b.into()]);
    }
    Ok(t)
}
