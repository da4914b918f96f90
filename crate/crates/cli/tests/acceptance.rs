//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every verdict is printed even when
//! it passes. The process exits non-zero if any criterion fails.
//!
//! Unless stated otherwise: n = 1000 samples, seed 7, m = 100,
//! P_tot = 1000 W, alpha = 4, eps = 1e-4, theta = 1e-3, gamma_T = 1.

use std::collections::BTreeMap;
use std::fs;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relayec_cli::config::ExperimentConfig;
use relayec_cli::experiments::{fig4, fig5, fig6, fig7, fig8, run_bench, BENCH_COLUMNS};
use relayec_cli::table::{parse_csv, Cell, Table};
use relayec_core::capacity::RateModel;
use relayec_core::channel::{mean_gains, sample_channels};
use relayec_core::fbl::{lemma1_regime_check, FblPoint};
use relayec_core::link::{link_snr, optimal_relay_power, sinr_fd, snr_hd};
use relayec_core::numeric::{linspace, logspace};
use relayec_core::{ChannelSample, Geometry, Node, PowerAllocation, RelayMode, SystemParams};

const SCENARIOS: usize = 256;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(2024);
    r.set_stream(stream);
    r
}

fn log_uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    r.random_range(lo.ln()..hi.ln()).exp()
}

fn alloc(p_r: f64, p_tot: f64) -> PowerAllocation {
    PowerAllocation { p_r, p_node: (p_tot - p_r) / 2.0 }
}

fn reference() -> ExperimentConfig {
    ExperimentConfig::default()
}

fn num(t: &Table, row: usize, col: &str) -> f64 {
    t.rows[row][t.column(col).unwrap_or_else(|| panic!("no column {col}"))].as_f64().unwrap()
}

fn text(t: &Table, row: usize, col: &str) -> String {
    match &t.rows[row][t.column(col).unwrap()] {
        Cell::Text(s) => s.clone(),
        other => panic!("{col} is not text: {other:?}"),
    }
}

/// Index of the first row matching every `(column, value)` pair.
fn find(t: &Table, keys: &[(&str, &str)], nums: &[(&str, f64)]) -> usize {
    (0..t.rows.len())
        .find(|&i| keys.iter().all(|(c, v)| text(t, i, c) == *v) && nums.iter().all(|(c, v)| num(t, i, c) == *v))
        .unwrap_or_else(|| panic!("no row with {keys:?} {nums:?}"))
}

/// Number of rise-to-fall transitions, ignoring steps of size `noise`.
fn peaks(v: &[f64], noise: f64) -> usize {
    let mut rising = false;
    let mut count = 0;
    for w in v.windows(2) {
        let d = w[1] - w[0];
        if d > noise {
            rising = true;
        } else if d < -noise && rising {
            count += 1;
            rising = false;
        }
    }
    count
}

fn criterion_1() -> Verdict {
    let started = Instant::now();
    let mut r = rng(1);
    let n = 1_000_000;
    let mut worst: f64 = 0.0;
    let mut misses = 0;
    for _ in 0..200 {
        let h_a = log_uniform(&mut r, 1e-3, 1e3);
        let h_b = log_uniform(&mut r, 1e-3, 1e3);
        let p_tot = log_uniform(&mut r, 1.0, 1e4);
        let omega = r.random_range(0.0..=1.0);
        let s = ChannelSample { h_a, h_b };
        let step = p_tot / (n - 1) as f64;
        for (mode, om) in [(RelayMode::Hd, 0.0), (RelayMode::Fd, omega)] {
            for node in [Node::A, Node::B] {
                let closed = optimal_relay_power(mode, h_a, h_b, p_tot, om, node).unwrap();
                let mut best = (0.0, f64::NEG_INFINITY);
                for i in 0..n {
                    let x = step * i as f64;
                    let v = link_snr(mode, alloc(x, p_tot), om, s, node);
                    if v > best.1 {
                        best = (x, v);
                    }
                }
                let off = (closed - best.0).abs() / step;
                worst = worst.max(off);
                if off > 1.0 {
                    misses += 1;
                }
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    verdict(
        misses == 0 && secs < 30.0,
        format!("800 maximizers, {misses} off by more than one grid step (worst {worst:.3} steps), {secs:.1} s"),
    )
}

fn criterion_2() -> Verdict {
    let mut r = rng(2);
    let mut max_diff: f64 = 0.0;
    for _ in 0..10_000 {
        let s = ChannelSample { h_a: log_uniform(&mut r, 1e-4, 1e4), h_b: log_uniform(&mut r, 1e-4, 1e4) };
        let p_tot = log_uniform(&mut r, 1e-2, 1e5);
        let a = alloc(r.random_range(0.0..p_tot), p_tot);
        for node in [Node::A, Node::B] {
            max_diff = max_diff.max((sinr_fd(a, 0.0, s, node) - snr_hd(a, s, node)).abs());
        }
    }
    verdict(max_diff == 0.0, format!("max |sinr_fd(omega=0) - snr_hd| over 10^4 points = {max_diff:e}"))
}

/// Relay powers where both nodes' SNR at the mean gains exceeds 1. Below
/// that the rate formula is outside its increasing/concave regime.
fn lemma_region(mode: RelayMode, p: &SystemParams, samples: &[ChannelSample]) -> Option<(f64, f64)> {
    let g = mean_gains(samples).unwrap();
    let xs = linspace(0.0, p.p_tot * (1.0 - 1e-9), 4096);
    let ok = |x: f64| [Node::A, Node::B].iter().all(|&n| link_snr(mode, alloc(x, p.p_tot), p.omega, g, n) > 1.0);
    let lo = xs.iter().position(|&x| ok(x))?;
    let hi = xs.iter().rposition(|&x| ok(x))?;
    (lo < hi).then(|| (xs[lo], xs[hi]))
}

/// EC on 512 points of the lemma region for a random scenario, or `None`
/// when the scenario has no such region.
fn ec_curves(mode: RelayMode, r: &mut ChaCha8Rng, omega: f64) -> Option<[Vec<f64>; 2]> {
    let d_a = r.random_range(0.05..0.95);
    let eps = log_uniform(r, 1e-8, 1e-2);
    let theta = log_uniform(r, 1e-4, 1e-2);
    let seed: u64 = r.random();
    let p = SystemParams {
        geom: Geometry::new(d_a, 4.0).unwrap(),
        eps_a: eps,
        eps_b: eps,
        theta_a: theta,
        theta_b: theta,
        omega,
        ..SystemParams::baseline()
    };
    let samples = sample_channels(p.geom, 1000, seed).unwrap();
    let (lo, hi) = lemma_region(mode, &p, &samples)?;
    let model = RateModel::new(mode, &p).unwrap();
    let xs = linspace(lo, hi, 512);
    Some([Node::A, Node::B].map(|n| xs.iter().map(|&x| model.effective_capacity(&samples, alloc(x, p.p_tot), n)).collect()))
}

fn criterion_3() -> Verdict {
    let mut violations = BTreeMap::new();
    let mut bump = |name: &'static str, bad: bool| *violations.entry(name).or_insert(0usize) += bad as usize;

    // Rate increasing and concave in SNR on a log-spaced grid.
    let mut r = rng(31);
    for _ in 0..SCENARIOS {
        let m = [101.0, 200.0, 1000.0][r.random_range(0..3)];
        let eps = log_uniform(&mut r, 1e-9, 0.4);
        let bad = logspace(1.01f64.log10(), 3.0, 64).into_iter().any(|g| {
            let f = lemma1_regime_check(&FblPoint::new(g, m, eps).unwrap(), g * 1e-3).unwrap();
            !(f.increasing && f.concave)
        });
        bump("rate monotone/concave", bad);
    }

    // HD SNR concave in relay power.
    let mut r = rng(32);
    for _ in 0..SCENARIOS {
        let s = ChannelSample { h_a: log_uniform(&mut r, 1e-3, 1e3), h_b: log_uniform(&mut r, 1e-3, 1e3) };
        let p_tot = log_uniform(&mut r, 1.0, 1e4);
        let xs = linspace(0.0, p_tot * (1.0 - 1e-9), 512);
        let bad = [Node::A, Node::B].iter().any(|&n| {
            let v: Vec<f64> = xs.iter().map(|&x| snr_hd(alloc(x, p_tot), s, n)).collect();
            v.windows(3).any(|w| w[2] - 2.0 * w[1] + w[0] > 1e-9)
        });
        bump("HD SNR concave", bad);
    }

    // EC increasing and concave in the rate, through the per-sample
    // integrand and through a common shift of all rates.
    let mut r = rng(33);
    for _ in 0..SCENARIOS {
        let mode = if r.random() { RelayMode::Fd } else { RelayMode::Hd };
        let p = SystemParams {
            theta_a: log_uniform(&mut r, 1e-5, 1e-2),
            eps_a: log_uniform(&mut r, 1e-8, 0.3),
            ..SystemParams::baseline()
        };
        let model = RateModel::new(mode, &p).unwrap();
        let rates: Vec<f64> = (0..r.random_range(1..64)).map(|_| r.random_range(-0.5..8.0)).collect();
        let h = 1e-2;
        let shifted = |t: f64| {
            let v: Vec<f64> = rates.iter().map(|x| x + t).collect();
            model.effective_capacity_from_rates(&v, Node::A)
        };
        let single = |x: f64| model.effective_capacity_from_rates(&[x], Node::A);
        let mut bad = false;
        let mut check = |f: &dyn Fn(f64) -> f64, t: f64| {
            let (lo, mid, hi) = (f(t - h), f(t), f(t + h));
            bad |= !(hi > lo) || hi - 2.0 * mid + lo > 1e-12 * mid.abs().max(1.0);
        };
        for t in [-0.5, 0.0, 0.5, 2.0] {
            check(&shifted, t);
        }
        for &x in &rates {
            check(&single, x);
        }
        bump("EC increasing/concave in rate", bad);
    }

    // HD EC unimodal in relay power.
    let mut r = rng(34);
    let mut accepted = 0;
    while accepted < SCENARIOS {
        if let Some(curves) = ec_curves(RelayMode::Hd, &mut r, 0.0) {
            accepted += 1;
            bump("HD EC unimodal", curves.iter().any(|v| peaks(v, 1e-12) > 1));
        }
    }

    // FD SINR and FD EC: exactly one rise-to-fall transition.
    let mut r = rng(35);
    for i in 0..SCENARIOS {
        let omega = [0.01, 0.1, 0.5][i % 3];
        let s = ChannelSample { h_a: log_uniform(&mut r, 1e-3, 1e3), h_b: log_uniform(&mut r, 1e-3, 1e3) };
        let p_tot = log_uniform(&mut r, 1.0, 1e4);
        let xs = linspace(0.0, p_tot, 512);
        let bad = [Node::A, Node::B].iter().any(|&n| {
            let v: Vec<f64> = xs.iter().map(|&x| sinr_fd(alloc(x, p_tot), omega, s, n)).collect();
            peaks(&v, 0.0) != 1
        });
        bump("FD SINR single peak", bad);
    }
    let mut accepted = 0;
    while accepted < SCENARIOS {
        let omega = [0.01, 0.1, 0.5][accepted % 3];
        if let Some(curves) = ec_curves(RelayMode::Fd, &mut r, omega) {
            accepted += 1;
            bump("FD EC single peak", curves.iter().any(|v| peaks(v, 1e-12) > 1));
        }
    }

    let total: usize = violations.values().sum();
    let detail = violations.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", ");
    verdict(total == 0, format!("{SCENARIOS} scenarios per property; violations: {detail}"))
}

/// Relative shortfall of the approximate allocation under the exact
/// objective, per sweep point.
fn approx_gaps(t: &Table, family: &str) -> Vec<(f64, f64, f64)> {
    let mut out = Vec::new();
    for i in (0..t.rows.len()).filter(|&i| text(t, i, "strategy") == "exact") {
        let (f, e) = (num(t, i, family), num(t, i, "eps_a"));
        let j = find(t, &[("strategy", "approx")], &[(family, f), ("eps_a", e)]);
        let (ex, ap) = (num(t, i, "weighted_sum"), num(t, j, "weighted_sum"));
        out.push((f, e, (ex - ap) / ex));
    }
    out
}

fn criterion_4(t4: &Table, t5: &Table) -> Verdict {
    let hd = approx_gaps(t4, "omega");
    let fd = approx_gaps(t5, "omega");
    let worst = |g: &[(f64, f64, f64)]| g.iter().cloned().fold((0.0, 0.0, f64::NEG_INFINITY), |a, b| if b.2 > a.2 { b } else { a });
    let (_, he, hg) = worst(&hd);
    let (fo, fe, fg) = worst(&fd);
    let fd_by_omega: Vec<String> = [0.01, 0.05, 0.1]
        .iter()
        .map(|&o| {
            let g = fd.iter().filter(|x| x.0 == o).map(|x| x.2).fold(f64::NEG_INFINITY, f64::max);
            format!("omega={o}: {:.1}%", 100.0 * g)
        })
        .collect();
    verdict(
        hg <= 0.05 && fg <= 0.05,
        format!(
            "worst gap HD {:.2}% (eps={he:e}), FD {:.2}% (omega={fo}, eps={fe:e}); FD worst per omega [{}]",
            100.0 * hg,
            100.0 * fg,
            fd_by_omega.join(", ")
        ),
    )
}

/// Relative margin of the exact solve over the equal split, per sweep point.
fn equal_margins(t: &Table) -> Vec<f64> {
    (0..t.rows.len())
        .filter(|&i| text(t, i, "strategy") == "exact")
        .map(|i| {
            let j = find(t, &[("strategy", "equal")], &[("omega", num(t, i, "omega")), ("eps_a", num(t, i, "eps_a"))]);
            let (ex, eq) = (num(t, i, "weighted_sum"), num(t, j, "weighted_sum"));
            (ex - eq) / eq
        })
        .collect()
}

fn criterion_5(t4: &Table, t5: &Table) -> Verdict {
    let mut cfg = reference();
    cfg.params.geom = Geometry::new(0.2, 4.0).unwrap();
    let (t4b, t5b) = (fig4(&cfg).unwrap(), fig5(&cfg).unwrap());
    let mid: Vec<f64> = [equal_margins(t4), equal_margins(t5)].concat();
    let off: Vec<f64> = [equal_margins(&t4b), equal_margins(&t5b)].concat();
    let all_positive = mid.iter().chain(&off).all(|&m| m > 0.0);
    let larger = mid.iter().zip(&off).all(|(a, b)| b > a);
    let min = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    verdict(
        all_positive && larger,
        format!(
            "margin over equal split: d_a=0.5 [{:.2}%, {:.2}%], d_a=0.2 [{:.2}%, {:.2}%] over {} points; d_a=0.2 larger at every point: {larger}",
            100.0 * min(&mid),
            100.0 * max(&mid),
            100.0 * min(&off),
            100.0 * max(&off),
            mid.len()
        ),
    )
}

fn fd_hd_ratio(cfg: &ExperimentConfig) -> (f64, f64) {
    let mut cfg = cfg.clone();
    cfg.params.omega = 0.01;
    cfg.grid = Some(vec![1e-3]);
    let t = fig6(&cfg).unwrap();
    let hd = num(&t, find(&t, &[("mode", "hd")], &[]), "weighted_sum");
    let fd = num(&t, find(&t, &[("mode", "fd")], &[]), "weighted_sum");
    (fd, hd)
}

fn criterion_6() -> Verdict {
    let (fd, hd) = fd_hd_ratio(&reference());
    let ratio = fd / hd;
    verdict((1.7..=2.05).contains(&ratio), format!("FD {fd:.4} / HD {hd:.4} = {ratio:.3}, required [1.7, 2.05]"))
}

struct Anchors {
    fd: f64,
    hd: f64,
    fd_max: f64,
}

fn anchors(cfg: &ExperimentConfig) -> Anchors {
    let t = fig7(cfg).unwrap();
    let at = |mode: &str, w: f64| num(&t, find(&t, &[("mode", mode)], &[("d_a", 0.3), ("w", w)]), "weighted_sum");
    let fd_max = (0..t.rows.len())
        .filter(|&i| text(&t, i, "mode") == "fd" && num(&t, i, "d_a") == 0.3)
        .map(|i| num(&t, i, "weighted_sum"))
        .fold(f64::NEG_INFINITY, f64::max);
    Anchors { fd: at("fd", 0.5), hd: at("hd", 0.5), fd_max }
}

fn criterion_7() -> Verdict {
    let a = anchors(&reference());
    let within = |v: f64, target: f64| (v - target).abs() <= 0.12 * target;
    let gain = a.fd_max / a.fd - 1.0;
    verdict(
        within(a.fd, 3.46) && within(a.hd, 2.61) && gain >= 0.15,
        format!(
            "d_a=0.3, omega=0.1, w=0.5: FD {:.3} (3.46 +-12%: {}), HD {:.3} (2.61 +-12%: {}); FD max over w exceeds w=0.5 by {:.1}% (>= 15%)",
            a.fd,
            within(a.fd, 3.46),
            a.hd,
            within(a.hd, 2.61),
            100.0 * gain
        ),
    )
}

struct FrontierCheck {
    worst: Vec<(f64, f64, f64)>,
    interpolated: Vec<f64>,
    span_a: (f64, f64),
    span_b: (f64, f64),
}

fn frontiers(cfg: &ExperimentConfig) -> FrontierCheck {
    let t = fig8(cfg).unwrap();
    let mut worst = Vec::new();
    let mut interpolated = Vec::new();
    let mut span_a = (f64::INFINITY, f64::NEG_INFINITY);
    let mut span_b = span_a;
    for (d_a, omega) in [(0.5, 0.01), (0.2, 0.01), (0.2, 0.1)] {
        let rows = |m: &str| -> Vec<(f64, f64)> {
            (0..t.rows.len())
                .filter(|&i| text(&t, i, "method") == m && num(&t, i, "d_a") == d_a && num(&t, i, "omega") == omega)
                .map(|i| (num(&t, i, "r_ea"), num(&t, i, "r_eb")))
                .collect()
        };
        let (weighted, eps) = (rows("weighted"), rows("epsilon"));
        let mut w = 0.0f64;
        let mut wi = 0.0f64;
        // Diagnostic only: the weighted frontier interpolated at the same R_EB.
        let mut sorted = weighted.clone();
        sorted.sort_by(|p, q| p.1.total_cmp(&q.1));
        for &(a, b) in &eps {
            let near = weighted.iter().min_by(|p, q| (p.1 - b).abs().total_cmp(&(q.1 - b).abs())).unwrap();
            w = w.max((a - near.0).abs() / near.0);
            if let Some(j) = sorted.windows(2).position(|s| s[0].1 <= b && b <= s[1].1) {
                let (p, q) = (sorted[j], sorted[j + 1]);
                let t = if q.1 > p.1 { (b - p.1) / (q.1 - p.1) } else { 0.0 };
                let ai = p.0 + t * (q.0 - p.0);
                wi = wi.max((a - ai).abs() / ai);
            }
        }
        worst.push((d_a, omega, w));
        interpolated.push(wi);
        if (d_a, omega) == (0.2, 0.01) {
            for &(a, b) in &weighted {
                span_a = (span_a.0.min(a), span_a.1.max(a));
                span_b = (span_b.0.min(b), span_b.1.max(b));
            }
        }
    }
    FrontierCheck { worst, interpolated, span_a, span_b }
}

fn criterion_8() -> Verdict {
    let f = frontiers(&reference());
    let agree = f.worst.iter().all(|w| w.2 <= 0.03);
    let near = |v: f64, t: f64| (v - t).abs() <= 0.15 * t;
    let spans = near(f.span_a.0, 2.1) && near(f.span_a.1, 3.7) && near(f.span_b.0, 4.9) && near(f.span_b.1, 6.0);
    let agreement: Vec<String> =
        f.worst.iter().map(|(d, o, w)| format!("({d}, {o}): {:.2}%", 100.0 * w)).collect();
    verdict(
        agree && spans,
        format!(
            "pointwise R_EA disagreement [{}] (against the interpolated weighted frontier: [{}]); d_a=0.2 omega=0.01 span R_EA [{:.2}, {:.2}] vs [2.1, 3.7], R_EB [{:.2}, {:.2}] vs [4.9, 6.0] (+-15%: {spans})",
            agreement.join(", "),
            f.interpolated.iter().map(|w| format!("{:.2}%", 100.0 * w)).collect::<Vec<_>>().join(", "),
            f.span_a.0,
            f.span_a.1,
            f.span_b.0,
            f.span_b.1
        ),
    )
}

fn criterion_9() -> Verdict {
    let t = run_bench(&reference(), 100).unwrap();
    let mut cells = Vec::new();
    let mut ok = true;
    for i in 0..t.rows.len() {
        let ratio = num(&t, i, "time_ratio");
        ok &= ratio > 1.5;
        cells.push(format!("{} {}={}: {:.1}", text(&t, i, "mode"), text(&t, i, "parameter"), num(&t, i, "value"), ratio));
    }
    verdict(ok, format!("exact/approx wall-time ratio, 100 repeats: [{}]", cells.join(", ")))
}

fn criterion_10() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("fig2", vec![]),
        ("fig3", vec![]),
        ("fig4", vec![]),
        ("fig5", vec![]),
        ("fig6", vec![]),
        ("fig7", vec![]),
        ("fig8", vec![]),
        ("fig8", vec!["--format", "json"]),
        ("sweep", vec!["--axis", "omega", "--mode", "fd"]),
        ("samples", vec![]),
        ("config", vec![]),
        ("bench", vec![]),
    ];
    let mut differing = Vec::new();
    for (k, (cmd, extra)) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            // Same relative --out in separate directories: `config` echoes it.
            let cwd = dir.path().join(format!("{k}-{attempt}"));
            fs::create_dir(&cwd).unwrap();
            let path = cwd.join("out");
            let status = Command::new(env!("CARGO_BIN_EXE_relayec"))
                .current_dir(&cwd)
                .arg(cmd)
                .args(extra)
                .args(["--seed", "7", "--out", "out"])
                .status()
                .unwrap();
            assert!(status.success(), "{cmd} failed");
            outputs.push(fs::read(&path).unwrap());
        }
        let same = if *cmd == "bench" {
            // Wall-time columns are measurements; everything else must match.
            let keep = BENCH_COLUMNS.len() - 5;
            let strip = |b: &[u8]| parse_csv(b).unwrap().1.into_iter().map(|r| r[..keep].to_vec()).collect::<Vec<_>>();
            strip(&outputs[0]) == strip(&outputs[1])
        } else {
            outputs[0] == outputs[1]
        };
        if !same {
            differing.push(format!("{cmd} {}", extra.join(" ")));
        }
    }
    verdict(
        differing.is_empty(),
        format!(
            "{} runs repeated; byte-identical except bench timing columns; differing: [{}]",
            runs.len(),
            differing.join("; ")
        ),
    )
}

/// The same figures at P_tot = 100 W, printed for reference.
fn reference_power_note() -> String {
    let mut cfg = reference();
    cfg.params.p_tot = 100.0;
    let (fd, hd) = fd_hd_ratio(&cfg);
    let a = anchors(&cfg);
    let f = frontiers(&cfg);
    format!(
        "note: at P_tot = 100 W: FD/HD ratio {:.3}; d_a=0.3 anchors FD {:.3}, HD {:.3}, FD max-over-w gain {:.1}%; d_a=0.2 omega=0.01 span R_EA [{:.2}, {:.2}], R_EB [{:.2}, {:.2}]",
        fd / hd,
        a.fd,
        a.hd,
        100.0 * (a.fd_max / a.fd - 1.0),
        f.span_a.0,
        f.span_a.1,
        f.span_b.0,
        f.span_b.1
    )
}

fn main() {
    let cfg = reference();
    let (t4, t5) = (fig4(&cfg).unwrap(), fig5(&cfg).unwrap());
    let results: Vec<(usize, Verdict)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4(&t4, &t5)),
        (5, criterion_5(&t4, &t5)),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
    ];
    let mut failed = 0;
    for (n, v) in &results {
        println!("criterion {n:>2}: {} - {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += !v.pass as usize;
    }
    println!("{}", reference_power_note());
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
