//! Per-sample SNR / SINR of the two-way amplify-and-forward relay and the
//! relay powers that maximize them.
//!
//! Both nodes transmit with the same power `P` and the budget constraint
//! `P_R + 2P = P_tot` leaves the relay power as the only free variable.
//! Noise power is normalized to one.

use std::fmt;
use std::str::FromStr;

use crate::channel::{ChannelSample, Geometry};
use crate::error::{domain, Error, Result};

/// Which end of the exchange a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    A,
    B,
}

impl Node {
    pub fn other(self) -> Node {
        match self {
            Node::A => Node::B,
            Node::B => Node::A,
        }
    }

    /// Reorders `(h_a, h_b)` as `(own, other)` gains for this node.
    #[inline]
    fn orient(self, h_a: f64, h_b: f64) -> (f64, f64) {
        match self {
            Node::A => (h_a, h_b),
            Node::B => (h_b, h_a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelayMode {
    /// Half duplex: multiple-access slot, then broadcast slot.
    Hd,
    /// Full duplex: one slot, residual self-interference at every terminal.
    Fd,
}

impl fmt::Display for RelayMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelayMode::Hd => "hd",
            RelayMode::Fd => "fd",
        })
    }
}

impl FromStr for RelayMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hd" => Ok(RelayMode::Hd),
            "fd" => Ok(RelayMode::Fd),
            other => domain(format!("unknown relay mode `{other}` (expected hd|fd)")),
        }
    }
}

/// Blocklength used inside the rate formula for a half-duplex hop.
///
/// The effective-capacity exponent always uses `m / 2` in half duplex; this
/// switch only picks the `m` that enters the dispersion and `log2(m)/m`
/// terms of the rate itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HdRateBlocklength {
    #[default]
    Half,
    Full,
}

impl fmt::Display for HdRateBlocklength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HdRateBlocklength::Half => "m/2",
            HdRateBlocklength::Full => "m",
        })
    }
}

impl FromStr for HdRateBlocklength {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "m/2" | "half" => Ok(HdRateBlocklength::Half),
            "m" | "full" => Ok(HdRateBlocklength::Full),
            other => domain(format!("unknown hd-rate-blocklength `{other}` (expected m|m/2)")),
        }
    }
}

/// Scenario constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Packet length in channel uses.
    pub m: u32,
    /// Total power shared by the relay and both nodes, in watts.
    pub p_tot: f64,
    /// Mean residual self-interference coefficient, common to all terminals.
    pub omega: f64,
    pub eps_a: f64,
    pub eps_b: f64,
    /// QoS exponents, per channel use.
    pub theta_a: f64,
    pub theta_b: f64,
    pub geom: Geometry,
    /// Linear SNR below which a node is silenced.
    pub gamma_t_a: f64,
    pub gamma_t_b: f64,
    /// Priority of node A in the weighted sum; node B gets `1 - w`.
    pub w: f64,
    pub hd_rate_blocklength: HdRateBlocklength,
}

impl SystemParams {
    /// The reference scenario: `m = 100`, `P_tot = 1000 W`, `alpha = 4`,
    /// `eps = 1e-4`, `theta = 1e-3`, `d_a = 0.5`, `gamma_T = 1`, with
    /// `omega = 0.1` and `w = 0.5`.
    pub fn baseline() -> Self {
        Self {
            m: 100,
            p_tot: 1000.0,
            omega: 0.1,
            eps_a: 1e-4,
            eps_b: 1e-4,
            theta_a: 1e-3,
            theta_b: 1e-3,
            geom: Geometry::new(0.5, 4.0).expect("valid geometry"),
            gamma_t_a: 1.0,
            gamma_t_b: 1.0,
            w: 0.5,
            hd_rate_blocklength: HdRateBlocklength::Half,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return domain(format!("packet length m must be >= 2, got {}", self.m));
        }
        if !(self.p_tot > 0.0 && self.p_tot.is_finite()) {
            return domain(format!("p_tot must be > 0, got {}", self.p_tot));
        }
        if !(0.0..=1.0).contains(&self.omega) {
            return domain(format!("omega must lie in [0, 1], got {}", self.omega));
        }
        if !(0.0..=1.0).contains(&self.w) {
            return domain(format!("w must lie in [0, 1], got {}", self.w));
        }
        for (name, eps) in [("eps_a", self.eps_a), ("eps_b", self.eps_b)] {
            if !(eps > 0.0 && eps <= 0.5) {
                return domain(format!("{name} must lie in (0, 0.5], got {eps}"));
            }
        }
        for (name, theta) in [("theta_a", self.theta_a), ("theta_b", self.theta_b)] {
            if !(theta > 0.0 && theta.is_finite()) {
                return domain(format!("{name} must be > 0, got {theta}"));
            }
        }
        for (name, g) in [("gamma_t_a", self.gamma_t_a), ("gamma_t_b", self.gamma_t_b)] {
            if !(g >= 0.0 && g.is_finite()) {
                return domain(format!("{name} must be >= 0, got {g}"));
            }
        }
        Ok(())
    }

    pub fn eps(&self, node: Node) -> f64 {
        match node {
            Node::A => self.eps_a,
            Node::B => self.eps_b,
        }
    }

    pub fn theta(&self, node: Node) -> f64 {
        match node {
            Node::A => self.theta_a,
            Node::B => self.theta_b,
        }
    }

    pub fn gamma_t(&self, node: Node) -> f64 {
        match node {
            Node::A => self.gamma_t_a,
            Node::B => self.gamma_t_b,
        }
    }

    pub fn weight(&self, node: Node) -> f64 {
        match node {
            Node::A => self.w,
            Node::B => 1.0 - self.w,
        }
    }
}

/// A split of the power budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerAllocation {
    pub p_r: f64,
    /// Power of each node, `(p_tot - p_r) / 2`.
    pub p_node: f64,
}

impl PowerAllocation {
    /// Gives the relay `p_r` and splits the rest evenly between the nodes.
    pub fn split(p_r: f64, p_tot: f64) -> Result<Self> {
        if !(p_r >= 0.0 && p_r < p_tot) {
            return domain(format!("relay power must lie in [0, {p_tot}), got {p_r}"));
        }
        Ok(Self { p_r, p_node: (p_tot - p_r) / 2.0 })
    }

    /// `P_tot / 3` to every terminal.
    pub fn equal(p_tot: f64) -> Self {
        let third = p_tot / 3.0;
        Self { p_r: third, p_node: (p_tot - third) / 2.0 }
    }
}

/// Half-duplex SNR at `node`.
#[inline]
pub fn snr_hd(alloc: PowerAllocation, s: ChannelSample, node: Node) -> f64 {
    let PowerAllocation { p_r, p_node: p } = alloc;
    let (own, other) = node.orient(s.h_a, s.h_b);
    let num = p * p_r * own * other;
    // Association mirrors `sinr_fd` so the two agree exactly at omega = 0.
    let relay_in = p * s.h_a + p * s.h_b;
    num / (p_r * own + (relay_in + 1.0))
}

/// Full-duplex SINR at `node` with a common residual self-interference
/// coefficient `omega`.
#[inline]
pub fn sinr_fd(alloc: PowerAllocation, omega: f64, s: ChannelSample, node: Node) -> f64 {
    let PowerAllocation { p_r, p_node: p } = alloc;
    let (own, other) = node.orient(s.h_a, s.h_b);
    let num = p * p_r * own * other;
    let relay_in = p * s.h_a + p * s.h_b + p_r * omega;
    num / (p_r * p_r * own * omega + p_r * own + (p * omega + 1.0) * (relay_in + 1.0))
}

/// SNR (HD) or SINR (FD) at `node`.
#[inline]
pub fn link_snr(
    mode: RelayMode,
    alloc: PowerAllocation,
    omega: f64,
    s: ChannelSample,
    node: Node,
) -> f64 {
    match mode {
        RelayMode::Hd => snr_hd(alloc, s, node),
        RelayMode::Fd => sinr_fd(alloc, omega, s, node),
    }
}

fn check_gains(h_a: f64, h_b: f64, p_tot: f64) -> Result<()> {
    if !(h_a > 0.0 && h_b > 0.0 && h_a.is_finite() && h_b.is_finite()) {
        return domain(format!("gains must be finite and > 0, got ({h_a}, {h_b})"));
    }
    if !(p_tot > 0.0 && p_tot.is_finite()) {
        return domain(format!("p_tot must be > 0, got {p_tot}"));
    }
    Ok(())
}

/// Relay power that maximizes the half-duplex SNR of `node` for fixed gains.
///
/// The textbook root `-(S - sqrt(T)) / (H_own - H_other)` has a removable
/// singularity at equal gains. Multiplying through by `S + sqrt(T)` gives
/// `P_tot * S / (S + sqrt(T))`, which is the same root without the
/// cancellation, with `S = (H_a + H_b) P_tot + 2` and
/// `T = 2 (H_own P_tot + 1) S`.
pub fn optimal_relay_power_hd(h_a: f64, h_b: f64, p_tot: f64, node: Node) -> Result<f64> {
    check_gains(h_a, h_b, p_tot)?;
    let (own, other) = node.orient(h_a, h_b);
    let s = own * p_tot + other * p_tot + 2.0;
    let t = 2.0 * (own * p_tot + 1.0) * s;
    Ok(p_tot * s / (s + t.sqrt()))
}

/// Relay power that maximizes the full-duplex SINR of `node`.
///
/// Setting the derivative to zero gives `D x^2 + 2 K x - P_tot K = 0` with
/// `K = S (omega P_tot + 2)` and
/// `D = (H_own - H_other)(omega P_tot + 2) + 2 omega (H_own P_tot + 1)`.
/// The maximizer is the root `(-K + sqrt(K^2 + D P_tot K)) / D`, evaluated
/// here in the rationalized form `P_tot K / (K + sqrt(K^2 + D P_tot K))`
/// which is regular at `D = 0` and reduces to the half-duplex optimum at
/// `omega = 0`.
pub fn optimal_relay_power_fd(
    h_a: f64,
    h_b: f64,
    p_tot: f64,
    omega: f64,
    node: Node,
) -> Result<f64> {
    check_gains(h_a, h_b, p_tot)?;
    if !(0.0..=1.0).contains(&omega) {
        return domain(format!("omega must lie in [0, 1], got {omega}"));
    }
    let (own, other) = node.orient(h_a, h_b);
    let s = own * p_tot + other * p_tot + 2.0;
    let op = omega * p_tot;
    let k = s * (op + 2.0);
    // K^2 + D P_tot K factors as 4 S (op + 2)(H_own P_tot + 1)(op + 1).
    let disc = 4.0 * (own * p_tot + 1.0) * (op + 1.0) * (op + 2.0) * s;
    Ok(p_tot * k / (k + disc.sqrt()))
}

/// Mode-dispatching form of the closed-form maximizers.
pub fn optimal_relay_power(
    mode: RelayMode,
    h_a: f64,
    h_b: f64,
    p_tot: f64,
    omega: f64,
    node: Node,
) -> Result<f64> {
    match mode {
        RelayMode::Hd => optimal_relay_power_hd(h_a, h_b, p_tot, node),
        RelayMode::Fd => optimal_relay_power_fd(h_a, h_b, p_tot, omega, node),
    }
}

/// Relay powers at which a node's half-duplex SNR crosses its threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdRoots {
    /// `lo <= hi`; the SNR is at or above the threshold on `[lo, hi]`.
    Roots { lo: f64, hi: f64 },
    /// The peak SNR stays below the threshold.
    NoSolution,
}

impl ThresholdRoots {
    pub fn contains(&self, p_r: f64) -> bool {
        match *self {
            ThresholdRoots::Roots { lo, hi } => lo <= p_r && p_r <= hi,
            ThresholdRoots::NoSolution => false,
        }
    }
}

/// Solves `snr_hd(p_r) = gamma_t` for `node`.
///
/// With `P = (P_tot - x) / 2` the condition is the quadratic
/// `H_a H_b x^2 + (gamma_t (H_own - H_other) - H_a H_b P_tot) x
///  + gamma_t ((H_a + H_b) P_tot + 2) = 0`, whose positive value at both
/// `x = 0` and `x = P_tot` keeps real roots inside `(0, P_tot)`.
pub fn threshold_roots_hd(
    h_a: f64,
    h_b: f64,
    p_tot: f64,
    gamma_t: f64,
    node: Node,
) -> Result<ThresholdRoots> {
    check_gains(h_a, h_b, p_tot)?;
    if !(gamma_t > 0.0 && gamma_t.is_finite()) {
        return domain(format!("threshold must be > 0, got {gamma_t}"));
    }
    let (own, other) = node.orient(h_a, h_b);
    let a = own * other;
    let b = gamma_t * (own - other) - a * p_tot;
    let c = gamma_t * ((own + other) * p_tot + 2.0);
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Ok(ThresholdRoots::NoSolution);
    }
    // b < 0 whenever a root exists (the vertex lies in (0, P_tot)), so
    // q = (-b + sqrt(disc)) / 2 avoids cancellation.
    let q = 0.5 * (-b + disc.sqrt());
    let (r1, r2) = (c / q, q / a);
    Ok(ThresholdRoots::Roots { lo: r1.min(r2), hi: r1.max(r2) })
}
