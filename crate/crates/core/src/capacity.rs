//! Monte-Carlo effective capacity and the two scalarized objectives built
//! on it.
//!
//! For node `i` with per-sample rate `r_i`, the effective capacity is
//!
//! ```text
//! R_E,i = -1/(m theta_i) * ln E[ exp(-r_i * c * theta_i) (1 - eps_i) + eps_i ]
//! ```
//!
//! where `c = m/2` for a half-duplex relay and `c = m` for full duplex. The
//! expectation is the plain sample mean over the supplied channel samples.

use crate::channel::ChannelSample;
use crate::error::{domain, Result};
use crate::fbl::RateCurve;
use crate::link::{link_snr, HdRateBlocklength, Node, PowerAllocation, RelayMode, SystemParams};
use crate::numeric::{pairwise_sum, pairwise_sum_pair};

/// Effective capacities of both nodes at one allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcPoint {
    pub r_ea: f64,
    pub r_eb: f64,
    pub alloc: PowerAllocation,
}

impl EcPoint {
    pub fn get(&self, node: Node) -> f64 {
        match node {
            Node::A => self.r_ea,
            Node::B => self.r_eb,
        }
    }

    /// `w * R_EA + (1 - w) * R_EB`.
    pub fn weighted_sum(&self, w: f64) -> f64 {
        w * self.r_ea + (1.0 - w) * self.r_eb
    }
}

#[derive(Debug, Clone, Copy)]
struct NodeModel {
    curve: RateCurve,
    /// `c * theta`: multiplies the rate inside the exponential.
    exponent: f64,
    eps: f64,
    /// `1 / (m * theta)`.
    scale: f64,
}

impl NodeModel {
    #[inline]
    fn mgf_term(&self, rate: f64) -> f64 {
        (-rate * self.exponent).exp() * (1.0 - self.eps) + self.eps
    }
}

/// Everything about a scenario that does not depend on the allocation or
/// the channel draw, prepared once per solve.
#[derive(Debug, Clone, Copy)]
pub struct RateModel {
    mode: RelayMode,
    omega: f64,
    w: f64,
    nodes: [NodeModel; 2],
}

impl RateModel {
    pub fn new(mode: RelayMode, params: &SystemParams) -> Result<Self> {
        params.validate()?;
        let m = f64::from(params.m);
        let (rate_blocklength, exponent_uses) = match mode {
            RelayMode::Hd => {
                let bl = match params.hd_rate_blocklength {
                    HdRateBlocklength::Half => m / 2.0,
                    HdRateBlocklength::Full => m,
                };
                (bl, m / 2.0)
            }
            RelayMode::Fd => (m, m),
        };
        let node = |n: Node| -> Result<NodeModel> {
            Ok(NodeModel {
                curve: RateCurve::new(rate_blocklength, params.eps(n))?,
                exponent: exponent_uses * params.theta(n),
                eps: params.eps(n),
                scale: 1.0 / (m * params.theta(n)),
            })
        };
        Ok(Self { mode, omega: params.omega, w: params.w, nodes: [node(Node::A)?, node(Node::B)?] })
    }

    pub fn mode(&self) -> RelayMode {
        self.mode
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    /// Per-sample rates `(r_A, r_B)` in bits per channel use.
    #[inline]
    pub fn rates(&self, s: ChannelSample, alloc: PowerAllocation) -> (f64, f64) {
        let g_a = link_snr(self.mode, alloc, self.omega, s, Node::A);
        let g_b = link_snr(self.mode, alloc, self.omega, s, Node::B);
        (self.nodes[0].curve.rate(g_a), self.nodes[1].curve.rate(g_b))
    }

    /// Sample means of the moment-generating terms for both nodes.
    fn mgf_means(&self, samples: &[ChannelSample], alloc: PowerAllocation) -> (f64, f64) {
        let [na, nb] = self.nodes;
        let (sa, sb) = pairwise_sum_pair(samples.len(), |i| {
            let (ra, rb) = self.rates(samples[i], alloc);
            (na.mgf_term(ra), nb.mgf_term(rb))
        });
        let n = samples.len() as f64;
        (sa / n, sb / n)
    }

    pub fn ec_point(&self, samples: &[ChannelSample], alloc: PowerAllocation) -> EcPoint {
        let (ma, mb) = self.mgf_means(samples, alloc);
        EcPoint { r_ea: -self.nodes[0].scale * ma.ln(), r_eb: -self.nodes[1].scale * mb.ln(), alloc }
    }

    pub fn effective_capacity(
        &self,
        samples: &[ChannelSample],
        alloc: PowerAllocation,
        node: Node,
    ) -> f64 {
        let idx = match node {
            Node::A => 0,
            Node::B => 1,
        };
        let nm = self.nodes[idx];
        let sum = pairwise_sum(samples.len(), |i| {
            let g = link_snr(self.mode, alloc, self.omega, samples[i], node);
            nm.mgf_term(nm.curve.rate(g))
        });
        -nm.scale * (sum / samples.len() as f64).ln()
    }

    /// Effective capacity of `node` from precomputed per-sample rates.
    pub fn effective_capacity_from_rates(&self, rates: &[f64], node: Node) -> f64 {
        let nm = self.nodes[match node {
            Node::A => 0,
            Node::B => 1,
        }];
        let sum = pairwise_sum(rates.len(), |i| nm.mgf_term(rates[i]));
        -nm.scale * (sum / rates.len() as f64).ln()
    }

    /// Weighted objective `J`; minimizing it maximizes the weighted sum of
    /// effective capacities.
    pub fn weighted_objective(&self, samples: &[ChannelSample], alloc: PowerAllocation) -> f64 {
        let (ma, mb) = self.mgf_means(samples, alloc);
        self.w * self.nodes[0].scale * ma.ln() + (1.0 - self.w) * self.nodes[1].scale * mb.ln()
    }

    /// Min-max surrogate contribution of one sample:
    /// `-(w/2) r_A - ((1-w)/2) r_B`.
    #[inline]
    pub fn sample_surrogate(&self, s: ChannelSample, alloc: PowerAllocation) -> f64 {
        let (ra, rb) = self.rates(s, alloc);
        -0.5 * self.w * ra - 0.5 * (1.0 - self.w) * rb
    }

    /// Worst-sample surrogate `tau = max_k [-(w/2) r_A,k - ((1-w)/2) r_B,k]`.
    pub fn surrogate(&self, samples: &[ChannelSample], alloc: PowerAllocation) -> f64 {
        samples
            .iter()
            .map(|&s| self.sample_surrogate(s, alloc))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn nonempty(samples: &[ChannelSample]) -> Result<()> {
    if samples.is_empty() {
        return domain("effective capacity needs at least one channel sample");
    }
    Ok(())
}

/// Effective capacity of `node` in bits per channel use.
pub fn effective_capacity(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    alloc: PowerAllocation,
    node: Node,
) -> Result<f64> {
    nonempty(samples)?;
    Ok(RateModel::new(mode, params)?.effective_capacity(samples, alloc, node))
}

/// Effective capacity of `node` from per-sample rates (e.g. read back from
/// an export), bypassing the channel model.
pub fn effective_capacity_from_rates(
    mode: RelayMode,
    rates: &[f64],
    params: &SystemParams,
    node: Node,
) -> Result<f64> {
    if rates.is_empty() {
        return domain("effective capacity needs at least one rate");
    }
    Ok(RateModel::new(mode, params)?.effective_capacity_from_rates(rates, node))
}

/// Both effective capacities in one pass over the samples.
pub fn ec_point(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    alloc: PowerAllocation,
) -> Result<EcPoint> {
    nonempty(samples)?;
    Ok(RateModel::new(mode, params)?.ec_point(samples, alloc))
}

/// `J = -w R_EA - (1 - w) R_EB`, evaluated through the log-MGF terms.
pub fn weighted_objective_exact(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    alloc: PowerAllocation,
) -> Result<f64> {
    nonempty(samples)?;
    Ok(RateModel::new(mode, params)?.weighted_objective(samples, alloc))
}

/// Worst-sample min-max surrogate. Additive constants that do not move the
/// minimizer are dropped, so values are only comparable within one
/// parameter set.
pub fn surrogate_objective(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    alloc: PowerAllocation,
) -> Result<f64> {
    nonempty(samples)?;
    Ok(RateModel::new(mode, params)?.surrogate(samples, alloc))
}

/// Per-sample rates `(r_A, r_B)`, for export and cross-checking.
pub fn per_sample_rates(
    mode: RelayMode,
    samples: &[ChannelSample],
    params: &SystemParams,
    alloc: PowerAllocation,
) -> Result<Vec<(f64, f64)>> {
    nonempty(samples)?;
    let model = RateModel::new(mode, params)?;
    Ok(samples.iter().map(|&s| model.rates(s, alloc)).collect())
}
