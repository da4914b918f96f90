//! Finite-blocklength achievable rate (normal approximation).
//!
//! For a packet of `m` channel uses decoded with error probability `eps` at
//! linear SNR `gamma`, the maximal coding rate in bits per channel use is
//!
//! ```text
//! r = log2(1 + g) - sqrt(g (g + 2) / (m (g + 1)^2)) * Qinv(eps) * log2(e) + log2(m) / m
//! ```
//!
//! Rates are returned unclamped: for tiny `gamma` and strict `eps` the
//! dispersion penalty can push `r` below zero.

use std::f64::consts::{FRAC_1_SQRT_2, LOG2_E};

use crate::error::{domain, Result};

/// Gaussian tail probability `Q(x) = P[N(0,1) > x]`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

fn std_normal_pdf(x: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * (-0.5 * x * x).exp()
}

// Acklam's rational approximation of the standard normal lower-tail quantile.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.024_25;

/// Lower-tail quantile, valid for `0 < p <= 0.5`.
fn lower_quantile_approx(p: f64) -> f64 {
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Inverse of the Gaussian tail function: returns `x` with `Q(x) = p`.
///
/// A rational approximation seeds two Newton steps on `Q`, which brings the
/// relative error of `Q(x)` well under `1e-10` across `[1e-300, 1)`.
pub fn inverse_q(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return domain(format!("inverse_q needs 0 < p < 1, got {p}"));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        // 1 - p is exact here (Sterbenz), which makes the symmetry exact too.
        return inverse_q(1.0 - p).map(|x| -x);
    }
    // Q(x) = p  <=>  Phi(-x) = p
    let mut x = -lower_quantile_approx(p);
    for _ in 0..2 {
        let pdf = std_normal_pdf(x);
        if pdf == 0.0 {
            break;
        }
        x += (q_function(x) - p) / pdf;
    }
    Ok(x)
}

/// One operating point of the rate formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FblPoint {
    /// Linear SNR, `>= 0`.
    pub gamma: f64,
    /// Channel uses per packet, `>= 1`. Fractional values are allowed so a
    /// half-duplex hop can use `m / 2` for odd `m`.
    pub blocklength: f64,
    /// Packet error probability in `(0, 0.5]`.
    pub eps: f64,
}

impl FblPoint {
    pub fn new(gamma: f64, blocklength: f64, eps: f64) -> Result<Self> {
        let p = Self { gamma, blocklength, eps };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return domain(format!("gamma must be finite and >= 0, got {}", self.gamma));
        }
        if !(self.blocklength >= 1.0 && self.blocklength.is_finite()) {
            return domain(format!("blocklength must be >= 1, got {}", self.blocklength));
        }
        if !(self.eps > 0.0 && self.eps <= 0.5) {
            return domain(format!("eps must lie in (0, 0.5], got {}", self.eps));
        }
        Ok(())
    }
}

/// Precomputed form of the rate formula for a fixed `(m, eps)`.
///
/// `Q^-1(eps)` is the expensive part; hoisting it out lets the Monte-Carlo
/// loops evaluate a rate with one `log2`, one `sqrt` and one division.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateCurve {
    dispersion_scale: f64,
    offset: f64,
}

impl RateCurve {
    pub fn new(blocklength: f64, eps: f64) -> Result<Self> {
        FblPoint::new(0.0, blocklength, eps)?;
        let q_inv = inverse_q(eps)?;
        Ok(Self {
            dispersion_scale: q_inv * LOG2_E / blocklength.sqrt(),
            offset: blocklength.log2() / blocklength,
        })
    }

    #[inline]
    pub fn rate(&self, gamma: f64) -> f64 {
        let g1 = gamma + 1.0;
        let dispersion = (gamma * (gamma + 2.0)).sqrt() / g1;
        g1.log2() - self.dispersion_scale * dispersion + self.offset
    }
}

/// Achievable rate in bits per channel use at `p`.
pub fn fbl_rate(p: &FblPoint) -> Result<f64> {
    p.validate()?;
    Ok(RateCurve::new(p.blocklength, p.eps)?.rate(p.gamma))
}

/// Finite-difference shape of the rate curve around one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeFlags {
    pub increasing: bool,
    pub concave: bool,
}

/// Checks monotonicity and concavity of the rate in `gamma` by central
/// differences with spacing `step`.
///
/// The concavity test allows for rounding in the second difference: it
/// accepts values up to `64 * f64::EPSILON * max(|r|, 1) / step^2`.
pub fn lemma1_regime_check(p: &FblPoint, step: f64) -> Result<RegimeFlags> {
    if !(step > 0.0 && step.is_finite()) {
        return domain(format!("step must be > 0, got {step}"));
    }
    p.validate()?;
    if p.gamma - step < 0.0 {
        return domain(format!("gamma - step must stay >= 0 (gamma {}, step {step})", p.gamma));
    }
    let curve = RateCurve::new(p.blocklength, p.eps)?;
    let lo = curve.rate(p.gamma - step);
    let mid = curve.rate(p.gamma);
    let hi = curve.rate(p.gamma + step);
    let first = (hi - lo) / (2.0 * step);
    let second = (hi - 2.0 * mid + lo) / (step * step);
    let noise = 64.0 * f64::EPSILON * mid.abs().max(1.0) / (step * step);
    Ok(RegimeFlags { increasing: first > 0.0, concave: second <= noise })
}
