//! Rayleigh flat-fading channel power gains with distance path loss.
//!
//! Node A sits at normalized distance `d_a` from the relay and node B at
//! `1 - d_a`. Each gain is `|h0|^2 * d^-alpha` with `h0 ~ CN(0, 1)`, so the
//! small-scale part is Exponential(1). It is drawn directly as `-ln U`.
//!
//! Stream algorithm: `ChaCha8Rng::seed_from_u64(seed)` with the stream
//! selector set to `stream`; each sample draws `U_a` then `U_b` as uniform
//! `f64` in `[0, 1)`. A draw of exactly `0` is replaced by
//! `f64::MIN_POSITIVE` so every gain stays finite and positive.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// One fading realization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSample {
    /// Power gain between node A and the relay.
    pub h_a: f64,
    /// Power gain between node B and the relay.
    pub h_b: f64,
}

/// Relay placement on the unit segment between the nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    d_a: f64,
    alpha: f64,
}

impl Geometry {
    pub fn new(d_a: f64, alpha: f64) -> Result<Self> {
        if !(d_a > 0.0 && d_a < 1.0) {
            return domain(format!("d_a must lie in (0, 1), got {d_a}"));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return domain(format!("path-loss exponent must be > 0, got {alpha}"));
        }
        Ok(Self { d_a, alpha })
    }

    pub fn d_a(&self) -> f64 {
        self.d_a
    }

    pub fn d_b(&self) -> f64 {
        1.0 - self.d_a
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Mean gains `(d_a^-alpha, d_b^-alpha)`.
    pub fn path_loss(&self) -> (f64, f64) {
        (self.d_a.powf(-self.alpha), self.d_b().powf(-self.alpha))
    }
}

fn exponential_draw(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.random();
    let u = if u == 0.0 { f64::MIN_POSITIVE } else { u };
    -u.ln()
}

/// Draws `n` independent samples from stream 0 of `seed`.
pub fn sample_channels(geom: Geometry, n: usize, seed: u64) -> Result<Vec<ChannelSample>> {
    sample_channels_stream(geom, n, seed, 0)
}

/// Draws `n` samples from an independent stream of `seed`, for workers that
/// need their own generator.
pub fn sample_channels_stream(
    geom: Geometry,
    n: usize,
    seed: u64,
    stream: u64,
) -> Result<Vec<ChannelSample>> {
    if n == 0 {
        return domain("sample count must be >= 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let (pl_a, pl_b) = geom.path_loss();
    let samples = (0..n)
        .map(|_| {
            let e_a = exponential_draw(&mut rng);
            let e_b = exponential_draw(&mut rng);
            ChannelSample { h_a: e_a * pl_a, h_b: e_b * pl_b }
        })
        .collect();
    Ok(samples)
}

/// Component-wise mean of the gains.
pub fn mean_gains(samples: &[ChannelSample]) -> Result<ChannelSample> {
    if samples.is_empty() {
        return domain("empty sample set");
    }
    let n = samples.len() as f64;
    let h_a = crate::numeric::pairwise_sum(samples.len(), |i| samples[i].h_a) / n;
    let h_b = crate::numeric::pairwise_sum(samples.len(), |i| samples[i].h_b) / n;
    Ok(ChannelSample { h_a, h_b })
}

/// Writes samples as CSV with header `h_a,h_b`. Floats use the shortest
/// representation that parses back to the same `f64`.
pub fn write_samples_csv(path: impl AsRef<Path>, samples: &[ChannelSample]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for s in samples {
        w.serialize(s)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_samples_csv(path: impl AsRef<Path>) -> Result<Vec<ChannelSample>> {
    let mut r = csv::Reader::from_path(path)?;
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["h_a", "h_b"] {
        return domain(format!("expected header `h_a,h_b`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")));
    }
    let mut out = Vec::new();
    for row in r.deserialize() {
        let s: ChannelSample = row?;
        if !(s.h_a > 0.0 && s.h_b > 0.0 && s.h_a.is_finite() && s.h_b.is_finite()) {
            return domain(format!("gains must be finite and > 0, got ({}, {})", s.h_a, s.h_b));
        }
        out.push(s);
    }
    if out.is_empty() {
        return domain("sample file has no rows");
    }
    Ok(out)
}
