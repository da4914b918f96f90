//! Experiment configuration and its flat `key = value` file format.
//!
//! Layering, lowest first: built-in defaults, the config file, the baseline
//! reset of `--paper-defaults`, then individual command-line flags. Every
//! layer goes through [`ExperimentConfig::set`], so a key means the same
//! thing in a file and on the command line.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use relayec_core::numeric::{linspace, logspace};
use relayec_core::{Geometry, HdRateBlocklength, Method, RelayMode, SystemParams};

use crate::error::{CliError, Result};
use crate::table::Format;

/// Scenario parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Relay power at a fixed allocation; nothing is solved.
    PR,
    Omega,
    /// Error probability of both nodes.
    Eps,
    /// QoS exponent of both nodes.
    Theta,
    W,
    DA,
    PTot,
    /// SNR threshold of both nodes.
    GammaT,
}

impl Axis {
    const ALL: [Axis; 8] =
        [Axis::PR, Axis::Omega, Axis::Eps, Axis::Theta, Axis::W, Axis::DA, Axis::PTot, Axis::GammaT];

    pub fn name(self) -> &'static str {
        match self {
            Axis::PR => "p_r",
            Axis::Omega => "omega",
            Axis::Eps => "eps",
            Axis::Theta => "theta",
            Axis::W => "w",
            Axis::DA => "d_a",
            Axis::PTot => "p_tot",
            Axis::GammaT => "gamma_t",
        }
    }

    /// Grid used when none is given.
    pub fn default_grid(self, params: &SystemParams) -> Vec<f64> {
        match self {
            Axis::PR => linspace(params.p_tot * 1e-3, params.p_tot * 0.999, 999),
            Axis::Omega => linspace(0.0, 0.5, 11),
            Axis::Eps => logspace(-8.0, -2.0, 7),
            Axis::Theta => logspace(-4.0, -1.0, 7),
            Axis::W => linspace(0.0, 1.0, 21),
            Axis::DA => linspace(0.1, 0.9, 9),
            Axis::PTot => logspace(1.0, 4.0, 7),
            Axis::GammaT => logspace(-1.0, 3.0, 9),
        }
    }

    /// `params` with this axis set to `v`. Not meaningful for [`Axis::PR`],
    /// which is not a scenario constant.
    pub fn apply(self, params: &SystemParams, v: f64) -> Result<SystemParams> {
        let mut p = *params;
        match self {
            Axis::PR => {}
            Axis::Omega => p.omega = v,
            Axis::Eps => (p.eps_a, p.eps_b) = (v, v),
            Axis::Theta => (p.theta_a, p.theta_b) = (v, v),
            Axis::W => p.w = v,
            Axis::DA => p.geom = Geometry::new(v, p.geom.alpha())?,
            Axis::PTot => p.p_tot = v,
            Axis::GammaT => (p.gamma_t_a, p.gamma_t_b) = (v, v),
        }
        p.validate()?;
        Ok(p)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Axis::ALL.into_iter().find(|a| a.name() == key).ok_or_else(|| {
            let names: Vec<_> = Axis::ALL.iter().map(|a| a.name()).collect();
            CliError::config(format!("unknown sweep axis `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

/// Parses `a,b,c`, `lin:start:stop:n` or `log:start_exp:stop_exp:n`. The
/// result must be nonempty, finite and strictly increasing.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    let num = |t: &str| -> Result<f64> {
        t.trim().parse::<f64>().map_err(|_| CliError::config(format!("bad grid value `{t}`")))
    };
    let grid = if let Some(rest) = s.strip_prefix("lin:").or_else(|| s.strip_prefix("log:")) {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::config(format!("grid `{s}` must have the form lin:start:stop:n")));
        }
        let n: usize = parts[2].trim().parse().map_err(|_| CliError::config(format!("bad grid count `{}`", parts[2])))?;
        let (a, b) = (num(parts[0])?, num(parts[1])?);
        if s.starts_with("lin:") {
            linspace(a, b, n)
        } else {
            logspace(a, b, n)
        }
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>>>()?
    };
    if grid.is_empty() {
        return Err(CliError::config("grid is empty"));
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(CliError::config("grid values must be finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::config(format!("grid `{s}` is not strictly increasing")));
    }
    Ok(grid)
}

fn format_grid(grid: &[f64]) -> String {
    grid.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Everything a subcommand needs to run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub params: SystemParams,
    pub mode: RelayMode,
    /// Monte-Carlo sample count.
    pub samples: usize,
    pub seed: u64,
    pub method: Method,
    /// Sweep axis; figure subcommands have their own and only accept a
    /// matching value here.
    pub axis: Option<Axis>,
    /// Grid for the sweep axis; the axis default when absent.
    pub grid: Option<Vec<f64>>,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Timing repetitions for `bench`.
    pub repeats: usize,
    /// Add a wall-time column to solve tables. Off by default because
    /// timings break byte-identical reruns.
    pub wall_time: bool,
    /// Use gains from this CSV (`h_a,h_b`) instead of drawing them.
    pub samples_from: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            params: SystemParams::baseline(),
            mode: RelayMode::Hd,
            samples: 1000,
            seed: 7,
            method: Method::Exact,
            axis: None,
            grid: None,
            format: Format::Csv,
            out: None,
            repeats: 100,
            wall_time: false,
            samples_from: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| CliError::config(format!("`{key}`: cannot parse `{value}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(CliError::config(format!("`{key}`: expected true or false, got `{value}`"))),
    }
}

impl ExperimentConfig {
    /// Resets the scenario to the reference parameter set, keeping the run
    /// settings (mode, seed, output, ...).
    pub fn install_baseline(&mut self) {
        self.params = SystemParams::baseline();
        self.samples = 1000;
    }

    /// Sets one key. Keys are case-insensitive and `-` is read as `_`.
    /// `eps`, `theta` and `gamma_t` set both nodes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        let value = value.trim();
        let p = &mut self.params;
        match key.as_str() {
            "mode" => self.mode = value.parse()?,
            "samples" => self.samples = parse_num(&key, value)?,
            "seed" => self.seed = parse_num(&key, value)?,
            "method" => self.method = value.parse()?,
            "axis" => self.axis = Some(value.parse()?),
            "grid" => self.grid = Some(parse_grid(value)?),
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            "repeats" => self.repeats = parse_num(&key, value)?,
            "wall_time" => self.wall_time = parse_bool(&key, value)?,
            "samples_from" => self.samples_from = Some(PathBuf::from(value)),
            "m" => p.m = parse_num(&key, value)?,
            "p_tot" => p.p_tot = parse_num(&key, value)?,
            "omega" => p.omega = parse_num(&key, value)?,
            "w" => p.w = parse_num(&key, value)?,
            "eps" => (p.eps_a, p.eps_b) = (parse_num(&key, value)?, parse_num(&key, value)?),
            "eps_a" => p.eps_a = parse_num(&key, value)?,
            "eps_b" => p.eps_b = parse_num(&key, value)?,
            "theta" => (p.theta_a, p.theta_b) = (parse_num(&key, value)?, parse_num(&key, value)?),
            "theta_a" => p.theta_a = parse_num(&key, value)?,
            "theta_b" => p.theta_b = parse_num(&key, value)?,
            "gamma_t" => (p.gamma_t_a, p.gamma_t_b) = (parse_num(&key, value)?, parse_num(&key, value)?),
            "gamma_t_a" => p.gamma_t_a = parse_num(&key, value)?,
            "gamma_t_b" => p.gamma_t_b = parse_num(&key, value)?,
            "d_a" => p.geom = Geometry::new(parse_num(&key, value)?, p.geom.alpha())?,
            "alpha" => p.geom = Geometry::new(p.geom.d_a(), parse_num(&key, value)?)?,
            "hd_rate_blocklength" => p.hd_rate_blocklength = value.parse::<HdRateBlocklength>()?,
            _ => return Err(CliError::config(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Applies a config file on top of `self`. Blank lines, `#` / `;`
    /// comments and `[section]` headers are ignored; a key may appear once.
    pub fn apply_ini(&mut self, text: &str) -> Result<()> {
        let mut seen = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') || line.starts_with('[') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("line {}: expected `key = value`", i + 1)))?;
            let norm = key.trim().to_ascii_lowercase().replace('-', "_");
            if !seen.insert(norm.clone()) {
                return Err(CliError::config(format!("line {}: duplicate key `{norm}`", i + 1)));
            }
            self.set(key, value).map_err(|e| CliError::config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn from_ini(text: &str) -> Result<Self> {
        let mut c = Self::default();
        c.apply_ini(text)?;
        Ok(c)
    }

    /// Serializes every field. Floats use their shortest round-trip form,
    /// so `from_ini(to_ini(c)) == c`.
    pub fn to_ini(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let mut kv = |k: &str, v: &dyn fmt::Display| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("mode", &self.mode);
        kv("method", &self.method);
        kv("samples", &self.samples);
        kv("seed", &self.seed);
        kv("m", &p.m);
        kv("p_tot", &p.p_tot);
        kv("omega", &p.omega);
        kv("w", &p.w);
        kv("eps_a", &p.eps_a);
        kv("eps_b", &p.eps_b);
        kv("theta_a", &p.theta_a);
        kv("theta_b", &p.theta_b);
        kv("gamma_t_a", &p.gamma_t_a);
        kv("gamma_t_b", &p.gamma_t_b);
        kv("d_a", &p.geom.d_a());
        kv("alpha", &p.geom.alpha());
        kv("hd_rate_blocklength", &p.hd_rate_blocklength);
        if let Some(a) = self.axis {
            kv("axis", &a);
        }
        if let Some(g) = &self.grid {
            kv("grid", &format_grid(g));
        }
        kv("format", &self.format);
        kv("repeats", &self.repeats);
        kv("wall_time", &self.wall_time);
        if let Some(o) = &self.out {
            kv("out", &o.display());
        }
        if let Some(f) = &self.samples_from {
            kv("samples_from", &f.display());
        }
        s
    }

    /// Checks everything that does not depend on the subcommand.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.samples == 0 {
            return Err(CliError::config("samples must be >= 1"));
        }
        if self.repeats == 0 {
            return Err(CliError::config("repeats must be >= 1"));
        }
        if self.method == Method::EpsilonConstraint {
            return Err(CliError::config("method must be exact or approx; fig8 traces the epsilon-constraint frontier itself"));
        }
        if let (Some(axis), Some(grid)) = (self.axis, &self.grid) {
            if axis != Axis::PR {
                for &v in grid {
                    axis.apply(&self.params, v)
                        .map_err(|e| CliError::config(format!("grid value {v} for `{axis}`: {e}")))?;
                }
            }
        }
        Ok(())
    }

    /// The sweep to run when the subcommand's own axis is `native`. A
    /// different configured axis is an error.
    pub fn sweep_grid(&self, native: Axis) -> Result<Vec<f64>> {
        match self.axis {
            Some(a) if a != native => Err(CliError::config(format!(
                "this subcommand sweeps `{native}`, but the configuration asks for `{a}`"
            ))),
            _ => Ok(self.grid.clone().unwrap_or_else(|| native.default_grid(&self.params))),
        }
    }
}
