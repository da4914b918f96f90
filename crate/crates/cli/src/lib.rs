//! `relayec`: experiment runner for effective-capacity power allocation.
//!
//! Each figure subcommand writes the data behind one plot as a CSV or JSON
//! table; `bench` times the exact and approximate solvers. See
//! `docs/columns.md` for the column contract.

pub mod config;
pub mod error;
pub mod experiments;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{Axis, ExperimentConfig};
pub use error::{CliError, Result};
pub use table::{emit_table, Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "relayec", version, about = "Effective capacity of two-way HD/FD relays: figure data and solver timing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Capacity vs relay power, half duplex, d_a in {0.1, 0.5, 0.8}.
    Fig2,
    /// Capacity vs relay power, full duplex, d_a = 0.1, omega in {0.1, 0.3, 0.5}.
    Fig3,
    /// Weighted capacity vs error probability, half duplex, three strategies.
    Fig4,
    /// Weighted capacity vs error probability, full duplex, omega in {0.01, 0.05, 0.1}.
    Fig5,
    /// Weighted capacity vs QoS exponent, half vs full duplex.
    Fig6,
    /// Weighted capacity vs priority weight, both modes, d_a in {0.1, 0.3, 0.5}.
    Fig7,
    /// Full-duplex Pareto frontiers, weighted sum and epsilon-constraint.
    Fig8,
    /// Wall time of the exact and approximate solvers.
    Bench,
    /// One-axis sweep in the configured mode (--axis, --grid).
    Sweep,
    /// Write the channel gains.
    Samples,
    /// Print the effective configuration.
    Config,
}

/// Flags shared by every subcommand. Values are passed through
/// [`ExperimentConfig::set`], so they are validated exactly like config
/// file entries.
#[derive(Debug, Default, clap::Args)]
pub struct Flags {
    /// Config file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Reset the scenario to the reference parameter set before applying flags.
    #[arg(long, global = true)]
    pub paper_defaults: bool,
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<String>,
    /// Monte-Carlo sample count.
    #[arg(long, global = true, value_name = "N")]
    pub samples: Option<String>,
    /// hd | fd
    #[arg(long, global = true, value_name = "MODE")]
    pub mode: Option<String>,
    /// Residual self-interference coefficient.
    #[arg(long, global = true, value_name = "X")]
    pub omega: Option<String>,
    /// Priority weight of node A.
    #[arg(long, global = true, value_name = "X")]
    pub w: Option<String>,
    /// Node-A-to-relay distance (d_b = 1 - d_a).
    #[arg(long = "d-a", global = true, value_name = "X")]
    pub d_a: Option<String>,
    /// Error probability of both nodes.
    #[arg(long, global = true, value_name = "X")]
    pub eps: Option<String>,
    /// QoS exponent of both nodes.
    #[arg(long, global = true, value_name = "X")]
    pub theta: Option<String>,
    /// SNR threshold of both nodes.
    #[arg(long, global = true, value_name = "X")]
    pub gamma_t: Option<String>,
    #[arg(long, global = true, value_name = "X")]
    pub p_tot: Option<String>,
    /// Packet length in channel uses.
    #[arg(long, global = true, value_name = "N")]
    pub m: Option<String>,
    /// Path-loss exponent.
    #[arg(long, global = true, value_name = "X")]
    pub alpha: Option<String>,
    /// Blocklength inside the half-duplex rate: m | m/2.
    #[arg(long, global = true, value_name = "B")]
    pub hd_rate_blocklength: Option<String>,
    /// exact | approx
    #[arg(long, global = true, value_name = "METHOD")]
    pub method: Option<String>,
    /// Sweep axis: p_r, omega, eps, theta, w, d_a, p_tot, gamma_t.
    #[arg(long, global = true, value_name = "AXIS")]
    pub axis: Option<String>,
    /// Grid: `a,b,c`, `lin:start:stop:n` or `log:start_exp:stop_exp:n`.
    #[arg(long, global = true, value_name = "GRID", allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Timing repetitions for `bench`.
    #[arg(long, global = true, value_name = "N")]
    pub repeats: Option<String>,
    /// Add a wall_time_ms column to solve tables.
    #[arg(long, global = true)]
    pub wall_time: bool,
    /// Read gains from a `h_a,h_b` CSV instead of drawing them.
    #[arg(long, global = true, value_name = "PATH")]
    pub samples_from: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// csv | json
    #[arg(long, global = true, value_name = "FORMAT")]
    pub format: Option<String>,
}

impl Flags {
    /// Builds the effective configuration: defaults, then the config file,
    /// then the baseline reset, then flags.
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            cfg.apply_ini(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        }
        if self.paper_defaults {
            cfg.install_baseline();
        }
        let pairs = [
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("mode", &self.mode),
            ("m", &self.m),
            ("p_tot", &self.p_tot),
            ("alpha", &self.alpha),
            ("d_a", &self.d_a),
            ("omega", &self.omega),
            ("w", &self.w),
            ("eps", &self.eps),
            ("theta", &self.theta),
            ("gamma_t", &self.gamma_t),
            ("hd_rate_blocklength", &self.hd_rate_blocklength),
            ("method", &self.method),
            ("axis", &self.axis),
            ("grid", &self.grid),
            ("repeats", &self.repeats),
            ("format", &self.format),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v).map_err(|e| CliError::config(format!("--{}: {e}", key.replace('_', "-"))))?;
            }
        }
        if self.wall_time {
            cfg.wall_time = true;
        }
        if let Some(p) = &self.samples_from {
            cfg.samples_from = Some(p.clone());
        }
        if let Some(p) = &self.out {
            cfg.out = Some(p.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Runs one subcommand against a resolved configuration.
pub fn execute(command: Command, cfg: &ExperimentConfig) -> Result<()> {
    let table = match command {
        Command::Fig2 => experiments::fig2(cfg)?,
        Command::Fig3 => experiments::fig3(cfg)?,
        Command::Fig4 => experiments::fig4(cfg)?,
        Command::Fig5 => experiments::fig5(cfg)?,
        Command::Fig6 => experiments::fig6(cfg)?,
        Command::Fig7 => experiments::fig7(cfg)?,
        Command::Fig8 => experiments::fig8(cfg)?,
        Command::Bench => experiments::run_bench(cfg, cfg.repeats)?,
        Command::Sweep => experiments::run_sweep(cfg)?,
        Command::Samples => experiments::samples_table(cfg)?,
        Command::Config => {
            let text = cfg.to_ini();
            return match &cfg.out {
                Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
                None => table::write_stdout(text.as_bytes()),
            };
        }
    };
    emit_table(&table, cfg.format, cfg.out.as_deref())
}

/// Parses `args` (program name first), runs, and returns the exit code:
/// 0 on success, 1 for usage or configuration errors, 2 for I/O errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match cli.flags.resolve().and_then(|cfg| execute(cli.command, &cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("relayec: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(args: &[&str]) -> Result<ExperimentConfig> {
        let cli = Cli::try_parse_from(["relayec"].iter().chain(args)).unwrap();
        cli.flags.resolve()
    }

    #[test]
    fn flags_override_file_and_baseline_overrides_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.ini");
        fs::write(&path, "d_a = 0.2\nomega = 0.3\nseed = 9\n").unwrap();
        let p = path.to_str().unwrap();

        let c = resolve(&["fig2", "--config", p]).unwrap();
        assert_eq!((c.params.geom.d_a(), c.params.omega, c.seed), (0.2, 0.3, 9));

        let c = resolve(&["fig2", "--config", p, "--omega", "0.05"]).unwrap();
        assert_eq!((c.params.geom.d_a(), c.params.omega), (0.2, 0.05));

        let c = resolve(&["fig2", "--config", p, "--paper-defaults"]).unwrap();
        assert_eq!(c.params, relayec_core::SystemParams::baseline());
        assert_eq!(c.seed, 9);

        let c = resolve(&["fig2", "--paper-defaults", "--d-a", "0.3"]).unwrap();
        assert_eq!(c.params.geom.d_a(), 0.3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["relayec", "fig2", "--omega", "2"]), 1);
        assert_eq!(run(["relayec", "fig2", "--mode", "xd"]), 1);
        assert_eq!(run(["relayec", "nope"]), 1);
        assert_eq!(run(["relayec", "fig2", "--config", "/nonexistent/relayec.ini"]), 2);
        assert_eq!(run(["relayec", "--help"]), 0);
    }

    #[test]
    fn negative_grid_values_parse() {
        let c = resolve(&["sweep", "--axis", "theta", "--grid", "log:-3:-1:3"]).unwrap();
        assert_eq!(c.grid.unwrap().len(), 3);
    }
}
