//! Effective-capacity power allocation for two-way amplify-and-forward relays.
//!
//! Two nodes exchange short packets through a relay that runs either
//! half-duplex (two slots per exchange) or full-duplex (one slot, with
//! residual self-interference). A fixed power budget is split between the
//! relay and the two nodes, `p_r + 2 * p_node = p_tot`, and the split is
//! chosen to maximize the effective capacity of both nodes under a
//! statistical delay constraint.
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`fbl`] | finite-blocklength normal-approximation rate and `Q^-1` |
//! | [`channel`] | seeded Rayleigh fading gains with path loss |
//! | [`link`] | per-sample SNR / SINR and closed-form maximizing relay powers |
//! | [`capacity`] | Monte-Carlo effective capacity, weighted and min-max objectives |
//! | [`solver`] | line search, exact / approximate solves, Pareto frontiers |

pub mod capacity;
pub mod channel;
mod error;
pub mod fbl;
pub mod link;
pub mod numeric;
pub mod solver;

pub use capacity::{EcPoint, RateModel};
pub use channel::{ChannelSample, Geometry};
pub use error::{Error, Result};
pub use fbl::FblPoint;
pub use link::{HdRateBlocklength, Node, PowerAllocation, RelayMode, SystemParams, ThresholdRoots};
pub use solver::{
    Method, ParetoFrontier, Silenced, SolveOptions, SolveReport,
};
