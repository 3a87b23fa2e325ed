//! Information and free-energy accounting for the minimal molecular
//! communication (MMC) channel.
//!
//! The MMC channel sends one bit per molecule: the transmitter holds two
//! solute reservoirs at mole fractions `c_low <= c_high`, the input symbol
//! selects which reservoir a molecule is drawn from, and the receiver
//! reports whether the drawn molecule is solute. Per use this is a binary
//! asymmetric channel with crossover probabilities `c_low` and `c_high`.
//!
//! The crate computes, in a consistent set of units (nats for information,
//! multiples of `kT` for energy):
//!
//! - mutual information per channel use, exact and in the small-mole-fraction
//!   approximation ([`channel`]);
//! - the chemical potential between the reservoirs, the Landauer energy, and
//!   the quasi-static free energy needed to create the reservoirs from a
//!   well-mixed container, both in closed form and as a discretized sequence
//!   of small moves ([`thermo`]);
//! - the energy spent per nat of communicable information, `G/I`, including
//!   the mismatched case where one reservoir runs out before the other and
//!   strands the remaining free energy ([`efficiency`]). The minimum is the
//!   Landauer energy `kT`, attained exactly when the reservoir split matches
//!   the codebook symbol frequencies;
//! - a finite-reservoir Monte Carlo simulator that checks the analytic
//!   accounting against molecule-by-molecule runs ([`simulate`]).
//!
//! The `mmc` binary (see [`cli`]) exposes all of the above as subcommands
//! with deterministic CSV/JSON output.

pub mod channel;
pub mod cli;
pub mod efficiency;
pub mod math;
pub mod simulate;
pub mod thermo;

pub use channel::{ChannelParams, InputDist, MiApprox};
pub use efficiency::{MatchReport, Regime, SweepRow};
pub use math::Probability;
pub use simulate::{DiscretePlan, Exhausted, SimMode, SimulationRecord};
pub use thermo::{EnergyContext, EnergyUnit, LandauerUnit, ReservoirPlan};

use thiserror::Error;

/// Error type for all domain and feasibility violations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter fell outside its documented domain.
    #[error("{name} = {value} violates {constraint}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// The requested quantity is undefined because the configuration
    /// carries no information (I = 0).
    #[error("zero information: {0}")]
    ZeroInformation(&'static str),

    /// A quasi-static move would drive the low reservoir to a non-positive
    /// mole fraction.
    #[error("quasi-static move {step} drives the low reservoir to mole fraction {fraction}")]
    Infeasible { step: u64, fraction: f64 },

    /// A simulation was started with an empty reservoir.
    #[error("the {which} reservoir is empty at the start of the simulation")]
    EmptyReservoir { which: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
