//! Molecule-by-molecule Monte Carlo simulation of the MMC system with
//! finite integer reservoirs.
//!
//! Each channel use selects a reservoir by the input symbol (low with
//! probability `p_low`), draws one molecule from it uniformly at random
//! ("selected independently of their identity"), and reports solute/solvent
//! as the output. The receiver consuming the molecule is modeled as the
//! decrement itself; no energy is charged for it.
//!
//! Two modes:
//!
//! - [`SimMode::Depleting`]: the literal protocol. Both counters of the
//!   selected reservoir shrink, the solute draw probability is the current
//!   `solute_remaining / total_remaining`, and the run stops the moment the
//!   just-used reservoir empties (that final molecule is still counted), so
//!   the expected uses at exhaustion is `n_low / p_low` when the low side
//!   runs out first, matching the analytic run-out accounting.
//! - [`SimMode::FixedFraction`]: draws at the constant initial fractions
//!   with no depletion, embodying the large-`n` approximation under which
//!   the per-use mutual information formula is derived.
//!
//! Initial solute counts are rounded from the requested mole fractions, and
//! the realized (quantized) fractions are reported back so comparisons use
//! what was actually simulated. Runs are fully determined by
//! `(plan, input, max_uses, mode, seed)`; the generator is ChaCha8, recorded
//! in the output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channel::InputDist;
use crate::thermo::ReservoirPlan;
use crate::{Error, Result};

/// Identifier of the random generator used by [`simulate_channel`].
pub const RNG_ALGORITHM: &str = "chacha8";

/// Integer population of one reservoir.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiscreteReservoirState {
    /// Molecules remaining, solute + solvent.
    pub total_remaining: u64,
    /// Solute molecules remaining; never exceeds `total_remaining`.
    pub solute_remaining: u64,
}

impl DiscreteReservoirState {
    fn new(total: u64, solute: u64) -> Result<Self> {
        if solute > total {
            return Err(Error::OutOfDomain {
                name: "solute_remaining",
                value: solute as f64,
                constraint: "solute_remaining <= total_remaining",
            });
        }
        Ok(Self {
            total_remaining: total,
            solute_remaining: solute,
        })
    }

    /// Current mole fraction; only defined while molecules remain.
    pub fn mole_fraction(&self) -> Option<f64> {
        (self.total_remaining > 0)
            .then(|| self.solute_remaining as f64 / self.total_remaining as f64)
    }
}

/// Integer-count simulation input: both reservoirs' initial populations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscretePlan {
    low: DiscreteReservoirState,
    high: DiscreteReservoirState,
}

impl DiscretePlan {
    /// Build from explicit counts. Zero solute is allowed (a solvent-only
    /// reservoir), empty reservoirs are not.
    pub fn new(
        total_low: u64,
        solute_low: u64,
        total_high: u64,
        solute_high: u64,
    ) -> Result<Self> {
        if total_low == 0 {
            return Err(Error::EmptyReservoir { which: "low" });
        }
        if total_high == 0 {
            return Err(Error::EmptyReservoir { which: "high" });
        }
        Ok(Self {
            low: DiscreteReservoirState::new(total_low, solute_low)?,
            high: DiscreteReservoirState::new(total_high, solute_high)?,
        })
    }

    /// Quantize a continuous plan: molecule counts and solute counts are
    /// rounded to the nearest integer.
    pub fn from_plan(plan: &ReservoirPlan) -> Result<Self> {
        let n_low = plan.n_low().round() as u64;
        let n_high = plan.n_high().round() as u64;
        let solute_low = (n_low as f64 * plan.channel().c_low()).round() as u64;
        let solute_high = (n_high as f64 * plan.channel().c_high()).round() as u64;
        Self::new(n_low, solute_low, n_high, solute_high)
    }

    pub fn low(&self) -> DiscreteReservoirState {
        self.low
    }

    pub fn high(&self) -> DiscreteReservoirState {
        self.high
    }

    /// Mole fraction of the low reservoir after quantization.
    pub fn realized_c_low(&self) -> f64 {
        self.low.solute_remaining as f64 / self.low.total_remaining as f64
    }

    /// Mole fraction of the high reservoir after quantization.
    pub fn realized_c_high(&self) -> f64 {
        self.high.solute_remaining as f64 / self.high.total_remaining as f64
    }
}

/// Depletion handling for a simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    /// Literal protocol: reservoirs shrink with every use.
    Depleting,
    /// Large-n approximation: constant draw probabilities, no depletion.
    FixedFraction,
}

/// Which reservoir ran out, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exhausted {
    Low,
    High,
    None,
}

/// Complete, reproducible outcome of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationRecord {
    /// Channel uses completed.
    pub uses: u64,
    /// Joint (x, y) counts; indices are the symbol values, so
    /// `joint_counts[0][1]` counts (x = 0, y = 1). Sums to `uses`.
    pub joint_counts: [[u64; 2]; 2],
    /// `Exhausted::None` only when the use budget ended the run first.
    pub exhausted: Exhausted,
    pub seed: u64,
    /// Generator identifier, for cross-implementation reproducibility.
    pub rng_algorithm: &'static str,
    pub mode: SimMode,
    /// Quantized mole fractions actually simulated.
    pub realized_c_low: f64,
    pub realized_c_high: f64,
    pub final_low: DiscreteReservoirState,
    pub final_high: DiscreteReservoirState,
}

/// Run the channel for up to `max_uses` uses.
///
/// Deterministic: identical `(plan, input, max_uses, mode, seed)` produce an
/// identical record.
pub fn simulate_channel(
    plan: &DiscretePlan,
    input: &InputDist,
    max_uses: u64,
    mode: SimMode,
    seed: u64,
) -> Result<SimulationRecord> {
    let p_low = input.p_low();
    let c_low = plan.realized_c_low();
    let c_high = plan.realized_c_high();
    let mut low = plan.low;
    let mut high = plan.high;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut joint = [[0u64; 2]; 2];
    let mut uses = 0u64;
    let mut exhausted = Exhausted::None;

    while uses < max_uses {
        let selects_low = rng.gen::<f64>() < p_low;
        let draw = rng.gen::<f64>();
        let (state, fixed_fraction, side) = if selects_low {
            (&mut low, c_low, Exhausted::Low)
        } else {
            (&mut high, c_high, Exhausted::High)
        };

        let is_solute = match mode {
            SimMode::FixedFraction => draw < fixed_fraction,
            SimMode::Depleting => {
                let frac = state.solute_remaining as f64 / state.total_remaining as f64;
                draw < frac
            }
        };

        joint[usize::from(!selects_low)][usize::from(is_solute)] += 1;
        uses += 1;

        if mode == SimMode::Depleting {
            state.total_remaining -= 1;
            if is_solute {
                state.solute_remaining -= 1;
            }
            if state.total_remaining == 0 {
                exhausted = side;
                break;
            }
        }
    }

    Ok(SimulationRecord {
        uses,
        joint_counts: joint,
        exhausted,
        seed,
        rng_algorithm: RNG_ALGORITHM,
        mode,
        realized_c_low: c_low,
        realized_c_high: c_high,
        final_low: low,
        final_high: high,
    })
}

/// Plug-in mutual information of the empirical joint distribution, in nats.
///
/// Empty cells follow the `0 log 0 = 0` convention; an empty record gives
/// 0. The plug-in estimator carries a positive bias of order
/// `(|X|-1)(|Y|-1) / (2 uses)` -- here `1 / (2 uses)` -- which vanishes as
/// the record grows.
pub fn empirical_mutual_information(rec: &SimulationRecord) -> f64 {
    if rec.uses == 0 {
        return 0.0;
    }
    let n = rec.uses as f64;
    let row = [
        rec.joint_counts[0][0] + rec.joint_counts[0][1],
        rec.joint_counts[1][0] + rec.joint_counts[1][1],
    ];
    let col = [
        rec.joint_counts[0][0] + rec.joint_counts[1][0],
        rec.joint_counts[0][1] + rec.joint_counts[1][1],
    ];
    let mut mi = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            let c = rec.joint_counts[x][y];
            if c > 0 {
                let ratio = (c as f64 * n) / (row[x] as f64 * col[y] as f64);
                mi += c as f64 / n * ratio.ln();
            }
        }
    }
    mi.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelParams;

    const PLUGIN_MI_TABLE: f64 = 0.368_064_207_168_497_07; // {45,5,5,45}/100

    fn input(p: f64) -> InputDist {
        InputDist::new(p).unwrap()
    }

    #[test]
    fn discrete_plan_validation() {
        assert!(DiscretePlan::new(0, 0, 100, 10).is_err());
        assert!(DiscretePlan::new(100, 10, 0, 0).is_err());
        assert!(DiscretePlan::new(100, 101, 100, 10).is_err());
        assert!(DiscretePlan::new(100, 0, 100, 100).is_ok());
    }

    #[test]
    fn quantization_reports_realized_fractions() {
        let plan =
            ReservoirPlan::new(1000.0, 0.5, ChannelParams::new(0.0101, 0.1003).unwrap()).unwrap();
        let d = DiscretePlan::from_plan(&plan).unwrap();
        // round(500 * 0.0101) = 5, round(500 * 0.1003) = 50.
        assert_eq!(d.low().solute_remaining, 5);
        assert_eq!(d.high().solute_remaining, 50);
        assert_eq!(d.realized_c_low(), 0.01);
        assert_eq!(d.realized_c_high(), 0.1);
    }

    #[test]
    fn identical_seeds_give_identical_records() {
        let d = DiscretePlan::new(10_000, 100, 10_000, 1_000).unwrap();
        let a = simulate_channel(&d, &input(0.5), 5_000, SimMode::Depleting, 42).unwrap();
        let b = simulate_channel(&d, &input(0.5), 5_000, SimMode::Depleting, 42).unwrap();
        assert_eq!(a, b);
        let c = simulate_channel(&d, &input(0.5), 5_000, SimMode::Depleting, 43).unwrap();
        assert_ne!(a, c);
        assert_eq!(a.rng_algorithm, "chacha8");
    }

    #[test]
    fn depletion_conserves_molecules() {
        let d = DiscretePlan::new(2_000, 20, 3_000, 300).unwrap();
        let rec = simulate_channel(&d, &input(0.4), 2_500, SimMode::Depleting, 7).unwrap();
        let initial: u64 = 2_000 + 3_000;
        let remaining = rec.final_low.total_remaining + rec.final_high.total_remaining;
        assert_eq!(initial - remaining, rec.uses);
        let counted: u64 = rec.joint_counts.iter().flatten().sum();
        assert_eq!(counted, rec.uses);
        assert!(rec.final_low.solute_remaining <= rec.final_low.total_remaining);
        assert!(rec.final_high.solute_remaining <= rec.final_high.total_remaining);
    }

    #[test]
    fn solvent_only_low_reservoir_never_reports_solute() {
        let d = DiscretePlan::new(1_000, 0, 1_000, 100).unwrap();
        let rec = simulate_channel(&d, &input(1.0), 500, SimMode::FixedFraction, 1).unwrap();
        assert_eq!(rec.uses, 500);
        assert_eq!(rec.joint_counts[0][1], 0);
        assert_eq!(rec.joint_counts[1][0] + rec.joint_counts[1][1], 0);
        assert_eq!(rec.exhausted, Exhausted::None);
    }

    #[test]
    fn fixed_fraction_never_depletes() {
        let d = DiscretePlan::new(10, 1, 10, 1).unwrap();
        let rec = simulate_channel(&d, &input(0.5), 10_000, SimMode::FixedFraction, 3).unwrap();
        assert_eq!(rec.uses, 10_000);
        assert_eq!(rec.final_low.total_remaining, 10);
        assert_eq!(rec.exhausted, Exhausted::None);
    }

    #[test]
    fn depleting_run_stops_at_the_emptied_reservoir() {
        let d = DiscretePlan::new(100, 1, 100_000, 1_000).unwrap();
        let rec = simulate_channel(&d, &input(0.9), u64::MAX, SimMode::Depleting, 11).unwrap();
        assert_eq!(rec.exhausted, Exhausted::Low);
        assert_eq!(rec.final_low.total_remaining, 0);
        // Exactly 100 low draws happened.
        assert_eq!(rec.joint_counts[0][0] + rec.joint_counts[0][1], 100);
    }

    #[test]
    fn plugin_mi_of_hand_table() {
        let rec = SimulationRecord {
            uses: 100,
            joint_counts: [[45, 5], [5, 45]],
            exhausted: Exhausted::None,
            seed: 0,
            rng_algorithm: RNG_ALGORITHM,
            mode: SimMode::FixedFraction,
            realized_c_low: 0.0,
            realized_c_high: 0.0,
            final_low: DiscreteReservoirState {
                total_remaining: 0,
                solute_remaining: 0,
            },
            final_high: DiscreteReservoirState {
                total_remaining: 0,
                solute_remaining: 0,
            },
        };
        let mi = empirical_mutual_information(&rec);
        assert!((mi - PLUGIN_MI_TABLE).abs() <= 1e-14);
    }

    #[test]
    fn plugin_mi_degenerate_tables() {
        let mut rec = SimulationRecord {
            uses: 100,
            joint_counts: [[100, 0], [0, 0]],
            exhausted: Exhausted::None,
            seed: 0,
            rng_algorithm: RNG_ALGORITHM,
            mode: SimMode::FixedFraction,
            realized_c_low: 0.0,
            realized_c_high: 0.0,
            final_low: DiscreteReservoirState {
                total_remaining: 0,
                solute_remaining: 0,
            },
            final_high: DiscreteReservoirState {
                total_remaining: 0,
                solute_remaining: 0,
            },
        };
        assert_eq!(empirical_mutual_information(&rec), 0.0);

        // Exact product of marginals: empirically independent.
        rec.joint_counts = [[45, 45], [5, 5]];
        assert_eq!(empirical_mutual_information(&rec), 0.0);

        rec.joint_counts = [[0, 0], [0, 0]];
        rec.uses = 0;
        assert_eq!(empirical_mutual_information(&rec), 0.0);
    }
}
