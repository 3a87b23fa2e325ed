//! Free-energy accounting for the transmitter's reservoirs.
//!
//! Everything here follows from the chemical potential of ideal solutions,
//! `mu = kT log(c_high / c_low)`: the free energy to move one solute
//! molecule from the low to the high reservoir. Creating the two reservoirs
//! from a well-mixed container at the average mole fraction `c` costs, in
//! the quasi-static limit,
//!
//! ```text
//! G = n kT ( m_low phi(c_low) + (1 - m_low) phi(c_high) - phi(c) )
//!   = n kT J(c_low, c_high, m_low)
//! ```
//!
//! where `m_low` is the fraction of all molecules sitting in the low
//! reservoir. [`creation_energy_quasistatic`] evaluates the same quantity as
//! the discrete sum over small moves whose Riemann limit is the closed form;
//! being a left-endpoint sum of an increasing integrand, it approaches the
//! closed form from below at rate `~1/steps`.
//!
//! Energies default to dimensionless multiples of `kT`; a joules-mode
//! [`EnergyContext`] scales by `k T` with CODATA `k`.

use crate::channel::ChannelParams;
use crate::math;
use crate::{Error, Result};

/// Boltzmann's constant, J/K (CODATA 2018 exact value).
pub const BOLTZMANN_K: f64 = 1.380_649e-23;

/// Default absolute temperature for joules mode, K.
pub const DEFAULT_TEMPERATURE: f64 = 298.15;

/// Default number of moves for the discretized quasi-static procedure;
/// enough for ~1e-4 relative accuracy at typical parameters.
pub const DEFAULT_QUASISTATIC_STEPS: u64 = 10_000;

/// Unit convention for returned energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyUnit {
    /// Dimensionless multiples of kT.
    KtUnits,
    /// Joules at the context temperature.
    Joules,
}

/// Per-bit or per-nat normalization of the Landauer energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandauerUnit {
    PerBit,
    PerNat,
}

/// Temperature and unit convention carried by every energy-valued result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyContext {
    temperature: f64,
    boltzmann_k: f64,
    unit: EnergyUnit,
}

impl EnergyContext {
    /// Dimensionless kT-units context (the default).
    pub fn kt_units() -> Self {
        Self {
            temperature: DEFAULT_TEMPERATURE,
            boltzmann_k: BOLTZMANN_K,
            unit: EnergyUnit::KtUnits,
        }
    }

    /// Joules at the given temperature.
    pub fn joules(temperature: f64) -> Result<Self> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(Error::OutOfDomain {
                name: "temperature",
                value: temperature,
                constraint: "T > 0",
            });
        }
        Ok(Self {
            temperature,
            boltzmann_k: BOLTZMANN_K,
            unit: EnergyUnit::Joules,
        })
    }

    #[inline]
    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    #[inline]
    pub fn unit(&self) -> EnergyUnit {
        self.unit
    }

    /// The energy of one kT in this context's unit: 1 in kT units, `k T`
    /// joules otherwise.
    #[inline]
    pub fn kt(&self) -> f64 {
        match self.unit {
            EnergyUnit::KtUnits => 1.0,
            EnergyUnit::Joules => self.boltzmann_k * self.temperature,
        }
    }
}

impl Default for EnergyContext {
    fn default() -> Self {
        Self::kt_units()
    }
}

/// Molecule budget and split between the two reservoirs.
///
/// `n` is the total molecule count (solute + solvent, both reservoirs) and
/// `m_low` the fraction of it held by the low reservoir, so
/// `n_low = m_low n` and `n_high = (1 - m_low) n`. The container average
/// mole fraction `c = m_low c_low + (1 - m_low) c_high` always lies between
/// `c_low` and `c_high`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirPlan {
    n: f64,
    m_low: f64,
    channel: ChannelParams,
}

impl ReservoirPlan {
    pub fn new(n: f64, m_low: f64, channel: ChannelParams) -> Result<Self> {
        if !(n >= 1.0) || !n.is_finite() {
            return Err(Error::OutOfDomain {
                name: "n",
                value: n,
                constraint: "n >= 1",
            });
        }
        if !(m_low > 0.0 && m_low < 1.0) {
            return Err(Error::OutOfDomain {
                name: "m_low",
                value: m_low,
                constraint: "0 < m_low < 1",
            });
        }
        Ok(Self { n, m_low, channel })
    }

    #[inline]
    pub fn n(&self) -> f64 {
        self.n
    }

    #[inline]
    pub fn m_low(&self) -> f64 {
        self.m_low
    }

    #[inline]
    pub fn channel(&self) -> &ChannelParams {
        &self.channel
    }

    /// Molecules in the low reservoir.
    #[inline]
    pub fn n_low(&self) -> f64 {
        self.m_low * self.n
    }

    /// Molecules in the high reservoir.
    #[inline]
    pub fn n_high(&self) -> f64 {
        (1.0 - self.m_low) * self.n
    }

    /// Average mole fraction across the whole container.
    #[inline]
    pub fn container_average(&self) -> f64 {
        self.m_low * self.channel.c_low() + (1.0 - self.m_low) * self.channel.c_high()
    }
}

/// Chemical potential from the low to the high reservoir,
/// `mu = kT log(c_high / c_low)`.
///
/// Positive when `c_low < c_high`; swapping the arguments negates it. Both
/// fractions must be strictly positive (no ordering is required, so the
/// reverse potential is expressible directly).
pub fn chemical_potential(ctx: &EnergyContext, c_low: f64, c_high: f64) -> Result<f64> {
    for (name, v) in [("c_low", c_low), ("c_high", c_high)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::OutOfDomain {
                name,
                value: v,
                constraint: "mole fraction > 0",
            });
        }
    }
    Ok(ctx.kt() * (c_high / c_low).ln())
}

/// The Landauer energy: the minimum free energy to erase one unit of
/// information. `kT log 2` per bit, `kT` per nat.
pub fn landauer_energy(ctx: &EnergyContext, unit: LandauerUnit) -> f64 {
    match unit {
        LandauerUnit::PerBit => ctx.kt() * std::f64::consts::LN_2,
        LandauerUnit::PerNat => ctx.kt(),
    }
}

/// Total solute molecules moved from low to high when creating the
/// reservoirs: `m = n_low (c - c_low) = n_high (c_high - c)`.
///
/// The differences are evaluated in exact product form
/// (`c - c_low = (1 - m_low)(c_high - c_low)`), and the two routes are
/// checked against each other to relative 1e-12.
pub fn molecules_moved(plan: &ReservoirPlan) -> f64 {
    let gap = plan.channel.gap();
    let via_low = plan.n_low() * ((1.0 - plan.m_low) * gap);
    let via_high = plan.n_high() * (plan.m_low * gap);
    debug_assert!(via_low >= 0.0);
    assert!(
        (via_low - via_high).abs() <= 1e-12 * via_low.abs().max(via_high.abs()),
        "the two expressions for the moved-molecule count disagree: {via_low} vs {via_high}"
    );
    via_low
}

/// Closed-form free energy to create the reservoirs from a well-mixed
/// container: `G = n kT J(c_low, c_high, m_low)`.
///
/// Nonnegative, and zero exactly when `c_low = c_high`.
pub fn creation_energy_closed(ctx: &EnergyContext, plan: &ReservoirPlan) -> f64 {
    let j = math::jensen_gap_raw(plan.channel.c_low(), plan.channel.c_high(), plan.m_low);
    plan.n * ctx.kt() * j
}

/// Free energy of the discretized quasi-static procedure: `steps` moves of
/// `m / steps` molecules each, the `j`th move costing
/// `dm kT log[(c + j dm / n_high) / (c - j dm / n_low)]`.
///
/// The first move is free (both reservoirs start at `c`, so `mu = 0`), the
/// sum underestimates [`creation_energy_closed`] for every finite `steps`,
/// and the gap closes at rate `~1/steps`. Summation is compensated
/// (Kahan), so the result is reproducible for a given `steps` value.
pub fn creation_energy_quasistatic(
    ctx: &EnergyContext,
    plan: &ReservoirPlan,
    steps: u64,
) -> Result<f64> {
    if steps == 0 {
        return Err(Error::OutOfDomain {
            name: "steps",
            value: 0.0,
            constraint: "steps >= 1",
        });
    }
    let moved_total = molecules_moved(plan);
    let dm = moved_total / steps as f64;
    let c = plan.container_average();
    let n_low = plan.n_low();
    let n_high = plan.n_high();

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for j in 0..steps {
        let moved = j as f64 * dm;
        let low_drop = moved / n_low;
        if c - low_drop <= 0.0 {
            return Err(Error::Infeasible {
                step: j,
                fraction: c - low_drop,
            });
        }
        // log[(c + j dm/n_high) / (c - j dm/n_low)] via ln_1p of the
        // relative shifts; exact 0 at j = 0.
        let term = (moved / (n_high * c)).ln_1p() - (-low_drop / c).ln_1p();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(ctx.kt() * dm * sum)
}
