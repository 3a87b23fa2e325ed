//! Energy per nat of communicable information, `G/I`.
//!
//! `G` is the free energy to create the reservoirs
//! ([`crate::thermo::creation_energy_closed`]) and `I` the total
//! information the transmitter can emit before a reservoir runs out, in the
//! small-mole-fraction measure. When the reservoir split matches the
//! codebook (`m_low = p_low`) the container average equals the codeword
//! average and the ratio collapses to the Landauer energy `kT` exactly.
//!
//! When `m_low != p_low` one reservoir empties first and strands the free
//! energy remaining in the other. With `J(x) = J(c_low, c_high, x)`:
//!
//! ```text
//! m_low < p_low (low runs out):   G/I = kT (p_low / m_low) J(m_low) / J(p_low)
//! m_low > p_low (high runs out):  G/I = kT ((1-p_low) / (1-m_low)) J(m_low) / J(p_low)
//! ```
//!
//! Both are ratios of the form `[J(m)/m] / [J(p)/p]` (resp. with `1 - x`
//! weights). Since `J(p)/p` is strictly decreasing and `J(p)/(1-p)`
//! strictly increasing in `p`, either mismatch forces `G/I > kT`: the
//! Landauer energy is an achievable minimum, attained exactly at
//! `m_low = p_low`. [`verify_theorem1`] and [`verify_monotonicity`] check
//! those statements numerically on dense grids and report structured
//! results instead of panicking.

use serde::Serialize;

use crate::channel::{ChannelParams, InputDist};
use crate::math;
use crate::thermo::{EnergyContext, ReservoirPlan};
use crate::{Error, Result};

/// Reservoir split and codebook are considered matched when
/// `|m_low - p_low|` is at most this. The matched formula is an algebraic
/// identity, not a numerical limit, so the tolerance is at rounding scale.
pub const MATCH_TOLERANCE: f64 = 1e-12;

/// Which reservoir (if any) empties first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Matched,
    LowRunsOut,
    HighRunsOut,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Matched => "matched",
            Regime::LowRunsOut => "low_runs_out",
            Regime::HighRunsOut => "high_runs_out",
        })
    }
}

/// Result of an energy-per-nat evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchReport {
    pub m_low: f64,
    pub p_low: f64,
    /// Energy per nat in the context unit (kT units by default).
    pub g_over_i: f64,
    pub regime: Regime,
    /// Molecules drawn before the limiting reservoir empties.
    pub usable_molecules: f64,
}

/// One `(m_low, p_low)` point of an efficiency sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub m_low: f64,
    pub p_low: f64,
    pub g_over_i_kt: f64,
    pub regime: Regime,
}

/// Molecules usable before the limiting reservoir runs out:
/// `min(n_low / p_low, n_high / (1 - p_low))`.
///
/// Equals `n` exactly when `m_low = p_low`; strictly less otherwise. A
/// deterministic input (`p_low` 0 or 1) never draws from one reservoir, so
/// the run-out accounting is undefined there.
pub fn usable_molecules(plan: &ReservoirPlan, input: &InputDist) -> Result<f64> {
    let p = input.p_low();
    if p == 0.0 || p == 1.0 {
        return Err(Error::ZeroInformation(
            "p_low is 0 or 1, so one symbol is never sent and its reservoir is never drawn from",
        ));
    }
    let m = plan.m_low();
    // m < p <=> n_low / p < n_high / (1 - p); picking the branch by the
    // split keeps the matched case exactly n.
    Ok(if p == m {
        plan.n()
    } else if m < p {
        plan.n_low() / p
    } else {
        plan.n_high() / (1.0 - p)
    })
}

/// Energy per nat `G/I` with the small-mole-fraction information measure.
///
/// Matched split returns the Landauer energy `kT` exactly; a mismatched
/// split pays the stranded-reservoir penalty and always exceeds it.
pub fn energy_per_nat(
    ctx: &EnergyContext,
    plan: &ReservoirPlan,
    input: &InputDist,
) -> Result<MatchReport> {
    let ch = plan.channel();
    if ch.is_degenerate() {
        return Err(Error::ZeroInformation(
            "c_low = c_high carries no information, so G/I is undefined",
        ));
    }
    let p = input.p_low();
    if p == 0.0 || p == 1.0 {
        return Err(Error::ZeroInformation(
            "a deterministic input carries no information, so G/I is undefined",
        ));
    }
    let m = plan.m_low();
    let usable = usable_molecules(plan, input)?;

    let (regime, ratio) = if (m - p).abs() <= MATCH_TOLERANCE {
        (Regime::Matched, 1.0)
    } else {
        let j_m = math::jensen_gap_raw(ch.c_low(), ch.c_high(), m);
        let j_p = math::jensen_gap_raw(ch.c_low(), ch.c_high(), p);
        if m < p {
            (Regime::LowRunsOut, (p / m) * (j_m / j_p))
        } else {
            (Regime::HighRunsOut, ((1.0 - p) / (1.0 - m)) * (j_m / j_p))
        }
    };

    Ok(MatchReport {
        m_low: m,
        p_low: p,
        g_over_i: ctx.kt() * ratio,
        regime,
        usable_molecules: usable,
    })
}

/// Energy per nat with the exact mutual-information measure:
/// `G / (n_used * I_exact)`.
///
/// Provided for comparison only. `G` is derived in the small-`c` measure,
/// so dividing by the (larger) exact information reports slightly below
/// `kT` even when matched; the Landauer identity is exact only when both
/// numerator and denominator use the same measure.
pub fn energy_per_nat_exact(
    ctx: &EnergyContext,
    plan: &ReservoirPlan,
    input: &InputDist,
) -> Result<f64> {
    let ch = plan.channel();
    if ch.is_degenerate() {
        return Err(Error::ZeroInformation(
            "c_low = c_high carries no information, so G/I is undefined",
        ));
    }
    let usable = usable_molecules(plan, input)?;
    let g = crate::thermo::creation_energy_closed(ctx, plan);
    let per_use = crate::channel::mutual_information(ch, input);
    Ok(g / (usable * per_use))
}

/// Outcome of a Theorem-1 sweep: locate the minimum of `G/I` over `p_low`
/// and check it is the Landauer energy at the matched point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub c_low: f64,
    pub c_high: f64,
    pub m_low: f64,
    pub grid_size: usize,
    pub tol: f64,
    /// Grid location of the minimum.
    pub argmin_p_low: f64,
    /// Minimum of `G/I` over the grid, in kT.
    pub min_g_over_i: f64,
    /// `|argmin - m_low|` is at most one grid cell.
    pub argmin_within_one_cell: bool,
    /// `|min - 1 kT|` is within `tol`.
    pub min_is_landauer: bool,
    /// `G/I > 1 kT` strictly at every grid point more than one cell from
    /// `m_low`.
    pub strictly_above_elsewhere: bool,
    /// Smallest `G/I - 1` (kT) among those far-from-matched points.
    pub worst_margin: f64,
    pub passed: bool,
}

/// Sweep `p_low` over a uniform open grid and verify the Landauer minimum.
///
/// Assertion failures land in the report, not in a panic; only domain
/// violations (degenerate channel, bad `m_low`, tiny grid) are errors.
pub fn verify_theorem1(
    ctx: &EnergyContext,
    channel: &ChannelParams,
    m_low: f64,
    grid_size: usize,
    tol: f64,
) -> Result<Theorem1Report> {
    if channel.is_degenerate() {
        return Err(Error::ZeroInformation(
            "c_low = c_high: no Theorem-1 instance exists for a degenerate channel",
        ));
    }
    if grid_size < 100 {
        return Err(Error::OutOfDomain {
            name: "grid_size",
            value: grid_size as f64,
            constraint: "grid_size >= 100",
        });
    }
    if !(m_low > 0.0 && m_low < 1.0) {
        return Err(Error::OutOfDomain {
            name: "m_low",
            value: m_low,
            constraint: "0 < m_low < 1",
        });
    }

    let plan = ReservoirPlan::new(1.0, m_low, *channel)?;
    let kt = ctx.kt();
    let cell = 1.0 / (grid_size as f64 + 1.0);

    let mut argmin = f64::NAN;
    let mut min_g = f64::INFINITY;
    let mut worst_margin = f64::INFINITY;
    let mut strictly_above = true;

    for i in 1..=grid_size {
        let p = i as f64 / (grid_size as f64 + 1.0);
        let report = energy_per_nat(ctx, &plan, &InputDist::new(p)?)?;
        let g = report.g_over_i / kt;
        if g < min_g {
            min_g = g;
            argmin = p;
        }
        if (p - m_low).abs() > cell {
            let margin = g - 1.0;
            worst_margin = worst_margin.min(margin);
            if margin <= 0.0 {
                strictly_above = false;
            }
        }
    }

    let argmin_within_one_cell = (argmin - m_low).abs() <= cell * (1.0 + 1e-12);
    let min_is_landauer = (min_g - 1.0).abs() <= tol;
    let passed = argmin_within_one_cell && min_is_landauer && strictly_above;

    Ok(Theorem1Report {
        c_low: channel.c_low(),
        c_high: channel.c_high(),
        m_low,
        grid_size,
        tol,
        argmin_p_low: argmin,
        min_g_over_i: min_g,
        argmin_within_one_cell,
        min_is_landauer,
        strictly_above_elsewhere: strictly_above,
        worst_margin,
        passed,
    })
}

/// Outcome of the finite-difference monotonicity check on the Jensen-gap
/// ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub c_low: f64,
    pub c_high: f64,
    pub grid_size: usize,
    /// `J/p_low` is strictly decreasing across the grid.
    pub ratio_low_decreasing: bool,
    /// `J/(1 - p_low)` is strictly increasing across the grid.
    pub ratio_high_increasing: bool,
    /// Largest successive difference of `J/p_low` (must be negative).
    pub worst_low_difference: f64,
    /// Smallest successive difference of `J/(1 - p_low)` (must be positive).
    pub worst_high_difference: f64,
    pub passed: bool,
}

/// Check, by finite differences on a uniform open grid, that `J/p_low`
/// strictly decreases and `J/(1 - p_low)` strictly increases in `p_low`.
pub fn verify_monotonicity(
    channel: &ChannelParams,
    grid_size: usize,
) -> Result<MonotonicityReport> {
    if channel.is_degenerate() {
        return Err(Error::ZeroInformation(
            "c_low = c_high: the Jensen-gap ratios vanish identically",
        ));
    }
    if grid_size < 2 {
        return Err(Error::OutOfDomain {
            name: "grid_size",
            value: grid_size as f64,
            constraint: "grid_size >= 2",
        });
    }

    let (cl, ch) = (channel.c_low(), channel.c_high());
    let mut worst_low = f64::NEG_INFINITY;
    let mut worst_high = f64::INFINITY;
    let mut prev: Option<(f64, f64)> = None;

    for i in 1..=grid_size {
        let p = i as f64 / (grid_size as f64 + 1.0);
        let j = math::jensen_gap_raw(cl, ch, p);
        let r_low = j / p;
        let r_high = j / (1.0 - p);
        if let Some((pl, ph)) = prev {
            worst_low = worst_low.max(r_low - pl);
            worst_high = worst_high.min(r_high - ph);
        }
        prev = Some((r_low, r_high));
    }

    let ratio_low_decreasing = worst_low < 0.0;
    let ratio_high_increasing = worst_high > 0.0;
    Ok(MonotonicityReport {
        c_low: cl,
        c_high: ch,
        grid_size,
        ratio_low_decreasing,
        ratio_high_increasing,
        worst_low_difference: worst_low,
        worst_high_difference: worst_high,
        passed: ratio_low_decreasing && ratio_high_increasing,
    })
}

/// Evaluate `G/I` over the cross product of reservoir splits and input
/// probabilities, in kT units.
///
/// Rows come back sorted by `(m_low, p_low)` regardless of input order, so
/// repeated runs with the same parameters emit identical tables.
pub fn sweep_g_over_i(
    ctx: &EnergyContext,
    channel: &ChannelParams,
    m_low_list: &[f64],
    p_low_grid: &[f64],
) -> Result<Vec<SweepRow>> {
    let kt = ctx.kt();
    let mut m_sorted = m_low_list.to_vec();
    let mut p_sorted = p_low_grid.to_vec();
    for &m in &m_sorted {
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::OutOfDomain {
                name: "m_low",
                value: m,
                constraint: "0 < m_low < 1",
            });
        }
    }
    for &p in &p_sorted {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::OutOfDomain {
                name: "p_low",
                value: p,
                constraint: "0 < p_low < 1 (sweep grids are open)",
            });
        }
    }
    m_sorted.sort_by(f64::total_cmp);
    p_sorted.sort_by(f64::total_cmp);

    let mut rows = Vec::with_capacity(m_sorted.len() * p_sorted.len());
    for &m in &m_sorted {
        let plan = ReservoirPlan::new(1.0, m, *channel)?;
        for &p in &p_sorted {
            let report = energy_per_nat(ctx, &plan, &InputDist::new(p)?)?;
            rows.push(SweepRow {
                m_low: m,
                p_low: p,
                g_over_i_kt: report.g_over_i / kt,
                regime: report.regime,
            });
        }
    }
    Ok(rows)
}
