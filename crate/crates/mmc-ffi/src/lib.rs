//! C ABI for the mmc library.
//!
//! Scalar operations take plain doubles and write through out-pointers,
//! returning an [`MmcStatus`] code; simulations are held behind an opaque
//! handle with accessor functions and an explicit free. Energies are scaled
//! by a caller-supplied `kt` factor: pass 1.0 for dimensionless kT units or
//! `k * T` in joules for SI output.
//!
//! The header `include/mmc.h` is generated by cbindgen at build time.

use std::cell::RefCell;

use mmc::channel::{self, ChannelParams, InputDist, MiApprox};
use mmc::efficiency::{self, Regime};
use mmc::math::{self, Probability};
use mmc::simulate::{self, DiscretePlan, Exhausted, SimMode, SimulationRecord};
use mmc::thermo::{self, EnergyContext, LandauerUnit, ReservoirPlan};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmcStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter violated its documented domain.
    InvalidArgument = 2,
    /// The configuration carries no information, so the quantity is
    /// undefined.
    ZeroInformation = 3,
    /// The quasi-static procedure would drive a mole fraction negative.
    Infeasible = 4,
}

/// Which reservoir empties first for a given split and codebook.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmcRegime {
    Matched = 0,
    LowRunsOut = 1,
    HighRunsOut = 2,
}

impl From<Regime> for MmcRegime {
    fn from(r: Regime) -> Self {
        match r {
            Regime::Matched => MmcRegime::Matched,
            Regime::LowRunsOut => MmcRegime::LowRunsOut,
            Regime::HighRunsOut => MmcRegime::HighRunsOut,
        }
    }
}

/// Depletion handling for a simulation run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmcSimMode {
    Depleting = 0,
    FixedFraction = 1,
}

/// Which reservoir a simulation exhausted, if any.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmcExhausted {
    None = 0,
    Low = 1,
    High = 2,
}

/// Energy-per-nat result.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MmcMatchReport {
    pub m_low: f64,
    pub p_low: f64,
    /// Energy per nat in caller units (multiples of the `kt` argument).
    pub g_over_i: f64,
    pub regime: MmcRegime,
    /// Molecules drawn before the limiting reservoir empties.
    pub usable_molecules: f64,
}

/// Result of a Theorem-1 grid verification.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MmcTheorem1Report {
    pub argmin_p_low: f64,
    pub min_g_over_i: f64,
    pub argmin_within_one_cell: bool,
    pub min_is_landauer: bool,
    pub strictly_above_elsewhere: bool,
    pub worst_margin: f64,
    pub passed: bool,
}

/// Result of the Jensen-gap ratio monotonicity verification.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MmcMonotonicityReport {
    pub ratio_low_decreasing: bool,
    pub ratio_high_increasing: bool,
    pub worst_low_difference: f64,
    pub worst_high_difference: f64,
    pub passed: bool,
}

/// Opaque handle to a completed simulation run.
pub struct MmcSimulation {
    record: SimulationRecord,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_from(err: &mmc::Error) -> MmcStatus {
    set_error(err.to_string());
    match err {
        mmc::Error::OutOfDomain { .. } | mmc::Error::EmptyReservoir { .. } => {
            MmcStatus::InvalidArgument
        }
        mmc::Error::ZeroInformation(_) => MmcStatus::ZeroInformation,
        mmc::Error::Infeasible { .. } => MmcStatus::Infeasible,
    }
}

/// Copy the message of the most recent error on this thread into `buf`
/// (NUL-terminated, truncated to `cap` bytes) and return the full message
/// length. A zero return means no error has been recorded.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes, or be null (in which
/// case only the length is returned).
#[no_mangle]
pub unsafe extern "C" fn mmc_last_error_message(buf: *mut u8, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = msg.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

fn write_out(out: *mut f64, value: f64) -> MmcStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return MmcStatus::NullPointer;
    }
    unsafe { *out = value };
    MmcStatus::Ok
}

fn probability(name: &str, v: f64) -> Result<Probability, MmcStatus> {
    Probability::new(v).map_err(|_| {
        set_error(format!("{name} = {v} is outside [0, 1]"));
        MmcStatus::InvalidArgument
    })
}

fn make_channel(c_low: f64, c_high: f64) -> Result<ChannelParams, MmcStatus> {
    ChannelParams::new(c_low, c_high).map_err(|e| status_from(&e))
}

fn make_plan(n: f64, m_low: f64, c_low: f64, c_high: f64) -> Result<ReservoirPlan, MmcStatus> {
    let ch = make_channel(c_low, c_high)?;
    ReservoirPlan::new(n, m_low, ch).map_err(|e| status_from(&e))
}

fn make_input(p_low: f64) -> Result<InputDist, MmcStatus> {
    InputDist::new(p_low).map_err(|e| status_from(&e))
}

fn check_kt(kt: f64) -> Result<(), MmcStatus> {
    if kt > 0.0 && kt.is_finite() {
        Ok(())
    } else {
        set_error(format!("kt = {kt} must be a positive finite scale factor"));
        Err(MmcStatus::InvalidArgument)
    }
}

macro_rules! ffi_try {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Binary entropy `H(p)` in nats.
#[no_mangle]
pub extern "C" fn mmc_binary_entropy(p: f64, out: *mut f64) -> MmcStatus {
    let p = ffi_try!(probability("p", p));
    write_out(out, math::binary_entropy(p))
}

/// Small-p entropy approximation `p - p log p`; requires `p < 1`.
#[no_mangle]
pub extern "C" fn mmc_binary_entropy_small(p: f64, out: *mut f64) -> MmcStatus {
    let p = ffi_try!(probability("p", p));
    match math::binary_entropy_small(p) {
        Ok(v) => write_out(out, v),
        Err(e) => status_from(&e),
    }
}

/// Partial entropy `phi(p) = p log p`, with `phi(0) = 0`.
#[no_mangle]
pub extern "C" fn mmc_partial_entropy(p: f64, out: *mut f64) -> MmcStatus {
    let p = ffi_try!(probability("p", p));
    write_out(out, math::partial_entropy(p))
}

/// Jensen gap `J(c_low, c_high, p_low)` in nats.
#[no_mangle]
pub extern "C" fn mmc_jensen_gap(c_low: f64, c_high: f64, p_low: f64, out: *mut f64) -> MmcStatus {
    let cl = ffi_try!(probability("c_low", c_low));
    let ch = ffi_try!(probability("c_high", c_high));
    let pl = ffi_try!(probability("p_low", p_low));
    match math::jensen_gap(cl, ch, pl) {
        Ok(v) => write_out(out, v),
        Err(e) => status_from(&e),
    }
}

/// Transition probability `p(y | x)`; symbols are 0 or 1.
#[no_mangle]
pub extern "C" fn mmc_transition_prob(
    c_low: f64,
    c_high: f64,
    x: i32,
    y: i32,
    out: *mut f64,
) -> MmcStatus {
    let ch = ffi_try!(make_channel(c_low, c_high));
    if !(0..=1).contains(&x) || !(0..=1).contains(&y) {
        set_error(format!("symbols must be 0 or 1, got x = {x}, y = {y}"));
        return MmcStatus::InvalidArgument;
    }
    write_out(out, channel::transition_prob(&ch, x == 1, y == 1))
}

/// Output weight `w = p(y = 1)`.
#[no_mangle]
pub extern "C" fn mmc_output_weight(
    c_low: f64,
    c_high: f64,
    p_low: f64,
    out: *mut f64,
) -> MmcStatus {
    let ch = ffi_try!(make_channel(c_low, c_high));
    let input = ffi_try!(make_input(p_low));
    write_out(out, channel::output_weight(&ch, &input))
}

/// Exact mutual information per channel use, nats.
#[no_mangle]
pub extern "C" fn mmc_mutual_information(
    c_low: f64,
    c_high: f64,
    p_low: f64,
    out: *mut f64,
) -> MmcStatus {
    let ch = ffi_try!(make_channel(c_low, c_high));
    let input = ffi_try!(make_input(p_low));
    write_out(out, channel::mutual_information(&ch, &input))
}

/// Small-mole-fraction mutual information per channel use, nats.
#[no_mangle]
pub extern "C" fn mmc_mutual_information_small_c(
    c_low: f64,
    c_high: f64,
    p_low: f64,
    out: *mut f64,
) -> MmcStatus {
    let ch = ffi_try!(make_channel(c_low, c_high));
    let input = ffi_try!(make_input(p_low));
    write_out(out, channel::mutual_information_small_c(&ch, &input))
}

/// Capacity over the input distribution, located to `tol` in `p_low`.
#[no_mangle]
pub extern "C" fn mmc_capacity(
    c_low: f64,
    c_high: f64,
    use_small_c: bool,
    tol: f64,
    out_p_low: *mut f64,
    out_nats: *mut f64,
) -> MmcStatus {
    let ch = ffi_try!(make_channel(c_low, c_high));
    let approx = if use_small_c {
        MiApprox::SmallC
    } else {
        MiApprox::Exact
    };
    match channel::capacity(&ch, approx, tol) {
        Ok((p, c)) => {
            let s = write_out(out_p_low, p);
            if s != MmcStatus::Ok {
                return s;
            }
            write_out(out_nats, c)
        }
        Err(e) => status_from(&e),
    }
}

/// Chemical potential `kt * log(c_high / c_low)` from low to high.
#[no_mangle]
pub extern "C" fn mmc_chemical_potential(
    kt: f64,
    c_low: f64,
    c_high: f64,
    out: *mut f64,
) -> MmcStatus {
    ffi_try!(check_kt(kt));
    let ctx = EnergyContext::kt_units();
    match thermo::chemical_potential(&ctx, c_low, c_high) {
        Ok(v) => write_out(out, kt * v),
        Err(e) => status_from(&e),
    }
}

/// Landauer energy: `kt * log 2` per bit when `per_bit`, else `kt` per nat.
#[no_mangle]
pub extern "C" fn mmc_landauer_energy(kt: f64, per_bit: bool, out: *mut f64) -> MmcStatus {
    ffi_try!(check_kt(kt));
    let ctx = EnergyContext::kt_units();
    let unit = if per_bit {
        LandauerUnit::PerBit
    } else {
        LandauerUnit::PerNat
    };
    write_out(out, kt * thermo::landauer_energy(&ctx, unit))
}

/// Solute molecules moved when creating the reservoirs.
#[no_mangle]
pub extern "C" fn mmc_molecules_moved(
    n: f64,
    m_low: f64,
    c_low: f64,
    c_high: f64,
    out: *mut f64,
) -> MmcStatus {
    let plan = ffi_try!(make_plan(n, m_low, c_low, c_high));
    write_out(out, thermo::molecules_moved(&plan))
}

/// Closed-form reservoir creation energy `n * kt * J(c_low, c_high, m_low)`.
#[no_mangle]
pub extern "C" fn mmc_creation_energy_closed(
    kt: f64,
    n: f64,
    m_low: f64,
    c_low: f64,
    c_high: f64,
    out: *mut f64,
) -> MmcStatus {
    ffi_try!(check_kt(kt));
    let plan = ffi_try!(make_plan(n, m_low, c_low, c_high));
    let ctx = EnergyContext::kt_units();
    write_out(out, kt * thermo::creation_energy_closed(&ctx, &plan))
}

/// Discretized quasi-static creation energy with `steps` moves.
#[no_mangle]
pub extern "C" fn mmc_creation_energy_quasistatic(
    kt: f64,
    n: f64,
    m_low: f64,
    c_low: f64,
    c_high: f64,
    steps: u64,
    out: *mut f64,
) -> MmcStatus {
    ffi_try!(check_kt(kt));
    let plan = ffi_try!(make_plan(n, m_low, c_low, c_high));
    let ctx = EnergyContext::kt_units();
    match thermo::creation_energy_quasistatic(&ctx, &plan, steps) {
        Ok(v) => write_out(out, kt * v),
        Err(e) => status_from(&e),
    }
}

/// Molecules usable before the limiting reservoir runs out.
#[no_mangle]
pub extern "C" fn mmc_usable_molecules(
    n: f64,
    m_low: f64,
    c_low: f64,
    c_high: f64,
    p_low: f64,
    out: *mut f64,
) -> MmcStatus {
    let plan = ffi_try!(make_plan(n, m_low, c_low, c_high));
    let input = ffi_try!(make_input(p_low));
    match efficiency::usable_molecules(&plan, &input) {
        Ok(v) => write_out(out, v),
        Err(e) => status_from(&e),
    }
}

/// Energy per nat `G/I` in the small-mole-fraction measure.
///
/// # Safety
/// `out` must be null or point to a writable `MmcMatchReport`.
#[no_mangle]
pub unsafe extern "C" fn mmc_energy_per_nat(
    kt: f64,
    n: f64,
    m_low: f64,
    c_low: f64,
    c_high: f64,
    p_low: f64,
    out: *mut MmcMatchReport,
) -> MmcStatus {
    ffi_try!(check_kt(kt));
    let plan = ffi_try!(make_plan(n, m_low, c_low, c_high));
    let input = ffi_try!(make_input(p_low));
    if out.is_null() {
        set_error("output pointer is null");
        return MmcStatus::NullPointer;
    }
    let ctx = EnergyContext::kt_units();
    match efficiency::energy_per_nat(&ctx, &plan, &input) {
        Ok(r) => {
            *out = MmcMatchReport {
                m_low: r.m_low,
                p_low: r.p_low,
                g_over_i: kt * r.g_over_i,
                regime: r.regime.into(),
                usable_molecules: r.usable_molecules,
            };
            MmcStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Verify the Landauer minimum on a `grid_size`-point sweep of `p_low`.
///
/// # Safety
/// `out` must be null or point to a writable `MmcTheorem1Report`.
#[no_mangle]
pub unsafe extern "C" fn mmc_verify_theorem1(
    c_low: f64,
    c_high: f64,
    m_low: f64,
    grid_size: usize,
    tol: f64,
    out: *mut MmcTheorem1Report,
) -> MmcStatus {
    let ch = ffi_try!(make_channel(c_low, c_high));
    if out.is_null() {
        set_error("output pointer is null");
        return MmcStatus::NullPointer;
    }
    let ctx = EnergyContext::kt_units();
    match efficiency::verify_theorem1(&ctx, &ch, m_low, grid_size, tol) {
        Ok(r) => {
            *out = MmcTheorem1Report {
                argmin_p_low: r.argmin_p_low,
                min_g_over_i: r.min_g_over_i,
                argmin_within_one_cell: r.argmin_within_one_cell,
                min_is_landauer: r.min_is_landauer,
                strictly_above_elsewhere: r.strictly_above_elsewhere,
                worst_margin: r.worst_margin,
                passed: r.passed,
            };
            MmcStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Verify that `J/p_low` decreases and `J/(1 - p_low)` increases.
///
/// # Safety
/// `out` must be null or point to a writable `MmcMonotonicityReport`.
#[no_mangle]
pub unsafe extern "C" fn mmc_verify_monotonicity(
    c_low: f64,
    c_high: f64,
    grid_size: usize,
    out: *mut MmcMonotonicityReport,
) -> MmcStatus {
    let ch = ffi_try!(make_channel(c_low, c_high));
    if out.is_null() {
        set_error("output pointer is null");
        return MmcStatus::NullPointer;
    }
    match efficiency::verify_monotonicity(&ch, grid_size) {
        Ok(r) => {
            *out = MmcMonotonicityReport {
                ratio_low_decreasing: r.ratio_low_decreasing,
                ratio_high_increasing: r.ratio_high_increasing,
                worst_low_difference: r.worst_low_difference,
                worst_high_difference: r.worst_high_difference,
                passed: r.passed,
            };
            MmcStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Run a seeded simulation and return an owned handle through `out`.
///
/// Reservoir populations are explicit integer counts; `mode` is 0 for
/// depleting, 1 for fixed-fraction. Free the handle with
/// [`mmc_simulation_free`].
///
/// # Safety
/// `out` must point to a writable `MmcSimulation*`.
#[no_mangle]
pub unsafe extern "C" fn mmc_simulate(
    total_low: u64,
    solute_low: u64,
    total_high: u64,
    solute_high: u64,
    p_low: f64,
    max_uses: u64,
    mode: i32,
    seed: u64,
    out: *mut *mut MmcSimulation,
) -> MmcStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return MmcStatus::NullPointer;
    }
    let mode = match mode {
        0 => SimMode::Depleting,
        1 => SimMode::FixedFraction,
        other => {
            set_error(format!("mode = {other} is not a valid MmcSimMode"));
            return MmcStatus::InvalidArgument;
        }
    };
    let plan = match DiscretePlan::new(total_low, solute_low, total_high, solute_high) {
        Ok(p) => p,
        Err(e) => return status_from(&e),
    };
    let input = ffi_try!(make_input(p_low));
    match simulate::simulate_channel(&plan, &input, max_uses, mode, seed) {
        Ok(record) => {
            *out = Box::into_raw(Box::new(MmcSimulation { record }));
            MmcStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Channel uses completed; 0 for a null handle.
///
/// # Safety
/// `sim` must be null or a live handle from [`mmc_simulate`].
#[no_mangle]
pub unsafe extern "C" fn mmc_simulation_uses(sim: *const MmcSimulation) -> u64 {
    sim.as_ref().map_or(0, |s| s.record.uses)
}

/// Joint count of `(x, y)`; 0 for a null handle or out-of-range symbols.
///
/// # Safety
/// `sim` must be null or a live handle from [`mmc_simulate`].
#[no_mangle]
pub unsafe extern "C" fn mmc_simulation_joint_count(
    sim: *const MmcSimulation,
    x: i32,
    y: i32,
) -> u64 {
    match sim.as_ref() {
        Some(s) if (0..=1).contains(&x) && (0..=1).contains(&y) => {
            s.record.joint_counts[x as usize][y as usize]
        }
        _ => 0,
    }
}

/// Which reservoir was exhausted; `MmcExhausted_None` for a null handle.
///
/// # Safety
/// `sim` must be null or a live handle from [`mmc_simulate`].
#[no_mangle]
pub unsafe extern "C" fn mmc_simulation_exhausted(sim: *const MmcSimulation) -> MmcExhausted {
    match sim.as_ref().map(|s| s.record.exhausted) {
        Some(Exhausted::Low) => MmcExhausted::Low,
        Some(Exhausted::High) => MmcExhausted::High,
        _ => MmcExhausted::None,
    }
}

/// Mole fraction of the low reservoir as actually simulated.
///
/// # Safety
/// `sim` must be null or a live handle from [`mmc_simulate`].
#[no_mangle]
pub unsafe extern "C" fn mmc_simulation_realized_c_low(sim: *const MmcSimulation) -> f64 {
    sim.as_ref().map_or(f64::NAN, |s| s.record.realized_c_low)
}

/// Mole fraction of the high reservoir as actually simulated.
///
/// # Safety
/// `sim` must be null or a live handle from [`mmc_simulate`].
#[no_mangle]
pub unsafe extern "C" fn mmc_simulation_realized_c_high(sim: *const MmcSimulation) -> f64 {
    sim.as_ref().map_or(f64::NAN, |s| s.record.realized_c_high)
}

/// Plug-in mutual information of the recorded joint counts, nats.
///
/// # Safety
/// `sim` must be null or a live handle from [`mmc_simulate`].
#[no_mangle]
pub unsafe extern "C" fn mmc_simulation_empirical_mi(
    sim: *const MmcSimulation,
    out: *mut f64,
) -> MmcStatus {
    match sim.as_ref() {
        Some(s) => write_out(out, simulate::empirical_mutual_information(&s.record)),
        None => {
            set_error("simulation handle is null");
            MmcStatus::NullPointer
        }
    }
}

/// Release a handle returned by [`mmc_simulate`]. Null is a no-op.
///
/// # Safety
/// `sim` must be null or a live handle from [`mmc_simulate`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mmc_simulation_free(sim: *mut MmcSimulation) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}
