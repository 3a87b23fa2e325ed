//! Exercises the C ABI exactly as a foreign caller would: through the
//! exported symbols, raw pointers, and status codes.

use mmc_ffi::*;

fn entropy(p: f64) -> (MmcStatus, f64) {
    let mut out = f64::NAN;
    let status = mmc_binary_entropy(p, &mut out);
    (status, out)
}

#[test]
fn scalar_functions_round_trip() {
    let (status, h) = entropy(0.5);
    assert_eq!(status, MmcStatus::Ok);
    assert!((h - std::f64::consts::LN_2).abs() < 1e-15);

    let mut j = f64::NAN;
    assert_eq!(
        mmc_jensen_gap(0.01, 0.1, 0.5, &mut j),
        MmcStatus::Ok
    );
    assert!((j - 0.021_368_109_576_588_896).abs() < 1e-15);

    let mut mi = f64::NAN;
    assert_eq!(
        mmc_mutual_information(0.01, 0.1, 0.5, &mut mi),
        MmcStatus::Ok
    );
    assert!((mi - 0.022_439_943_439_616_46).abs() < 1e-15);

    let mut small = f64::NAN;
    assert_eq!(
        mmc_mutual_information_small_c(0.01, 0.1, 0.5, &mut small),
        MmcStatus::Ok
    );
    assert_eq!(small.to_bits(), j.to_bits());

    let mut w = f64::NAN;
    assert_eq!(mmc_output_weight(0.01, 0.1, 0.5, &mut w), MmcStatus::Ok);
    assert!((w - 0.055).abs() < 1e-15);

    let mut t = f64::NAN;
    assert_eq!(mmc_transition_prob(0.01, 0.1, 0, 1, &mut t), MmcStatus::Ok);
    assert_eq!(t, 0.01);
    assert_eq!(
        mmc_transition_prob(0.01, 0.1, 2, 0, &mut t),
        MmcStatus::InvalidArgument
    );
}

#[test]
fn domain_violations_report_invalid_argument() {
    let (status, _) = entropy(1.5);
    assert_eq!(status, MmcStatus::InvalidArgument);

    let mut out = f64::NAN;
    assert_eq!(
        mmc_jensen_gap(0.2, 0.1, 0.5, &mut out),
        MmcStatus::InvalidArgument
    );
    assert!(out.is_nan());

    // The message of the last error is retrievable.
    let mut buf = [0u8; 256];
    let len = unsafe { mmc_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(len > 0);
    let msg = std::str::from_utf8(&buf[..len.min(buf.len() - 1)]).unwrap();
    assert!(msg.contains("c_low"), "unexpected message: {msg}");
}

#[test]
fn null_out_pointer_is_caught() {
    assert_eq!(
        mmc_binary_entropy(0.5, std::ptr::null_mut()),
        MmcStatus::NullPointer
    );
}

#[test]
fn energy_functions_scale_with_kt() {
    let mut mu_kt = f64::NAN;
    let mut mu_j = f64::NAN;
    assert_eq!(
        mmc_chemical_potential(1.0, 0.01, 0.1, &mut mu_kt),
        MmcStatus::Ok
    );
    let kt_300 = 1.380_649e-23 * 300.0;
    assert_eq!(
        mmc_chemical_potential(kt_300, 0.01, 0.1, &mut mu_j),
        MmcStatus::Ok
    );
    assert!((mu_kt - 10f64.ln()).abs() < 1e-14);
    assert!((mu_j - mu_kt * kt_300).abs() < 1e-12 * mu_j.abs());

    let mut landauer = f64::NAN;
    assert_eq!(mmc_landauer_energy(1.0, false, &mut landauer), MmcStatus::Ok);
    assert_eq!(landauer, 1.0);
    assert_eq!(mmc_landauer_energy(1.0, true, &mut landauer), MmcStatus::Ok);
    assert!((landauer - std::f64::consts::LN_2).abs() < 1e-15);

    assert_eq!(
        mmc_landauer_energy(0.0, false, &mut landauer),
        MmcStatus::InvalidArgument
    );
}

#[test]
fn creation_energy_and_convergence() {
    let mut closed = f64::NAN;
    assert_eq!(
        mmc_creation_energy_closed(1.0, 1e6, 0.5, 0.01, 0.1, &mut closed),
        MmcStatus::Ok
    );
    assert!((closed - 21_368.109_576_588_896).abs() < 1e-8);

    let mut quasi = f64::NAN;
    assert_eq!(
        mmc_creation_energy_quasistatic(1.0, 1e6, 0.5, 0.01, 0.1, 100_000, &mut quasi),
        MmcStatus::Ok
    );
    assert!((closed - quasi) / closed <= 1e-3);
    assert!(quasi <= closed);

    let mut moved = f64::NAN;
    assert_eq!(
        mmc_molecules_moved(1e6, 0.5, 0.01, 0.1, &mut moved),
        MmcStatus::Ok
    );
    assert!((moved - 22_500.0).abs() < 1e-9);
}

#[test]
fn capacity_through_the_abi() {
    let mut p_star = f64::NAN;
    let mut cap = f64::NAN;
    assert_eq!(
        mmc_capacity(0.01, 0.1, false, 1e-8, &mut p_star, &mut cap),
        MmcStatus::Ok
    );
    assert!((p_star - 0.579_010_085_406_091_7).abs() < 1e-6);
    assert!((cap - 0.022_970_154_621_473_5).abs() < 1e-12);
}

#[test]
fn match_report_struct() {
    let mut report = MmcMatchReport {
        m_low: 0.0,
        p_low: 0.0,
        g_over_i: 0.0,
        regime: MmcRegime::Matched,
        usable_molecules: 0.0,
    };
    let status =
        unsafe { mmc_energy_per_nat(1.0, 1e6, 0.5, 0.01, 0.1, 0.5, &mut report) };
    assert_eq!(status, MmcStatus::Ok);
    assert_eq!(report.g_over_i, 1.0);
    assert_eq!(report.regime, MmcRegime::Matched);
    assert_eq!(report.usable_molecules, 1e6);

    let status =
        unsafe { mmc_energy_per_nat(1.0, 1e6, 0.5, 0.01, 0.1, 0.9, &mut report) };
    assert_eq!(status, MmcStatus::Ok);
    assert_eq!(report.regime, MmcRegime::LowRunsOut);
    assert!((report.g_over_i - 3.551_280_725_370_815_6).abs() < 1e-12);

    let status =
        unsafe { mmc_energy_per_nat(1.0, 1e6, 0.5, 0.05, 0.05, 0.5, &mut report) };
    assert_eq!(status, MmcStatus::ZeroInformation);
}

#[test]
fn verification_reports() {
    let mut t1 = MmcTheorem1Report {
        argmin_p_low: 0.0,
        min_g_over_i: 0.0,
        argmin_within_one_cell: false,
        min_is_landauer: false,
        strictly_above_elsewhere: false,
        worst_margin: 0.0,
        passed: false,
    };
    let status = unsafe { mmc_verify_theorem1(0.01, 0.1, 0.5, 2_000, 1e-3, &mut t1) };
    assert_eq!(status, MmcStatus::Ok);
    assert!(t1.passed);
    assert!((t1.argmin_p_low - 0.5).abs() <= 1.0 / 2_001.0 + 1e-12);

    let mut mono = MmcMonotonicityReport {
        ratio_low_decreasing: false,
        ratio_high_increasing: false,
        worst_low_difference: 0.0,
        worst_high_difference: 0.0,
        passed: false,
    };
    let status = unsafe { mmc_verify_monotonicity(0.01, 0.1, 1_000, &mut mono) };
    assert_eq!(status, MmcStatus::Ok);
    assert!(mono.passed);
    assert!(mono.worst_low_difference < 0.0);
    assert!(mono.worst_high_difference > 0.0);
}

#[test]
fn simulation_handle_lifecycle() {
    let mut handle: *mut MmcSimulation = std::ptr::null_mut();
    let status = unsafe {
        mmc_simulate(
            10_000, 100, 10_000, 1_000, 0.9, u64::MAX, 0, 42, &mut handle,
        )
    };
    assert_eq!(status, MmcStatus::Ok);
    assert!(!handle.is_null());

    unsafe {
        assert_eq!(mmc_simulation_exhausted(handle), MmcExhausted::Low);
        let uses = mmc_simulation_uses(handle);
        assert!(uses >= 10_000);
        let total: u64 = (0..2)
            .flat_map(|x| (0..2).map(move |y| (x, y)))
            .map(|(x, y)| mmc_simulation_joint_count(handle, x, y))
            .sum();
        assert_eq!(total, uses);
        assert_eq!(mmc_simulation_realized_c_low(handle), 0.01);
        assert_eq!(mmc_simulation_realized_c_high(handle), 0.1);

        let mut mi = f64::NAN;
        assert_eq!(mmc_simulation_empirical_mi(handle, &mut mi), MmcStatus::Ok);
        assert!(mi >= 0.0);

        // Same seed, same outcome.
        let mut second: *mut MmcSimulation = std::ptr::null_mut();
        let status = mmc_simulate(
            10_000, 100, 10_000, 1_000, 0.9, u64::MAX, 0, 42, &mut second,
        );
        assert_eq!(status, MmcStatus::Ok);
        assert_eq!(mmc_simulation_uses(second), uses);
        mmc_simulation_free(second);

        mmc_simulation_free(handle);
    }
}

#[test]
fn simulation_invalid_inputs() {
    let mut handle: *mut MmcSimulation = std::ptr::null_mut();
    let status =
        unsafe { mmc_simulate(0, 0, 100, 10, 0.5, 100, 0, 1, &mut handle) };
    assert_eq!(status, MmcStatus::InvalidArgument);
    assert!(handle.is_null());

    let status =
        unsafe { mmc_simulate(100, 10, 100, 10, 0.5, 100, 7, 1, &mut handle) };
    assert_eq!(status, MmcStatus::InvalidArgument);

    unsafe {
        assert_eq!(mmc_simulation_uses(std::ptr::null()), 0);
        assert_eq!(
            mmc_simulation_exhausted(std::ptr::null()),
            MmcExhausted::None
        );
        let mut mi = f64::NAN;
        assert_eq!(
            mmc_simulation_empirical_mi(std::ptr::null(), &mut mi),
            MmcStatus::NullPointer
        );
        mmc_simulation_free(std::ptr::null_mut());
    }
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/mmc.h"
    ))
    .expect("cbindgen header should exist after build");
    for symbol in [
        "mmc_binary_entropy",
        "mmc_jensen_gap",
        "mmc_mutual_information",
        "mmc_capacity",
        "mmc_chemical_potential",
        "mmc_landauer_energy",
        "mmc_creation_energy_quasistatic",
        "mmc_energy_per_nat",
        "mmc_verify_theorem1",
        "mmc_simulate",
        "mmc_simulation_free",
        "MMC_STATUS_ZERO_INFORMATION",
        "typedef struct MmcSimulation MmcSimulation",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}
