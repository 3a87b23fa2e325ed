//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime (visible under `cargo test --test acceptance -- --nocapture`;
//! the harness itself prints the per-criterion ok/FAILED verdict).
//!
//! Criteria with a stated runtime budget assert it; the workspace test
//! profile is optimized so the budgets hold under plain `cargo test`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mmc::channel::{self, ChannelParams, InputDist};
use mmc::efficiency::{self, Regime};
use mmc::math::{self, Probability};
use mmc::simulate::{self, DiscretePlan, Exhausted, SimMode};
use mmc::thermo::{self, EnergyContext, ReservoirPlan};

fn ctx() -> EnergyContext {
    EnergyContext::kt_units()
}

fn input(p: f64) -> InputDist {
    InputDist::new(p).unwrap()
}

fn prob(p: f64) -> Probability {
    Probability::new(p).unwrap()
}

fn finish(name: &str, start: Instant, budget_secs: Option<f64>) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("PASS {name} ({elapsed:.3} s)");
    if let Some(budget) = budget_secs {
        assert!(
            elapsed < budget,
            "{name} exceeded its {budget} s runtime budget ({elapsed:.3} s)"
        );
    }
}

/// Criterion 1: the Landauer energy is achieved exactly when the reservoir
/// split matches the codebook, for random small-c channels.
#[test]
fn acceptance_1_landauer_achievability() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1_000 {
        let c_high = 10f64.powf(rng.gen_range(-6.0..-2.0));
        let ratio = 10f64.powf(rng.gen_range(0.005..3.0));
        let c_low = c_high / ratio;
        let m: f64 = rng.gen_range(0.001..0.999);

        let plan = ReservoirPlan::new(1e6, m, ChannelParams::new(c_low, c_high).unwrap()).unwrap();
        let report = efficiency::energy_per_nat(&ctx(), &plan, &input(m)).unwrap();
        assert_eq!(report.regime, Regime::Matched);
        assert!(
            (report.g_over_i - 1.0).abs() <= 1e-12,
            "G/I = {} at ({c_low}, {c_high}, {m})",
            report.g_over_i
        );

        // The same ratio assembled from its two halves: creation energy
        // over total small-c information.
        let g = thermo::creation_energy_closed(&ctx(), &plan);
        let i = plan.n() * channel::mutual_information_small_c(plan.channel(), &input(m));
        assert!((g / i - 1.0).abs() <= 1e-12);
    }
    finish("criterion 1: Landauer achievability", start, Some(1.0));
}

/// Criterion 2: G/I strictly exceeds 1 kT for every mismatched tuple, and
/// the grid minimum sits within one cell of the matched point.
#[test]
fn acceptance_2_theorem1_lower_bound() {
    let start = Instant::now();

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut tested = 0usize;
    while tested < 10_000 {
        let c_low = 10f64.powf(rng.gen_range(-6.0..-0.6));
        let c_high = (c_low * 10f64.powf(rng.gen_range(0.005..3.0))).min(0.99);
        let m: f64 = rng.gen_range(0.01..0.99);
        let p: f64 = rng.gen_range(0.01..0.99);
        // Keep the mismatch numerically meaningful; m_L = p_L is
        // criterion 1's regime.
        if (m - p).abs() < 1e-6 {
            continue;
        }
        let plan = ReservoirPlan::new(1e6, m, ChannelParams::new(c_low, c_high).unwrap()).unwrap();
        let report = efficiency::energy_per_nat(&ctx(), &plan, &input(p)).unwrap();
        assert!(
            report.g_over_i > 1.0,
            "G/I = {} not above Landauer at ({c_low}, {c_high}, m={m}, p={p})",
            report.g_over_i
        );
        tested += 1;
    }

    let mut sets = 0usize;
    while sets < 20 {
        let c_low = 10f64.powf(rng.gen_range(-5.0..-0.8));
        let c_high = (c_low * 10f64.powf(rng.gen_range(0.02..2.0))).min(0.99);
        let m = rng.gen_range(0.05..0.95);
        let channel = ChannelParams::new(c_low, c_high).unwrap();
        let report = efficiency::verify_theorem1(&ctx(), &channel, m, 10_000, 1e-2).unwrap();
        assert!(
            report.argmin_within_one_cell,
            "argmin {} too far from m_low {m} at ({c_low}, {c_high})",
            report.argmin_p_low
        );
        assert!(report.strictly_above_elsewhere, "{report:?}");
        assert!(report.min_is_landauer, "{report:?}");
        sets += 1;
    }

    finish("criterion 2: Theorem 1 lower bound", start, Some(10.0));
}

/// Criterion 3: the G/I sweep reproduces the published curve family:
/// minimum 1 kT at p_low = m_low, monotone flanks, byte-stable CSV.
#[test]
fn acceptance_3_sweep_curve_family() {
    let start = Instant::now();
    let exe = env!("CARGO_BIN_EXE_mmc");
    let args = ["sweep", "--m-low", "0.2,0.4,0.5,0.6,0.8"];
    let run = |_: ()| {
        std::process::Command::new(exe)
            .args(args)
            .output()
            .expect("failed to run mmc sweep")
    };
    let first = run(());
    let second = run(());
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "sweep CSV is not byte-stable");

    let text = String::from_utf8(first.stdout).unwrap();
    let rows: Vec<(f64, f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut parts = l.split(',');
            (
                parts.next().unwrap().parse().unwrap(),
                parts.next().unwrap().parse().unwrap(),
                parts.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows.len(), 5 * 999);

    for m in [0.2, 0.4, 0.5, 0.6, 0.8] {
        let curve: Vec<&(f64, f64, f64)> = rows.iter().filter(|r| r.0 == m).collect();
        assert_eq!(curve.len(), 999);
        let (min_idx, min_row) = curve
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .2.total_cmp(&b.1 .2))
            .unwrap();
        assert_eq!(min_row.1, m, "minimum not at p_low = m_low for m = {m}");
        assert!(
            (min_row.2 - 1.0).abs() <= 1e-6,
            "minimum {} not 1 kT for m = {m}",
            min_row.2
        );
        for pair in curve[..=min_idx].windows(2) {
            assert!(
                pair[0].2 > pair[1].2,
                "left flank not decreasing at p = {} for m = {m}",
                pair[1].1
            );
        }
        for pair in curve[min_idx..].windows(2) {
            assert!(
                pair[0].2 < pair[1].2,
                "right flank not increasing at p = {} for m = {m}",
                pair[1].1
            );
        }
    }
    finish("criterion 3: sweep curve family", start, None);
}

/// Criterion 4: the discretized quasi-static energy converges to the
/// closed form at first order in 1/steps.
#[test]
fn acceptance_4_riemann_convergence() {
    let start = Instant::now();
    let plan = ReservoirPlan::new(1e6, 0.5, ChannelParams::new(0.01, 0.1).unwrap()).unwrap();
    let closed = thermo::creation_energy_closed(&ctx(), &plan);

    // Closed form against the high-precision oracle value, and against the
    // value quoted with the criterion at its own tolerance.
    assert!((closed - 21_368.109_576_588_896).abs() <= 1e-12 * closed);
    assert!((closed - 21_368.3).abs() / 21_368.3 <= 1e-3);

    let quasi = thermo::creation_energy_quasistatic(&ctx(), &plan, 100_000).unwrap();
    assert!((closed - quasi).abs() / closed <= 1e-3);

    // ~1/steps scaling across a decade.
    let err4 = closed - thermo::creation_energy_quasistatic(&ctx(), &plan, 10_000).unwrap();
    let err5 = closed - quasi;
    let scaling = err4 / err5;
    assert!(
        (8.0..=12.0).contains(&scaling),
        "error ratio across a decade of steps was {scaling}"
    );
    finish("criterion 4: Riemann convergence", start, Some(2.0));
}

/// Criterion 5: J/p_low strictly decreases and J/(1-p_low) strictly
/// increases across channels spanning three decades of c_high/c_low.
#[test]
fn acceptance_5_appendix_monotonicity() {
    let start = Instant::now();
    let ratios = [1.01, 1.05, 1.2, 1.5, 2.0, 5.0, 10.0, 50.0, 100.0, 400.0, 1000.0];
    let mut pairs = Vec::new();
    for &ratio in &ratios {
        pairs.push((1e-5, 1e-5 * ratio));
        pairs.push((0.3 / ratio, 0.3));
    }
    assert!(pairs.len() >= 20);
    for (c_low, c_high) in pairs {
        let channel = ChannelParams::new(c_low, c_high).unwrap();
        let report = efficiency::verify_monotonicity(&channel, 1_000).unwrap();
        assert!(
            report.passed,
            "monotonicity failed at ({c_low}, {c_high}): {report:?}"
        );
    }
    finish("criterion 5: Appendix monotonicity", start, None);
}

/// Criterion 6: the plug-in mutual information of large fixed-fraction
/// runs agrees with the analytic value within 3 standard errors.
#[test]
fn acceptance_6_monte_carlo_mi() {
    let start = Instant::now();
    let plan = DiscretePlan::new(1_000_000, 1_000, 1_000_000, 10_000).unwrap();
    let exact = channel::mutual_information(&ChannelParams::new(0.001, 0.01).unwrap(), &input(0.5));

    let estimates: Vec<f64> = (0..30)
        .map(|seed| {
            let rec = simulate::simulate_channel(
                &plan,
                &input(0.5),
                1_000_000,
                SimMode::FixedFraction,
                seed,
            )
            .unwrap();
            simulate::empirical_mutual_information(&rec)
        })
        .collect();

    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let var = estimates.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let se = (var / n).sqrt();
    assert!(
        (mean - exact).abs() <= 3.0 * se,
        "plug-in MI mean {mean:e} vs exact {exact:e}, 3 SE = {:e}",
        3.0 * se
    );
    finish("criterion 6: Monte Carlo MI consistency", start, Some(30.0));
}

/// Criterion 7: depleting runs exhaust the reservoir predicted by
/// sign(m_low - p_low), at the predicted mean time.
#[test]
fn acceptance_7_runout_accounting() {
    let start = Instant::now();
    // n_low = n_high = 1e4, so m_low = 0.5 and both mismatch directions
    // have |m_low - p_low| = 0.2.
    let plan = DiscretePlan::new(10_000, 100, 10_000, 1_000).unwrap();

    for (p_low, side, expected) in [
        (0.7, Exhausted::Low, 10_000.0 / 0.7),
        (0.3, Exhausted::High, 10_000.0 / 0.7),
    ] {
        let mut correct = 0u32;
        let mut times = Vec::with_capacity(100);
        for seed in 0..100 {
            let rec = simulate::simulate_channel(
                &plan,
                &input(p_low),
                u64::MAX,
                SimMode::Depleting,
                seed,
            )
            .unwrap();
            if rec.exhausted == side {
                correct += 1;
                times.push(rec.uses as f64);
            }
        }
        assert!(
            correct >= 95,
            "predicted side hit only {correct}/100 times at p_low = {p_low}"
        );
        let n = times.len() as f64;
        let mean = times.iter().sum::<f64>() / n;
        let var = times.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let se = (var / n).sqrt();
        assert!(
            (mean - expected).abs() <= 3.0 * se,
            "mean exhaustion time {mean} vs {expected} at p_low = {p_low} (3 SE = {:e})",
            3.0 * se
        );
    }
    finish("criterion 7: run-out accounting", start, Some(30.0));
}

/// Criterion 8: the small-c entropy approximation and information measure
/// behave as claimed in their regime.
#[test]
fn acceptance_8_small_c_regime() {
    let start = Instant::now();

    // |H(p) - (p - p log p)| <= 2 p^2 on a dense grid up to 1e-3.
    let mut p = 1e-9;
    let mut points = 0;
    while p <= 1e-3 {
        let h = math::binary_entropy(prob(p));
        let hs = math::binary_entropy_small(prob(p)).unwrap();
        assert!(
            (h - hs).abs() <= 2.0 * p * p,
            "entropy remainder exceeded 2p^2 at p = {p:e}"
        );
        points += 1;
        p *= 1.05;
    }
    assert!(points > 250);

    // Exact and small-c mutual information agree to 1e-2 relative when
    // c_high <= 1e-3.
    for (c_low, c_high) in [(1e-4, 1e-3), (5e-4, 1e-3), (1e-6, 1e-4), (1e-5, 5e-4)] {
        let channel = ChannelParams::new(c_low, c_high).unwrap();
        for i in 1..20 {
            let p_low = i as f64 / 20.0;
            let exact = channel::mutual_information(&channel, &input(p_low));
            let small = channel::mutual_information_small_c(&channel, &input(p_low));
            assert!(
                (exact - small).abs() <= 1e-2 * exact,
                "measures diverged at ({c_low}, {c_high}, {p_low}): {exact:e} vs {small:e}"
            );
        }
    }
    finish("criterion 8: small-c regime", start, None);
}
