/* C interface to the mmc library. Generated by cbindgen; do not edit. */

#ifndef MMC_H
#define MMC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which reservoir a simulation exhausted, if any.
 */
typedef enum MmcExhausted {
  MMC_EXHAUSTED_NONE = 0,
  MMC_EXHAUSTED_LOW = 1,
  MMC_EXHAUSTED_HIGH = 2,
} MmcExhausted;

/**
 * Which reservoir empties first for a given split and codebook.
 */
typedef enum MmcRegime {
  MMC_REGIME_MATCHED = 0,
  MMC_REGIME_LOW_RUNS_OUT = 1,
  MMC_REGIME_HIGH_RUNS_OUT = 2,
} MmcRegime;

/**
 * Depletion handling for a simulation run.
 */
typedef enum MmcSimMode {
  MMC_SIM_MODE_DEPLETING = 0,
  MMC_SIM_MODE_FIXED_FRACTION = 1,
} MmcSimMode;

/**
 * Status code returned by every fallible function.
 */
typedef enum MmcStatus {
  MMC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MMC_STATUS_NULL_POINTER = 1,
  /**
   * A parameter violated its documented domain.
   */
  MMC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The configuration carries no information, so the quantity is
   * undefined.
   */
  MMC_STATUS_ZERO_INFORMATION = 3,
  /**
   * The quasi-static procedure would drive a mole fraction negative.
   */
  MMC_STATUS_INFEASIBLE = 4,
} MmcStatus;

/**
 * Opaque handle to a completed simulation run.
 */
typedef struct MmcSimulation MmcSimulation;

/**
 * Energy-per-nat result.
 */
typedef struct MmcMatchReport {
  double m_low;
  double p_low;
  /**
   * Energy per nat in caller units (multiples of the `kt` argument).
   */
  double g_over_i;
  enum MmcRegime regime;
  /**
   * Molecules drawn before the limiting reservoir empties.
   */
  double usable_molecules;
} MmcMatchReport;

/**
 * Result of a Theorem-1 grid verification.
 */
typedef struct MmcTheorem1Report {
  double argmin_p_low;
  double min_g_over_i;
  bool argmin_within_one_cell;
  bool min_is_landauer;
  bool strictly_above_elsewhere;
  double worst_margin;
  bool passed;
} MmcTheorem1Report;

/**
 * Result of the Jensen-gap ratio monotonicity verification.
 */
typedef struct MmcMonotonicityReport {
  bool ratio_low_decreasing;
  bool ratio_high_increasing;
  double worst_low_difference;
  double worst_high_difference;
  bool passed;
} MmcMonotonicityReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the message of the most recent error on this thread into `buf`
 * (NUL-terminated, truncated to `cap` bytes) and return the full message
 * length. A zero return means no error has been recorded.
 *
 * # Safety
 * `buf` must point to at least `cap` writable bytes, or be null (in which
 * case only the length is returned).
 */
size_t mmc_last_error_message(uint8_t *buf, size_t cap);

/**
 * Binary entropy `H(p)` in nats.
 */
enum MmcStatus mmc_binary_entropy(double p, double *out);

/**
 * Small-p entropy approximation `p - p log p`; requires `p < 1`.
 */
enum MmcStatus mmc_binary_entropy_small(double p, double *out);

/**
 * Partial entropy `phi(p) = p log p`, with `phi(0) = 0`.
 */
enum MmcStatus mmc_partial_entropy(double p, double *out);

/**
 * Jensen gap `J(c_low, c_high, p_low)` in nats.
 */
enum MmcStatus mmc_jensen_gap(double c_low, double c_high, double p_low, double *out);

/**
 * Transition probability `p(y | x)`; symbols are 0 or 1.
 */
enum MmcStatus mmc_transition_prob(double c_low, double c_high, int32_t x, int32_t y, double *out);

/**
 * Output weight `w = p(y = 1)`.
 */
enum MmcStatus mmc_output_weight(double c_low, double c_high, double p_low, double *out);

/**
 * Exact mutual information per channel use, nats.
 */
enum MmcStatus mmc_mutual_information(double c_low, double c_high, double p_low, double *out);

/**
 * Small-mole-fraction mutual information per channel use, nats.
 */
enum MmcStatus mmc_mutual_information_small_c(double c_low,
                                              double c_high,
                                              double p_low,
                                              double *out);

/**
 * Capacity over the input distribution, located to `tol` in `p_low`.
 */
enum MmcStatus mmc_capacity(double c_low,
                            double c_high,
                            bool use_small_c,
                            double tol,
                            double *out_p_low,
                            double *out_nats);

/**
 * Chemical potential `kt * log(c_high / c_low)` from low to high.
 */
enum MmcStatus mmc_chemical_potential(double kt, double c_low, double c_high, double *out);

/**
 * Landauer energy: `kt * log 2` per bit when `per_bit`, else `kt` per nat.
 */
enum MmcStatus mmc_landauer_energy(double kt, bool per_bit, double *out);

/**
 * Solute molecules moved when creating the reservoirs.
 */
enum MmcStatus mmc_molecules_moved(double n,
                                   double m_low,
                                   double c_low,
                                   double c_high,
                                   double *out);

/**
 * Closed-form reservoir creation energy `n * kt * J(c_low, c_high, m_low)`.
 */
enum MmcStatus mmc_creation_energy_closed(double kt,
                                          double n,
                                          double m_low,
                                          double c_low,
                                          double c_high,
                                          double *out);

/**
 * Discretized quasi-static creation energy with `steps` moves.
 */
enum MmcStatus mmc_creation_energy_quasistatic(double kt,
                                               double n,
                                               double m_low,
                                               double c_low,
                                               double c_high,
                                               uint64_t steps,
                                               double *out);

/**
 * Molecules usable before the limiting reservoir runs out.
 */
enum MmcStatus mmc_usable_molecules(double n,
                                    double m_low,
                                    double c_low,
                                    double c_high,
                                    double p_low,
                                    double *out);

/**
 * Energy per nat `G/I` in the small-mole-fraction measure.
 *
 * # Safety
 * `out` must be null or point to a writable `MmcMatchReport`.
 */
enum MmcStatus mmc_energy_per_nat(double kt,
                                  double n,
                                  double m_low,
                                  double c_low,
                                  double c_high,
                                  double p_low,
                                  struct MmcMatchReport *out);

/**
 * Verify the Landauer minimum on a `grid_size`-point sweep of `p_low`.
 *
 * # Safety
 * `out` must be null or point to a writable `MmcTheorem1Report`.
 */
enum MmcStatus mmc_verify_theorem1(double c_low,
                                   double c_high,
                                   double m_low,
                                   size_t grid_size,
                                   double tol,
                                   struct MmcTheorem1Report *out);

/**
 * Verify that `J/p_low` decreases and `J/(1 - p_low)` increases.
 *
 * # Safety
 * `out` must be null or point to a writable `MmcMonotonicityReport`.
 */
enum MmcStatus mmc_verify_monotonicity(double c_low,
                                       double c_high,
                                       size_t grid_size,
                                       struct MmcMonotonicityReport *out);

/**
 * Run a seeded simulation and return an owned handle through `out`.
 *
 * Reservoir populations are explicit integer counts; `mode` is 0 for
 * depleting, 1 for fixed-fraction. Free the handle with
 * [`mmc_simulation_free`].
 *
 * # Safety
 * `out` must point to a writable `MmcSimulation*`.
 */
enum MmcStatus mmc_simulate(uint64_t total_low,
                            uint64_t solute_low,
                            uint64_t total_high,
                            uint64_t solute_high,
                            double p_low,
                            uint64_t max_uses,
                            int32_t mode,
                            uint64_t seed,
                            struct MmcSimulation **out);

/**
 * Channel uses completed; 0 for a null handle.
 *
 * # Safety
 * `sim` must be null or a live handle from [`mmc_simulate`].
 */
uint64_t mmc_simulation_uses(const struct MmcSimulation *sim);

/**
 * Joint count of `(x, y)`; 0 for a null handle or out-of-range symbols.
 *
 * # Safety
 * `sim` must be null or a live handle from [`mmc_simulate`].
 */
uint64_t mmc_simulation_joint_count(const struct MmcSimulation *sim, int32_t x, int32_t y);

/**
 * Which reservoir was exhausted; `MmcExhausted_None` for a null handle.
 *
 * # Safety
 * `sim` must be null or a live handle from [`mmc_simulate`].
 */
enum MmcExhausted mmc_simulation_exhausted(const struct MmcSimulation *sim);

/**
 * Mole fraction of the low reservoir as actually simulated.
 *
 * # Safety
 * `sim` must be null or a live handle from [`mmc_simulate`].
 */
double mmc_simulation_realized_c_low(const struct MmcSimulation *sim);

/**
 * Mole fraction of the high reservoir as actually simulated.
 *
 * # Safety
 * `sim` must be null or a live handle from [`mmc_simulate`].
 */
double mmc_simulation_realized_c_high(const struct MmcSimulation *sim);

/**
 * Plug-in mutual information of the recorded joint counts, nats.
 *
 * # Safety
 * `sim` must be null or a live handle from [`mmc_simulate`].
 */
enum MmcStatus mmc_simulation_empirical_mi(const struct MmcSimulation *sim, double *out);

/**
 * Release a handle returned by [`mmc_simulate`]. Null is a no-op.
 *
 * # Safety
 * `sim` must be null or a live handle from [`mmc_simulate`], not yet freed.
 */
void mmc_simulation_free(struct MmcSimulation *sim);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MMC_H */
