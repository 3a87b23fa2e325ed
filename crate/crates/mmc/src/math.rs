//! Scalar entropy kernels shared by every other module.
//!
//! All logarithms are natural and all information is in nats; conversion to
//! bits is a display-time concern. The `0 * log 0 = 0` convention is applied
//! explicitly rather than left to floating point (which would produce NaN).
//!
//! The Jensen gap
//!
//! ```text
//! J(c_low, c_high, p_low) = p_low phi(c_low) + (1 - p_low) phi(c_high) - phi(w),
//! w = p_low c_low + (1 - p_low) c_high,  phi(p) = p log p
//! ```
//!
//! is the workhorse: it is both the small-mole-fraction mutual information
//! per channel use and (with the reservoir split in place of the input
//! distribution) the per-molecule free energy to create the reservoirs, in
//! kT units. Because the three `phi` terms nearly cancel when
//! `c_low ~ c_high`, [`jensen_gap`] is evaluated in the equivalent form
//!
//! ```text
//! J = p c_low ln(c_low / w) + (1 - p) c_high ln(c_high / w)
//! ```
//!
//! with `ln(c/w)` computed by `ln_1p` on exactly-representable differences.
//! This keeps relative accuracy at near-degenerate channels, where the naive
//! sum loses most of its significant digits.

use crate::{Error, Result};

/// A dimensionless value constrained to `[0, 1]`.
///
/// Mole fractions, input probabilities, and reservoir splits all live here;
/// the constructor is the single place range checks happen.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::OutOfDomain {
                name: "probability",
                value,
                constraint: "0 <= p <= 1",
            })
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// Binary entropy `H(p) = -p log p - (1-p) log(1-p)` in nats.
///
/// The result lies in `[0, log 2]` with the maximum at `p = 1/2`.
pub fn binary_entropy(p: Probability) -> f64 {
    binary_entropy_raw(p.value())
}

/// Small-`p` approximation of the binary entropy, `p - p log p`.
///
/// Asymptotically accurate as `p -> 0`; the remainder is `~p^2 / 2`. The
/// argument must be strictly less than 1, where the approximation is
/// meaningless.
pub fn binary_entropy_small(p: Probability) -> Result<f64> {
    let p = p.value();
    if p >= 1.0 {
        return Err(Error::OutOfDomain {
            name: "p",
            value: p,
            constraint: "0 <= p < 1 for the small-p entropy approximation",
        });
    }
    Ok(binary_entropy_small_raw(p))
}

/// Partial entropy `phi(p) = p log p`, with `phi(0) = 0`.
///
/// Nonpositive on `[0, 1]`, minimized at `p = 1/e`.
pub fn partial_entropy(p: Probability) -> f64 {
    partial_entropy_raw(p.value())
}

/// Jensen gap of the partial entropy:
/// `J = p_low phi(c_low) + (1 - p_low) phi(c_high) - phi(w)`.
///
/// Nonnegative by convexity of `phi`, and zero exactly when
/// `c_low = c_high` or `p_low` is 0 or 1. Requires
/// `0 < c_low <= c_high < 1`.
pub fn jensen_gap(c_low: Probability, c_high: Probability, p_low: Probability) -> Result<f64> {
    check_fraction_pair(c_low.value(), c_high.value())?;
    Ok(jensen_gap_raw(c_low.value(), c_high.value(), p_low.value()))
}

pub(crate) fn check_fraction_pair(c_low: f64, c_high: f64) -> Result<()> {
    if !(c_low > 0.0) {
        return Err(Error::OutOfDomain {
            name: "c_low",
            value: c_low,
            constraint: "0 < c_low",
        });
    }
    if !(c_high < 1.0) {
        return Err(Error::OutOfDomain {
            name: "c_high",
            value: c_high,
            constraint: "c_high < 1",
        });
    }
    if !(c_low <= c_high) {
        return Err(Error::OutOfDomain {
            name: "c_low",
            value: c_low,
            constraint: "c_low <= c_high",
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn binary_entropy_raw(p: f64) -> f64 {
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    -p * p.ln() - (1.0 - p) * (-p).ln_1p()
}

#[inline]
pub(crate) fn binary_entropy_small_raw(p: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    p - p * p.ln()
}

#[inline]
pub(crate) fn partial_entropy_raw(p: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    p * p.ln()
}

/// `J` evaluated in the cancellation-free form; see the module docs.
///
/// `c_high - c_low` and the deviations `c - w` enter as exact products, so
/// the only rounding left is the inherent cancellation between the two
/// KL-style terms. Returns exactly 0 at the degenerate points.
#[inline]
pub(crate) fn jensen_gap_raw(c_low: f64, c_high: f64, p_low: f64) -> f64 {
    let gap = c_high - c_low;
    let w = p_low * c_low + (1.0 - p_low) * c_high;
    // c_low - w = -(1 - p) gap and c_high - w = p gap, exactly.
    let term_low = p_low * c_low * (-(1.0 - p_low) * gap / w).ln_1p();
    let term_high = (1.0 - p_low) * c_high * (p_low * gap / w).ln_1p();
    term_low + term_high
}
