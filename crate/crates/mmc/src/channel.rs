//! The MMC channel as a memoryless binary asymmetric channel.
//!
//! Input `x = 0` draws a molecule from the low reservoir, `x = 1` from the
//! high reservoir; output `y = 1` means the drawn molecule was solute. The
//! crossover probabilities are therefore the mole fractions themselves:
//!
//! ```text
//! p(y = 1 | x = 0) = c_low      p(y = 1 | x = 1) = c_high
//! ```
//!
//! Mutual information per use is
//! `I(X;Y) = H(w) - p_low H(c_low) - (1 - p_low) H(c_high)` with
//! `w = p_low c_low + (1 - p_low) c_high` the average mole fraction in a
//! codeword (distinct from the container average, which weights by the
//! reservoir split). Under the small-mole-fraction approximation
//! `H(p) ~ p - p log p`, the per-use information collapses to the Jensen
//! gap [`crate::math::jensen_gap`].

use crate::math::{self, Probability};
use crate::{Error, Result};

/// Channels with `c_high` at or below this are comfortably inside the
/// small-mole-fraction regime: the entropy approximation error stays under
/// about one percent.
pub const DEFAULT_SMALL_C_THRESHOLD: f64 = 1e-2;

/// The pair of solute mole fractions defining an MMC channel.
///
/// Invariant: `0 < c_low <= c_high < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    c_low: f64,
    c_high: f64,
}

impl ChannelParams {
    pub fn new(c_low: f64, c_high: f64) -> Result<Self> {
        if !c_low.is_finite() || !c_high.is_finite() {
            return Err(Error::OutOfDomain {
                name: "mole fraction",
                value: if c_low.is_finite() { c_high } else { c_low },
                constraint: "finite",
            });
        }
        math::check_fraction_pair(c_low, c_high)?;
        Ok(Self { c_low, c_high })
    }

    #[inline]
    pub fn c_low(&self) -> f64 {
        self.c_low
    }

    #[inline]
    pub fn c_high(&self) -> f64 {
        self.c_high
    }

    /// `c_high - c_low`.
    #[inline]
    pub fn gap(&self) -> f64 {
        self.c_high - self.c_low
    }

    /// A degenerate channel (`c_low = c_high`) carries no information.
    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.c_low == self.c_high
    }

    /// Whether both mole fractions sit inside the small-`c` regime.
    pub fn satisfies_small_c(&self, threshold: f64) -> bool {
        self.c_high <= threshold
    }
}

/// Input distribution of the channel: `p_low = Pr(X = 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputDist {
    p_low: f64,
}

impl InputDist {
    pub fn new(p_low: f64) -> Result<Self> {
        let p = Probability::new(p_low).map_err(|_| Error::OutOfDomain {
            name: "p_low",
            value: p_low,
            constraint: "0 <= p_low <= 1",
        })?;
        Ok(Self { p_low: p.value() })
    }

    #[inline]
    pub fn p_low(&self) -> f64 {
        self.p_low
    }
}

/// Which mutual-information measure to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiApprox {
    /// Exact binary-entropy expression.
    Exact,
    /// Small-mole-fraction (Jensen gap) expression.
    SmallC,
}

/// Transition probability `p(y | x)`.
///
/// `x = true` selects the high reservoir, `y = true` means solute was
/// detected. Each row sums to 1 bit-exactly.
pub fn transition_prob(ch: &ChannelParams, x: bool, y: bool) -> f64 {
    let c = if x { ch.c_high } else { ch.c_low };
    if y {
        c
    } else {
        1.0 - c
    }
}

/// Output weight `w = p(y = 1) = p_low c_low + (1 - p_low) c_high`.
pub fn output_weight(ch: &ChannelParams, input: &InputDist) -> f64 {
    input.p_low * ch.c_low + (1.0 - input.p_low) * ch.c_high
}

/// Exact mutual information per channel use, in nats.
///
/// Zero exactly when the channel is degenerate or the input is
/// deterministic; otherwise in `(0, log 2]`.
pub fn mutual_information(ch: &ChannelParams, input: &InputDist) -> f64 {
    mutual_information_raw(ch.c_low, ch.c_high, input.p_low)
}

pub(crate) fn mutual_information_raw(c_low: f64, c_high: f64, p_low: f64) -> f64 {
    if c_low == c_high || p_low == 0.0 || p_low == 1.0 {
        return 0.0;
    }
    let w = p_low * c_low + (1.0 - p_low) * c_high;
    let mi = math::binary_entropy_raw(w)
        - p_low * math::binary_entropy_raw(c_low)
        - (1.0 - p_low) * math::binary_entropy_raw(c_high);
    // Nonnegative by Jensen; guard the last-ulp cancellation.
    mi.max(0.0)
}

/// Small-mole-fraction mutual information per channel use, in nats.
///
/// Identical to [`crate::math::jensen_gap`] evaluated at the input
/// distribution -- the same formula behind a channel-flavored entry point.
pub fn mutual_information_small_c(ch: &ChannelParams, input: &InputDist) -> f64 {
    math::jensen_gap_raw(ch.c_low, ch.c_high, input.p_low)
}

/// Maximize mutual information over the input distribution.
///
/// Returns `(p_low_star, capacity_nats)` located to within `tol` in
/// `p_low`. Mutual information is concave in the input distribution, so a
/// golden-section bracket over `[0, 1]` converges to the global maximum.
/// A degenerate channel has capacity 0, reported at `p_low = 0.5` by
/// convention.
pub fn capacity(ch: &ChannelParams, approx: MiApprox, tol: f64) -> Result<(f64, f64)> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::OutOfDomain {
            name: "tol",
            value: tol,
            constraint: "tol > 0",
        });
    }
    if ch.is_degenerate() {
        return Ok((0.5, 0.0));
    }
    let f = |p: f64| match approx {
        MiApprox::Exact => mutual_information_raw(ch.c_low, ch.c_high, p),
        MiApprox::SmallC => math::jensen_gap_raw(ch.c_low, ch.c_high, p),
    };

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let p_star = 0.5 * (a + b);
    let cap = f(p_star).max(fc).max(fd);
    Ok((p_star, cap))
}
