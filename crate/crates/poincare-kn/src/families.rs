//! Constructors for the extremizer families and the one-dimensional
//! reductions the classification is proved through.
//!
//! After symmetrizing the middle coordinates, the whole problem restricts
//! to the curve `(1, x, …, x, -1)`; [`t_function`] is the margin of the
//! two-point inequality along that curve, and its monotonicity is
//! controlled by the ratio [`g_function`] and the difference
//! [`alpha_function`].

use crate::constants::MaximizerFamily;
use crate::function::{pow_abs, CompensatedSum, GraphFunction};
use crate::{Error, Result};

/// Structural label of a (near-)maximizer, produced by
/// [`crate::optimizer::classify_maximizer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyLabel {
    /// Two-valued with `k` vertices on the high level (a split that is
    /// neither balanced nor a Dirac).
    AnyTwoLevel { k: usize },
    /// Two-valued with level sets of sizes `⌊n/2⌋`, `⌈n/2⌉`.
    BalancedTwoLevel,
    /// Exactly one high, one low, all middles at the midpoint.
    SymmetricThreeLevelMidpoint,
    /// Exactly one value off the common level (either orientation; the
    /// quotient is negation invariant).
    DiracDelta,
    Other,
}

impl FamilyLabel {
    /// Whether a function with this label belongs to `family` on `K_n`.
    ///
    /// The families overlap: every Dirac delta is a two-level function,
    /// and on `K_3` a Dirac delta *is* balanced (`⌊3/2⌋ = 1`), so matching
    /// needs `n`.
    pub fn matches(&self, family: MaximizerFamily, n: usize) -> bool {
        match family {
            MaximizerFamily::Everything => true,
            MaximizerFamily::AnyTwoLevel => matches!(
                self,
                FamilyLabel::AnyTwoLevel { .. }
                    | FamilyLabel::BalancedTwoLevel
                    | FamilyLabel::DiracDelta
            ),
            MaximizerFamily::BalancedTwoLevel => {
                matches!(self, FamilyLabel::BalancedTwoLevel)
                    || (n == 3 && matches!(self, FamilyLabel::DiracDelta))
            }
            MaximizerFamily::SymmetricThreeLevelMidpoint => {
                matches!(self, FamilyLabel::SymmetricThreeLevelMidpoint)
            }
            MaximizerFamily::DiracDelta => {
                matches!(self, FamilyLabel::DiracDelta)
                    || (n == 3 && matches!(self, FamilyLabel::BalancedTwoLevel))
            }
        }
    }
}

impl std::fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyLabel::AnyTwoLevel { k } => write!(f, "two_level(k={k})"),
            FamilyLabel::BalancedTwoLevel => f.write_str("balanced_two_level"),
            FamilyLabel::SymmetricThreeLevelMidpoint => f.write_str("symmetric_three_level"),
            FamilyLabel::DiracDelta => f.write_str("dirac_delta"),
            FamilyLabel::Other => f.write_str("other"),
        }
    }
}

/// The two-level function with `k` leading ones and `n - k` zeros.
pub fn two_level(n: usize, k: usize) -> Result<GraphFunction> {
    assert!(n >= 3, "need n >= 3, got {n}");
    if k < 1 || k > n - 1 {
        return Err(Error::BadBlockSize { k, max: n - 1 });
    }
    let mut values = vec![0.0; n];
    values[..k].fill(1.0);
    GraphFunction::new(values)
}

/// The Dirac delta `(1, 0, …, 0)`.
pub fn dirac(n: usize) -> GraphFunction {
    two_level(n, 1).expect("1 <= n - 1 for n >= 3")
}

/// The three-level function `(1, x, …, x, -1)` with `|x| <= 1`; this is
/// the parametrization [`t_function`], [`g_function`] and
/// [`alpha_function`] are written in (the normalized form has middles at
/// `(1 + x) / 2`).
pub fn three_level(n: usize, x: f64) -> Result<GraphFunction> {
    assert!(n >= 3, "need n >= 3, got {n}");
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::BadParameter(format!(
            "three_level middle value {x} outside [-1, 1]"
        )));
    }
    let mut values = vec![x; n];
    values[0] = 1.0;
    values[n - 1] = -1.0;
    GraphFunction::new(values)
}

/// Numerator and denominator of the two-point quotient, with the maximum
/// playing `f(a_1)` and the minimum `f(a_n)` (which is what sorting
/// descending would produce; both are permutation invariant).
pub(crate) fn lemma_num_den(values: &[f64], p: f64) -> (f64, f64) {
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let m = crate::function::compensated_sum(values.iter().copied()) / values.len() as f64;
    let num = pow_abs(hi - m, p - 1.0) + pow_abs(m - lo, p - 1.0);
    let mut den = CompensatedSum::new();
    for &v in values {
        den.add(pow_abs(hi - v, p - 1.0));
        den.add(pow_abs(v - lo, p - 1.0));
    }
    (num, den.value())
}

/// The two-point quotient
///
/// ```text
/// ((f(a_1)-m)^(p-1) + (m-f(a_n))^(p-1))
///   / Σ_j ((f(a_1)-f(a_j))^(p-1) + (f(a_j)-f(a_n))^(p-1))
/// ```
///
/// with `f(a_1)` the maximum and `f(a_n)` the minimum (the input is
/// reordered internally, so any value order is accepted).  In resolved
/// regimes it is bounded by the regime's sharp constant.
pub fn lemma_quotient(f: &GraphFunction, p: f64) -> Result<f64> {
    assert!(p.is_finite() && p >= 1.0, "need finite p >= 1, got {p}");
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let (num, den) = lemma_num_den(f.values(), p);
    Ok(num / den)
}

/// `T(x) = C (2^p + (n-2)((1-x)^(p-1) + (1+x)^(p-1)))
///        - (1 - (n-2)x/n)^(p-1) - (1 + (n-2)x/n)^(p-1)` on `[0, 1]`.
///
/// This is `C · den - num` of the two-point inequality along the curve
/// `(1, x, …, x, -1)`; with the symmetric constant `T(0) = 0`, with the
/// Dirac constant `T(1) = 0`, and `T >= 0` on `[0, 1]` is equivalent to
/// the inequality on the curve.
pub fn t_function(n: usize, p: f64, c: f64, x: f64) -> f64 {
    assert!(n >= 3, "need n >= 3, got {n}");
    debug_assert!((0.0..=1.0).contains(&x), "T is defined on [0, 1]");
    debug_assert!(c > 0.0);
    let nf = n as f64;
    let r = (nf - 2.0) / nf;
    c * (2f64.powf(p) + (nf - 2.0) * (pow_abs(1.0 - x, p - 1.0) + (1.0 + x).powf(p - 1.0)))
        - pow_abs(1.0 - r * x, p - 1.0)
        - (1.0 + r * x).powf(p - 1.0)
}

/// `G(x) = ((1 + (n-2)x/n)^(p-2) - (1 - (n-2)x/n)^(p-2))
///        / ((1+x)^(p-2) - (1-x)^(p-2))` for `p > 2`, `0 < x <= 1`;
/// `x` below 1e-8 returns the limit `(n-2)/n` instead of the `0/0` ratio.
///
/// `T' >= 0` on `[0, 1]` is equivalent to `G <= n·C` there.
pub fn g_function(n: usize, p: f64, x: f64) -> Result<f64> {
    assert!(n >= 3, "need n >= 3, got {n}");
    if p <= 2.0 {
        return Err(Error::BadParameter(format!(
            "G is defined for p > 2, got p = {p}"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::BadParameter(format!(
            "G is defined on (0, 1], got x = {x}"
        )));
    }
    let nf = n as f64;
    let r = (nf - 2.0) / nf;
    if x < 1e-8 {
        return Ok(r);
    }
    let num = (1.0 + r * x).powf(p - 2.0) - pow_abs(1.0 - r * x, p - 2.0);
    let den = (1.0 + x).powf(p - 2.0) - pow_abs(1.0 - x, p - 2.0);
    Ok(num / den)
}

/// `α(x) = n (1 + (n-2)x/n)^(p-2) - n (1 - (n-2)x/n)^(p-2)
///        - (n-2)(1+x)^(p-2) + (n-2)(1-x)^(p-2)`; `α(0) = 0`, and
/// `α >= 0` on `[0, 1]` is `G >= (n-2)/n` cleared of denominators.
pub fn alpha_function(n: usize, p: f64, x: f64) -> f64 {
    assert!(n >= 3, "need n >= 3, got {n}");
    debug_assert!((0.0..=1.0).contains(&x), "α is defined on [0, 1]");
    let nf = n as f64;
    let r = (nf - 2.0) / nf;
    nf * (1.0 + r * x).powf(p - 2.0) - nf * pow_abs(1.0 - r * x, p - 2.0)
        - (nf - 2.0) * (1.0 + x).powf(p - 2.0)
        + (nf - 2.0) * pow_abs(1.0 - x, p - 2.0)
}
