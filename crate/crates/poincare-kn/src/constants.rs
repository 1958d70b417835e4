//! Closed-form candidate constants, the thresholds `δ¹(n)` and `δ²(n)`,
//! the exponent set `𝒜_n`, and the regime classifier.
//!
//! Three families of test functions give three lower bounds for the sharp
//! constant; each formula is the quotient of the family's member:
//!
//! * [`c_two_level`] — `(⌊n/2⌋^(p-1) + ⌈n/2⌉^(p-1)) / n^p`, from the
//!   balanced two-level function.
//! * [`c_symmetric`] — `1 / (2^(p-1) + n - 2)`, from the symmetric
//!   three-level function `(a+c, a, …, a, a-c)`.
//! * [`c_dirac`] — `(1 + (n-1)^(p-1)) / n^p`, from the Dirac delta.
//!
//! [`regime`] maps `(n, p)` to the interval of the classification where it
//! falls and carries the proven sharp constant where one exists.  Between
//! `3 + δ¹(n)` and the lower edge of `𝒜_n` nothing is proven and the
//! regime is [`RegimeKind::Gap`].



/// Switch the candidate formulas to log-space evaluation once exponents
/// get large enough to overflow `f64` directly.
const LOG_SPACE_THRESHOLD: f64 = 600.0;

/// Slack for the `𝒜_n` membership comparison, applied on the log scale
/// (so it acts as a relative tolerance).  `4 ∈ 𝒜_3` holds with exact
/// equality, which bare floating comparison could flip either way.
const IN_A_N_SLACK: f64 = 1e-12;

/// Which closed-form expression a constant comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    TwoLevel,
    Symmetric,
    Dirac,
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Formula::TwoLevel => "two_level",
            Formula::Symmetric => "symmetric",
            Formula::Dirac => "dirac",
        })
    }
}

/// The family attaining equality in a resolved regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximizerFamily {
    /// Two-level functions with any split (the `p = 1` case).
    AnyTwoLevel,
    /// Two-level functions with level sets of sizes `⌊n/2⌋`, `⌈n/2⌉`.
    BalancedTwoLevel,
    /// `(a+c, a, …, a, a-c)`: middle values at the midpoint of the extremes.
    SymmetricThreeLevelMidpoint,
    /// One vertex off a constant background.
    DiracDelta,
    /// Every function attains equality (the `p = 2` identity).
    Everything,
}

impl std::fmt::Display for MaximizerFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MaximizerFamily::AnyTwoLevel => "any_two_level",
            MaximizerFamily::BalancedTwoLevel => "balanced_two_level",
            MaximizerFamily::SymmetricThreeLevelMidpoint => "symmetric_three_level",
            MaximizerFamily::DiracDelta => "dirac_delta",
            MaximizerFamily::Everything => "everything",
        })
    }
}

/// A candidate or proven sharp constant together with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpConstant {
    pub value: f64,
    pub formula: Formula,
    pub family: MaximizerFamily,
}

/// The interval of the classification a pair `(n, p)` falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    /// `p = 1`.
    P1,
    /// `1 < p < 2`.
    TwoLevelRange,
    /// `p = 2`.
    P2,
    /// `2 < p <= 3 + δ¹(n)`.
    SymmetricRange,
    /// `p >= 4`, or `3 < p < 4` with `p ∈ 𝒜_n`.
    DiracRange,
    /// `3 + δ¹(n) < p < 4` outside `𝒜_n`: sharp constant unknown.
    Gap,
}

impl std::fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegimeKind::P1 => "p1",
            RegimeKind::TwoLevelRange => "two_level",
            RegimeKind::P2 => "p2",
            RegimeKind::SymmetricRange => "symmetric",
            RegimeKind::DiracRange => "dirac",
            RegimeKind::Gap => "gap",
        })
    }
}

/// Classification of `(n, p)`: the regime kind, its `p`-interval for this
/// `n`, and the sharp constant when the regime is resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub kind: RegimeKind,
    /// Present exactly when `kind != Gap`.
    pub constant: Option<SharpConstant>,
    /// The regime's `p`-interval for this `n` (closed or open endpoints
    /// per the classification; `f64::INFINITY` for the unbounded side).
    pub p_bounds: (f64, f64),
}

impl Regime {
    pub fn is_resolved(&self) -> bool {
        self.constant.is_some()
    }
}

fn check_np(n: usize, p: f64) {
    assert!(n >= 3, "need n >= 3, got {n}");
    assert!(p.is_finite() && p >= 1.0, "need finite p >= 1, got {p}");
}

/// `(⌊n/2⌋^(p-1) + ⌈n/2⌉^(p-1)) / n^p`; at `p = 1` this is `2/n`.
pub fn c_two_level(n: usize, p: f64) -> f64 {
    check_np(n, p);
    let (a, b) = ((n / 2) as f64, (n - n / 2) as f64);
    let nf = n as f64;
    if (p - 1.0) * b.ln() > LOG_SPACE_THRESHOLD || p * nf.ln() > LOG_SPACE_THRESHOLD {
        // log of a^{p-1} + b^{p-1} anchored at the larger term b
        let ln_sum = (p - 1.0) * b.ln() + ((p - 1.0) * (a.ln() - b.ln())).exp().ln_1p();
        (ln_sum - p * nf.ln()).exp()
    } else {
        (a.powf(p - 1.0) + b.powf(p - 1.0)) / nf.powf(p)
    }
}

/// `1 / (2^(p-1) + n - 2)`.
pub fn c_symmetric(n: usize, p: f64) -> f64 {
    check_np(n, p);
    let nf = n as f64;
    if (p - 1.0) * std::f64::consts::LN_2 > LOG_SPACE_THRESHOLD {
        let t = (p - 1.0) * std::f64::consts::LN_2;
        (-(t + ((nf - 2.0) * (-t).exp()).ln_1p())).exp()
    } else {
        1.0 / (2f64.powf(p - 1.0) + nf - 2.0)
    }
}

/// `(1 + (n-1)^(p-1)) / n^p`.
pub fn c_dirac(n: usize, p: f64) -> f64 {
    check_np(n, p);
    let nf = n as f64;
    let mf = (n - 1) as f64;
    if (p - 1.0) * mf.ln() > LOG_SPACE_THRESHOLD || p * nf.ln() > LOG_SPACE_THRESHOLD {
        ((-(p - 1.0) * mf.ln()).exp().ln_1p() + (p - 1.0) * mf.ln() - p * nf.ln()).exp()
    } else {
        (1.0 + mf.powf(p - 1.0)) / nf.powf(p)
    }
}

/// The largest of the three candidate lower bounds.
///
/// Ties go to the formula the regime classifier designates at this
/// `(n, p)`; in the gap, where nothing is designated, the order is
/// symmetric, Dirac, two-level.  Ties are taken with a `1e-12` relative
/// band: the formulas coincide at `p = 2` for every `n`, the two-level
/// and Dirac formulas coincide for all `p` at `n = 3`, and near crossing
/// points the difference shrinks below rounding noise, where the band
/// keeps the winner consistent with the regime's constant.
pub fn candidate_max(n: usize, p: f64) -> SharpConstant {
    check_np(n, p);
    let candidates = [
        (Formula::TwoLevel, c_two_level(n, p)),
        (Formula::Symmetric, c_symmetric(n, p)),
        (Formula::Dirac, c_dirac(n, p)),
    ];
    let preference: [Formula; 3] = match regime(n, p).kind {
        RegimeKind::P1 | RegimeKind::TwoLevelRange => {
            [Formula::TwoLevel, Formula::Symmetric, Formula::Dirac]
        }
        RegimeKind::DiracRange => [Formula::Dirac, Formula::Symmetric, Formula::TwoLevel],
        _ => [Formula::Symmetric, Formula::Dirac, Formula::TwoLevel],
    };
    let top = candidates
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let (formula, value) = preference
        .into_iter()
        .find_map(|want| {
            candidates
                .iter()
                .copied()
                .find(|&(f, v)| f == want && v >= top - 1e-12 * top)
        })
        .expect("the maximum itself is always within the band");
    let family = match formula {
        Formula::TwoLevel => {
            if p == 1.0 {
                MaximizerFamily::AnyTwoLevel
            } else {
                MaximizerFamily::BalancedTwoLevel
            }
        }
        Formula::Symmetric => MaximizerFamily::SymmetricThreeLevelMidpoint,
        Formula::Dirac => MaximizerFamily::DiracDelta,
    };
    SharpConstant {
        value,
        formula,
        family,
    }
}

/// `δ¹(n) = (log(√(n²+4) + 3n) - log(4n)) / log(n-1)`, the width of the
/// extension of the symmetric regime past `p = 3`.  Asymptotically
/// `1/(2n² log n) + O(1/n³)`.
pub fn delta1(n: usize) -> f64 {
    assert!(n >= 3, "need n >= 3, got {n}");
    let nf = n as f64;
    let root = (nf * nf + 4.0).sqrt();
    // (√(n²+4)+3n)/(4n) = 1 + (√(n²+4)-n)/(4n), and √(n²+4)-n = 4/(√(n²+4)+n);
    // the ln_1p form survives the cancellation at large n.
    (1.0 / (nf * (root + nf))).ln_1p() / (nf - 1.0).ln()
}

/// The slightly larger threshold from the sharper gate
/// `(n-1)^(p-3) - 1 <= (√(n²+4) - n) / d_n` with `d_n = n-1` for `n >= 4`
/// and `d_n = 4` for `n = 3`.  Exposed as a variant; [`delta1`] stays the
/// default everywhere.
pub fn delta1_improved(n: usize) -> f64 {
    assert!(n >= 3, "need n >= 3, got {n}");
    let nf = n as f64;
    let root = (nf * nf + 4.0).sqrt();
    let d = if n == 3 { 4.0 } else { nf - 1.0 };
    (4.0 / ((root + nf) * d)).ln_1p() / (nf - 1.0).ln()
}

/// `δ²(n) = (2 log n - log(n² - 2n - 1)) / (log n - log(n-1)) - 2`;
/// `p >= 3 + δ²(n)` is a sufficient condition for `p ∈ 𝒜_n`.
/// Asymptotically `2/n + O(1/n²)`.
///
/// `n² - 2n - 1 = (n-1)² - 2 >= 2` for `n >= 3`, so the logarithm is
/// always defined here.
pub fn delta2(n: usize) -> f64 {
    assert!(n >= 3, "need n >= 3, got {n}");
    let nf = n as f64;
    // 2 ln n - ln(n²-2n-1) = -ln1p(-(2n+1)/n²); ln n - ln(n-1) = -ln1p(-1/n).
    let num = -(-(2.0 * nf + 1.0) / (nf * nf)).ln_1p();
    let den = -(-1.0 / nf).ln_1p();
    (num - 2.0 * den) / den
}

/// Membership in `𝒜_n = { p > 0 : (n-2)/n >= (1 + (n-1)^(p-1)) / n^(p-1) }`
/// (non-strict, compared on the log scale with a 1e-12 slack).
pub fn in_a_n(n: usize, p: f64) -> bool {
    assert!(n >= 3, "need n >= 3, got {n}");
    assert!(p.is_finite() && p > 0.0, "need finite p > 0, got {p}");
    let ln_n = (n as f64).ln();
    let ln_m = ((n - 1) as f64).ln();
    let rhs = (-(p - 1.0) * ln_m).exp().ln_1p() + (p - 1.0) * (ln_m - ln_n);
    let lhs = ((n - 2) as f64 / n as f64).ln();
    lhs - rhs >= -IN_A_N_SLACK
}

/// The lower edge of `𝒜_n` inside `(3, 4]`, found by bisection (the
/// membership predicate is monotone in `p`).  `𝒜_n` contains `[edge, ∞)`.
pub fn a_n_lower_edge(n: usize) -> f64 {
    assert!(n >= 3, "need n >= 3, got {n}");
    debug_assert!(!in_a_n(n, 3.0) && in_a_n(n, 4.0));
    let (mut lo, mut hi) = (3.0f64, 4.0f64);
    while hi - lo > f64::EPSILON * 8.0 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if in_a_n(n, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// The `p`-interval where the sharp constant is unknown for this `n`:
/// `(3 + δ¹(n), min(edge of 𝒜_n, 4))`, or `None` if empty.
pub fn unresolved_interval(n: usize) -> Option<(f64, f64)> {
    let lo = 3.0 + delta1(n);
    let hi = a_n_lower_edge(n).min(4.0);
    (hi > lo).then_some((lo, hi))
}

/// Classify `(n, p)` and attach the proven sharp constant where there is
/// one.  The symmetric regime is taken with closed upper endpoint
/// `p <= 3 + δ¹(n)`.
pub fn regime(n: usize, p: f64) -> Regime {
    check_np(n, p);
    let d1 = 3.0 + delta1(n);
    if p == 1.0 {
        Regime {
            kind: RegimeKind::P1,
            constant: Some(SharpConstant {
                value: c_two_level(n, 1.0),
                formula: Formula::TwoLevel,
                family: MaximizerFamily::AnyTwoLevel,
            }),
            p_bounds: (1.0, 1.0),
        }
    } else if p < 2.0 {
        Regime {
            kind: RegimeKind::TwoLevelRange,
            constant: Some(SharpConstant {
                value: c_two_level(n, p),
                formula: Formula::TwoLevel,
                family: MaximizerFamily::BalancedTwoLevel,
            }),
            p_bounds: (1.0, 2.0),
        }
    } else if p == 2.0 {
        Regime {
            kind: RegimeKind::P2,
            constant: Some(SharpConstant {
                value: c_symmetric(n, 2.0),
                formula: Formula::Symmetric,
                family: MaximizerFamily::Everything,
            }),
            p_bounds: (2.0, 2.0),
        }
    } else if p <= d1 {
        Regime {
            kind: RegimeKind::SymmetricRange,
            constant: Some(SharpConstant {
                value: c_symmetric(n, p),
                formula: Formula::Symmetric,
                family: MaximizerFamily::SymmetricThreeLevelMidpoint,
            }),
            p_bounds: (2.0, d1),
        }
    } else if p >= 4.0 || in_a_n(n, p) {
        let lower = a_n_lower_edge(n).min(4.0);
        Regime {
            kind: RegimeKind::DiracRange,
            constant: Some(SharpConstant {
                value: c_dirac(n, p),
                formula: Formula::Dirac,
                family: MaximizerFamily::DiracDelta,
            }),
            p_bounds: (lower, f64::INFINITY),
        }
    } else {
        let hi = a_n_lower_edge(n).min(4.0);
        Regime {
            kind: RegimeKind::Gap,
            constant: None,
            p_bounds: (d1, hi),
        }
    }
}
