//! Sharp Poincaré–Wirtinger constants on complete graphs.
//!
//! For a real-valued function `f` on the vertices of the complete graph
//! `K_n` (`n >= 3`), write `m` for its mean and consider the inequality
//!
//! ```text
//! sum_i |f(a_i) - m|^p  <=  C * sum_{i<j} |f(a_i) - f(a_j)|^p        (p >= 1)
//! ```
//!
//! The right-hand sum runs over the `n(n-1)/2` edges of `K_n`, so the best
//! constant `C(n, p)` is the supremum of a Rayleigh-type quotient over
//! non-constant functions.  Depending on `p`, the supremum is attained by
//! one of three families and equals a closed-form expression:
//!
//! | range of `p`                  | sharp constant                          | maximizers                   |
//! |-------------------------------|-----------------------------------------|------------------------------|
//! | `p = 1`                       | `2/n`                                    | any two-level function       |
//! | `1 < p < 2`                   | `(⌊n/2⌋^(p-1) + ⌈n/2⌉^(p-1)) / n^p`      | balanced two-level functions |
//! | `p = 2`                       | `1/n` (an identity)                      | every function               |
//! | `2 < p <= 3 + δ¹(n)`          | `1 / (2^(p-1) + n - 2)`                  | symmetric three-level        |
//! | `p >= 4`, or `p ∈ 𝒜_n ∩ (3,4)` | `(1 + (n-1)^(p-1)) / n^p`                | Dirac deltas                 |
//!
//! Between `3 + δ¹(n)` and the lower edge of `𝒜_n` the sharp constant is
//! not known in closed form; [`optimizer::scan_gap`] explores that window
//! numerically.
//!
//! The crate has four parts:
//!
//! * [`function`] — graph functions and the basic functionals (mean,
//!   deviation, `p`-variation, quotient, normalization).
//! * [`constants`] — the closed-form candidates, the thresholds `δ¹`, `δ²`,
//!   the exponent set `𝒜_n`, and the regime classifier.
//! * [`families`] — constructors for the extremizer families and the
//!   one-dimensional reductions (`T`, `G`, `α`, the two-point quotient).
//! * [`optimizer`] — grid search and seeded multistart coordinate ascent
//!   over the normalized domain, maximizer classification, and sharpness
//!   verification against the closed forms.
//! * [`proofcheck`] — dense-sampling verification of every auxiliary
//!   inequality and monotonicity claim the classification rests on.

pub mod constants;
pub mod families;
pub mod function;
pub mod optimizer;
pub mod proofcheck;

pub use constants::{
    candidate_max, regime, Formula, MaximizerFamily, Regime, RegimeKind, SharpConstant,
};
pub use families::FamilyLabel;
pub use function::{Exponent, GraphFunction, NormalizedFunction};
pub use optimizer::{GapScanRow, OptimizationReport};
pub use proofcheck::CheckReport;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The quotient is undefined for constant functions (`0/0`).
    #[error("function is constant (max = min), the quotient is undefined")]
    ConstantFunction,
    /// Graph functions live on `K_n` with `n >= 3`.
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    /// Function values must be finite.
    #[error("function values must be finite")]
    NonFiniteValue,
    /// Exponents must satisfy `p >= 1` and be finite.
    #[error("exponent must be finite and >= 1, got {0}")]
    BadExponent(f64),
    /// Two-level block size out of `1..=n-1`.
    #[error("block size {k} outside 1..={max}")]
    BadBlockSize { k: usize, max: usize },
    /// A parameter is outside the range an operation is defined on.
    #[error("bad parameter: {0}")]
    BadParameter(String),
    /// Grid enumeration would exceed the configured budget.
    #[error("grid of {points} points exceeds the budget of {budget}")]
    TooLarge { points: u128, budget: u128 },
    /// Numerical optimum and closed form disagree where the theory says
    /// they must not; indicates an implementation bug.
    #[error("sharpness verification failed at n = {n}, p = {p}: {reason}")]
    SharpnessViolation { n: usize, p: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
