//! Functions on the vertices of `K_n` and the functionals built from them.
//!
//! Everything here is a pure function of its inputs; the quotient
//! `deviation_power / p_variation^p` is invariant under vertex
//! permutations and affine maps `f ↦ a·f + b` with `a > 0`, which is what
//! [`GraphFunction::normalize`] and [`GraphFunction::sort_descending`]
//! exploit to shrink the search domain.

use crate::{Error, Result};

/// Relative threshold for constant-function detection: `f` counts as
/// constant when `max - min <= 1e-14 * (1 + max|f|)`, where the quotient
/// would be `0/0`.
pub const CONSTANT_EPS: f64 = 1e-14;

/// `|x|^p` with `0^p = 0` for every `p`, so fractional exponents of signed
/// differences stay defined.
#[inline]
pub(crate) fn pow_abs(x: f64, p: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        0.0
    } else {
        a.powf(p)
    }
}

/// Neumaier compensated accumulator.  Sharpness checks discriminate at the
/// 1e-10 level, so the `n(n-1)/2` pair terms are summed with compensation
/// rather than naively.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// The exponent of the inequality, `p >= 1` and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Self(p))
        } else {
            Err(Error::BadExponent(p))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Exponent {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

/// A real-valued function on the `n` vertices of `K_n`, stored as the
/// ordered list `(f(a_1), …, f(a_n))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFunction {
    values: Vec<f64>,
}

impl GraphFunction {
    /// Requires `values.len() >= 3` and all entries finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::TooFewVertices(values.len()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        Ok(Self { values })
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Constant-function test at the [`CONSTANT_EPS`] relative threshold.
    pub fn is_constant(&self) -> bool {
        let scale = 1.0 + self.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        self.max() - self.min() <= CONSTANT_EPS * scale
    }

    /// The average value `m = (1/n) Σ f(a_i)`.
    pub fn mean(&self) -> f64 {
        compensated_sum(self.values.iter().copied()) / self.n() as f64
    }

    /// `Σ_i |f(a_i) - m|^p`, the p-th power of the ℓ^p deviation from the
    /// mean (kept as a power to avoid root round-trips).
    pub fn deviation_power(&self, p: Exponent) -> f64 {
        let m = self.mean();
        compensated_sum(self.values.iter().map(|&v| pow_abs(v - m, p.get())))
    }

    /// `Σ_{i<j} |f(a_i) - f(a_j)|^p` over the edges of `K_n`.
    pub(crate) fn variation_power(&self, p: f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for (i, &a) in self.values.iter().enumerate() {
            for &b in &self.values[i + 1..] {
                acc.add(pow_abs(a - b, p));
            }
        }
        acc.value()
    }

    /// The p-variation `( Σ_{i<j} |f(a_i) - f(a_j)|^p )^{1/p}`.
    pub fn p_variation(&self, p: Exponent) -> f64 {
        self.variation_power(p.get()).powf(1.0 / p.get())
    }

    /// The maximized quantity `Σ|f - m|^p / Var_p(f)^p`, in `(0, 1)` for
    /// non-constant `f`.
    pub fn rayleigh_quotient(&self, p: Exponent) -> Result<f64> {
        if self.is_constant() {
            return Err(Error::ConstantFunction);
        }
        Ok(self.deviation_power(p) / self.variation_power(p.get()))
    }

    /// Affine rescale onto `[0, 1]`: `(f - min) / (max - min)`.  The
    /// quotient is translation and dilation invariant, so this leaves it
    /// unchanged up to rounding.
    pub fn normalize(&self) -> Result<NormalizedFunction> {
        if self.is_constant() {
            return Err(Error::ConstantFunction);
        }
        let (lo, hi) = (self.min(), self.max());
        let span = hi - lo;
        let values = self.values.iter().map(|&v| (v - lo) / span).collect();
        Ok(NormalizedFunction(Self { values }))
    }

    /// Values sorted non-increasing.  Sorting is a vertex permutation of
    /// `K_n`, so the quotient is unchanged; ties keep their original order.
    pub fn sort_descending(&self) -> GraphFunction {
        let mut values = self.values.clone();
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite by invariant"));
        Self { values }
    }
}

/// A graph function with `max = 1` and `min = 0`, the compact search
/// domain that [`GraphFunction::normalize`] maps onto.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedFunction(GraphFunction);

impl NormalizedFunction {
    /// Wraps values already known to lie in `[0, 1]` with the extremes
    /// attained (used by the optimizer, which fixes `f_1 = 1`, `f_n = 0`).
    pub(crate) fn from_unit_values(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
        debug_assert!(values.contains(&1.0));
        debug_assert!(values.contains(&0.0));
        Self(GraphFunction { values })
    }

    #[inline]
    pub fn as_graph(&self) -> &GraphFunction {
        &self.0
    }

    pub fn into_graph(self) -> GraphFunction {
        self.0
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.n()
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        self.0.values()
    }
}
