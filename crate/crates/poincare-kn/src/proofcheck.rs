//! Dense-sampling verification of the auxiliary inequalities and
//! monotonicity claims behind the regime classification.
//!
//! Every check reports an oriented margin: nonnegative means the claim
//! holds at that sample, and a check passes when its worst margin over
//! the grid stays above `-1e-12`.  Identities are checked two-sided by
//! folding `-|deviation|` into the margin.  All grids are deterministic;
//! there is no randomness in this module.

use rayon::prelude::*;

use crate::constants::{
    self, a_n_lower_edge, c_symmetric, delta1, delta1_improved, in_a_n, RegimeKind,
};
use crate::families::{alpha_function, t_function};
use crate::function::pow_abs;
use crate::{Error, Result};

/// Worst margin above this threshold counts as a pass.
pub const MARGIN_TOL: f64 = -1e-12;

/// Outcome of one sampled verification.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    /// Number of sampled margins.
    pub samples: u64,
    /// Minimum oriented margin over the grid.
    pub worst_margin: f64,
    /// Grid coordinates of the worst margin.
    pub worst_location: Vec<f64>,
    /// `worst_margin >= MARGIN_TOL`.
    pub passed: bool,
}

impl CheckReport {
    fn new(name: &str, samples: u64, worst_margin: f64, worst_location: Vec<f64>) -> Self {
        Self {
            name: name.to_string(),
            samples,
            worst_margin,
            worst_location,
            passed: worst_margin >= MARGIN_TOL,
        }
    }
}

/// Running minimum of (margin, location) pairs.
#[derive(Debug, Clone)]
struct WorstTracker {
    samples: u64,
    margin: f64,
    location: Vec<f64>,
}

impl WorstTracker {
    fn new() -> Self {
        Self {
            samples: 0,
            margin: f64::INFINITY,
            location: Vec::new(),
        }
    }

    fn add(&mut self, margin: f64, location: &[f64]) {
        self.samples += 1;
        if margin < self.margin {
            self.margin = margin;
            self.location = location.to_vec();
        }
    }

    fn into_report(self, name: &str) -> CheckReport {
        CheckReport::new(name, self.samples, self.margin, self.location)
    }
}

/// Generalized binomial coefficient `C(alpha, l)` for real `alpha`, by the
/// running product `alpha (alpha-1) … (alpha-l+1) / l!`.
pub fn binom_real(alpha: f64, l: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..l {
        acc *= (alpha - i as f64) / (i + 1) as f64;
    }
    acc
}

/// Axis resolutions for the three-parameter perturbation sweep.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub a_steps: usize,
    pub b_steps: usize,
    pub eps_steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            a_steps: 40,
            b_steps: 40,
            eps_steps: 40,
        }
    }
}

/// Concavity perturbation: for `a > b > 0`, `0 <= eps < (a-b)/2` and
/// `1 < p < 2`,
///
/// ```text
/// (a - eps)^(p-1) + (b + eps)^(p-1) >= a^(p-1) + b^(p-1),
/// ```
///
/// with identity at `eps = 0`.  `a` ranges over `(0, 10]`.
pub fn check_perturbation(p: f64, grid: &GridSpec) -> Result<CheckReport> {
    if !(1.0 < p && p < 2.0) {
        return Err(Error::BadParameter(format!(
            "perturbation inequality needs 1 < p < 2, got {p}"
        )));
    }
    let mut w = WorstTracker::new();
    for ia in 0..grid.a_steps {
        let a = 10.0 * (ia + 1) as f64 / grid.a_steps as f64;
        for ib in 0..grid.b_steps {
            let b = a * (ib + 1) as f64 / (grid.b_steps + 1) as f64;
            for ie in 0..grid.eps_steps {
                let eps = 0.5 * (a - b) * ie as f64 / grid.eps_steps as f64;
                let lhs = (a - eps).powf(p - 1.0) + (b + eps).powf(p - 1.0);
                let rhs = a.powf(p - 1.0) + b.powf(p - 1.0);
                w.add(lhs - rhs, &[a, b, eps]);
            }
        }
    }
    Ok(w.into_report("perturbation"))
}

/// Two-block reduction for `1 < p < 2`, odd `n = 2k + 1`: on `x ∈ [0, 1]`
///
/// ```text
/// (2k+1)((k+1-x)^(p-1) + (k+x)^(p-1))
///   <= (k^(p-1) + (k+1)^(p-1)) ((1-x)^(p-1) + x^(p-1) + 2k),
/// ```
///
/// an identity at both endpoints (checked two-sided there).
pub fn check_expression_p_lt_2(k: u32, p: f64, samples: usize) -> Result<CheckReport> {
    if !(1.0 < p && p < 2.0) {
        return Err(Error::BadParameter(format!(
            "two-block inequality needs 1 < p < 2, got {p}"
        )));
    }
    assert!(k >= 1, "need k >= 1");
    assert!(samples >= 2);
    let kf = k as f64;
    let margin_at = |x: f64| {
        let lhs = (2.0 * kf + 1.0) * ((kf + 1.0 - x).powf(p - 1.0) + (kf + x).powf(p - 1.0));
        let rhs = (kf.powf(p - 1.0) + (kf + 1.0).powf(p - 1.0))
            * (pow_abs(1.0 - x, p - 1.0) + pow_abs(x, p - 1.0) + 2.0 * kf);
        rhs - lhs
    };
    let mut w = WorstTracker::new();
    for i in 0..=samples {
        let x = i as f64 / samples as f64;
        w.add(margin_at(x), &[kf, p, x]);
    }
    // endpoint identities
    w.add(-margin_at(0.0).abs(), &[kf, p, 0.0]);
    w.add(-margin_at(1.0).abs(), &[kf, p, 1.0]);
    Ok(w.into_report("expression_p_lt_2"))
}

/// Series coefficients of the two-block reduction: for `l >= 1`,
///
/// ```text
/// C(p-1, 2l) · 2^(2l+2-p) · ((k^(p-1) + (k+1)^(p-1)) - (2k+1)^(p-2l)) < 0.
/// ```
///
/// The margin at index `l` is minus the coefficient.
pub fn check_series_p_lt_2(k: u32, p: f64, terms: usize) -> Result<CheckReport> {
    if !(1.0 < p && p < 2.0) {
        return Err(Error::BadParameter(format!(
            "series coefficients need 1 < p < 2, got {p}"
        )));
    }
    assert!(k >= 1 && terms >= 1);
    let kf = k as f64;
    let base = kf.powf(p - 1.0) + (kf + 1.0).powf(p - 1.0);
    let mut w = WorstTracker::new();
    for l in 1..=terms {
        let c = binom_real(p - 1.0, 2 * l as u32)
            * 2f64.powf(2.0 * l as f64 + 2.0 - p)
            * (base - (2.0 * kf + 1.0).powf(p - 2.0 * l as f64));
        w.add(-c, &[kf, p, l as f64]);
    }
    Ok(w.into_report("series_p_lt_2"))
}

/// For fixed `x ∈ [0, 1]` and `2 < p <= 3`, the map
/// `y ↦ (y + (n-2)x/n)^(p-2) - (y - (n-2)x/n)^(p-2)` is non-increasing on
/// `[(n-2)/n, 1]`; checked on consecutive grid pairs.
pub fn check_vx_decreasing(n: usize, p: f64, samples: usize) -> Result<CheckReport> {
    if !(2.0 < p && p <= 3.0) {
        return Err(Error::BadParameter(format!(
            "v_x monotonicity needs 2 < p <= 3, got {p}"
        )));
    }
    assert!(n >= 3 && samples >= 2);
    let nf = n as f64;
    let r = (nf - 2.0) / nf;
    let x_steps = samples.min(100);
    let y_steps = samples;
    let mut w = WorstTracker::new();
    for ix in 0..=x_steps {
        let x = ix as f64 / x_steps as f64;
        let c = r * x;
        let v = |y: f64| (y + c).powf(p - 2.0) - pow_abs(y - c, p - 2.0);
        let mut prev = v(r);
        for iy in 1..=y_steps {
            let y = r + (1.0 - r) * iy as f64 / y_steps as f64;
            let cur = v(y);
            w.add(prev - cur, &[nf, p, x, y]);
            prev = cur;
        }
    }
    Ok(w.into_report("vx_decreasing"))
}

/// Mean-value bound for `2 <= p <= 3`:
/// `((n-2)/n)^(p-2) <= n / (n - 2 + 2^(p-1))`, equality at `p = 2`.
pub fn check_mvt_bound(n: usize, p: f64) -> Result<CheckReport> {
    if !(2.0..=3.0).contains(&p) {
        return Err(Error::BadParameter(format!(
            "mean-value bound needs 2 <= p <= 3, got {p}"
        )));
    }
    assert!(n >= 3);
    let nf = n as f64;
    let lhs = ((nf - 2.0) / nf).powf(p - 2.0);
    let rhs = nf / (nf - 2.0 + 2f64.powf(p - 1.0));
    Ok(CheckReport::new(
        "mvt_bound",
        1,
        rhs - lhs,
        vec![nf, p],
    ))
}

/// Endpoint bound `G(1) <= n C` in the window `3 < p <= 3 + δ¹(n)`:
/// margin of `n^(p-1) - ((n-1)^(p-2) - 1)(2^(p-1) + n - 2)`.
pub fn check_g1_bound(n: usize, p: f64) -> Result<CheckReport> {
    check_g1_range(n, p)?;
    let nf = n as f64;
    let margin =
        nf.powf(p - 1.0) - ((nf - 1.0).powf(p - 2.0) - 1.0) * (2f64.powf(p - 1.0) + nf - 2.0);
    Ok(CheckReport::new("g1_bound", 1, margin, vec![nf, p]))
}

/// Margin of the gate `(n-1)^(p-3) - 1 <= (√(n²+4) - n)/(4n)` that
/// defines `δ¹(n)`; saturates to zero at `p = 3 + δ¹(n)`.
pub fn g1_gate_margin(n: usize, p: f64) -> f64 {
    assert!(n >= 3);
    let nf = n as f64;
    let root = (nf * nf + 4.0).sqrt();
    // (√(n²+4)-n)/(4n) = 1/(n(√(n²+4)+n)); expm1 keeps the left side
    // accurate when p-3 is small.
    1.0 / (nf * (root + nf)) - ((p - 3.0) * (nf - 1.0).ln()).exp_m1()
}

fn check_g1_range(n: usize, p: f64) -> Result<()> {
    assert!(n >= 3);
    let hi = 3.0 + delta1(n);
    if !(3.0 < p && p <= hi) {
        return Err(Error::BadParameter(format!(
            "G(1) bound is asserted for 3 < p <= {hi}, got {p}"
        )));
    }
    Ok(())
}

/// Same gate with the sharper denominator (`n-1` for `n >= 4`, `4` for
/// `n = 3`): verifies the main bound still holds at the larger threshold
/// `3 + δ¹_improved(n)`. The improved threshold is reported, not adopted.
pub fn check_g1_bound_improved(n: usize) -> CheckReport {
    assert!(n >= 3);
    let p = 3.0 + delta1_improved(n);
    let nf = n as f64;
    let margin =
        nf.powf(p - 1.0) - ((nf - 1.0).powf(p - 2.0) - 1.0) * (2f64.powf(p - 1.0) + nf - 2.0);
    CheckReport::new("g1_bound_improved", 1, margin, vec![nf, p])
}

/// Truncated odd polynomial of the window `3 < p <= 3 + δ¹(n)`:
///
/// ```text
/// P_N(x) = Σ_{k=0}^{N} C(p-2, 2k+1) (nC - ((n-2)/n)^(2k+1)) x^(2k+1),
/// ```
///
/// with `C` the symmetric constant.  Checks the sign pattern (first
/// coefficient positive, the rest negative, exactly one change — the
/// Descartes precondition) and `P_N >= 0` on a 10^4 grid of `[0, 1]`.
pub fn check_series_3plus(n: usize, p: f64, terms: usize) -> Result<CheckReport> {
    check_g1_range(n, p)?;
    assert!(terms >= 2);
    let nf = n as f64;
    let nc = nf * c_symmetric(n, p);
    let ratio = (nf - 2.0) / nf;
    let coeffs: Vec<f64> = (0..=terms)
        .map(|k| binom_real(p - 2.0, 2 * k as u32 + 1) * (nc - ratio.powi(2 * k as i32 + 1)))
        .collect();

    let mut w = WorstTracker::new();
    // sign pattern: margin of "first positive" and "rest negative"
    w.add(coeffs[0], &[nf, p, 0.0]);
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        w.add(-c, &[nf, p, k as f64]);
    }
    let changes = coeffs
        .windows(2)
        .filter(|pair| (pair[0] > 0.0) != (pair[1] > 0.0))
        .count();
    if changes != 1 {
        w.add(f64::NEG_INFINITY, &[nf, p, changes as f64]);
    }
    // P_N(1) > 0 and P_N >= 0 on the grid (Horner in x²)
    let eval = |x: f64| {
        let x2 = x * x;
        let mut acc = 0.0;
        for &c in coeffs.iter().rev() {
            acc = acc * x2 + c;
        }
        acc * x
    };
    w.add(eval(1.0), &[nf, p, 1.0]);
    let grid = 10_000;
    for i in 0..=grid {
        let x = i as f64 / grid as f64;
        w.add(eval(x), &[nf, p, x]);
    }
    Ok(w.into_report("series_3plus"))
}

/// Convexity comparison behind the Dirac tail (`r >= 2`, integer `k >= 1`,
/// `y >= 1`): margin of
///
/// ```text
/// (1+ky)^r - 1 - (ky)^r  >=  (k+y)^r - k^r - y^r,
/// ```
///
/// an identity at `y = 1` (the terms are grouped so that case cancels
/// exactly).
pub fn check_proposition_p4(r: f64, k: u32, y: f64) -> Result<f64> {
    if r < 2.0 || k < 1 || y < 1.0 {
        return Err(Error::BadParameter(format!(
            "proposition needs r >= 2, k >= 1, y >= 1; got r = {r}, k = {k}, y = {y}"
        )));
    }
    let kf = k as f64;
    Ok(((1.0 + kf * y).powf(r) - (kf + y).powf(r))
        + (kf.powf(r) - (kf * y).powf(r))
        + (y.powf(r) - 1.0))
}

/// Monotonicity of `T` with the regime constant: increasing on `[0, 1]`
/// with `T(0) = 0` in the symmetric regime, decreasing with `T(1) = 0` in
/// the Dirac regime.  Checked on consecutive grid pairs, anchors
/// two-sided.
pub fn check_t_monotone(n: usize, p: f64, samples: usize) -> Result<CheckReport> {
    assert!(samples >= 2);
    let reg = constants::regime(n, p);
    let increasing = match reg.kind {
        RegimeKind::SymmetricRange => true,
        RegimeKind::DiracRange => false,
        other => {
            return Err(Error::BadParameter(format!(
                "T monotonicity is asserted in the symmetric and Dirac regimes, \
                 (n = {n}, p = {p}) is {other}"
            )))
        }
    };
    let c = reg.constant.expect("resolved").value;
    let mut w = WorstTracker::new();
    let anchor = if increasing { 0.0 } else { 1.0 };
    w.add(-t_function(n, p, c, anchor).abs(), &[n as f64, p, anchor]);
    let mut prev = t_function(n, p, c, 0.0);
    for i in 1..=samples {
        let x = i as f64 / samples as f64;
        let cur = t_function(n, p, c, x);
        let diff = if increasing { cur - prev } else { prev - cur };
        w.add(diff, &[n as f64, p, x]);
        prev = cur;
    }
    Ok(w.into_report("t_monotone"))
}

/// Nonnegativity and monotonicity of `α` on `[0, 1]` for `3 <= p < 4`
/// with `p` in `𝒜_n` (membership tested with a 1e-8 slack in `p`, so the
/// boundary itself is accepted).
pub fn check_alpha_nonneg(n: usize, p: f64, samples: usize) -> Result<CheckReport> {
    assert!(n >= 3 && samples >= 2);
    if !(3.0..4.0).contains(&p) || !in_a_n(n, p + 1e-8) {
        return Err(Error::BadParameter(format!(
            "α is asserted nonnegative on 𝒜_n ∩ [3, 4), (n = {n}, p = {p}) is outside"
        )));
    }
    let mut w = WorstTracker::new();
    let mut prev = alpha_function(n, p, 0.0);
    w.add(-prev.abs(), &[n as f64, p, 0.0]); // α(0) = 0
    for i in 1..=samples {
        let x = i as f64 / samples as f64;
        let cur = alpha_function(n, p, x);
        w.add(cur, &[n as f64, p, x]); // α >= 0
        w.add(cur - prev, &[n as f64, p, x]); // α' >= 0 (finite differences)
        prev = cur;
    }
    Ok(w.into_report("alpha_nonneg"))
}

/// Comparison of the endpoint ratio with the Dirac constant for `p >= 4`:
/// `((n-1)^(p-2) - 1)/n^(p-2) >= (1 + (n-1)^(p-1))/n^(p-1)`, equality at
/// `(n, p) = (3, 4)`.
pub fn check_dirac_vs_g_bound(n: usize, p: f64) -> Result<CheckReport> {
    assert!(n >= 3);
    if p < 4.0 {
        return Err(Error::BadParameter(format!(
            "Dirac comparison needs p >= 4, got {p}"
        )));
    }
    let nf = n as f64;
    let lhs = ((nf - 1.0).powf(p - 2.0) - 1.0) / nf.powf(p - 2.0);
    let rhs = (1.0 + (nf - 1.0).powf(p - 1.0)) / nf.powf(p - 1.0);
    Ok(CheckReport::new(
        "dirac_vs_g_bound",
        1,
        lhs - rhs,
        vec![nf, p],
    ))
}

/// Which checks [`run_checks`] knows about, in run order.
pub const CHECK_NAMES: [&str; 13] = [
    "perturbation",
    "expression_p_lt_2",
    "series_p_lt_2",
    "vx_decreasing",
    "mvt_bound",
    "g1_bound",
    "g1_gate",
    "g1_bound_improved",
    "series_3plus",
    "proposition_p4",
    "t_monotone",
    "alpha_nonneg",
    "dirac_vs_g_bound",
];

/// Grid configuration of the default suite.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// Vertex counts to sweep.
    pub ns: Vec<usize>,
    /// Explicit `p` values; `None` samples each check's valid interval.
    pub ps: Option<Vec<f64>>,
    /// Restrict to these check names; `None` runs everything.
    pub only: Option<Vec<String>>,
    /// `p` samples per valid interval when `ps` is `None`.
    pub p_samples: usize,
    /// Grid density of one-dimensional monotonicity scans.
    pub x_samples: usize,
    /// Truncation order for the series checks.
    pub series_terms: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            ns: (3..=20).collect(),
            ps: None,
            only: None,
            p_samples: 20,
            x_samples: 10_000,
            series_terms: 50,
        }
    }
}

impl CheckConfig {
    fn wants(&self, name: &str) -> bool {
        self.only
            .as_ref()
            .is_none_or(|names| names.iter().any(|n| n == name))
    }

    /// `p` grid for a check valid on `(lo, hi)`; `lo_open`/`hi_open`
    /// control endpoint inclusion.  Explicit `ps` are filtered to the
    /// interval.
    fn p_grid(&self, lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Vec<f64> {
        match &self.ps {
            Some(ps) => ps
                .iter()
                .copied()
                .filter(|&p| {
                    (if lo_open { p > lo } else { p >= lo })
                        && (if hi_open { p < hi } else { p <= hi })
                })
                .collect(),
            None => {
                let m = self.p_samples;
                (0..m)
                    .map(|i| {
                        let lo_eff = if lo_open { 1 } else { 0 };
                        let hi_eff = if hi_open { 1 } else { 0 };
                        let t = (i + lo_eff) as f64 / (m - 1 + lo_eff + hi_eff) as f64;
                        lo + (hi - lo) * t
                    })
                    .collect()
            }
        }
    }
}

fn aggregate<T, F>(name: &str, cells: Vec<T>, run: F) -> Option<CheckReport>
where
    T: Send,
    F: Fn(T) -> Option<CheckReport> + Sync + Send,
{
    let reports: Vec<CheckReport> = cells.into_par_iter().filter_map(run).collect();
    if reports.is_empty() {
        return None;
    }
    let mut w = WorstTracker::new();
    let mut samples = 0;
    for r in &reports {
        samples += r.samples;
        w.add(r.worst_margin, &r.worst_location);
    }
    w.samples = samples;
    Some(w.into_report(name))
}

/// Run the configured checks, one aggregated report per check name, in
/// [`CHECK_NAMES`] order.  Checks whose effective grid is empty are
/// omitted.
pub fn run_checks(cfg: &CheckConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let grid3 = GridSpec::default();

    if cfg.wants("perturbation") {
        let ps = cfg.p_grid(1.0, 2.0, true, true);
        out.extend(aggregate("perturbation", ps, |p| {
            check_perturbation(p, &grid3).ok()
        }));
    }
    if cfg.wants("expression_p_lt_2") {
        let cells: Vec<(u32, f64)> = k_cells(1..=10, cfg.p_grid(1.0, 2.0, true, true));
        out.extend(aggregate("expression_p_lt_2", cells, |(k, p)| {
            check_expression_p_lt_2(k, p, 2000).ok()
        }));
    }
    if cfg.wants("series_p_lt_2") {
        let cells: Vec<(u32, f64)> = k_cells(1..=10, cfg.p_grid(1.0, 2.0, true, true));
        let terms = cfg.series_terms;
        out.extend(aggregate("series_p_lt_2", cells, move |(k, p)| {
            check_series_p_lt_2(k, p, terms).ok()
        }));
    }
    if cfg.wants("vx_decreasing") {
        let cells: Vec<(usize, f64)> =
            n_cells(&cfg.ns, |_| cfg.p_grid(2.0, 3.0, true, false));
        out.extend(aggregate("vx_decreasing", cells, |(n, p)| {
            check_vx_decreasing(n, p, 1000).ok()
        }));
    }
    if cfg.wants("mvt_bound") {
        let cells: Vec<(usize, f64)> =
            n_cells(&cfg.ns, |_| cfg.p_grid(2.0, 3.0, false, false));
        out.extend(aggregate("mvt_bound", cells, |(n, p)| {
            check_mvt_bound(n, p).ok()
        }));
    }
    if cfg.wants("g1_bound") {
        let cells: Vec<(usize, f64)> =
            n_cells(&cfg.ns, |n| cfg.p_grid(3.0, 3.0 + delta1(n), true, false));
        out.extend(aggregate("g1_bound", cells, |(n, p)| {
            check_g1_bound(n, p).ok()
        }));
    }
    if cfg.wants("g1_gate") {
        let cells: Vec<(usize, f64)> =
            n_cells(&cfg.ns, |n| cfg.p_grid(3.0, 3.0 + delta1(n), true, false));
        out.extend(aggregate("g1_gate", cells, |(n, p)| {
            Some(CheckReport::new(
                "g1_gate",
                1,
                g1_gate_margin(n, p),
                vec![n as f64, p],
            ))
        }));
    }
    if cfg.wants("g1_bound_improved") {
        out.extend(aggregate("g1_bound_improved", cfg.ns.clone(), |n| {
            Some(check_g1_bound_improved(n))
        }));
    }
    if cfg.wants("series_3plus") {
        let cells: Vec<(usize, f64)> =
            n_cells(&cfg.ns, |n| cfg.p_grid(3.0, 3.0 + delta1(n), true, false));
        let terms = cfg.series_terms;
        out.extend(aggregate("series_3plus", cells, move |(n, p)| {
            check_series_3plus(n, p, terms).ok()
        }));
    }
    if cfg.wants("proposition_p4") {
        let mut cells = Vec::new();
        for ir in 0..=8 {
            let r = 2.0 + 0.5 * ir as f64;
            for k in 1..=10u32 {
                for iy in 0..40 {
                    let y = (50f64.ln() * iy as f64 / 39.0).exp();
                    cells.push((r, k, y));
                }
            }
        }
        // the terms reach (1 + ky)^r ~ 1e16 on this grid while the r = 2
        // line is an exact identity, so the aggregated margin is taken
        // relative to the leading term's scale
        out.extend(aggregate("proposition_p4", cells, |(r, k, y)| {
            check_proposition_p4(r, k, y).ok().map(|m| {
                let scale = (1.0 + k as f64 * y).powf(r).max(1.0);
                CheckReport::new("proposition_p4", 1, m / scale, vec![r, k as f64, y])
            })
        }));
    }
    if cfg.wants("t_monotone") {
        let mut cells: Vec<(usize, f64)> =
            n_cells(&cfg.ns, |n| cfg.p_grid(2.0, 3.0 + delta1(n), true, false));
        cells.extend(n_cells(&cfg.ns, |n| {
            cfg.p_grid(a_n_lower_edge(n).min(4.0), 8.0, false, false)
        }));
        let samples = cfg.x_samples;
        out.extend(aggregate("t_monotone", cells, move |(n, p)| {
            check_t_monotone(n, p, samples).ok()
        }));
    }
    if cfg.wants("alpha_nonneg") {
        let cells: Vec<(usize, f64)> = n_cells(&cfg.ns, |n| {
            let lo = a_n_lower_edge(n);
            if lo >= 4.0 {
                Vec::new()
            } else {
                cfg.p_grid(lo, 4.0, false, true)
            }
        });
        let samples = cfg.x_samples;
        out.extend(aggregate("alpha_nonneg", cells, move |(n, p)| {
            check_alpha_nonneg(n, p, samples).ok()
        }));
    }
    if cfg.wants("dirac_vs_g_bound") {
        let cells: Vec<(usize, f64)> =
            n_cells(&cfg.ns, |_| cfg.p_grid(4.0, 8.0, false, false));
        out.extend(aggregate("dirac_vs_g_bound", cells, |(n, p)| {
            check_dirac_vs_g_bound(n, p).ok()
        }));
    }
    out
}

/// Run every check on its default grid.
pub fn run_default_checks() -> Vec<CheckReport> {
    run_checks(&CheckConfig::default())
}

fn k_cells(ks: std::ops::RangeInclusive<u32>, ps: Vec<f64>) -> Vec<(u32, f64)> {
    let mut cells = Vec::new();
    for k in ks {
        for &p in &ps {
            cells.push((k, p));
        }
    }
    cells
}

fn n_cells(ns: &[usize], ps_of: impl Fn(usize) -> Vec<f64>) -> Vec<(usize, f64)> {
    let mut cells = Vec::new();
    for &n in ns {
        for p in ps_of(n) {
            cells.push((n, p));
        }
    }
    cells
}
