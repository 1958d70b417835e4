//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`) and enforcing its runtime
//! budget.  Criteria serialize on a lock so the timings are not skewed by
//! the harness running tests in parallel.

use std::sync::{Mutex, MutexGuard};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poincare_kn::constants::{
    c_dirac, c_symmetric, c_two_level, delta1, delta2, in_a_n, regime, unresolved_interval,
};
use poincare_kn::families::{dirac, lemma_quotient, three_level, two_level, FamilyLabel};
use poincare_kn::function::{Exponent, GraphFunction};
use poincare_kn::optimizer::{grid_search, scan_gap, stationarity_residual, verify_sharpness};
use poincare_kn::proofcheck::{check_proposition_p4, check_series_3plus, run_default_checks};
use poincare_kn::MaximizerFamily;

static SERIAL: Mutex<()> = Mutex::new(());

struct Criterion {
    name: &'static str,
    budget_secs: f64,
    start: Instant,
    _guard: MutexGuard<'static, ()>,
}

impl Criterion {
    fn begin(name: &'static str, budget_secs: f64) -> Self {
        let guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
        Self {
            name,
            budget_secs,
            start: Instant::now(),
            _guard: guard,
        }
    }

    fn finish(self, ok: bool, detail: String) {
        let elapsed = self.start.elapsed().as_secs_f64();
        let in_budget = elapsed < self.budget_secs;
        println!(
            "acceptance {:<28} {} ({elapsed:.2} s / {:.0} s budget) {detail}",
            self.name,
            if ok && in_budget { "PASS" } else { "FAIL" },
            self.budget_secs,
        );
        assert!(ok, "{}: {detail}", self.name);
        assert!(
            in_budget,
            "{}: took {elapsed:.2} s, budget {} s",
            self.name, self.budget_secs
        );
    }
}

fn random_function(rng: &mut ChaCha8Rng, n: usize) -> GraphFunction {
    loop {
        let values: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let f = GraphFunction::new(values).unwrap();
        if !f.is_constant() {
            return f;
        }
    }
}

/// 1. `rayleigh_quotient(f, 2) = 1/n` to 1e-12 relative for seeded random
///    functions, n = 3..12.
#[test]
fn criterion_01_p2_identity() {
    let c = Criterion::begin("01 p=2 identity", 1.0);
    let p2 = Exponent::new(2.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x01);
    let mut worst = 0.0f64;
    for n in 3..=12 {
        let target = 1.0 / n as f64;
        for _ in 0..1000 {
            let f = random_function(&mut rng, n);
            let q = f.rayleigh_quotient(p2).unwrap();
            worst = worst.max((q - target).abs() / target);
        }
    }
    c.finish(worst <= 1e-12, format!("worst relative error {worst:.2e}"));
}

/// 2. Two-level regime: multistart matches the closed form and
///    classifies balanced two-level; the grid oracle agrees.
#[test]
fn criterion_02_two_level_regime() {
    let c = Criterion::begin("02 regime (1,2)", 30.0);
    let mut worst_gap = 0.0f64;
    let mut detail = String::new();
    let mut ok = true;
    for n in 3..=8 {
        for p in [1.2, 1.5, 1.8] {
            match verify_sharpness(n, p, 1e-6, 0x02) {
                Ok(report) => {
                    worst_gap = worst_gap.max(report.abs_gap.unwrap());
                    if !report.family.matches(MaximizerFamily::BalancedTwoLevel, n) {
                        ok = false;
                        detail = format!("(n={n}, p={p}) classified {}", report.family);
                    }
                }
                Err(e) => {
                    ok = false;
                    detail = format!("(n={n}, p={p}): {e}");
                }
            }
        }
    }
    let mut worst_grid = 0.0f64;
    for n in 3..=5 {
        for p in [1.2, 1.5, 1.8] {
            let r = grid_search(n, p, 200).unwrap();
            worst_grid = worst_grid.max((r.best_value - c_two_level(n, p)).abs());
        }
    }
    ok &= worst_gap <= 1e-6 && worst_grid <= 1e-3;
    if detail.is_empty() {
        detail = format!("worst gap {worst_gap:.2e}, grid oracle gap {worst_grid:.2e}");
    }
    c.finish(ok, detail);
}

/// 3. Symmetric regime, including the extension past p = 3: value,
///    family, and midpoint location.
#[test]
fn criterion_03_symmetric_regime() {
    let c = Criterion::begin("03 symmetric regime", 30.0);
    let mut worst_gap = 0.0f64;
    let mut worst_mid = 0.0f64;
    let mut ok = true;
    let mut detail = String::new();
    for n in 3..=8 {
        for p in [2.5, 3.0, 3.0 + delta1(n) / 2.0] {
            match verify_sharpness(n, p, 1e-6, 0x03) {
                Ok(report) => {
                    worst_gap = worst_gap.max(report.abs_gap.unwrap());
                    worst_gap = worst_gap.max((report.closed_form.unwrap()
                        - c_symmetric(n, p))
                    .abs());
                    if report.family != FamilyLabel::SymmetricThreeLevelMidpoint {
                        ok = false;
                        detail = format!("(n={n}, p={p}) classified {}", report.family);
                    }
                    for &mid in &report.best_f.values()[1..n - 1] {
                        worst_mid = worst_mid.max((mid - 0.5).abs());
                    }
                }
                Err(e) => {
                    ok = false;
                    detail = format!("(n={n}, p={p}): {e}");
                }
            }
        }
    }
    ok &= worst_gap <= 1e-6 && worst_mid <= 1e-4;
    if detail.is_empty() {
        detail = format!("worst gap {worst_gap:.2e}, worst midpoint offset {worst_mid:.2e}");
    }
    c.finish(ok, detail);
}

/// 4. Dirac regime at p >= 4 and inside the (3, 4) window of `𝒜_n`.
#[test]
fn criterion_04_dirac_regime() {
    let c = Criterion::begin("04 dirac regime", 30.0);
    let mut cases: Vec<(usize, f64)> = Vec::new();
    for n in 3..=8 {
        for p in [4.0, 5.0, 8.0] {
            cases.push((n, p));
        }
    }
    assert!(in_a_n(10, 3.9), "precondition of the (10, 3.9) case");
    cases.push((10, 3.9));
    let mut worst_gap = 0.0f64;
    let mut ok = true;
    let mut detail = String::new();
    for (n, p) in cases {
        match verify_sharpness(n, p, 1e-6, 0x04) {
            Ok(report) => {
                worst_gap = worst_gap.max(report.abs_gap.unwrap());
                worst_gap =
                    worst_gap.max((report.closed_form.unwrap() - c_dirac(n, p)).abs());
                if !report.family.matches(MaximizerFamily::DiracDelta, n) {
                    ok = false;
                    detail = format!("(n={n}, p={p}) classified {}", report.family);
                }
            }
            Err(e) => {
                ok = false;
                detail = format!("(n={n}, p={p}): {e}");
            }
        }
    }
    ok &= worst_gap <= 1e-6;
    if detail.is_empty() {
        detail = format!("worst gap {worst_gap:.2e}");
    }
    c.finish(ok, detail);
}

/// 5. p = 1 bound with equality exactly on two-level functions.
#[test]
fn criterion_05_p1_bound() {
    let c = Criterion::begin("05 p=1 bound", 5.0);
    let p1 = Exponent::new(1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x05);
    let mut worst_violation = f64::NEG_INFINITY;
    for n in 3..=10 {
        let bound = 2.0 / n as f64;
        for _ in 0..10_000 {
            let f = random_function(&mut rng, n);
            let margin = f.deviation_power(p1) - bound * f.p_variation(p1);
            worst_violation = worst_violation.max(margin);
        }
    }
    let mut worst_eq = 0.0f64;
    for n in 3..=10 {
        let bound = 2.0 / n as f64;
        for k in 1..n {
            let f = two_level(n, k).unwrap();
            worst_eq = worst_eq.max((f.deviation_power(p1) - bound * f.p_variation(p1)).abs());
        }
    }
    let ok = worst_violation <= 1e-12 && worst_eq <= 1e-12;
    c.finish(
        ok,
        format!("worst margin {worst_violation:.2e}, worst two-level deviation {worst_eq:.2e}"),
    );
}

/// 6. Threshold asymptotics of δ¹ and δ² up to n = 10^6.
#[test]
fn criterion_06_threshold_asymptotics() {
    let c = Criterion::begin("06 threshold asymptotics", 1.0);
    let mut ok = true;
    let mut detail = String::new();
    for k in 1..=6u32 {
        let n = 10usize.pow(k);
        let nf = n as f64;
        let d1_err = (delta1(n) * 2.0 * nf * nf * nf.ln() - 1.0).abs();
        let d2_err = (delta2(n) - 2.0 / nf).abs();
        if d1_err > 10.0 / nf || d2_err > 10.0 / (nf * nf) {
            ok = false;
        }
        if k == 6 {
            detail = format!("n=10^6: d1 err {d1_err:.2e} (cap {:.0e}), d2 err {d2_err:.2e} (cap {:.0e})", 10.0/nf, 10.0/(nf*nf));
        }
    }
    c.finish(ok, detail);
}

/// 7. Stationarity residual vanishes at the closed-form extremizers.
#[test]
fn criterion_07_stationarity() {
    let c = Criterion::begin("07 stationarity", 1.0);
    let mut worst = 0.0f64;
    for n in 3..=12 {
        for p in [2.5, 3.0, 3.0 + delta1(n) / 2.0] {
            let f = three_level(n, 0.0).unwrap();
            let r = stationarity_residual(&f, p, c_symmetric(n, p)).unwrap();
            worst = worst.max(r.abs());
        }
        for p in [4.0, 5.0, 8.0] {
            let r = stationarity_residual(&dirac(n), p, c_dirac(n, p)).unwrap();
            worst = worst.max(r.abs());
        }
    }
    // hand anchors, zero in exact arithmetic
    let f = GraphFunction::new(vec![1.0, 0.5, 0.0]).unwrap();
    let anchor1 = stationarity_residual(&f, 3.0, 0.2).unwrap().abs();
    let f = GraphFunction::new(vec![1.0, 0.0, 0.0]).unwrap();
    let anchor2 = stationarity_residual(&f, 5.0, 17.0 / 243.0).unwrap().abs();
    let ok = worst <= 1e-8 && anchor1 <= 1e-15 && anchor2 <= 1e-15;
    c.finish(
        ok,
        format!("worst residual {worst:.2e}, anchors {anchor1:.1e} / {anchor2:.1e}"),
    );
}

/// 8. Every proof check passes on its default grid.
#[test]
fn criterion_08_proofcheck_suite() {
    let c = Criterion::begin("08 proofcheck suite", 60.0);
    let reports = run_default_checks();
    let mut ok = !reports.is_empty();
    let mut detail = String::new();
    for r in &reports {
        if !r.passed {
            ok = false;
            detail = format!(
                "{} failed: margin {:.3e} at {:?}",
                r.name, r.worst_margin, r.worst_location
            );
        }
    }
    // the y = 1 identity, spelled out
    for ir in 0..=8 {
        let r = 2.0 + 0.5 * ir as f64;
        for k in 1..=10 {
            if check_proposition_p4(r, k, 1.0).unwrap().abs() > 1e-12 {
                ok = false;
                detail = format!("proposition identity broken at r={r}, k={k}");
            }
        }
    }
    // the Descartes sign pattern at N = 50 (a failure would surface as a
    // -inf margin)
    for n in [3usize, 10, 20] {
        let rep = check_series_3plus(n, 3.0 + delta1(n), 50).unwrap();
        if !rep.passed {
            ok = false;
            detail = format!("series_3plus N=50 failed at n={n}");
        }
    }
    if detail.is_empty() {
        detail = format!("{} checks, all passed", reports.len());
    }
    c.finish(ok, detail);
}

/// 9. The two-point quotient stays below the regime constant for 10^5
///    seeded random sorted functions per resolved pair of criteria 2-4.
#[test]
fn criterion_09_lemma_inequality() {
    let c = Criterion::begin("09 lemma inequality", 60.0);
    let mut pairs: Vec<(usize, f64)> = Vec::new();
    for n in 3..=8 {
        for p in [1.2, 1.5, 1.8, 2.5, 3.0, 3.0 + delta1(n) / 2.0, 4.0, 5.0, 8.0] {
            pairs.push((n, p));
        }
    }
    pairs.push((10, 3.9));
    let mut rng = ChaCha8Rng::seed_from_u64(0x09);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_at = (0usize, 0.0f64);
    for (n, p) in pairs {
        let constant = regime(n, p).constant.expect("resolved grid").value;
        for _ in 0..100_000 {
            let f = random_function(&mut rng, n).sort_descending();
            let q = lemma_quotient(&f, p).unwrap();
            let excess = q - constant;
            if excess > worst_excess {
                worst_excess = excess;
                worst_at = (n, p);
            }
        }
    }
    c.finish(
        worst_excess <= 1e-10,
        format!(
            "worst excess {worst_excess:.2e} at (n={}, p={})",
            worst_at.0, worst_at.1
        ),
    );
}

/// 10. Gap scan sanity for n = 3: the numeric supremum dominates the
///     closed-form candidates and meets the adjacent regimes at the
///     endpoints.
#[test]
fn criterion_10_gap_scan() {
    let c = Criterion::begin("10 gap scan", 60.0);
    let rows = scan_gap(3, 50, 0x10).unwrap();
    let (lo, hi) = unresolved_interval(3).unwrap();
    let mut ok = rows.len() == 50;
    let mut detail = String::new();
    let mut worst = f64::NEG_INFINITY;
    for row in &rows {
        worst = worst.max(row.candidate.value - row.best_value);
    }
    if worst > 1e-6 {
        ok = false;
        detail = format!("candidate exceeded numeric sup by {worst:.2e}");
    }
    let left = (rows.first().unwrap().best_value - c_symmetric(3, lo)).abs();
    let right = (rows.last().unwrap().best_value - c_dirac(3, hi)).abs();
    if left > 1e-4 || right > 1e-4 {
        ok = false;
        detail = format!("endpoint mismatch: left {left:.2e}, right {right:.2e}");
    }
    if detail.is_empty() {
        detail = format!(
            "candidate slack {:.2e}, endpoint gaps {left:.2e} / {right:.2e}",
            -worst
        );
    }
    c.finish(ok, detail);
}
