//! Seeded property runs behind `schmidt-locc verify`.
//!
//! Each suite returns a [`SuiteReport`] with the number of checked cases,
//! the number of failures and the first failing case (in trial order) as
//! JSON. Trials run in parallel; every trial draws from its own generator
//! (see [`trial_rng`]) so reports do not depend on scheduling.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::equal_entropy::{complete_partner, differing_count, lift, reduce_all_shared};
use crate::order::{classify, incomparable_rank3_fast, Relation};
use crate::sampling::{random_interior, random_majorized_pair, random_simplex, trial_rng};
use crate::schmidt::{entropy, make_schmidt, SchmidtVector, SearchConfig, ZERO_EPS};
use crate::schur::{gradient_check, schur_witness, verify_theorem1, verify_theorem2};

/// Strict-gap floor for nontrivial conversions, in bits.
pub const GAP_FLOOR: f64 = 1e-13;
/// Pairs must differ by at least this much somewhere for the strict-gap check.
pub const GAP_SEPARATION: f64 = 1e-4;
/// Agreement required between the direct and telescoped entropy gaps.
pub const GAP_IDENTITY_TOL: f64 = 1e-10;
/// Coefficient pairs closer than this are skipped by the Schur sign check.
pub const SCHUR_SEPARATION: f64 = 1e-6;
pub const GRADIENT_STEP: f64 = 1e-6;
pub const GRADIENT_TOL: f64 = 1e-6;
/// Per-coefficient agreement for the rank-3 uniqueness round trip.
pub const THEOREM1_TOL: f64 = 1e-9;
/// Entropy agreement of reduced pairs after rescaling, in bits.
pub const REDUCTION_ENTROPY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Schur,
    Eq5,
    Reduction,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Theorem1, Suite::Theorem2, Suite::Schur, Suite::Eq5, Suite::Reduction];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Schur => "schur",
            Suite::Eq5 => "eq5",
            Suite::Reduction => "reduction",
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn tally(suite: Suite, outcomes: Vec<Vec<std::result::Result<(), String>>>) -> Self {
        let mut checked = 0;
        let mut failures = 0;
        let mut first_counterexample = None;
        for outcome in outcomes.into_iter().flatten() {
            checked += 1;
            if let Err(case) = outcome {
                failures += 1;
                first_counterexample.get_or_insert(case);
            }
        }
        SuiteReport {
            suite,
            checked,
            failures,
            first_counterexample,
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checked, {} passed, {} failed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite.name(),
            self.checked,
            self.checked - self.failures,
            self.failures
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn pair_case(a: &SchmidtVector, b: &SchmidtVector, reason: &str) -> String {
    format!(
        "{{\"a\":{},\"b\":{},\"reason\":\"{}\"}}",
        a.to_json(),
        b.to_json(),
        escape(reason)
    )
}

fn vector_case(v: &SchmidtVector, reason: &str) -> String {
    format!("{{\"v\":{},\"reason\":\"{}\"}}", v.to_json(), escape(reason))
}

fn max_abs_diff(a: &SchmidtVector, b: &SchmidtVector) -> f64 {
    let len = a.rank().max(b.rank());
    a.padded(len)
        .iter()
        .zip(b.padded(len))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn run(suite: Suite, trials: usize, seed: u64, cfg: &SearchConfig) -> SuiteReport {
    match suite {
        Suite::Theorem1 => run_theorem1(trials, seed, cfg),
        Suite::Theorem2 => run_theorem2(trials, seed, cfg),
        Suite::Schur => run_schur(trials, seed, cfg),
        Suite::Eq5 => run_eq5(100, cfg),
        Suite::Reduction => run_reduction(trials, seed, cfg),
    }
}

/// Rank-3 uniqueness round trip: `trials` random vectors, each shared index.
pub fn run_theorem1(trials: usize, seed: u64, cfg: &SearchConfig) -> SuiteReport {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, Suite::Theorem1.stream(), t as u64);
            let v = random_simplex(&mut rng, 3);
            (1..=3)
                .map(|i| match verify_theorem1(&v, i, cfg) {
                    Ok(w) if max_abs_diff(&v, &w) <= THEOREM1_TOL => Ok(()),
                    Ok(w) => Err(pair_case(&v, &w, &format!("shared index {i}: solution differs"))),
                    Err(e) => Err(vector_case(&v, &format!("shared index {i}: {e}"))),
                })
                .collect()
        })
        .collect();
    SuiteReport::tally(Suite::Theorem1, outcomes)
}

/// Strict entropy decrease along conversions: `trials` comparable,
/// non-equivalent pairs for each rank 2..=6.
pub fn run_theorem2(trials: usize, seed: u64, cfg: &SearchConfig) -> SuiteReport {
    let outcomes = (2..=6usize)
        .flat_map(|d| (0..trials).map(move |t| (d, t)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(d, t)| {
            let mut rng = trial_rng(seed, Suite::Theorem2.stream(), (d * trials + t) as u64);
            let pair = (0..1000)
                .map(|_| random_majorized_pair(&mut rng, d))
                .find(|(a, b)| classify(a, b, cfg.coeff_tol).relation == Relation::AtoB);
            let Some((a, b)) = pair else {
                return vec![Err(format!("{{\"reason\":\"no comparable pair sampled at rank {d}\"}}"))];
            };
            let check = match verify_theorem2(&a, &b, cfg.coeff_tol) {
                Err(e) => Err(pair_case(&a, &b, &e.to_string())),
                Ok(r) if r.identity_error() > GAP_IDENTITY_TOL => Err(pair_case(
                    &a,
                    &b,
                    &format!("gap identity off by {}", r.identity_error()),
                )),
                Ok(r) if max_abs_diff(&a, &b) >= GAP_SEPARATION && !(r.direct_gap > GAP_FLOOR) => {
                    Err(pair_case(&a, &b, &format!("entropy gap {} not strictly positive", r.direct_gap)))
                }
                Ok(_) => Ok(()),
            };
            vec![check]
        })
        .collect();
    SuiteReport::tally(Suite::Theorem2, outcomes)
}

/// Sign of the Schur witness on random vectors (ranks 2..=6) and the
/// finite-difference check of the entropy gradient on interior vectors.
pub fn run_schur(trials: usize, seed: u64, _cfg: &SearchConfig) -> SuiteReport {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, Suite::Schur.stream(), t as u64);
            let d = 2 + t % 5;
            let v = random_simplex(&mut rng, d);
            let mut checks = Vec::new();
            for i in 1..=d {
                for j in (i + 1)..=d {
                    let (li, lj) = (v.coeffs()[i - 1], v.coeffs()[j - 1]);
                    if (li - lj).abs() <= SCHUR_SEPARATION || lj <= ZERO_EPS {
                        continue;
                    }
                    checks.push(match schur_witness(&v, i, j) {
                        Ok(w) if w.product < 0.0 => Ok(()),
                        Ok(w) => Err(vector_case(&v, &format!("witness ({i},{j}) = {}", w.product))),
                        Err(e) => Err(vector_case(&v, &e.to_string())),
                    });
                }
            }
            let interior = random_interior(&mut rng, d);
            checks.push(match gradient_check(&interior, GRADIENT_STEP) {
                Ok(err) if err <= GRADIENT_TOL => Ok(()),
                Ok(err) => Err(vector_case(&interior, &format!("gradient error {err}"))),
                Err(e) => Err(vector_case(&interior, &e.to_string())),
            });
            checks
        })
        .collect();
    SuiteReport::tally(Suite::Schur, outcomes)
}

/// Sorted rank-3 vectors `(i, j, k) / n` with `i >= j >= k >= 1`.
pub fn rank3_grid(n: usize) -> Vec<SchmidtVector> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            if i + j >= n {
                continue;
            }
            let k = n - i - j;
            if k >= 1 && k <= j {
                let nf = n as f64;
                out.push(make_schmidt(&[i as f64 / nf, j as f64 / nf, k as f64 / nf]).expect("grid point"));
            }
        }
    }
    out
}

/// Exhaustive agreement of the rank-3 shortcut with the full prefix-sum
/// classification over all ordered pairs of [`rank3_grid`]`(n)`.
pub fn run_eq5(n: usize, cfg: &SearchConfig) -> SuiteReport {
    let grid = rank3_grid(n);
    let outcomes = grid
        .par_iter()
        .map(|a| {
            grid.iter()
                .map(|b| {
                    let general = classify(a, b, cfg.coeff_tol).relation == Relation::Incomparable;
                    match incomparable_rank3_fast(a, b, cfg.coeff_tol) {
                        Ok(fast) if fast == general => Ok(()),
                        Ok(fast) => Err(pair_case(a, b, &format!("shortcut says {fast}, prefix sums say {general}"))),
                        Err(e) => Err(pair_case(a, b, &e.to_string())),
                    }
                })
                .collect()
        })
        .collect();
    SuiteReport::tally(Suite::Eq5, outcomes)
}

/// Random equal-entropy pair of rank `n` differing in every coefficient.
pub fn random_equal_entropy_pair<R: Rng>(
    rng: &mut R,
    n: usize,
    cfg: &SearchConfig,
) -> Option<(SchmidtVector, SchmidtVector)> {
    for _ in 0..1000 {
        let v = random_interior(rng, n);
        let prefix: Vec<f64> = v.coeffs()[..n - 2]
            .iter()
            .map(|&c| c + rng.random_range(-0.03..0.03))
            .collect();
        let Ok(p) = complete_partner(&v, &prefix, cfg) else {
            continue;
        };
        if differing_count(&v, &p.partner, 1e-6).ok() == Some(n) {
            return Some((v, p.partner));
        }
    }
    None
}

/// Lifts a rank-`(d - k)` equal-entropy pair `k` times, retrying each `kappa`
/// until it lands at the same position in both vectors, so the result shares
/// exactly `k` coefficients index by index.
pub fn random_shared_pair<R: Rng>(
    rng: &mut R,
    d: usize,
    k: usize,
    cfg: &SearchConfig,
) -> Option<(SchmidtVector, SchmidtVector)> {
    let base = d - k;
    let (mut a, mut b) = random_equal_entropy_pair(rng, base, cfg)?;
    for _ in 0..k {
        let differing = differing_count(&a, &b, cfg.coeff_tol).ok()?;
        let lifted = (0..1000).find_map(|_| {
            let kappa = rng.random_range(0.02..0.6);
            let (la, lb) = lift(&a, &b, kappa).ok()?;
            (differing_count(&la, &lb, cfg.coeff_tol).ok()? == differing).then_some((la, lb))
        })?;
        (a, b) = lifted;
    }
    Some((a, b))
}

/// Rank-`d` equal-entropy incomparable pairs sharing `k` coefficients
/// (cycling through `d` in {5, 6}, `k` in {1, 2}) reduce to rank-`(d - k)`
/// pairs that keep equal entropy, stay incomparable and differ everywhere.
pub fn run_reduction(trials: usize, seed: u64, cfg: &SearchConfig) -> SuiteReport {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, Suite::Reduction.stream(), t as u64);
            let (d, k) = [(5, 1), (5, 2), (6, 1), (6, 2)][t % 4];
            vec![reduction_case(&mut rng, d, k, cfg)]
        })
        .collect();
    SuiteReport::tally(Suite::Reduction, outcomes)
}

fn reduction_case<R: Rng>(rng: &mut R, d: usize, k: usize, cfg: &SearchConfig) -> std::result::Result<(), String> {
    let (a, b) = random_shared_pair(rng, d, k, cfg)
        .ok_or_else(|| format!("{{\"reason\":\"no rank-{d} pair sharing {k} coefficients sampled\"}}"))?;
    if classify(&a, &b, cfg.coeff_tol).relation != Relation::Incomparable {
        return Err(pair_case(&a, &b, "constructed pair is not incomparable"));
    }
    let (chi, eta) = reduce_all_shared(&a, &b, cfg.coeff_tol).map_err(|e| pair_case(&a, &b, &e.to_string()))?;
    if chi.rank() != d - k {
        return Err(pair_case(&chi, &eta, &format!("reduced to rank {} instead of {}", chi.rank(), d - k)));
    }
    let gap = (entropy(&chi).bits() - entropy(&eta).bits()).abs();
    if gap > REDUCTION_ENTROPY_TOL {
        return Err(pair_case(&chi, &eta, &format!("reduced entropies differ by {gap}")));
    }
    if classify(&chi, &eta, cfg.coeff_tol).relation != Relation::Incomparable {
        return Err(pair_case(&chi, &eta, "reduced pair is comparable"));
    }
    if differing_count(&chi, &eta, cfg.coeff_tol).ok() != Some(d - k) {
        return Err(pair_case(&chi, &eta, "reduced pair shares a coefficient"));
    }
    Ok(())
}
