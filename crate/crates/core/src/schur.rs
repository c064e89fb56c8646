//! Schur concavity of the entanglement entropy, and checks of its two
//! consequences for pure states:
//!
//! * a nontrivial LOCC conversion `a -> b` strictly lowers the entropy,
//!   witnessed by an exact decomposition of `E(a) - E(b)` into two
//!   non-negative parts;
//! * two rank-3 states with equal entropy that share one coefficient are
//!   identical.

use std::f64::consts::{LN_2, LOG2_E};

use crate::bisect::bisect_decreasing;
use crate::error::{Error, Result};
use crate::order::{classify, convertible, epsilon_profile, EpsilonProfile, Relation};
use crate::schmidt::{entropy, make_schmidt, plogp, SchmidtVector, SearchConfig, ZERO_EPS};

/// Sign witness `(l_i - l_j)(dE/dl_i - dE/dl_j)` for a pair of coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurWitness {
    pub i: usize,
    pub j: usize,
    pub product: f64,
}

/// Evaluates the Schur condition for entropy at 1-based indices `i`, `j`.
///
/// With `dE/dl = -log2 l - log2 e` the product collapses to
/// `(l_i - l_j) log2(l_j / l_i)`, negative whenever the coefficients differ.
pub fn schur_witness(v: &SchmidtVector, i: usize, j: usize) -> Result<SchurWitness> {
    let li = v.get(i)?;
    let lj = v.get(j)?;
    for (index, l) in [(i, li), (j, lj)] {
        if l <= ZERO_EPS {
            return Err(Error::BoundaryCoefficient { index });
        }
    }
    Ok(SchurWitness {
        i,
        j,
        product: (li - lj) * (lj / li).log2(),
    })
}

/// Analytic partial derivative of the unconstrained `-sum l log2 l`.
pub fn entropy_partial(l: f64) -> f64 {
    -l.log2() - LOG2_E
}

/// Largest deviation between [`entropy_partial`] and a central finite
/// difference of `-sum l log2 l`, taken coordinate by coordinate without
/// projecting onto the simplex.
pub fn gradient_check(v: &SchmidtVector, step: f64) -> Result<f64> {
    let min_coeff = v.coeffs().iter().copied().fold(f64::INFINITY, f64::min);
    if !(step > 0.0) || min_coeff <= 10.0 * step {
        return Err(Error::StepTooLarge { step, min_coeff });
    }
    let unconstrained = |x: &[f64]| -> f64 { x.iter().map(|&l| -plogp(l)).sum() };

    let mut work = v.coeffs().to_vec();
    let mut worst = 0.0f64;
    for k in 0..work.len() {
        let orig = work[k];
        work[k] = orig + step;
        let up = unconstrained(&work);
        work[k] = orig - step;
        let down = unconstrained(&work);
        work[k] = orig;
        let fd = (up - down) / (2.0 * step);
        worst = worst.max((fd - entropy_partial(orig)).abs());
    }
    Ok(worst)
}

/// Entropy gap `E(a) - E(b)` computed two ways.
///
/// With `eps_k = S_k(b) - S_k(a)` one has `a_i = b_i - eps_i + eps_{i-1}`
/// (`eps_0 = eps_d = 0`), and summation by parts gives
///
/// `E(a) - E(b) = D(b || a) + sum_k eps_k log2(a_k / a_{k+1})`
///
/// where `D` is the relative entropy in bits. For `a -> b` both terms are
/// non-negative and `D` vanishes only when `a = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub direct_gap: f64,
    pub telescoped_gap: f64,
    /// `D(b || a)` in bits.
    pub divergence: f64,
    /// `sum_k eps_k log2(a_k / a_{k+1})`.
    pub ordering: f64,
    pub epsilons: EpsilonProfile,
}

impl GapReport {
    pub fn identity_error(&self) -> f64 {
        (self.direct_gap - self.telescoped_gap).abs()
    }
}

/// Decomposes the entropy gap; meaningful whenever the support of `b` lies
/// inside the support of `a` (always true when `a -> b`).
pub fn entropy_gap_decomposition(a: &SchmidtVector, b: &SchmidtVector) -> GapReport {
    let len = a.rank().max(b.rank());
    let (pa, pb) = (a.padded(len), b.padded(len));
    let epsilons = epsilon_profile(a, b);

    let divergence: f64 = pa
        .iter()
        .zip(&pb)
        .map(|(&x, &y)| {
            if y <= 0.0 {
                0.0
            } else if x <= 0.0 {
                f64::INFINITY
            } else {
                y * (y / x).log2()
            }
        })
        .sum();

    // Terms with a_{k+1} = 0 carry eps_k = 0 under a -> b and are dropped.
    let ordering: f64 = epsilons
        .epsilons
        .iter()
        .enumerate()
        .filter(|&(k, _)| pa[k + 1] > ZERO_EPS)
        .map(|(k, &e)| e * (pa[k] / pa[k + 1]).log2())
        .sum();

    GapReport {
        direct_gap: entropy(a).bits() - entropy(b).bits(),
        telescoped_gap: divergence + ordering,
        divergence,
        ordering,
        epsilons,
    }
}

/// Gap report for a nontrivial conversion `a -> b`.
///
/// Strict positivity of `direct_gap` is the property under test; this
/// function only enforces the preconditions.
pub fn verify_theorem2(a: &SchmidtVector, b: &SchmidtVector, coeff_tol: f64) -> Result<GapReport> {
    if !convertible(a, b, coeff_tol) {
        return Err(Error::NotConvertible);
    }
    if classify(a, b, coeff_tol).relation == Relation::Equivalent {
        return Err(Error::EquivalentPair);
    }
    Ok(entropy_gap_decomposition(a, b))
}

/// `1 - h((1 + u) / 2)` in bits: the binary-entropy deficit of a two-level
/// distribution with imbalance `u`, accurate to full relative precision as
/// `u -> 0`.
fn binary_deficit(u: f64) -> f64 {
    if u >= 1.0 {
        return 1.0;
    }
    ((1.0 + u) * u.ln_1p() + (1.0 - u) * (-u).ln_1p()) / (2.0 * LN_2)
}

/// Solves for the rank-3 vector sharing `v[shared_index]` with `v` and having
/// the same entropy, and checks that the solution is `v` itself.
///
/// Fixing `kappa = v[shared_index]` leaves the mass `1 - kappa` split between
/// two coefficients; by grouping, equal entropy reduces to equal binary
/// entropy of that split. The rank-2 equation is solved by bisection in
/// deficit form `1 - h`, which stays well conditioned near the balanced split
/// where `h` itself is flat.
pub fn verify_theorem1(v: &SchmidtVector, shared_index: usize, cfg: &SearchConfig) -> Result<SchmidtVector> {
    cfg.validate()?;
    if v.effective_rank() != 3 || v.rank() != 3 {
        return Err(Error::WrongRank {
            expected: 3,
            found: v.effective_rank(),
        });
    }
    let kappa = v.get(shared_index)?;
    let rest: Vec<f64> = (1..=3)
        .filter(|&i| i != shared_index)
        .map(|i| v.coeffs()[i - 1])
        .collect();
    let mass = 1.0 - kappa;
    let (hi_share, lo_share) = (rest[0] / mass, rest[1] / mass);

    let target_deficit = binary_deficit(hi_share - lo_share);
    let solved = bisect_decreasing(|u| -binary_deficit(u), 0.0, 1.0, -target_deficit, cfg, false)?;
    let u = solved.root;

    let w = make_schmidt(&[kappa, 0.5 * mass * (1.0 + u), 0.5 * mass * (1.0 - u)])?;
    let residual = entropy(&w).bits() - entropy(v).bits();
    if residual.abs() > cfg.entropy_tol {
        return Err(Error::NoSolution(format!(
            "solved vector misses the target entropy by {residual} bits"
        )));
    }
    let same = w
        .coeffs()
        .iter()
        .zip(v.coeffs())
        .all(|(x, y)| (x - y).abs() <= cfg.coeff_tol);
    if !same {
        return Err(Error::UniquenessViolated {
            found: w.coeffs().to_vec(),
            expected: v.coeffs().to_vec(),
        });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sv(x: &[f64]) -> SchmidtVector {
        make_schmidt(x).unwrap()
    }

    #[test]
    fn witness_examples() {
        let w = schur_witness(&sv(&[0.5, 0.3, 0.2]), 1, 2).unwrap();
        // mpmath: .2 * log2(.6) = -0.14739311883324123
        assert_abs_diff_eq!(w.product, -0.14739311883324123, epsilon = 1e-15);
        let third = 1.0 / 3.0;
        assert_eq!(schur_witness(&sv(&[third; 3]), 1, 3).unwrap().product, 0.0);
        let w = schur_witness(&sv(&[0.45, 0.39, 0.16]), 1, 3).unwrap();
        // mpmath: .29 * log2(.16/.45) = -0.43263739793560567
        assert_abs_diff_eq!(w.product, -0.43263739793560567, epsilon = 1e-15);
    }

    #[test]
    fn witness_agrees_with_partials() {
        let v = sv(&[0.45, 0.39, 0.16]);
        for i in 1..=3 {
            for j in 1..=3 {
                let (li, lj) = (v.get(i).unwrap(), v.get(j).unwrap());
                let expect = (li - lj) * (entropy_partial(li) - entropy_partial(lj));
                assert_abs_diff_eq!(schur_witness(&v, i, j).unwrap().product, expect, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn witness_errors() {
        let v = sv(&[0.5, 0.5, 0.0]);
        assert!(matches!(schur_witness(&v, 1, 3), Err(Error::BoundaryCoefficient { index: 3 })));
        assert!(matches!(schur_witness(&v, 0, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(schur_witness(&v, 1, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn gradient_examples() {
        for v in [&[0.5, 0.3, 0.2][..], &[0.25; 4], &[0.45, 0.39, 0.16]] {
            assert!(gradient_check(&sv(v), 1e-6).unwrap() <= 1e-6);
        }
        assert!(matches!(
            gradient_check(&sv(&[0.9, 0.1]), 0.02),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(gradient_check(&sv(&[1.0, 0.0]), 1e-6).is_err());
    }

    #[test]
    fn theorem2_examples() {
        let r = verify_theorem2(&sv(&[0.4, 0.35, 0.25]), &sv(&[0.5, 0.3, 0.2]), 1e-9).unwrap();
        // mpmath: 1.5588718484453603 - 1.4854752972273343
        assert_abs_diff_eq!(r.direct_gap, 0.0733965512180260, epsilon = 1e-14);
        assert!(r.identity_error() <= 1e-10);
        assert!(r.divergence > 0.0 && r.ordering >= 0.0);

        let r = verify_theorem2(&sv(&[0.5, 0.5, 0.0]), &sv(&[1.0, 0.0, 0.0]), 1e-9).unwrap();
        assert_eq!(r.direct_gap, 1.0);
        assert_abs_diff_eq!(r.telescoped_gap, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn theorem2_preconditions() {
        let v = sv(&[0.45, 0.39, 0.16]);
        assert!(matches!(verify_theorem2(&v, &v, 1e-9), Err(Error::EquivalentPair)));
        let phi = sv(&[0.49, 0.33676028, 0.17323972]);
        assert!(matches!(verify_theorem2(&v, &phi, 1e-9), Err(Error::NotConvertible)));
    }

    #[test]
    fn deficit_matches_binary_entropy() {
        for &u in &[0.0, 1e-3, 0.2, 0.5, 0.99] {
            let h = crate::schmidt::binary_entropy((1.0 + u) / 2.0).unwrap().bits();
            assert_abs_diff_eq!(binary_deficit(u), 1.0 - h, epsilon = 1e-15);
        }
        assert_eq!(binary_deficit(1.0), 1.0);
    }

    #[test]
    fn theorem1_examples() {
        let cfg = SearchConfig::default();
        let v = sv(&[0.45, 0.39, 0.16]);
        assert_eq!(verify_theorem1(&v, 1, &cfg).unwrap().coeffs().len(), 3);
        let third = 1.0 / 3.0;
        let u = sv(&[third; 3]);
        let w = verify_theorem1(&u, 2, &cfg).unwrap();
        for c in w.coeffs() {
            assert_abs_diff_eq!(*c, third, epsilon = 1e-12);
        }
        let v = sv(&[0.5, 0.3, 0.2]);
        let w = verify_theorem1(&v, 3, &cfg).unwrap();
        for (x, y) in w.coeffs().iter().zip(v.coeffs()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn theorem1_rank_check() {
        let cfg = SearchConfig::default();
        assert!(matches!(
            verify_theorem1(&sv(&[0.5, 0.5, 0.0]), 1, &cfg),
            Err(Error::WrongRank { .. })
        ));
        assert!(matches!(
            verify_theorem1(&sv(&[0.25; 4]), 1, &cfg),
            Err(Error::WrongRank { .. })
        ));
        assert!(verify_theorem1(&sv(&[0.5, 0.3, 0.2]), 4, &cfg).is_err());
    }
}
