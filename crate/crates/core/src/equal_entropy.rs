//! Constructing states with exactly the entropy of a given state but
//! different Schmidt coefficients.
//!
//! Fixing every coefficient but the last two, the entropy is a strictly
//! decreasing function of the second-to-last coefficient on the range that
//! keeps the vector sorted, so the equal-entropy partner is found by
//! bisection. Such a partner is never comparable with the input: a
//! nontrivial conversion always loses entropy.
//!
//! [`lift`] and [`reduce_shared`] move equal-entropy pairs between adjacent
//! ranks by inserting or removing a common coefficient `kappa` and rescaling
//! the rest by `1 - kappa`.

use rayon::prelude::*;

use crate::bisect::bisect_decreasing;
use crate::error::{Error, Result};
use crate::order::{classify, Relation};
use crate::schmidt::{binary_entropy, entropy, make_schmidt, shannon_bits, EntropyValue, SchmidtVector, SearchConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct PartnerResult {
    pub partner: SchmidtVector,
    /// `E(partner) - E(input)` in bits.
    pub entropy_residual: f64,
    /// Relation of `(input, partner)`.
    pub classification: Relation,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRecord {
    pub beta1: f64,
    pub partner: SchmidtVector,
    pub entropy_residual: f64,
    pub differing_coeffs: usize,
    pub classification: Relation,
}

/// Result of a sweep over the top coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySweep {
    /// Feasible grid points, ascending in `beta1`.
    pub records: Vec<FamilyRecord>,
    /// Grid points where the target entropy is unreachable.
    pub gaps: Vec<f64>,
}

/// Largest entropy of a sorted rank-`rank` vector whose top coefficient is
/// `beta1`: `h(beta1) + (1 - beta1) log2(rank - 1)`.
pub fn max_entropy_given_top(beta1: f64, rank: usize) -> Result<EntropyValue> {
    if rank < 2 || !(beta1 >= 1.0 / rank as f64 - 1e-15 && beta1 < 1.0) {
        return Err(Error::OutOfDomain {
            value: beta1,
            domain: "[1/rank, 1)",
        });
    }
    let h = binary_entropy(beta1.min(1.0))?.bits();
    Ok(EntropyValue(h + (1.0 - beta1) * ((rank - 1) as f64).log2()))
}

/// Completes `prefix` (the leading `d - 2` coefficients) into a sorted
/// rank-`d` vector with the entropy of `v`.
///
/// The free coefficient ranges over `[r/2, min(prefix_last, r)]`, where `r` is
/// the mass left by the prefix: the lower end balances the last two entries
/// (maximal entropy), the upper end pushes the second-to-last as high as the
/// ordering allows (minimal entropy).
pub fn complete_partner(v: &SchmidtVector, prefix: &[f64], cfg: &SearchConfig) -> Result<PartnerResult> {
    cfg.validate()?;
    let d = v.rank();
    if d < 3 || prefix.len() != d - 2 {
        return Err(Error::RankMismatch(d, prefix.len() + 2));
    }
    if prefix.windows(2).any(|w| w[1] > w[0]) || prefix.iter().any(|&p| !(p > 0.0)) {
        return Err(Error::OutOfDomain {
            value: prefix[0],
            domain: "sorted positive prefix",
        });
    }
    let remaining = 1.0 - prefix.iter().sum::<f64>();
    let last = prefix[prefix.len() - 1];
    let target = entropy(v).bits();

    if !(remaining > 0.0) || last < remaining / 2.0 {
        return Err(Error::Infeasible {
            beta1: prefix[0],
            target,
            min_entropy: f64::NAN,
            max_entropy: f64::NAN,
        });
    }

    let mut scratch = prefix.to_vec();
    scratch.extend([0.0, 0.0]);
    let restricted = move |b: f64| {
        let mut x = scratch.clone();
        x[d - 2] = b;
        x[d - 1] = remaining - b;
        shannon_bits(&x)
    };

    let lo = remaining / 2.0;
    let hi = last.min(remaining);
    let (max_entropy, min_entropy) = (restricted(lo), restricted(hi));
    let infeasible = Error::Infeasible {
        beta1: prefix[0],
        target,
        min_entropy,
        max_entropy,
    };
    if target > max_entropy + cfg.entropy_tol || target < min_entropy - cfg.entropy_tol {
        return Err(infeasible);
    }

    let (root, iterations) = if target >= max_entropy {
        (lo, 0)
    } else if target <= min_entropy {
        (hi, 0)
    } else {
        let b = bisect_decreasing(&restricted, lo, hi, target, cfg, true)?;
        (b.root, b.iterations)
    };

    let mut coeffs = prefix.to_vec();
    coeffs.extend([root, remaining - root]);
    let partner = make_schmidt(&coeffs)?;
    let entropy_residual = entropy(&partner).bits() - target;
    if entropy_residual.abs() > cfg.entropy_tol {
        return Err(Error::ConvergenceFailure {
            iterations,
            width: entropy_residual.abs(),
        });
    }
    Ok(PartnerResult {
        classification: classify(v, &partner, cfg.coeff_tol).relation,
        partner,
        entropy_residual,
        iterations,
    })
}

/// Rank-3 partner of `v` with top coefficient `beta1` and the same entropy.
pub fn find_partner(v: &SchmidtVector, beta1: f64, cfg: &SearchConfig) -> Result<PartnerResult> {
    if v.rank() != 3 || v.effective_rank() != 3 {
        return Err(Error::WrongRank {
            expected: 3,
            found: v.effective_rank(),
        });
    }
    if !(1.0 / 3.0..1.0).contains(&beta1) {
        return Err(Error::OutOfDomain {
            value: beta1,
            domain: "[1/3, 1)",
        });
    }
    if (beta1 - v.coeffs()[0]).abs() <= cfg.coeff_tol {
        return Err(Error::SharedTopCoefficient { beta1 });
    }
    complete_partner(v, &[beta1], cfg)
}

/// Partners of `v` for `steps` evenly spaced top coefficients in
/// `[beta1_lo, beta1_hi]`, skipping the `coeff_tol` neighborhood of `v`'s own
/// top coefficient. Grid points are solved in parallel.
pub fn family_sweep(
    v: &SchmidtVector,
    beta1_lo: f64,
    beta1_hi: f64,
    steps: usize,
    cfg: &SearchConfig,
) -> Result<FamilySweep> {
    let empty = Error::EmptyRange {
        lo: beta1_lo,
        hi: beta1_hi,
    };
    if steps == 0 || !(beta1_lo <= beta1_hi) {
        return Err(empty);
    }
    let top = v.coeffs()[0];
    let grid: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                beta1_lo
            } else {
                beta1_lo + (beta1_hi - beta1_lo) * i as f64 / (steps - 1) as f64
            }
        })
        .filter(|b| (b - top).abs() > cfg.coeff_tol)
        .collect();
    if grid.is_empty() {
        return Err(empty);
    }

    let outcomes: Vec<(f64, Result<PartnerResult>)> = grid
        .par_iter()
        .map(|&b| (b, find_partner(v, b, cfg)))
        .collect();

    let mut records = Vec::new();
    let mut gaps = Vec::new();
    for (beta1, outcome) in outcomes {
        match outcome {
            Ok(p) => records.push(FamilyRecord {
                beta1,
                differing_coeffs: differing_count(v, &p.partner, cfg.coeff_tol)?,
                partner: p.partner,
                entropy_residual: p.entropy_residual,
                classification: p.classification,
            }),
            Err(Error::Infeasible { .. }) | Err(Error::OutOfDomain { .. }) => gaps.push(beta1),
            Err(e) => return Err(e),
        }
    }
    Ok(FamilySweep { records, gaps })
}

/// Number of positions where `a` and `b` differ by more than `coeff_tol`.
pub fn differing_count(a: &SchmidtVector, b: &SchmidtVector, coeff_tol: f64) -> Result<usize> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    Ok(a.coeffs()
        .iter()
        .zip(b.coeffs())
        .filter(|(x, y)| (*x - *y).abs() > coeff_tol)
        .count())
}

/// 1-based positions where `a` and `b` agree within `coeff_tol`.
pub fn shared_indices(a: &SchmidtVector, b: &SchmidtVector, coeff_tol: f64) -> Vec<usize> {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .enumerate()
        .filter(|(_, (x, y))| (*x - *y).abs() <= coeff_tol)
        .map(|(i, _)| i + 1)
        .collect()
}

fn drop_and_rescale(v: &SchmidtVector, index0: usize, kappa: f64) -> Result<SchmidtVector> {
    let scale = 1.0 - kappa;
    let rest: Vec<f64> = v
        .coeffs()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index0)
        .map(|(_, &c)| c / scale)
        .collect();
    make_schmidt(&rest)
}

/// Removes the common coefficient `kappa = a_j = b_j` (1-based `j`) and
/// rescales the remaining ones by `1 / (1 - kappa)`, giving a rank-`(d-1)`
/// pair. Equal entropy and incomparability survive the reduction.
pub fn reduce_shared(
    a: &SchmidtVector,
    b: &SchmidtVector,
    j: usize,
    coeff_tol: f64,
) -> Result<(SchmidtVector, SchmidtVector)> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    if a.rank() < 3 {
        return Err(Error::WrongRank {
            expected: 3,
            found: a.rank(),
        });
    }
    let (x, y) = (a.get(j)?, b.get(j)?);
    if (x - y).abs() > coeff_tol {
        return Err(Error::NoSharedCoefficient { index: j, a: x, b: y });
    }
    let kappa = x;
    if kappa >= 1.0 - crate::schmidt::ZERO_EPS {
        return Err(Error::DegenerateKappa { kappa });
    }
    Ok((drop_and_rescale(a, j - 1, kappa)?, drop_and_rescale(b, j - 1, kappa)?))
}

/// Repeatedly removes shared coefficients (lowest index first) while the
/// rank is at least 3.
pub fn reduce_all_shared(
    a: &SchmidtVector,
    b: &SchmidtVector,
    coeff_tol: f64,
) -> Result<(SchmidtVector, SchmidtVector)> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while a.rank() >= 3 {
        match shared_indices(&a, &b, coeff_tol).first() {
            Some(&j) => (a, b) = reduce_shared(&a, &b, j, coeff_tol)?,
            None => break,
        }
    }
    Ok((a, b))
}

/// Inserts `kappa` into both vectors after scaling them by `1 - kappa`.
///
/// `E(lift(a)) = h(kappa) + (1 - kappa) E(a)`, so entropy equality carries
/// over, and so does the majorization relation of the pair. The insertion
/// position follows from sorting and may differ between the two vectors.
pub fn lift(a: &SchmidtVector, b: &SchmidtVector, kappa: f64) -> Result<(SchmidtVector, SchmidtVector)> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::OutOfDomain {
            value: kappa,
            domain: "(0, 1)",
        });
    }
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    let one = |v: &SchmidtVector| {
        let mut c: Vec<f64> = v.coeffs().iter().map(|&x| (1.0 - kappa) * x).collect();
        c.push(kappa);
        make_schmidt(&c)
    };
    Ok((one(a)?, one(b)?))
}

/// Inverse of [`lift`]: removes the entry equal to `kappa` from each vector
/// (located separately in each) and rescales by `1 / (1 - kappa)`.
pub fn unlift(
    a: &SchmidtVector,
    b: &SchmidtVector,
    kappa: f64,
    coeff_tol: f64,
) -> Result<(SchmidtVector, SchmidtVector)> {
    if !(0.0..1.0).contains(&kappa) {
        return Err(Error::DegenerateKappa { kappa });
    }
    let locate = |v: &SchmidtVector| -> Result<usize> {
        v.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| (i, (c - kappa).abs()))
            .filter(|&(_, dist)| dist <= coeff_tol)
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .map(|(i, _)| i)
            .ok_or(Error::NoSharedCoefficient {
                index: 0,
                a: kappa,
                b: f64::NAN,
            })
    };
    Ok((
        drop_and_rescale(a, locate(a)?, kappa)?,
        drop_and_rescale(b, locate(b)?, kappa)?,
    ))
}
