//! Majorization order on Schmidt vectors.
//!
//! `a -> b` (deterministic LOCC conversion of the state with Schmidt vector
//! `a` into the one with `b`) holds iff every prefix sum of `a` is at most the
//! matching prefix sum of `b`. Vectors of different length are compared after
//! padding the shorter one with zeros.

use std::fmt;

use crate::error::{Error, Result};
use crate::schmidt::SchmidtVector;

/// Outcome of comparing two states under deterministic LOCC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Same Schmidt coefficients (local-unitarily connected).
    Equivalent,
    /// The first state converts into the second.
    AtoB,
    /// The second state converts into the first.
    BtoA,
    Incomparable,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Equivalent => "Equivalent",
            Relation::AtoB => "AtoB",
            Relation::BtoA => "BtoA",
            Relation::Incomparable => "Incomparable",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComparisonResult {
    pub relation: Relation,
    /// Smallest 1-based `k` with `S_k(a) > S_k(b)`, i.e. why `a -> b` fails.
    pub a_to_b_witness: Option<usize>,
    /// Smallest 1-based `k` with `S_k(b) > S_k(a)`, i.e. why `b -> a` fails.
    pub b_to_a_witness: Option<usize>,
}

/// Prefix-sum differences `eps_k = S_k(b) - S_k(a)` for `k = 1..d-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonProfile {
    pub epsilons: Vec<f64>,
}

impl EpsilonProfile {
    /// All `eps_k >= -tol`, which is exactly `convertible(a, b)`.
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.epsilons.iter().all(|&e| e >= -tol)
    }
}

/// Cumulative sums `S_k = sum_{i<=k} v_i`, `k = 1..d`.
pub fn partial_sums(v: &SchmidtVector) -> Vec<f64> {
    prefix(v.coeffs())
}

fn prefix(x: &[f64]) -> Vec<f64> {
    x.iter()
        .scan(0.0, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

fn padded_sums(a: &SchmidtVector, b: &SchmidtVector) -> (Vec<f64>, Vec<f64>) {
    let len = a.rank().max(b.rank());
    (prefix(&a.padded(len)), prefix(&b.padded(len)))
}

/// First index where `lhs` exceeds `rhs` by more than `tol`.
fn first_violation(lhs: &[f64], rhs: &[f64], tol: f64) -> Option<usize> {
    lhs.iter()
        .zip(rhs)
        .position(|(l, r)| l - r > tol)
        .map(|i| i + 1)
}

/// Nielsen's criterion: `a -> b` iff `S_k(a) <= S_k(b)` for all `k`, with
/// slack `coeff_tol`.
pub fn convertible(a: &SchmidtVector, b: &SchmidtVector, coeff_tol: f64) -> bool {
    let (sa, sb) = padded_sums(a, b);
    first_violation(&sa, &sb, coeff_tol).is_none()
}

/// Entrywise equality after zero padding.
pub fn equivalent(a: &SchmidtVector, b: &SchmidtVector, coeff_tol: f64) -> bool {
    let len = a.rank().max(b.rank());
    a.padded(len)
        .iter()
        .zip(b.padded(len))
        .all(|(x, y)| (x - y).abs() <= coeff_tol)
}

/// Four-way classification of a pair under the majorization order.
///
/// Pairs whose prefix sums agree within `coeff_tol` in both directions are
/// reported as `Equivalent` even when single entries drift slightly more than
/// `coeff_tol`, so that `AtoB` and `BtoA` are never both true.
pub fn classify(a: &SchmidtVector, b: &SchmidtVector, coeff_tol: f64) -> ComparisonResult {
    let (sa, sb) = padded_sums(a, b);
    let a_to_b_witness = first_violation(&sa, &sb, coeff_tol);
    let b_to_a_witness = first_violation(&sb, &sa, coeff_tol);

    let relation = if equivalent(a, b, coeff_tol) {
        Relation::Equivalent
    } else {
        match (a_to_b_witness, b_to_a_witness) {
            (None, None) => Relation::Equivalent,
            (None, Some(_)) => Relation::AtoB,
            (Some(_), None) => Relation::BtoA,
            (Some(_), Some(_)) => Relation::Incomparable,
        }
    };
    ComparisonResult {
        relation,
        a_to_b_witness,
        b_to_a_witness,
    }
}

/// Rank-3 shortcut: incomparable iff `(a1 > b1 and a3 > b3)` or
/// `(a1 < b1 and a3 < b3)`, with `coeff_tol` as the equality band.
///
/// Ties fall to "not incomparable".
pub fn incomparable_rank3_fast(a: &SchmidtVector, b: &SchmidtVector, coeff_tol: f64) -> Result<bool> {
    for v in [a, b] {
        if v.effective_rank() != 3 {
            return Err(Error::WrongRank {
                expected: 3,
                found: v.effective_rank(),
            });
        }
    }
    let (a, b) = (a.coeffs(), b.coeffs());
    let gt = |x: f64, y: f64| x - y > coeff_tol;
    Ok((gt(a[0], b[0]) && gt(a[2], b[2])) || (gt(b[0], a[0]) && gt(b[2], a[2])))
}

pub fn epsilon_profile(a: &SchmidtVector, b: &SchmidtVector) -> EpsilonProfile {
    let (sa, sb) = padded_sums(a, b);
    let d = sa.len();
    let epsilons = sb
        .iter()
        .zip(&sa)
        .take(d.saturating_sub(1))
        .map(|(y, x)| y - x)
        .collect();
    EpsilonProfile { epsilons }
}
