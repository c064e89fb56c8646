//! Schmidt vectors and their entanglement entropy.
//!
//! A [`SchmidtVector`] is the canonical form of a pure bipartite state for
//! every question asked in this crate: a probability vector sorted in
//! non-increasing order. Zero coefficients are admitted (with `0 log 0 = 0`)
//! so that searches may touch the boundary of the simplex; the number of
//! strictly positive entries is reported by [`SchmidtVector::effective_rank`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::sig17;

/// Tolerance on the coefficient sum of a canonical vector.
pub const SUM_EPS: f64 = 1e-12;
/// Entries below this magnitude are exact zeros.
pub const ZERO_EPS: f64 = 1e-15;
/// Accepted distance of a raw coefficient sum from 1 before renormalizing.
pub const NORMALIZE_BAND: f64 = 1e-6;

/// Sorted (non-increasing) probability vector of Schmidt coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtVector {
    coeffs: Vec<f64>,
}

impl SchmidtVector {
    /// Validates, sorts and renormalizes raw Schmidt coefficients.
    ///
    /// Input order is irrelevant: the sum used for renormalization is taken
    /// over the sorted entries, so any permutation of the same input gives a
    /// bit-identical vector. Inputs already summing to 1 within [`SUM_EPS`]
    /// are kept as given, which makes canonicalization idempotent.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in raw.iter().enumerate() {
            if value.is_nan() || value < -ZERO_EPS {
                return Err(Error::NegativeCoefficient { index, value });
            }
        }
        let mut coeffs: Vec<f64> = raw
            .iter()
            .map(|&x| if x < ZERO_EPS { 0.0 } else { x })
            .collect();
        coeffs.sort_by(|a, b| b.total_cmp(a));

        let sum: f64 = coeffs.iter().sum();
        if !sum.is_finite() || (sum - 1.0).abs() > NORMALIZE_BAND {
            return Err(Error::NotNormalizable { sum });
        }
        if (sum - 1.0).abs() > SUM_EPS {
            for c in &mut coeffs {
                *c /= sum;
                if *c < ZERO_EPS {
                    *c = 0.0;
                }
            }
        }
        Ok(SchmidtVector { coeffs })
    }

    /// The maximally entangled vector of rank `d`.
    pub fn uniform(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Empty);
        }
        Ok(SchmidtVector {
            coeffs: vec![1.0 / d as f64; d],
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Number of stored entries, zeros included.
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// Number of entries strictly greater than [`ZERO_EPS`].
    pub fn effective_rank(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c > ZERO_EPS).count()
    }

    /// 1-based accessor matching the usual `lambda_i` indexing.
    pub fn get(&self, index: usize) -> Result<f64> {
        if index == 0 || index > self.rank() {
            return Err(Error::IndexOutOfRange {
                index,
                rank: self.rank(),
            });
        }
        Ok(self.coeffs[index - 1])
    }

    /// Copy padded with trailing zeros to length `len` (no-op if already longer).
    pub fn padded(&self, len: usize) -> Vec<f64> {
        let mut out = self.coeffs.clone();
        if out.len() < len {
            out.resize(len, 0.0);
        }
        out
    }

    pub fn entropy(&self) -> EntropyValue {
        entropy(self)
    }

    /// `{"coeffs":[...]}` with every number at 17 significant digits.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(|&c| sig17(c)).collect();
        format!("{{\"coeffs\":[{}]}}", body.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSchmidt = serde_json::from_str(text)
            .map_err(|e| Error::InvalidJson(e.to_string()))?;
        Self::new(&raw.coeffs)
    }
}

impl fmt::Display for SchmidtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", sig17(*c))?;
        }
        write!(f, ")")
    }
}

/// Wire form of a Schmidt vector, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawSchmidt {
    pub coeffs: Vec<f64>,
}

impl From<&SchmidtVector> for RawSchmidt {
    fn from(v: &SchmidtVector) -> Self {
        RawSchmidt {
            coeffs: v.coeffs.clone(),
        }
    }
}

/// Canonicalizes raw Schmidt data; see [`SchmidtVector::new`].
pub fn make_schmidt(raw: &[f64]) -> Result<SchmidtVector> {
    SchmidtVector::new(raw)
}

/// Entanglement entropy in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyValue(pub f64);

impl EntropyValue {
    pub fn bits(self) -> f64 {
        self.0
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}", self.0)
    }
}

#[inline]
pub(crate) fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// `-sum p_i log2 p_i`, summed in ascending index order.
pub(crate) fn shannon_bits(p: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &x in p {
        acc -= plogp(x);
    }
    acc
}

/// Entropy of entanglement, `-sum v_i log2 v_i` with `0 log 0 = 0`.
pub fn entropy(v: &SchmidtVector) -> EntropyValue {
    EntropyValue(shannon_bits(&v.coeffs))
}

/// Binary entropy `h(k) = -k log2 k - (1-k) log2 (1-k)`.
pub fn binary_entropy(kappa: f64) -> Result<EntropyValue> {
    if !(0.0..=1.0).contains(&kappa) {
        return Err(Error::OutOfDomain {
            value: kappa,
            domain: "[0, 1]",
        });
    }
    Ok(EntropyValue(-plogp(kappa) - plogp(1.0 - kappa)))
}

/// Tolerances and limits for the bisection searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Entropy residual accepted as "equal entropy", in bits.
    pub entropy_tol: f64,
    /// Coefficients closer than this are treated as equal.
    pub coeff_tol: f64,
    pub max_bisection_iters: usize,
    /// Bisection stops once the bracket is narrower than this.
    pub bracket_width: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            entropy_tol: 1e-12,
            coeff_tol: 1e-9,
            max_bisection_iters: 200,
            bracket_width: 1e-15,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.entropy_tol > 0.0) {
            return Err(Error::InvalidConfig("entropy_tol must be positive"));
        }
        if !(self.coeff_tol > 0.0) {
            return Err(Error::InvalidConfig("coeff_tol must be positive"));
        }
        if !(self.bracket_width > 0.0) {
            return Err(Error::InvalidConfig("bracket_width must be positive"));
        }
        if self.max_bisection_iters == 0 {
            return Err(Error::InvalidConfig("max_bisection_iters must be at least 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sv(x: &[f64]) -> SchmidtVector {
        make_schmidt(x).unwrap()
    }

    #[test]
    fn sorts_reference_state() {
        assert_eq!(sv(&[0.39, 0.45, 0.16]).coeffs(), &[0.45, 0.39, 0.16]);
        assert_eq!(sv(&[1.0]).coeffs(), &[1.0]);
        assert_eq!(sv(&[0.25; 4]).coeffs(), &[0.25; 4]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            make_schmidt(&[0.5, 0.6, -0.1]),
            Err(Error::NegativeCoefficient { index: 2, .. })
        ));
        assert!(matches!(
            make_schmidt(&[0.5, 0.6]),
            Err(Error::NotNormalizable { .. })
        ));
        assert!(matches!(make_schmidt(&[]), Err(Error::Empty)));
        assert!(matches!(
            make_schmidt(&[f64::NAN, 1.0]),
            Err(Error::NegativeCoefficient { .. })
        ));
    }

    #[test]
    fn renormalizes_roundoff_and_zeroes_dust() {
        let v = sv(&[0.5 + 1e-8, 0.5, -1e-16, 1e-17]);
        assert_abs_diff_eq!(v.coeffs().iter().sum::<f64>(), 1.0, epsilon = SUM_EPS);
        assert_eq!(v.rank(), 4);
        assert_eq!(v.effective_rank(), 2);
        assert_eq!(v.coeffs()[2], 0.0);
    }

    #[test]
    fn entropy_examples() {
        // reference state, E ~ 1.471215431
        assert_abs_diff_eq!(sv(&[0.45, 0.39, 0.16]).entropy().bits(), 1.471215431, epsilon = 1e-9);
        assert_abs_diff_eq!(
            sv(&[0.49, 0.33676028, 0.17323972]).entropy().bits(),
            1.471215442,
            epsilon = 1e-9
        );
        let third = 1.0 / 3.0;
        assert_abs_diff_eq!(sv(&[third; 3]).entropy().bits(), 3f64.log2(), epsilon = 1e-15);
        // mpmath: 1.4854752972273343195
        assert_abs_diff_eq!(sv(&[0.5, 0.3, 0.2]).entropy().bits(), 1.4854752972273343, epsilon = 1e-14);
        assert_eq!(sv(&[1.0, 0.0]).entropy().bits(), 0.0);
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap().bits(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap().bits(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap().bits(), 0.0);
        // mpmath: 0.81127812445913286391
        assert_abs_diff_eq!(binary_entropy(0.25).unwrap().bits(), 0.8112781244591329, epsilon = 1e-15);
        assert!(matches!(binary_entropy(1.5), Err(Error::OutOfDomain { .. })));
        assert!(matches!(binary_entropy(-0.1), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let v = sv(&[0.49, 0.33676029181068889, 0.17323970818931111]);
        let back = SchmidtVector::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
        let parsed = SchmidtVector::from_json(r#"{"coeffs": [0.45, 0.39, 0.16]}"#).unwrap();
        assert_eq!(parsed.coeffs(), &[0.45, 0.39, 0.16]);
        assert!(SchmidtVector::from_json("[0.5, 0.5]").is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::default().validate().is_ok());
        let bad = SearchConfig {
            max_bisection_iters: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SearchConfig {
            entropy_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
