//! Deterministic LOCC convertibility of pure bipartite states, decided from
//! their Schmidt coefficients, and the construction of states that carry
//! exactly the same entanglement entropy yet cannot be converted into one
//! another in either direction.
//!
//! * [`schmidt`]: the sorted probability vector model and entropy.
//! * [`order`]: majorization (Nielsen's criterion), four-way classification,
//!   the rank-3 shortcut and prefix-sum differences.
//! * [`schur`]: Schur-concavity witnesses, gradient checks, the entropy gap
//!   decomposition and the equal-entropy uniqueness check at rank 3.
//! * [`equal_entropy`]: bisection search for equal-entropy partners, sweeps
//!   over the top coefficient, and rank lifting/reduction.
//! * [`suites`]: seeded property runs over all of the above.

#![forbid(unsafe_code)]
// `!(x > 0.0)` guards reject NaN; frozen reference values keep all 17 digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bisect;
pub mod equal_entropy;
pub mod error;
pub mod format;
pub mod order;
pub mod sampling;
pub mod schmidt;
pub mod schur;
pub mod suites;

pub use equal_entropy::{
    complete_partner, differing_count, family_sweep, find_partner, lift, max_entropy_given_top,
    reduce_all_shared, reduce_shared, shared_indices, unlift, FamilyRecord, FamilySweep, PartnerResult,
};
pub use error::{Error, Result};
pub use order::{
    classify, convertible, epsilon_profile, incomparable_rank3_fast, partial_sums, ComparisonResult,
    EpsilonProfile, Relation,
};
pub use schmidt::{binary_entropy, entropy, make_schmidt, EntropyValue, SchmidtVector, SearchConfig};
pub use schur::{
    entropy_gap_decomposition, gradient_check, schur_witness, verify_theorem1, verify_theorem2, GapReport,
    SchurWitness,
};
