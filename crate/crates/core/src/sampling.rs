//! Seeded random Schmidt vectors for property runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::schmidt::{make_schmidt, SchmidtVector};

/// Independent generator for one trial of one suite; the same
/// `(seed, stream, trial)` always yields the same draws.
pub fn trial_rng(seed: u64, stream: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos((trial as u128) << 20);
    rng
}

/// Uniform (flat Dirichlet) draw from the probability simplex, sorted.
pub fn random_simplex<R: Rng>(rng: &mut R, d: usize) -> SchmidtVector {
    let raw: Vec<f64> = (0..d).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let sum: f64 = raw.iter().sum();
    let p: Vec<f64> = raw.iter().map(|x| x / sum).collect();
    make_schmidt(&p).expect("normalized draw")
}

/// Simplex draw mixed 70/30 with the uniform vector, so every coefficient is
/// at least `0.3 / d`.
pub fn random_interior<R: Rng>(rng: &mut R, d: usize) -> SchmidtVector {
    let base = random_simplex(rng, d);
    let p: Vec<f64> = base
        .coeffs()
        .iter()
        .map(|&x| 0.7 * x + 0.3 / d as f64)
        .collect();
    make_schmidt(&p).expect("normalized mixture")
}

/// Random pair `(a, b)` with `a` majorized by `b`, built by applying random
/// T-transforms (pairwise averaging, a doubly stochastic map) to `b`.
pub fn random_majorized_pair<R: Rng>(rng: &mut R, d: usize) -> (SchmidtVector, SchmidtVector) {
    let b = random_simplex(rng, d);
    let mut a = b.coeffs().to_vec();
    let transfers = 1 + rng.random_range(0..d.max(2));
    for _ in 0..transfers {
        let i = rng.random_range(0..d);
        let j = rng.random_range(0..d);
        if i == j {
            continue;
        }
        let t = rng.random::<f64>();
        let (x, y) = (a[i], a[j]);
        a[i] = t * x + (1.0 - t) * y;
        a[j] = t * y + (1.0 - t) * x;
    }
    (make_schmidt(&a).expect("doubly stochastic image"), b)
}
