//! Deterministic pseudo-random Hermitian tuples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{ExactMatrix, GaussianRational};
use crate::model::{HermitianMatrix, QuadricModel};

/// Hermitian `d`-tuple of `n x n` matrices whose entries have integer real and
/// imaginary parts in `[-entry_bound, entry_bound]`. Same seed, same model.
pub fn random_model(n: usize, d: usize, entry_bound: i64, seed: u64) -> QuadricModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_model_with(&mut rng, n, d, entry_bound)
}

pub fn random_model_with<R: Rng>(rng: &mut R, n: usize, d: usize, entry_bound: i64) -> QuadricModel {
    assert!(n >= 1 && d >= 1 && entry_bound >= 1);
    let b = entry_bound;
    let matrices = (0..d)
        .map(|_| {
            let mut m = ExactMatrix::zeros(n, n);
            for r in 0..n {
                m.set(r, r, GaussianRational::int(rng.gen_range(-b..=b), 0));
                for c in r + 1..n {
                    let e = GaussianRational::int(rng.gen_range(-b..=b), rng.gen_range(-b..=b));
                    m.set(c, r, e.conj());
                    m.set(r, c, e);
                }
            }
            HermitianMatrix::new(m).expect("constructed Hermitian")
        })
        .collect();
    QuadricModel::new(matrices).expect("nonempty tuple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let a = random_model(2, 2, 1, 7);
        let b = random_model(2, 2, 1, 7);
        assert_eq!(a, b);
        assert_eq!((a.n(), a.d()), (2, 2));
        assert!(QuadricModel::from_matrices(a.matrices().iter().map(|m| m.matrix().clone()).collect()).is_ok());
        assert_ne!(random_model(3, 2, 2, 1), random_model(3, 2, 2, 2));
    }
}
