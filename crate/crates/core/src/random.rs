//! Seeded random matrices: Ginibre, Haar unitaries, random Hermitian operators.
//!
//! Every generator takes its RNG explicitly; there is no hidden generator state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::ComplexMatrix;
use crate::scalar::{c, Real, C};

/// Generator used throughout the crate and the verification harness.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian with `E|z|² = 1`.
pub fn complex_gaussian<T: Real>(rng: &mut (impl Rng + ?Sized)) -> C<T> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a: f64 = rng.sample(StandardNormal);
    let b: f64 = rng.sample(StandardNormal);
    c(T::lit(a * s), T::lit(b * s))
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn ginibre<T: Real>(rows: usize, cols: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(&mut *rng))
}

/// Haar-distributed unit vector.
pub fn haar_vector<T: Real>(dim: usize, rng: &mut (impl Rng + ?Sized)) -> Vec<C<T>> {
    loop {
        let v: Vec<C<T>> = (0..dim).map(|_| complex_gaussian(&mut *rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm > T::lit(1e-6) {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random unitary: Gram-Schmidt orthonormalization of a Ginibre matrix.
///
/// Gram-Schmidt yields the QR factor whose `R` has a positive diagonal, which is
/// exactly the phase fix that makes `Q` Haar distributed.
pub fn haar_unitary<T: Real>(dim: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
    let g = ginibre::<T>(dim, dim, rng);
    let mut cols: Vec<Vec<C<T>>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let proj = q
                    .iter()
                    .zip(&v)
                    .fold(C::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi = *vi - *qi * proj;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_columns(&cols).expect("square column set")
}

/// Hermitian matrix `(G + G†)/2` from a Ginibre draw.
pub fn random_hermitian<T: Real>(dim: usize, rng: &mut (impl Rng + ?Sized)) -> ComplexMatrix<T> {
    ginibre::<T>(dim, dim, rng).hermitian_part()
}

/// Random probability vector (flat Dirichlet).
pub fn random_simplex(len: usize, rng: &mut (impl Rng + ?Sized)) -> Vec<f64> {
    let draws: Vec<f64> = (0..len)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = seeded_rng(1);
        for d in 1..=8 {
            assert!(haar_unitary::<f64>(d, &mut rng).is_unitary(1e-12));
        }
    }

    #[test]
    fn determinism() {
        let a = ginibre::<f64>(3, 3, &mut seeded_rng(17));
        let b = ginibre::<f64>(3, 3, &mut seeded_rng(17));
        assert_eq!(a, b);
    }

    #[test]
    fn simplex_sums_to_one() {
        let p = random_simplex(5, &mut seeded_rng(2));
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(p.iter().all(|&x| x >= 0.0));
    }
}
