//! One-sided Jacobi SVD and the polar (Procrustes) factor.
//!
//! Singular values come out with absolute error near `ε·‖M‖`, including the
//! vanishing ones; routing them through an eigendecomposition of `M†M` would
//! square the condition number.

use num_traits::Zero;

use crate::eigen::{jacobi_rotation, rotate_columns};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{Real, C};

const MAX_SWEEPS: usize = 100;

/// `M = U diag(s) V†` for square `M`, singular values descending.
#[derive(Debug, Clone)]
pub struct Svd<T: Real> {
    pub u: ComplexMatrix<T>,
    pub singular_values: Vec<T>,
    pub v: ComplexMatrix<T>,
}

impl<T: Real> Svd<T> {
    /// `Σ s_i`.
    pub fn trace_norm(&self) -> T {
        self.singular_values.iter().copied().sum()
    }

    /// Unitary polar factor `U V†` of `M = (U V†)(V S V†)`.
    pub fn polar_unitary(&self) -> ComplexMatrix<T> {
        &self.u * &self.v.adjoint()
    }
}

fn column_dot<T: Real>(x: &ComplexMatrix<T>, p: usize, q: usize) -> C<T> {
    (0..x.rows()).fold(C::zero(), |acc, k| acc + x[(k, p)].conj() * x[(k, q)])
}

fn column_norm_sqr<T: Real>(x: &ComplexMatrix<T>, p: usize) -> T {
    (0..x.rows()).map(|k| x[(k, p)].norm_sqr()).sum()
}

/// Singular value decomposition of a square complex matrix.
pub fn svd<T: Real>(m: &ComplexMatrix<T>) -> Result<Svd<T>> {
    let n = m.ensure_square()?;
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let eps = T::epsilon();
    let threshold = eps * T::lit(n as f64);

    let mut converged = false;
    let mut sweeps = 0;
    let mut last_residual = T::zero();
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut rotated = false;
        let mut residual = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                let alpha = column_norm_sqr(&w, p);
                let beta = column_norm_sqr(&w, q);
                let gamma = column_dot(&w, p, q);
                let g = gamma.norm();
                let scale = alpha.sqrt() * beta.sqrt();
                if scale > T::zero() {
                    residual = residual.max(g / scale);
                }
                // a column whose squared norm underflows is numerically zero
                let tiny = T::min_positive_value();
                if alpha <= tiny || beta <= tiny || g <= threshold * scale {
                    continue;
                }
                rotated = true;
                let j = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, j);
                rotate_columns(&mut v, p, q, j);
            }
        }
        last_residual = residual;
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            sweeps,
            residual: last_residual.as_f64(),
        });
    }

    let norms: Vec<T> = (0..n).map(|p| column_norm_sqr(&w, p).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap().then(a.cmp(&b)));

    let top = norms.iter().copied().fold(T::zero(), T::max);
    let tiny = T::lit(n as f64) * eps * top;
    let mut u_cols: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    let mut missing = 0;
    for &k in &order {
        if norms[k] > tiny && norms[k] > T::min_positive_value() {
            u_cols.push((0..n).map(|i| w[(i, k)] / norms[k]).collect());
        } else {
            missing += 1;
        }
    }
    for _ in 0..missing {
        let next = complete_basis(&u_cols, n);
        u_cols.push(next);
    }
    let u = ComplexMatrix::from_columns(&u_cols)?;
    let v_sorted = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    let singular_values = order.iter().map(|&k| norms[k]).collect();
    Ok(Svd {
        u,
        singular_values,
        v: v_sorted,
    })
}

/// Unit vector orthogonal to `basis`, picked from the standard basis vector with the
/// largest orthogonal residual.
fn complete_basis<T: Real>(basis: &[Vec<C<T>>], n: usize) -> Vec<C<T>> {
    let mut best: Option<(T, Vec<C<T>>)> = None;
    for k in 0..n {
        let mut r = vec![C::zero(); n];
        r[k] = C::new(T::one(), T::zero());
        // two passes of classical Gram-Schmidt
        for _ in 0..2 {
            for b in basis {
                let proj = b.iter().zip(&r).fold(C::zero(), |acc, (x, y)| acc + x.conj() * y);
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri = *ri - *bi * proj;
                }
            }
        }
        let norm = r.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
            best = Some((norm, r));
        }
    }
    let (norm, r) = best.expect("n >= 1");
    r.into_iter().map(|z| z / norm).collect()
}

/// Unitary factor of the polar decomposition `M = U P`.
pub fn polar_unitary<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    Ok(svd(m)?.polar_unitary())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{ginibre, haar_unitary, seeded_rng};
    use crate::scalar::re;

    fn rebuild(s: &Svd<f64>) -> ComplexMatrix<f64> {
        let d = ComplexMatrix::from_diag(&s.singular_values);
        &(&s.u * &d) * &s.v.adjoint()
    }

    #[test]
    fn random_matrix_decomposes() {
        let mut rng = seeded_rng(3);
        for n in 1..=6 {
            let m = ginibre::<f64>(n, n, &mut rng);
            let s = svd(&m).unwrap();
            assert!(rebuild(&s).max_abs_diff(&m) < 1e-12);
            assert!(s.u.is_unitary(1e-12));
            assert!(s.v.is_unitary(1e-12));
            assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rank_deficient_completes_left_basis() {
        let v = vec![re(0.6f64), re(0.0), re(0.8)];
        let m = ComplexMatrix::outer(&v, &v);
        let s = svd(&m).unwrap();
        assert!((s.singular_values[0] - 1.0).abs() < 1e-15);
        assert!(s.singular_values[1] < 1e-15);
        assert!(s.u.is_unitary(1e-13));
        assert!(rebuild(&s).max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn subnormal_column_terminates() {
        // the first column's squared norm underflows to zero while the cross term does not
        let m = ComplexMatrix::<f64>::from_real_rows(&[&[1e-160, 0.3], &[0.0, 0.2]]).unwrap();
        let s = svd(&m).unwrap();
        assert!(rebuild(&s).max_abs_diff(&m) < 1e-15);
        assert!(s.u.is_unitary(1e-14));
    }

    #[test]
    fn zero_matrix() {
        let s = svd(&ComplexMatrix::<f64>::zeros(3, 3)).unwrap();
        assert!(s.singular_values.iter().all(|&x| x == 0.0));
        assert!(s.u.is_unitary(1e-14));
    }

    #[test]
    fn polar_of_unitary_times_psd() {
        let mut rng = seeded_rng(11);
        let u = haar_unitary::<f64>(4, &mut rng);
        let p = ComplexMatrix::from_diag(&[0.5, 1.0, 2.0, 3.0]);
        let m = &u * &p;
        assert!(polar_unitary(&m).unwrap().max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn trace_norm_of_diagonal() {
        let m = ComplexMatrix::<f64>::from_diag(&[-2.0, 0.5, 1.5]);
        assert!((svd(&m).unwrap().trace_norm() - 4.0).abs() < 1e-15);
    }
}
