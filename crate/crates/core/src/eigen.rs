//! Hermitian eigendecomposition (cyclic complex Jacobi) and spectral matrix functions.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{c, re, Real, C};

const MAX_SWEEPS: usize = 100;

/// `m = V diag(values) V†` with eigenvalues in ascending order.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    /// Orthonormal eigenvectors stored as columns.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.values.len();
        let fl: Vec<T> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).fold(C::zero(), |acc, k| {
                if fl[k].is_zero() {
                    acc
                } else {
                    acc + v[(i, k)] * v[(j, k)].conj() * fl[k]
                }
            })
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.map_spectrum(|l| l)
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C<T>> {
        self.vectors.column(k)
    }
}

/// 2×2 unitary `J` that diagonalizes `[[app, b], [b̄, aqq]]` via `J† A J`.
///
/// Returned as `(jpp, jpq, jqp, jqq)`.
#[inline]
pub(crate) fn jacobi_rotation<T: Real>(app: T, aqq: T, b: C<T>) -> (C<T>, C<T>, C<T>, C<T>) {
    let g = b.norm();
    let phase_conj = (b / g).conj();
    let theta = (aqq - app) / (g + g);
    let t = {
        let denom = theta.abs() + theta.hypot(T::one());
        let t = T::one() / denom;
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let cs = T::one() / t.hypot(T::one());
    let sn = t * cs;
    (re(cs), re(sn), phase_conj * (-sn), phase_conj * cs)
}

/// Applies `X ← X J` to columns `p`, `q`.
#[inline]
pub(crate) fn rotate_columns<T: Real>(
    x: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    (jpp, jpq, jqp, jqq): (C<T>, C<T>, C<T>, C<T>),
) {
    for k in 0..x.rows() {
        let xp = x[(k, p)];
        let xq = x[(k, q)];
        x[(k, p)] = xp * jpp + xq * jqp;
        x[(k, q)] = xp * jpq + xq * jqq;
    }
}

fn off_diagonal_sqr<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues ascend; each eigenvector's first non-negligible component is made real
/// and positive.
pub fn eig_hermitian<T: Real>(m: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = m.ensure_square()?;
    if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::BadParameter("matrix has non-finite entries".into()));
    }
    let deviation = m.hermitian_deviation();
    if deviation > T::lit(T::TOLERANCES.hermitian) {
        return Err(Error::NotHermitian {
            deviation: deviation.as_f64(),
        });
    }

    let mut a = m.hermitian_part();
    for i in 0..n {
        a[(i, i)] = re(a[(i, i)].re);
    }
    let mut v = ComplexMatrix::identity(n);
    let eps = T::epsilon();
    let norm_sqr = a.frobenius_norm_sqr();
    // each rotation leaves O(ε) roundoff in the touched rows, so the reachable floor grows with n
    let floor = eps * T::lit(n as f64);

    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        let off = off_diagonal_sqr(&a);
        if off <= floor * floor * norm_sqr || off.is_zero() {
            converged = true;
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let b = a[(p, q)];
                if b.norm().is_zero() {
                    continue;
                }
                let j = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, b);
                rotate_columns(&mut a, p, q, j);
                // A ← J† A on rows p, q
                let (jpp, jpq, jqp, jqq) = j;
                for k in 0..n {
                    let ap = a[(p, k)];
                    let aq = a[(q, k)];
                    a[(p, k)] = jpp.conj() * ap + jqp.conj() * aq;
                    a[(q, k)] = jpq.conj() * ap + jqq.conj() * aq;
                }
                a[(p, q)] = C::zero();
                a[(q, p)] = C::zero();
                a[(p, p)] = re(a[(p, p)].re);
                a[(q, q)] = re(a[(q, q)].re);
                rotate_columns(&mut v, p, q, j);
            }
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            sweeps,
            residual: off_diagonal_sqr(&a).sqrt().as_f64(),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap().then(i.cmp(&j)));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let cutoff = eps.sqrt();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let lead = (0..n).map(|i| v[(i, k)]).find(|z| z.norm() > cutoff);
        let phase = lead.map_or(C::one(), |z| z.conj() / z.norm());
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)] * phase;
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Spectrum of a PSD matrix: negative eigenvalues within `-τ_psd` are clipped to zero.
///
/// Fails with [`Error::NotPsd`] if any eigenvalue is more negative than `-τ_psd`.
pub fn eig_psd<T: Real>(m: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let mut e = eig_hermitian(m)?;
    let min = e.values.first().copied().unwrap_or_else(T::zero);
    if min < -T::lit(T::TOLERANCES.psd) {
        return Err(Error::NotPsd {
            min_eigenvalue: min.as_f64(),
        });
    }
    for l in &mut e.values {
        *l = l.max(T::zero());
    }
    Ok(e)
}

/// Eigenvalues below this fraction of the largest one are roundoff from a zero eigenvalue.
pub(crate) fn spectral_noise_floor<T: Real>(values: &[T]) -> T {
    let top = values.iter().copied().fold(T::zero(), T::max);
    T::lit(16.0) * T::lit(values.len() as f64) * T::epsilon() * top
}

/// Principal square root of a PSD matrix.
///
/// Eigenvalues below the roundoff floor `16·n·ε·λ_max` are treated as exact zeros, since
/// the square root would otherwise amplify `1e-17` noise into `1e-9` garbage.
pub fn mat_sqrt_psd<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let e = eig_psd(m)?;
    let floor = spectral_noise_floor(&e.values);
    Ok(e.map_spectrum(|l| if l <= floor { T::zero() } else { l.sqrt() }))
}

/// `exp(i·t·H)` for Hermitian `H`.
pub fn exp_i_hermitian<T: Real>(h: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    let e = eig_hermitian(h)?;
    let n = e.values.len();
    let v = &e.vectors;
    let phases: Vec<C<T>> = e
        .values
        .iter()
        .map(|&l| c((t * l).cos(), (t * l).sin()))
        .collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).fold(C::zero(), |acc, k| acc + v[(i, k)] * phases[k] * v[(j, k)].conj())
    }))
}
