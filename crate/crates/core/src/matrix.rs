//! Dense complex matrices, Kronecker products and partial traces.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::max_dim;
use crate::scalar::{re, Real, C};

/// Dense row-major complex matrix.
///
/// Square matrices carry every operator in the crate; rectangular shapes appear
/// only for Kraus operators between spaces of different size and for column
/// vectors.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

/// Which factor of a bipartite space `A ⊗ B` to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::BadShape {
                expected: 1,
                found: 0,
            });
        }
        if data.len() != rows * cols {
            return Err(Error::BadShape {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from an entry function `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| re(T::lit(x))))
            .collect();
        Self::from_vec(r, c, data)
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = re(d);
        }
        m
    }

    /// `|u⟩⟨v|` for column vectors given as slices.
    pub fn outer(u: &[C<T>], v: &[C<T>]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn from_columns(cols: &[Vec<C<T>>]) -> Result<Self> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::BadShape {
                expected: n,
                found: cols.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0),
            });
        }
        let k = cols.len();
        Self::from_vec(n, k, (0..n * k).map(|idx| cols[idx % k][idx / k]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix (row count otherwise).
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .fold(C::zero(), |acc, z| acc + z)
    }

    /// `‖self − other‖_max`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius_norm_sqr(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `‖m − m†‖_max`; infinite for rectangular matrices.
    pub fn hermitian_deviation(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let n = self.rows;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `‖U†U − I‖_max ≤ tol` and `‖UU† − I‖_max ≤ tol`.
    pub fn is_unitary(&self, tol: T) -> bool {
        if !self.is_square() {
            return false;
        }
        let id = Self::identity(self.rows);
        (&self.adjoint() * self).max_abs_diff(&id) <= tol
            && (self * &self.adjoint()).max_abs_diff(&id) <= tol
    }

    /// Averages `m` with `m†`, removing roundoff asymmetry.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * half
        })
    }

    /// `self · v` for a column vector `v`.
    pub fn apply_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(C::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `A X A†`.
    pub fn conjugate_by(&self, a: &Self) -> Self {
        &(a * self) * &a.adjoint()
    }

    /// Kronecker product, bounded by [`max_dim`].
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.kron_with_limit(other, max_dim())
    }

    /// Kronecker product: entry `(i·r_b + k, j·c_b + l) = a_ij · b_kl`.
    pub fn kron_with_limit(&self, other: &Self, limit: usize) -> Result<Self> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let largest = rows.max(cols);
        if largest > limit {
            return Err(Error::DimensionOverflow {
                dim: largest,
                max: limit,
            });
        }
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Partial trace over one factor of `A ⊗ B`, keeping the other.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        let n = self.ensure_square()?;
        let (da, db) = dims;
        if da * db != n {
            return Err(Error::DimensionMismatch {
                expected: da * db,
                found: n,
            });
        }
        Ok(match keep {
            Subsystem::A => Self::from_fn(da, da, |i, j| {
                (0..db).fold(C::zero(), |acc, k| acc + self[(i * db + k, j * db + k)])
            }),
            Subsystem::B => Self::from_fn(db, db, |k, l| {
                (0..da).fold(C::zero(), |acc, i| acc + self[(i * db + k, i * db + l)])
            }),
        })
    }

    /// Reorders the tensor factors of a square operator on `⊗_k C^{dims[k]}`.
    ///
    /// Factor `k` of the result is factor `perm[k]` of the input.
    pub fn permute_factors(&self, dims: &[usize], perm: &[usize]) -> Result<Self> {
        let p = factor_permutation::<T>(dims, perm)?;
        let n = self.ensure_square()?;
        if n != p.rows {
            return Err(Error::DimensionMismatch {
                expected: p.rows,
                found: n,
            });
        }
        Ok(self.conjugate_by(&p))
    }
}

/// Permutation matrix `P` with `P (⊗_k v_k) = ⊗_k v_{perm[k]}`.
pub fn factor_permutation<T: Real>(dims: &[usize], perm: &[usize]) -> Result<ComplexMatrix<T>> {
    let mut seen = vec![false; dims.len()];
    if perm.len() != dims.len() {
        return Err(Error::DimensionMismatch {
            expected: dims.len(),
            found: perm.len(),
        });
    }
    for &p in perm {
        if p >= dims.len() || seen[p] {
            return Err(Error::BadParameter(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    let total: usize = dims.iter().product();
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut out = ComplexMatrix::zeros(total, total);
    let mut digits = vec![0usize; dims.len()];
    for idx in 0..total {
        // mixed-radix digits of the input index, most significant first
        let mut rem = idx;
        for k in (0..dims.len()).rev() {
            digits[k] = rem % dims[k];
            rem /= dims[k];
        }
        let target = perm
            .iter()
            .zip(&new_dims)
            .fold(0, |acc, (&p, &d)| acc * d + digits[p]);
        out[(target, idx)] = C::one();
    }
    Ok(out)
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    /// Panics on inner-dimension mismatch.
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn pauli_x() -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn pauli_z() -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert_eq!(i2.kron(&i2).unwrap(), ComplexMatrix::identity(4));
        let p0 = ComplexMatrix::<f64>::from_diag(&[1.0, 0.0]);
        assert_eq!(
            p0.kron(&p0).unwrap(),
            ComplexMatrix::from_diag(&[1.0, 0.0, 0.0, 0.0])
        );
    }

    #[test]
    fn kron_x_z_by_index_enumeration() {
        let (x, z) = (pauli_x(), pauli_z());
        let k = x.kron(&z).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        assert_eq!(k[(i * 2 + a, j * 2 + b)], x[(i, j)] * z[(a, b)]);
                    }
                }
            }
        }
    }

    #[test]
    fn kron_overflow() {
        let a = ComplexMatrix::<f64>::identity(9);
        assert!(matches!(
            a.kron_with_limit(&a, 64),
            Err(Error::DimensionOverflow { dim: 81, max: 64 })
        ));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| c(1.0 + i as f64, j as f64 - 0.5));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c((i * 3 + j) as f64, 0.25));
        let ab = a.kron(&b).unwrap();
        let kept_a = ab.partial_trace((2, 3), Subsystem::A).unwrap();
        assert!(kept_a.max_abs_diff(&a.scale_c(b.trace())) < 1e-12);
        let kept_b = ab.partial_trace((2, 3), Subsystem::B).unwrap();
        assert!(kept_b.max_abs_diff(&b.scale_c(a.trace())) < 1e-12);
        assert!(matches!(
            ab.partial_trace((2, 2), Subsystem::A),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn maximally_entangled_marginal() {
        let s = 0.5f64.sqrt();
        let psi = vec![re(s), re(0.0), re(0.0), re(s)];
        let proj = ComplexMatrix::outer(&psi, &psi);
        let marginal = proj.partial_trace((2, 2), Subsystem::A).unwrap();
        assert!(marginal.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn swap_permutation_exchanges_factors() {
        let (x, z) = (pauli_x(), pauli_z());
        let xz = x.kron(&z).unwrap();
        let zx = xz.permute_factors(&[2, 2], &[1, 0]).unwrap();
        assert_eq!(zx, z.kron(&x).unwrap());
        assert!(factor_permutation::<f64>(&[2, 2], &[0, 0]).is_err());
    }

    #[test]
    fn three_factor_permutation() {
        let a = ComplexMatrix::<f64>::from_diag(&[1.0, 2.0]);
        let b = ComplexMatrix::<f64>::from_diag(&[3.0, 5.0, 7.0]);
        let cm = pauli_x();
        let abc = a.kron(&b).unwrap().kron(&cm).unwrap();
        let bca = abc.permute_factors(&[2, 3, 2], &[1, 2, 0]).unwrap();
        assert_eq!(bca, b.kron(&cm).unwrap().kron(&a).unwrap());
    }
}
