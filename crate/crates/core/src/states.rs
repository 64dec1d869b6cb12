//! Density matrices, pure states, ensembles, entropy and purification.

use num_traits::{One, Zero};
use rand::Rng;

use crate::eigen::{eig_psd, spectral_noise_floor, HermitianEigen};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Subsystem};
use crate::random::{ginibre, haar_vector, seeded_rng};
use crate::scalar::{re, Real, C};

/// Spectral terms below this weight are dropped from entropies (`0·log 0 = 0`).
pub const ENTROPY_CUTOFF: f64 = 1e-15;

/// Positive semidefinite, unit-trace operator.
///
/// The spectrum is computed once at validation and reused by every metric.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Real> {
    mat: ComplexMatrix<T>,
    spectrum: HermitianEigen<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, positivity and unit trace.
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        mat.ensure_square()?;
        let spectrum = eig_psd(&mat)?;
        let trace = mat.trace();
        let tol = T::lit(T::TOLERANCES.trace);
        if (trace.re - T::one()).abs() > tol || trace.im.abs() > tol {
            return Err(Error::InvalidTrace {
                trace: trace.re.as_f64(),
            });
        }
        Ok(Self {
            mat: mat.hermitian_part(),
            spectrum,
        })
    }

    /// Scales a nonzero PSD matrix to unit trace before validating it.
    pub fn normalized(mat: ComplexMatrix<T>) -> Result<Self> {
        let trace = mat.trace().re;
        // NaN fails too
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(trace > T::zero()) {
            return Err(Error::InvalidTrace {
                trace: trace.as_f64(),
            });
        }
        Self::new(mat.scale(T::one() / trace))
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale(T::one() / T::lit(dim as f64));
        Self::new(m).expect("maximally mixed state is valid")
    }

    /// `|k⟩⟨k|` in the computational basis.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(k, k)] = C::one();
        Self::new(m).expect("basis projector is valid")
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// Eigenvalues (ascending, clipped at zero) with eigenvectors.
    pub fn spectrum(&self) -> &HermitianEigen<T> {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.spectrum.values
    }

    /// `√ρ`, treating roundoff-level eigenvalues as zero.
    pub fn sqrt(&self) -> ComplexMatrix<T> {
        let floor = spectral_noise_floor(&self.spectrum.values);
        self.spectrum
            .map_spectrum(|l| if l <= floor { T::zero() } else { l.sqrt() })
    }

    /// Number of eigenvalues above the roundoff floor.
    pub fn rank(&self) -> usize {
        let floor = spectral_noise_floor(&self.spectrum.values);
        self.spectrum.values.iter().filter(|&&l| l > floor).count()
    }

    pub fn purity(&self) -> T {
        self.spectrum.values.iter().map(|&l| l * l).sum()
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        Self::new(self.mat.kron(&other.mat)?)
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        Self::new(self.mat.conjugate_by(u))
    }

    /// Convex combination `Σ p_i ρ_i`.
    pub fn mixture(terms: &[(T, &Self)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or(Error::BadWeights { sum: 0.0 })?;
        let d = first.dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for (p, rho) in terms {
            check_same_dim(d, rho.dim())?;
            acc = &acc + &rho.mat.scale(*p);
        }
        Self::new(acc)
    }

    /// `(ρ + σ)/2`.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        let half = T::lit(0.5);
        Self::mixture(&[(half, self), (half, other)])
    }

    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        Self::new(self.mat.partial_trace(dims, keep)?)
    }
}

pub(crate) fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Unit vector `|ψ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    vec: Vec<C<T>>,
}

impl<T: Real> PureState<T> {
    pub fn new(vec: Vec<C<T>>) -> Result<Self> {
        if vec.is_empty() {
            return Err(Error::BadShape {
                expected: 1,
                found: 0,
            });
        }
        let norm = vec.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if (norm - T::one()).abs() > T::lit(T::TOLERANCES.unit_norm) {
            return Err(Error::NotNormalized {
                norm: norm.as_f64(),
            });
        }
        Ok(Self { vec })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(vec: Vec<C<T>>) -> Result<Self> {
        let norm = vec.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(norm > T::zero()) {
            return Err(Error::NotNormalized {
                norm: norm.as_f64(),
            });
        }
        Self::new(vec.into_iter().map(|z| z / norm).collect())
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = vec![C::zero(); dim];
        v[k] = C::one();
        Self { vec: v }
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.vec
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(self
            .vec
            .iter()
            .zip(&other.vec)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    pub fn projector(&self) -> ComplexMatrix<T> {
        ComplexMatrix::outer(&self.vec, &self.vec)
    }

    pub fn to_density(&self) -> DensityMatrix<T> {
        DensityMatrix::new(self.projector()).expect("projector of a unit vector is a state")
    }

    pub fn kron(&self, other: &Self) -> Self {
        let vec = self
            .vec
            .iter()
            .flat_map(|a| other.vec.iter().map(move |b| a * b))
            .collect();
        Self { vec }
    }
}

/// Weighted family `{q_i, ρ_i}`.
#[derive(Debug, Clone)]
pub struct Ensemble<T: Real> {
    weights: Vec<T>,
    states: Vec<DensityMatrix<T>>,
}

impl<T: Real> Ensemble<T> {
    pub fn new(weights: Vec<T>, states: Vec<DensityMatrix<T>>) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: states.len(),
            });
        }
        let d = states[0].dim();
        for s in &states {
            check_same_dim(d, s.dim())?;
        }
        let sum: T = weights.iter().copied().sum();
        if weights.iter().any(|&q| q < T::zero())
            || (sum - T::one()).abs() > T::lit(T::TOLERANCES.unit_norm)
        {
            return Err(Error::BadWeights { sum: sum.as_f64() });
        }
        Ok(Self { weights, states })
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn states(&self) -> &[DensityMatrix<T>] {
        &self.states
    }

    /// `Σ q_i ρ_i`.
    pub fn average(&self) -> Result<DensityMatrix<T>> {
        let terms: Vec<(T, &DensityMatrix<T>)> =
            self.weights.iter().copied().zip(&self.states).collect();
        DensityMatrix::mixture(&terms)
    }
}

/// Shannon entropy in bits of a spectrum, with terms below [`ENTROPY_CUTOFF`] dropped.
pub fn shannon_entropy<T: Real>(probs: &[T]) -> T {
    let cutoff = T::lit(ENTROPY_CUTOFF);
    probs
        .iter()
        .filter(|&&p| p > cutoff)
        .map(|&p| -p * p.log2())
        .sum()
}

/// `H_N(ρ) = −Σ λ log₂ λ`, in `[0, log₂ d]`.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    let h = shannon_entropy(rho.eigenvalues());
    let max = T::lit(rho.dim() as f64).log2();
    h.max(T::zero()).min(max)
}

/// Binary entropy kernel `Φ(x)` of the distribution `((1−x)/2, (1+x)/2)`.
///
/// Inputs within `1e-12` outside `[0, 1]` are clamped.
pub fn phi_kernel<T: Real>(x: T) -> Result<T> {
    let slack = T::lit(1e-12);
    if !(x >= -slack && x <= T::one() + slack) {
        return Err(Error::Domain { value: x.as_f64() });
    }
    let x = x.max(T::zero()).min(T::one());
    Ok(phi_of_gap(T::one() - x))
}

/// `Φ(1 − g)` evaluated from the gap `g = 1 − x ∈ [0, 1]`.
///
/// Keeps full relative precision when `x` is within rounding of one, where
/// `D_E = √Φ` has unbounded slope.
pub(crate) fn phi_of_gap<T: Real>(gap: T) -> T {
    let gap = gap.max(T::zero()).min(T::one());
    let p = gap * T::lit(0.5);
    if p.is_zero() {
        return T::zero();
    }
    let q = T::one() - p;
    let ln2 = T::LN_2();
    // q·log₂q via ln(1−p) keeps accuracy for small p
    let value = -p * p.log2() - q * (-p).ln_1p() / ln2;
    value.max(T::zero()).min(T::one())
}

/// Canonical spectral purification `Σ_i √λ_i |i⟩ ⊗ |e_i⟩`.
///
/// The ancilla is the first tensor factor and has the same dimension as the system.
/// Eigenvalues under the roundoff floor get zero amplitude.
pub fn purify<T: Real>(rho: &DensityMatrix<T>) -> PureState<T> {
    let d = rho.dim();
    let spec = rho.spectrum();
    let floor = spectral_noise_floor(&spec.values);
    let kept = |l: T| if l > floor { l } else { T::zero() };
    let total: T = spec.values.iter().map(|&l| kept(l)).sum();
    let mut vec = vec![C::zero(); d * d];
    for (i, &l) in spec.values.iter().enumerate() {
        let amp = (kept(l) / total).sqrt();
        if amp.is_zero() {
            continue;
        }
        for s in 0..d {
            vec[i * d + s] = spec.vectors[(s, i)] * amp;
        }
    }
    PureState::normalized(vec).expect("purification of a unit-trace state is nonzero")
}

/// System marginal of a purification produced by [`purify`].
pub fn purification_marginal<T: Real>(psi: &PureState<T>, dim: usize) -> Result<ComplexMatrix<T>> {
    psi.projector().partial_trace((dim, dim), Subsystem::B)
}

/// Random state of the given rank: `G G† / tr` for a `dim × rank` Ginibre `G`,
/// the marginal of a Haar-random pure state on `dim ⊗ rank`.
pub fn random_density_with<T: Real>(
    dim: usize,
    rank: usize,
    rng: &mut (impl Rng + ?Sized),
) -> Result<DensityMatrix<T>> {
    if rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    let g = ginibre::<T>(dim, rank, rng);
    DensityMatrix::normalized((&g * &g.adjoint()).hermitian_part())
}

/// Deterministic [`random_density_with`] seeded by `seed`.
pub fn random_density<T: Real>(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix<T>> {
    random_density_with(dim, rank, &mut seeded_rng(seed))
}

/// Haar-random pure state.
pub fn random_pure<T: Real>(dim: usize, rng: &mut (impl Rng + ?Sized)) -> PureState<T> {
    PureState::normalized(haar_vector(dim, rng)).expect("Haar vector is nonzero")
}

/// Helper for tests and examples: real diagonal state.
pub fn diagonal_state<T: Real>(diag: &[f64]) -> Result<DensityMatrix<T>> {
    let d: Vec<T> = diag.iter().map(|&x| T::lit(x)).collect();
    DensityMatrix::new(ComplexMatrix::from_diag(&d))
}

/// `|ψ⟩⟨ψ|` as a density matrix from raw amplitudes (normalized on the way in).
pub fn pure_density<T: Real>(amplitudes: &[C<T>]) -> Result<DensityMatrix<T>> {
    Ok(PureState::normalized(amplitudes.to_vec())?.to_density())
}

/// `|+⟩ = (|0⟩ + |1⟩)/√2`.
pub fn plus_state<T: Real>() -> DensityMatrix<T> {
    let s = T::FRAC_1_SQRT_2();
    pure_density(&[re(s), re(s)]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::seeded_rng;

    #[test]
    fn entropy_examples() {
        let pure = random_pure::<f64>(3, &mut seeded_rng(1)).to_density();
        assert!(von_neumann_entropy(&pure).abs() < 1e-12);
        let mixed = DensityMatrix::<f64>::maximally_mixed(2);
        assert!((von_neumann_entropy(&mixed) - 1.0).abs() < 1e-15);
        let d = diagonal_state::<f64>(&[0.25, 0.75]).unwrap();
        // −¼log₂¼ − ¾log₂¾ = 0.5 + 0.75·log₂(4/3)
        let expected = 0.5 + 0.75 * (4.0f64 / 3.0).log2();
        assert!((von_neumann_entropy(&d) - expected).abs() < 1e-15);
        assert!((expected - 0.811_278_124_459_132_8).abs() < 1e-15);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_kernel(0.0f64).unwrap(), 1.0);
        assert_eq!(phi_kernel(1.0f64).unwrap(), 0.0);
        assert!((phi_kernel(0.5f64).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-15);
        assert!(phi_kernel(1.0 + 5e-13f64).is_ok());
        assert!(matches!(phi_kernel(1.1f64), Err(Error::Domain { .. })));
        assert!(matches!(phi_kernel(-0.01f64), Err(Error::Domain { .. })));
        assert!(phi_kernel(f64::NAN).is_err());
    }

    #[test]
    fn phi_strictly_decreasing_and_bounded() {
        let grid: Vec<f64> = (0..=1000).map(|k| k as f64 / 1000.0).collect();
        let vals: Vec<f64> = grid.iter().map(|&x| phi_kernel(x).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        assert!(vals.iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn phi_gap_matches_direct_form() {
        for k in 1..100 {
            let x = k as f64 / 100.0;
            let (p, q) = ((1.0 - x) / 2.0, (1.0 + x) / 2.0);
            let direct = -p * p.log2() - q * q.log2();
            assert!((phi_kernel(x).unwrap() - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn purification_examples() {
        let zero = DensityMatrix::<f64>::basis(2, 0);
        let psi = purify(&zero);
        let marginal = purification_marginal(&psi, 2).unwrap();
        assert!(marginal.max_abs_diff(zero.matrix()) < 1e-15);

        let mixed = DensityMatrix::<f64>::maximally_mixed(2);
        let psi = purify(&mixed);
        let marginal = purification_marginal(&psi, 2).unwrap();
        assert!(marginal.max_abs_diff(mixed.matrix()) < 1e-15);
        // maximally entangled: every Schmidt coefficient is 1/√2
        let schmidt = ComplexMatrix::from_vec(2, 2, psi.amplitudes().to_vec()).unwrap();
        let s = crate::svd::svd(&schmidt).unwrap().singular_values;
        assert!(s.iter().all(|&x| (x - 0.5f64.sqrt()).abs() < 1e-15));

        let rho = random_density::<f64>(2, 2, 11).unwrap();
        let marginal = purification_marginal(&purify(&rho), 2).unwrap();
        assert!(marginal.max_abs_diff(rho.matrix()) < 1e-10);
    }

    #[test]
    fn purification_round_trip_many() {
        let mut rng = seeded_rng(99);
        for k in 0..200 {
            let d = 2 + k % 3;
            let rank = 1 + k % d;
            let rho = random_density_with::<f64>(d, rank, &mut rng).unwrap();
            let marginal = purification_marginal(&purify(&rho), d).unwrap();
            assert!(marginal.max_abs_diff(rho.matrix()) < 1e-10);
            let h = von_neumann_entropy(&rho);
            assert!(h >= 0.0 && h <= (d as f64).log2());
        }
    }

    #[test]
    fn random_density_properties() {
        let pure = random_density::<f64>(3, 1, 5).unwrap();
        assert!(von_neumann_entropy(&pure) < 1e-10);
        assert_eq!(pure.rank(), 1);
        assert!(matches!(
            random_density::<f64>(3, 4, 5),
            Err(Error::BadRank { .. })
        ));
        assert!(matches!(
            random_density::<f64>(3, 0, 5),
            Err(Error::BadRank { .. })
        ));
        let a = random_density::<f64>(3, 3, 8).unwrap();
        let b = random_density::<f64>(3, 3, 8).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn random_density_mean_eigenvalue() {
        // mean of all eigenvalues is trivially 1/d; the ensemble average state is I/d
        let d = 3;
        let n = 2000;
        let mut rng = seeded_rng(123);
        let mut acc = ComplexMatrix::<f64>::zeros(d, d);
        for _ in 0..n {
            let rho = random_density_with::<f64>(d, d, &mut rng).unwrap();
            acc = &acc + rho.matrix();
        }
        let avg = acc.scale(1.0 / n as f64);
        let target = ComplexMatrix::identity(d).scale(1.0 / d as f64);
        assert!(avg.max_abs_diff(&target) < 0.02);
    }

    #[test]
    fn density_validation_errors() {
        let bad_trace = ComplexMatrix::<f64>::from_diag(&[0.5, 0.6]);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::InvalidTrace { .. })
        ));
        let negative = ComplexMatrix::<f64>::from_diag(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(Error::NotPsd { .. })
        ));
        let non_herm = ComplexMatrix::<f64>::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(
            DensityMatrix::new(non_herm),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn ensemble_validation() {
        let a = DensityMatrix::<f64>::basis(2, 0);
        let b = DensityMatrix::<f64>::basis(3, 0);
        assert!(Ensemble::new(vec![0.5, 0.5], vec![a.clone(), b]).is_err());
        assert!(matches!(
            Ensemble::new(vec![0.5, 0.6], vec![a.clone(), a.clone()]),
            Err(Error::BadWeights { .. })
        ));
        assert!(Ensemble::new(vec![0.5, 0.5], vec![a.clone(), a]).is_ok());
    }

    #[test]
    fn pure_state_validation() {
        assert!(PureState::<f64>::new(vec![re(1.0), re(1.0)]).is_err());
        assert!(PureState::<f64>::normalized(vec![re(0.0), re(0.0)]).is_err());
        let p = PureState::<f64>::normalized(vec![re(3.0), re(4.0)]).unwrap();
        assert!((p.inner(&p).unwrap().re - 1.0).abs() < 1e-15);
    }
}
