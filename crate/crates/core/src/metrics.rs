//! Scalar comparison measures between density matrices.
//!
//! Every fidelity-derived measure goes through [`fidelity_gap`], the Bures-type
//! residual `1 − √F = ½ min_U ‖√ρ − √σ U‖²_F`. The unitary minimizer is the polar
//! factor of `√ρ √σ`, whose singular values give the trace-norm form
//! `√F = Σ s_i(√σ √ρ)`. Evaluating the residual instead of `1 − Σ s_i` keeps
//! relative precision when the two states nearly coincide, which matters because
//! `D_E = √Φ(√F)` has unbounded slope at `F = 1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::eigen::mat_sqrt_psd;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::states::{check_same_dim, phi_of_gap, von_neumann_entropy, DensityMatrix, Ensemble};
use crate::svd::svd;
use crate::scalar::Real;

/// Identifies one of the supported measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    /// Uhlmann-Jozsa fidelity.
    F,
    SqrtF,
    Bures,
    /// Quantum Jensen-Shannon divergence.
    Qjsd,
    /// Entropic purification metric.
    De,
    /// Entropic fidelity `1 − D_E²`.
    Fe,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::F,
        Measure::SqrtF,
        Measure::Bures,
        Measure::Qjsd,
        Measure::De,
        Measure::Fe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::F => "F",
            Measure::SqrtF => "sqrtF",
            Measure::Bures => "Bures",
            Measure::Qjsd => "QJSD",
            Measure::De => "DE",
            Measure::Fe => "FE",
        }
    }

    /// Upper end of the measure's range (`√2` for Bures, one otherwise).
    pub fn upper_bound(self) -> f64 {
        match self {
            Measure::Bures => std::f64::consts::SQRT_2,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::BadParameter(format!("unknown measure `{s}`")))
    }
}

/// A computed measure together with the dimension it was evaluated in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricValue<T: Real> {
    pub value: T,
    pub measure: Measure,
    pub dim: usize,
}

/// Evaluates `measure` on `(rho, sigma)`.
pub fn evaluate<T: Real>(
    measure: Measure,
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
) -> Result<MetricValue<T>> {
    let value = match measure {
        Measure::F => fidelity(rho, sigma)?,
        Measure::SqrtF => sqrt_fidelity(rho, sigma)?,
        Measure::Bures => bures(rho, sigma)?,
        Measure::Qjsd => qjsd(rho, sigma)?,
        Measure::De => d_e(rho, sigma)?,
        Measure::Fe => f_e(rho, sigma)?,
    };
    Ok(MetricValue {
        value,
        measure,
        dim: rho.dim(),
    })
}

/// Fixed argument order so that every measure is bitwise symmetric.
fn canonical_order<'a, T: Real>(
    rho: &'a DensityMatrix<T>,
    sigma: &'a DensityMatrix<T>,
) -> (&'a DensityMatrix<T>, &'a DensityMatrix<T>) {
    let ord = rho
        .matrix()
        .as_slice()
        .iter()
        .zip(sigma.matrix().as_slice())
        .map(|(a, b)| {
            a.re.as_f64()
                .total_cmp(&b.re.as_f64())
                .then(a.im.as_f64().total_cmp(&b.im.as_f64()))
        })
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal);
    if ord == Ordering::Greater {
        (sigma, rho)
    } else {
        (rho, sigma)
    }
}

fn unit_trace_sqrt<T: Real>(rho: &DensityMatrix<T>) -> ComplexMatrix<T> {
    let trace: T = rho.eigenvalues().iter().copied().sum();
    rho.sqrt().scale(T::one() / trace.sqrt())
}

/// `1 − √F(ρ, σ)` in `[0, 1]`.
pub fn fidelity_gap<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    check_same_dim(rho.dim(), sigma.dim())?;
    let (rho, sigma) = canonical_order(rho, sigma);
    let a = unit_trace_sqrt(rho);
    let b = unit_trace_sqrt(sigma);
    // max_U Re tr(A† B U) = ‖A B‖_tr, attained at U = Z W† for A B = W S Z†
    let dec = svd(&(&a * &b))?;
    let u = &dec.v * &dec.u.adjoint();
    let residual = &a - &(&b * &u);
    let gap = residual.frobenius_norm_sqr() * T::lit(0.5);
    Ok(gap.max(T::zero()).min(T::one()))
}

/// `√F(ρ, σ) = tr|√σ √ρ|`, clamped to `[0, 1]`.
pub fn sqrt_fidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    Ok(T::one() - fidelity_gap(rho, sigma)?)
}

/// Uhlmann-Jozsa fidelity `[tr √(√ρ σ √ρ)]²`.
pub fn fidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    let s = sqrt_fidelity(rho, sigma)?;
    Ok(s * s)
}

/// Fidelity as `(Σ singular values of √σ √ρ)²`, without the residual refinement.
pub fn fidelity_trace_norm<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    check_same_dim(rho.dim(), sigma.dim())?;
    let m = &sigma.sqrt() * &rho.sqrt();
    let s = svd(&m)?.trace_norm().min(T::one());
    Ok(s * s)
}

/// Fidelity straight from the nested square root `[tr √(√ρ σ √ρ)]²`.
pub fn fidelity_nested_sqrt<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    check_same_dim(rho.dim(), sigma.dim())?;
    let root = rho.sqrt();
    let inner = (&(&root * sigma.matrix()) * &root).hermitian_part();
    let s = mat_sqrt_psd(&inner)?.trace().re.min(T::one());
    Ok(s * s)
}

/// Bures distance `√(2 − 2√F)` in `[0, √2]`.
pub fn bures<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    Ok((T::lit(2.0) * fidelity_gap(rho, sigma)?).sqrt())
}

/// `H_N((ρ+σ)/2) − H_N(ρ)/2 − H_N(σ)/2`.
pub fn qjsd<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    check_same_dim(rho.dim(), sigma.dim())?;
    let (rho, sigma) = canonical_order(rho, sigma);
    let half = T::lit(0.5);
    let mid = rho.midpoint(sigma)?;
    let value = von_neumann_entropy(&mid)
        - half * von_neumann_entropy(rho)
        - half * von_neumann_entropy(sigma);
    Ok(value.max(T::zero()).min(T::one()))
}

/// Holevo quantity `H_N(Σ q_i ρ_i) − Σ q_i H_N(ρ_i)` of an ensemble.
pub fn holevo_quantity<T: Real>(ens: &Ensemble<T>) -> Result<T> {
    let avg = ens.average()?;
    let mixed: T = ens
        .weights()
        .iter()
        .zip(ens.states())
        .map(|(&q, rho)| q * von_neumann_entropy(rho))
        .sum();
    Ok((von_neumann_entropy(&avg) - mixed).max(T::zero()))
}

/// Two-state Holevo quantity `{q, ρ; 1−q, σ}`.
pub fn holevo_two_state<T: Real>(
    q: T,
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
) -> Result<T> {
    let ens = Ensemble::new(vec![q, T::one() - q], vec![rho.clone(), sigma.clone()])?;
    holevo_quantity(&ens)
}

/// `D_E(ρ, σ) = √Φ(√F(ρ, σ))` in `[0, 1]`.
pub fn d_e<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    Ok(phi_of_gap(fidelity_gap(rho, sigma)?).sqrt())
}

/// `D_E²`, skipping the square root.
pub fn d_e_squared<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    Ok(phi_of_gap(fidelity_gap(rho, sigma)?))
}

/// `F_E(ρ, σ) = 1 − D_E²(ρ, σ)`.
pub fn f_e<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    Ok(T::one() - d_e_squared(rho, sigma)?)
}

/// `D_E` as a function of the Bures distance: `√Φ(1 − D_B²/2)`.
pub fn d_e_from_bures<T: Real>(bures: T) -> Result<T> {
    let gap = bures * bures * T::lit(0.5);
    let slack = T::lit(1e-12);
    if !(gap >= -slack && gap <= T::one() + slack) {
        return Err(Error::Domain {
            value: bures.as_f64(),
        });
    }
    Ok(phi_of_gap(gap).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::seeded_rng;
    use crate::states::{diagonal_state, phi_kernel, random_density_with, random_pure};

    fn zero() -> DensityMatrix<f64> {
        DensityMatrix::basis(2, 0)
    }

    fn one() -> DensityMatrix<f64> {
        DensityMatrix::basis(2, 1)
    }

    fn mixed() -> DensityMatrix<f64> {
        DensityMatrix::maximally_mixed(2)
    }

    #[test]
    fn fidelity_examples() {
        let rho = random_density_with::<f64>(3, 3, &mut seeded_rng(4)).unwrap();
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-14);
        assert!(fidelity(&zero(), &one()).unwrap() < 1e-15);
        assert!((fidelity(&zero(), &mixed()).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fidelity_routes_agree() {
        let mut rng = seeded_rng(21);
        for k in 0..50 {
            let d = 2 + k % 3;
            let rho = random_density_with::<f64>(d, 1 + k % d, &mut rng).unwrap();
            let sigma = random_density_with::<f64>(d, 1 + (k / 3) % d, &mut rng).unwrap();
            let f = fidelity(&rho, &sigma).unwrap();
            assert!((f - fidelity_trace_norm(&rho, &sigma).unwrap()).abs() < 1e-12);
            assert!((f - fidelity_nested_sqrt(&rho, &sigma).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn fidelity_of_pure_state_is_expectation() {
        let mut rng = seeded_rng(8);
        for _ in 0..20 {
            let xi = random_pure::<f64>(3, &mut rng);
            let sigma = random_density_with::<f64>(3, 2, &mut rng).unwrap();
            let amp = xi.amplitudes();
            let expectation = sigma.matrix().apply_vec(amp);
            let expected: f64 = amp.iter().zip(&expectation).map(|(a, b)| (a.conj() * b).re).sum();
            assert!((fidelity(&xi.to_density(), &sigma).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn bures_examples() {
        let rho = random_density_with::<f64>(2, 2, &mut seeded_rng(2)).unwrap();
        assert!(bures(&rho, &rho).unwrap() < 1e-12);
        assert!((bures(&zero(), &one()).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let sigma = random_density_with::<f64>(2, 2, &mut seeded_rng(3)).unwrap();
        let b = bures(&rho, &sigma).unwrap();
        let f = fidelity(&rho, &sigma).unwrap();
        assert!((b * b - (2.0 - 2.0 * f.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn qjsd_examples() {
        let rho = random_density_with::<f64>(3, 2, &mut seeded_rng(6)).unwrap();
        assert!(qjsd(&rho, &rho).unwrap() < 1e-14);
        assert!((qjsd(&zero(), &one()).unwrap() - 1.0).abs() < 1e-15);
        let mut rng = seeded_rng(12);
        for _ in 0..20 {
            let psi = random_pure::<f64>(2, &mut rng);
            let phi = random_pure::<f64>(2, &mut rng);
            let x = psi.inner(&phi).unwrap().norm();
            let value = qjsd(&psi.to_density(), &phi.to_density()).unwrap();
            assert!((value - phi_kernel(x).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn holevo_examples() {
        let rho = random_density_with::<f64>(2, 2, &mut seeded_rng(1)).unwrap();
        let ens = Ensemble::new(vec![0.2, 0.3, 0.5], vec![rho.clone(), rho.clone(), rho.clone()])
            .unwrap();
        assert!(holevo_quantity(&ens).unwrap() < 1e-14);
        let sigma = random_density_with::<f64>(2, 1, &mut seeded_rng(5)).unwrap();
        let h = holevo_two_state(0.5, &rho, &sigma).unwrap();
        assert!((h - qjsd(&rho, &sigma).unwrap()).abs() < 1e-12);
        // binary entropy of 0.3
        let expected = -0.3f64 * 0.3f64.log2() - 0.7 * 0.7f64.log2();
        assert!((holevo_two_state(0.3, &zero(), &one()).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.881_290_899_230_728).abs() < 1e-12);
    }

    #[test]
    fn d_e_examples() {
        let rho = random_density_with::<f64>(3, 3, &mut seeded_rng(7)).unwrap();
        assert!(d_e(&rho, &rho).unwrap() < 1e-10);
        assert!((d_e(&zero(), &one()).unwrap() - 1.0).abs() < 1e-15);
        // x = 1/√2, Φ(x) evaluated independently of the gap form
        let x = 0.5f64.sqrt();
        let (p, q) = ((1.0 - x) / 2.0, (1.0 + x) / 2.0);
        let expected = (-p * p.log2() - q * q.log2()).sqrt();
        let value = d_e(&zero(), &mixed()).unwrap();
        assert!((value - expected).abs() < 1e-12);
        assert!((value - 0.7752).abs() < 1e-4);
        let fe = f_e(&zero(), &mixed()).unwrap();
        assert!((fe - (1.0 - expected * expected)).abs() < 1e-12);
        assert!((fe - 0.3991).abs() < 1e-4);
    }

    #[test]
    fn f_e_examples() {
        let rho = random_density_with::<f64>(2, 2, &mut seeded_rng(9)).unwrap();
        assert!((f_e(&rho, &rho).unwrap() - 1.0).abs() < 1e-15);
        let a = diagonal_state::<f64>(&[0.5, 0.5, 0.0, 0.0]).unwrap();
        let b = diagonal_state::<f64>(&[0.0, 0.0, 0.3, 0.7]).unwrap();
        assert!(f_e(&a, &b).unwrap().abs() < 1e-15);
    }

    #[test]
    fn symmetry_is_bitwise() {
        let mut rng = seeded_rng(31);
        for _ in 0..20 {
            let rho = random_density_with::<f64>(3, 2, &mut rng).unwrap();
            let sigma = random_density_with::<f64>(3, 3, &mut rng).unwrap();
            assert_eq!(d_e(&rho, &sigma).unwrap(), d_e(&sigma, &rho).unwrap());
            assert_eq!(qjsd(&rho, &sigma).unwrap(), qjsd(&sigma, &rho).unwrap());
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = DensityMatrix::<f64>::maximally_mixed(2);
        let b = DensityMatrix::<f64>::maximally_mixed(3);
        for m in Measure::ALL {
            assert!(matches!(
                evaluate(m, &a, &b),
                Err(Error::DimensionMismatch { .. })
            ));
        }
    }

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!("trace".parse::<Measure>().is_err());
    }

    #[test]
    fn d_e_bures_relation() {
        let mut rng = seeded_rng(44);
        for _ in 0..20 {
            let rho = random_density_with::<f64>(2, 2, &mut rng).unwrap();
            let sigma = random_density_with::<f64>(2, 2, &mut rng).unwrap();
            let via_bures = d_e_from_bures(bures(&rho, &sigma).unwrap()).unwrap();
            assert!((via_bures - d_e(&rho, &sigma).unwrap()).abs() < 1e-9);
        }
        assert_eq!(d_e_from_bures(0.0f64).unwrap(), 0.0);
        assert!((d_e_from_bures(2f64.sqrt()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_precision_metrics() {
        let a = DensityMatrix::<f32>::basis(2, 0);
        let b = DensityMatrix::<f32>::maximally_mixed(2);
        assert!((fidelity(&a, &b).unwrap() - 0.5).abs() < 1e-5);
        assert!((d_e(&a, &b).unwrap() - 0.7752).abs() < 1e-3);
    }
}
