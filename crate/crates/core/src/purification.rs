//! Direct maximization of the overlap between purifications.
//!
//! `|ψ⟩` is the canonical purification of `ρ` and every purification of `σ` is
//! `(U ⊗ I)|φ₀⟩` for a unitary `U` on the ancilla (first) factor. Writing the
//! purifications as `d × d` amplitude matrices `Ψ`, `Φ₀` (ancilla rows, system
//! columns) the overlap is `⟨ψ|(U ⊗ I)|φ₀⟩ = tr(U M)` with `M = Φ₀ Ψ†`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::random::{haar_unitary, seeded_rng};
use crate::scalar::{Real, C};
use crate::states::{check_same_dim, purify, von_neumann_entropy, DensityMatrix, PureState};
use crate::svd::{polar_unitary, svd};

/// Largest system dimension accepted by the optimizer.
pub const MAX_OPTIMIZER_DIM: usize = 8;

/// How the ancilla unitary is updated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AscentMethod {
    /// Closed-form Procrustes step `U ← polar(M†)`.
    Polar,
    /// Riemannian gradient ascent on `U(d)` with a polar retraction and backtracking.
    Riemannian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    pub method: AscentMethod,
    /// Stop once the overlap changes by less than this between iterations.
    pub step_tol: f64,
    pub max_iter: usize,
    pub restarts: usize,
    /// Largest accepted gap between the best overlap and its upper bound `‖M‖_tr²`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            method: AscentMethod::Polar,
            step_tol: 1e-12,
            max_iter: 500,
            restarts: 4,
            tol: 1e-6,
            seed: 0,
        }
    }
}

/// Best purification found for `σ` against the fixed purification of `ρ`.
#[derive(Debug, Clone)]
pub struct PurificationOptimum<T: Real> {
    /// `|⟨ψ|φ⟩|²` at the optimum.
    pub overlap_sqr: T,
    /// Upper bound minus achieved value.
    pub gap: T,
    pub iterations: usize,
    pub psi: PureState<T>,
    pub phi: PureState<T>,
}

fn amplitude_matrix<T: Real>(psi: &PureState<T>, d: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_vec(d, d, psi.amplitudes().to_vec()).expect("d² amplitudes")
}

fn overlap<T: Real>(u: &ComplexMatrix<T>, m: &ComplexMatrix<T>) -> C<T> {
    let n = u.rows();
    let mut t = C::zero();
    for i in 0..n {
        for k in 0..n {
            t = t + u[(i, k)] * m[(k, i)];
        }
    }
    t
}

struct Ascent<T: Real> {
    u: ComplexMatrix<T>,
    value: T,
    iterations: usize,
    converged: bool,
}

fn polar_ascent<T: Real>(
    m: &ComplexMatrix<T>,
    start: ComplexMatrix<T>,
    opts: &OptimizerOptions,
) -> Result<Ascent<T>> {
    let step_tol = T::lit(opts.step_tol);
    let mut u = start;
    let mut value = overlap(&u, m).norm_sqr();
    let target = polar_unitary(&m.adjoint())?;
    for it in 1..=opts.max_iter {
        let next = target.clone();
        let next_value = overlap(&next, m).norm_sqr();
        let change = (next_value - value).abs();
        u = next;
        value = next_value;
        if change < step_tol {
            return Ok(Ascent {
                u,
                value,
                iterations: it,
                converged: true,
            });
        }
    }
    Ok(Ascent {
        u,
        value,
        iterations: opts.max_iter,
        converged: false,
    })
}

fn riemannian_ascent<T: Real>(
    m: &ComplexMatrix<T>,
    start: ComplexMatrix<T>,
    opts: &OptimizerOptions,
) -> Result<Ascent<T>> {
    let step_tol = T::lit(opts.step_tol);
    let m_adj = m.adjoint();
    let mut u = start;
    let mut t = overlap(&u, m);
    let mut value = t.norm_sqr();
    let mut step = T::one();
    for it in 1..=opts.max_iter {
        // Euclidean gradient of |tr(UM)|² is t·M†; project onto skew-Hermitian Ω with dU = ΩU
        let g = m_adj.scale_c(t);
        let gu = &g * &u.adjoint();
        let omega = (&gu - &gu.adjoint()).scale(T::lit(0.5));
        let slope = omega.frobenius_norm_sqr();
        if slope.is_zero() {
            return Ok(Ascent {
                u,
                value,
                iterations: it,
                converged: true,
            });
        }
        let mut accepted = None;
        let mut trial_step = (step * T::lit(2.0)).min(T::lit(1e3));
        for _ in 0..60 {
            let moved = &u + &(&omega * &u).scale(trial_step);
            let candidate = polar_unitary(&moved)?;
            let ct = overlap(&candidate, m);
            let cv = ct.norm_sqr();
            // Armijo condition
            if cv >= value + T::lit(1e-4) * trial_step * slope {
                accepted = Some((candidate, ct, cv));
                break;
            }
            trial_step = trial_step * T::lit(0.5);
        }
        let Some((candidate, ct, cv)) = accepted else {
            // no ascent direction left at machine precision
            return Ok(Ascent {
                u,
                value,
                iterations: it,
                converged: true,
            });
        };
        let change = cv - value;
        step = trial_step;
        u = candidate;
        t = ct;
        value = cv;
        if change < step_tol {
            return Ok(Ascent {
                u,
                value,
                iterations: it,
                converged: true,
            });
        }
    }
    Ok(Ascent {
        u,
        value,
        iterations: opts.max_iter,
        converged: false,
    })
}

/// Maximizes `|⟨ψ|φ⟩|²` over purifications `|φ⟩` of `σ`.
pub fn maximize_purification_overlap<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    opts: &OptimizerOptions,
) -> Result<PurificationOptimum<T>> {
    let d = rho.dim();
    check_same_dim(d, sigma.dim())?;
    if d > MAX_OPTIMIZER_DIM {
        return Err(Error::DimensionOverflow {
            dim: d,
            max: MAX_OPTIMIZER_DIM,
        });
    }
    let psi = purify(rho);
    let phi0 = purify(sigma);
    let m = &amplitude_matrix(&phi0, d) * &amplitude_matrix(&psi, d).adjoint();
    let bound = {
        let s = svd(&m)?.trace_norm();
        s * s
    };

    let mut rng = seeded_rng(opts.seed);
    let mut best: Option<Ascent<T>> = None;
    let mut total_iterations = 0;
    for restart in 0..opts.restarts.max(1) {
        let start = if restart == 0 {
            ComplexMatrix::identity(d)
        } else {
            haar_unitary(d, &mut rng)
        };
        let run = match opts.method {
            AscentMethod::Polar => polar_ascent(&m, start, opts)?,
            AscentMethod::Riemannian => riemannian_ascent(&m, start, opts)?,
        };
        total_iterations += run.iterations;
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one restart");
    let gap = (bound - best.value).max(T::zero());
    if !best.converged || gap > T::lit(opts.tol) {
        return Err(Error::OptimizerDidNotConverge {
            best: best.value.as_f64(),
            gap: gap.as_f64(),
        });
    }

    let phi0_mat = amplitude_matrix(&phi0, d);
    let phi_mat = &best.u * &phi0_mat;
    let phi = PureState::normalized(phi_mat.as_slice().to_vec())?;
    Ok(PurificationOptimum {
        overlap_sqr: best.value.min(T::one()),
        gap,
        iterations: total_iterations,
        psi,
        phi,
    })
}

/// `F(ρ, σ)` as the maximal squared overlap of purifications.
pub fn fidelity_via_purification<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    opts: &OptimizerOptions,
) -> Result<T> {
    Ok(maximize_purification_overlap(rho, sigma, opts)?.overlap_sqr)
}

/// `D_E(ρ, σ)` as `min_φ √H_N((|ψ⟩⟨ψ| + |φ⟩⟨φ|)/2)`, evaluated at the overlap-maximizing
/// purification.
pub fn d_e_via_purification<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    opts: &OptimizerOptions,
) -> Result<T> {
    let opt = maximize_purification_overlap(rho, sigma, opts)?;
    let avg = opt.psi.to_density().midpoint(&opt.phi.to_density())?;
    Ok(von_neumann_entropy(&avg).sqrt())
}
