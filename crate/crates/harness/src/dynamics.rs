//! Reduced dynamics of a qubit coupled to a qubit environment.
//!
//! Two system states `ρ_Q ⊗ ω_E` and `σ_Q ⊗ ω_E` evolve under repeated application
//! of one joint unitary; the table tracks distances between the system marginals.
//! Only uncorrelated initial conditions are built here. Correlated system-environment
//! states would enter through [`reduced_dynamics`] with a non-product joint state.

use qdist_core::metrics::{bures, d_e, qjsd};
use qdist_core::random::{haar_unitary, seeded_rng, SeededRng};
use qdist_core::states::random_density_with;
use qdist_core::{ComplexMatrix, DensityMatrix, Result, Subsystem};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DynamicsRow {
    pub t: usize,
    pub d_e: f64,
    pub bures: f64,
    pub qjsd: f64,
}

/// Tabulates distances of the system marginals for `t = 0..=steps`.
pub fn reduced_dynamics(
    joint_unitary: &ComplexMatrix<f64>,
    rho: &DensityMatrix<f64>,
    sigma: &DensityMatrix<f64>,
    environment: &DensityMatrix<f64>,
    steps: usize,
) -> Result<Vec<DynamicsRow>> {
    let dims = (rho.dim(), environment.dim());
    let mut a = rho.kron(environment)?;
    let mut b = sigma.kron(environment)?;
    let mut rows = Vec::with_capacity(steps + 1);
    for t in 0..=steps {
        if t > 0 {
            a = a.conjugate_by(joint_unitary)?;
            b = b.conjugate_by(joint_unitary)?;
        }
        let ra = a.partial_trace(dims, Subsystem::A)?;
        let rb = b.partial_trace(dims, Subsystem::A)?;
        rows.push(DynamicsRow {
            t,
            d_e: d_e(&ra, &rb)?,
            bures: bures(&ra, &rb)?,
            qjsd: qjsd(&ra, &rb)?,
        });
    }
    Ok(rows)
}

struct Setup {
    u: ComplexMatrix<f64>,
    rho: DensityMatrix<f64>,
    sigma: DensityMatrix<f64>,
    omega: DensityMatrix<f64>,
}

fn random_setup(rng: &mut SeededRng) -> Result<Setup> {
    Ok(Setup {
        u: haar_unitary(4, rng),
        rho: random_density_with(2, 2, rng)?,
        sigma: random_density_with(2, 2, rng)?,
        omega: random_density_with(2, 2, rng)?,
    })
}

/// Random joint unitary and random qubit states drawn from `seed`.
///
/// Panics only if `steps == 0`.
pub fn reduced_dynamics_demo(seed: u64, steps: usize) -> Vec<DynamicsRow> {
    assert!(steps >= 1, "steps must be at least 1");
    let s = random_setup(&mut seeded_rng(seed)).expect("random qubit states are valid");
    reduced_dynamics(&s.u, &s.rho, &s.sigma, &s.omega, steps)
        .expect("qubit-qubit dynamics stays within the dimension cap")
}

/// `D_E(t=1) − D_E(t=0)` for one random setup.
pub(crate) fn first_step_margin(rng: &mut SeededRng) -> Result<f64> {
    let s = random_setup(rng)?;
    let rows = reduced_dynamics(&s.u, &s.rho, &s.sigma, &s.omega, 1)?;
    Ok(rows[1].d_e - rows[0].d_e)
}
