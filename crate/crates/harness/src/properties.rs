//! Property registry. Each trial draws its inputs from a seeded generator and
//! returns a signed margin: positive values are violations.

use qdist_core::channels::{
    choi_of_composition, compose, jamiolkowski, random_channel, random_standard_channel,
    random_unital_channel, random_unitary_channel, standard_channel, tensor, ChannelKind,
    KrausChannel,
};
use qdist_core::metrics::{
    bures, d_e, d_e_from_bures, d_e_squared, f_e, fidelity, fidelity_nested_sqrt,
    holevo_two_state, qjsd, sqrt_fidelity,
};
use qdist_core::purification::{d_e_via_purification, fidelity_via_purification, OptimizerOptions};
use qdist_core::random::{haar_unitary, random_simplex, SeededRng};
use qdist_core::states::{
    phi_kernel, purification_marginal, purify, random_density_with, random_pure,
    von_neumann_entropy,
};
use qdist_core::{ComplexMatrix, DensityMatrix, Result};
use rand::Rng;
use serde::Serialize;

use crate::dynamics::first_step_margin;

/// Whether failures of a property count against the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Asserted,
    /// Recorded only: the property is not a theorem under these hypotheses.
    Observed,
}

/// How a trial picks its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Cycles through the configured dimensions.
    State,
    /// Mostly qubits, every fifth trial a qutrit when configured.
    Process,
}

pub type TrialFn = fn(&mut SeededRng, usize) -> Result<f64>;

#[derive(Clone, Copy)]
pub struct Property {
    pub id: &'static str,
    pub kind: Kind,
    pub scope: Scope,
    /// Multiplies the configured tolerance.
    pub factor: f64,
    pub trial: TrialFn,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Property")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("scope", &self.scope)
            .field("factor", &self.factor)
            .finish()
    }
}

impl Property {
    pub fn dim_for(&self, dims: &[usize], index: u64) -> usize {
        match self.scope {
            Scope::State => dims[(index % dims.len() as u64) as usize],
            Scope::Process => {
                let qutrit = index % 5 == 4 && dims.contains(&3);
                if qutrit {
                    3
                } else if dims.contains(&2) {
                    2
                } else {
                    dims.iter().copied().min().unwrap_or(2)
                }
            }
        }
    }
}

const fn asserted(id: &'static str, scope: Scope, factor: f64, trial: TrialFn) -> Property {
    Property {
        id,
        kind: Kind::Asserted,
        scope,
        factor,
        trial,
    }
}

const fn observed(id: &'static str, scope: Scope, trial: TrialFn) -> Property {
    Property {
        id,
        kind: Kind::Observed,
        scope,
        factor: 1.0,
        trial,
    }
}

use Scope::{Process, State};

/// Every registered property, sorted by id.
pub const REGISTRY: &[Property] = &[
    asserted("bures_consistency", State, 1.0, bures_consistency),
    asserted("channel_tp", Process, 1.0, channel_tp),
    asserted("choi_composition_identity", Process, 1.0, choi_composition_identity),
    asserted("choi_marginal", Process, 1.0, choi_marginal),
    asserted("choi_tensor_identity", Process, 1.0, choi_tensor_identity),
    asserted("compose_action", Process, 1.0, compose_action),
    asserted("de_contractivity", State, 1.0, de_contractivity),
    asserted("de_identity", State, 1.0, de_identity),
    observed("de_joint_convexity", State, de_joint_convexity),
    asserted("de_normalization", State, 1.0, de_normalization),
    asserted("de_projective_contractivity", State, 1.0, de_projective_contractivity),
    asserted("de_pure_qjsd_identity", State, 0.1, de_pure_qjsd_identity),
    asserted("de_purification_oracle", State, 1e4, de_purification_oracle),
    asserted("de_restricted_additivity", State, 1.0, de_restricted_additivity),
    asserted("de_symmetry", State, 1.0, de_symmetry),
    asserted("de_triangle", State, 1.0, de_triangle),
    asserted("de_unitary_invariance", State, 0.1, de_unitary_invariance),
    asserted("de_vs_bures_concave", State, 1.0, de_vs_bures_concave),
    asserted("delta_chaining", Process, 1.0, delta_chaining),
    observed("delta_chaining_nonunital", Process, delta_chaining_nonunital),
    asserted("delta_identity", Process, 1.0, delta_identity),
    asserted("delta_normalization", Process, 1.0, delta_normalization),
    asserted("delta_postprocessing", Process, 1.0, delta_postprocessing),
    observed("delta_postprocessing_nonunital", Process, delta_postprocessing_nonunital),
    asserted("delta_stability", Process, 1.0, delta_stability),
    asserted("delta_symmetry", Process, 1.0, delta_symmetry),
    asserted("delta_triangle", Process, 1.0, delta_triangle),
    asserted("delta_unitary_invariance", Process, 1.0, delta_unitary_invariance),
    asserted("entropy_bounds", State, 1.0, entropy_bounds),
    observed("fe_joint_concavity", State, fe_joint_concavity),
    asserted("fe_monotonicity", State, 1.0, fe_monotonicity),
    asserted("fe_normalization", State, 1.0, fe_normalization),
    asserted("fe_symmetry", State, 1.0, fe_symmetry),
    asserted("fidelity_closed_form_oracle", State, 1.0, fidelity_closed_form_oracle),
    asserted("fidelity_monotonicity", State, 1.0, fidelity_monotonicity),
    asserted("fidelity_multiplicativity", State, 1.0, fidelity_multiplicativity),
    asserted("holevo_bound", State, 1.0, holevo_bound),
    asserted("holevo_pure_equality", State, 1.0, holevo_pure_equality),
    asserted("iterated_contractivity", State, 1.0, iterated_contractivity),
    asserted("jamiolkowski_inversion", Process, 1.0, jamiolkowski_inversion),
    asserted("phi_monotone", State, 1.0, phi_monotone),
    asserted("purification_fidelity_oracle", State, 1e3, purification_fidelity_oracle),
    asserted("purify_roundtrip", State, 1.0, purify_roundtrip),
    asserted("reduced_dynamics_first_step", State, 1.0, reduced_dynamics_first_step),
    asserted("sqrt_fidelity_joint_concavity", State, 1.0, sqrt_fidelity_joint_concavity),
    asserted("tensor_action", Process, 1.0, tensor_action),
];

pub fn lookup(id: &str) -> Option<&'static Property> {
    REGISTRY.iter().find(|p| p.id == id)
}

// ---- samplers ----

type Density = DensityMatrix<f64>;
type Channel = KrausChannel<f64>;

/// Random state with a uniformly chosen rank.
fn state(rng: &mut SeededRng, d: usize) -> Result<Density> {
    let rank = rng.random_range(1..=d);
    random_density_with(d, rank, rng)
}

fn pure(rng: &mut SeededRng, d: usize) -> Density {
    random_pure::<f64>(d, rng).to_density()
}

/// Stinespring channel with 1 to 3 Kraus operators.
fn channel(rng: &mut SeededRng, d: usize) -> Result<Channel> {
    let k = rng.random_range(1..=3);
    random_channel(d, k, rng)
}

fn unital(rng: &mut SeededRng, d: usize) -> Result<Channel> {
    let k = rng.random_range(1..=3);
    random_unital_channel(d, k, rng)
}

/// Stinespring or catalogue channel, half the time each.
fn any_channel(rng: &mut SeededRng, d: usize) -> Result<Channel> {
    if rng.random_bool(0.5) {
        channel(rng, d)
    } else {
        random_standard_channel(d, rng)
    }
}

fn mixture(weights: &[f64], states: &[Density]) -> Result<Density> {
    let terms: Vec<(f64, &Density)> = weights.iter().copied().zip(states).collect();
    Density::mixture(&terms)
}

fn delta(a: &Channel, b: &Channel) -> Result<f64> {
    qdist_core::delta_e(a, b)
}

/// Two orthonormal pure states.
fn orthogonal_pair(rng: &mut SeededRng, d: usize) -> Result<(Density, Density)> {
    let u = haar_unitary::<f64>(d, rng);
    let a = qdist_core::states::pure_density(&u.column(0))?;
    let b = qdist_core::states::pure_density(&u.column(1))?;
    Ok((a, b))
}

// ---- state metrics ----

fn de_normalization(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let v = d_e(&rho, &sigma)?;
    let (a, b) = orthogonal_pair(rng, d)?;
    let ortho = d_e(&a, &b)?;
    Ok((-v).max(v - 1.0).max((ortho - 1.0).abs()))
}

/// `D_E(ρ, ρ) = 0` and `F(ρ, ρ) = 1`; distinct states have `D_E > 0`.
fn de_identity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let rho = state(rng, d)?;
    let same = d_e(&rho, &rho)?.max((1.0 - fidelity(&rho, &rho)?).abs());
    let sigma = state(rng, d)?;
    let distinct = rho.matrix().max_abs_diff(sigma.matrix()) > 1e-6;
    let separated = if distinct && d_e(&rho, &sigma)? <= 0.0 {
        1.0
    } else {
        0.0
    };
    Ok(same.max(separated))
}

fn de_symmetry(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    Ok((d_e(&rho, &sigma)? - d_e(&sigma, &rho)?).abs())
}

fn de_triangle(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma, xi) = (state(rng, d)?, state(rng, d)?, state(rng, d)?);
    Ok(d_e(&rho, &sigma)? - d_e(&rho, &xi)? - d_e(&xi, &sigma)?)
}

/// Recorded only: `D_E²(|0⟩⟨0|, I/2) ≈ 0.601` exceeds `½·D_E²(|0⟩⟨0|, |0⟩⟨0|) + ½·D_E²(|0⟩⟨0|, |1⟩⟨1|) = 0.5`,
/// so the inequality fails in general.
fn de_joint_convexity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let n = rng.random_range(2..=3);
    let p = random_simplex(n, rng);
    let rhos = (0..n).map(|_| state(rng, d)).collect::<Result<Vec<_>>>()?;
    let sigmas = (0..n).map(|_| state(rng, d)).collect::<Result<Vec<_>>>()?;
    let lhs = d_e_squared(&mixture(&p, &rhos)?, &mixture(&p, &sigmas)?)?;
    let mut rhs = 0.0;
    for i in 0..n {
        rhs += p[i] * d_e_squared(&rhos[i], &sigmas[i])?;
    }
    Ok(lhs - rhs)
}

fn de_restricted_additivity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let tau = state(rng, 2)?;
    let joint = d_e(&rho.kron(&tau)?, &sigma.kron(&tau)?)?;
    Ok((joint - d_e(&rho, &sigma)?).abs())
}

fn de_unitary_invariance(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let u = haar_unitary::<f64>(d, rng);
    let rotated = d_e(&rho.conjugate_by(&u)?, &sigma.conjugate_by(&u)?)?;
    Ok((rotated - d_e(&rho, &sigma)?).abs())
}

fn de_pure_qjsd_identity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (a, b) = (pure(rng, d), pure(rng, d));
    Ok((d_e_squared(&a, &b)? - qjsd(&a, &b)?).abs())
}

fn holevo_bound(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    Ok(qjsd(&rho, &sigma)? - d_e_squared(&rho, &sigma)?)
}

/// Equal-weight Holevo quantity of two pure states equals `D_E²`.
fn holevo_pure_equality(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (a, b) = (pure(rng, d), pure(rng, d));
    Ok((holevo_two_state(0.5, &a, &b)? - d_e_squared(&a, &b)?).abs())
}

fn sqrt_fidelity_joint_concavity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let p = random_simplex(2, rng);
    let r = [state(rng, d)?, state(rng, d)?];
    let s = [state(rng, d)?, state(rng, d)?];
    let lhs = sqrt_fidelity(&mixture(&p, &r)?, &mixture(&p, &s)?)?;
    let rhs = p[0] * sqrt_fidelity(&r[0], &s[0])? + p[1] * sqrt_fidelity(&r[1], &s[1])?;
    Ok(rhs - lhs)
}

/// Recorded only; equivalent to joint convexity of `D_E²`.
fn fe_joint_concavity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let n = rng.random_range(2..=3);
    let p = random_simplex(n, rng);
    let rhos = (0..n).map(|_| state(rng, d)).collect::<Result<Vec<_>>>()?;
    let sigmas = (0..n).map(|_| state(rng, d)).collect::<Result<Vec<_>>>()?;
    let lhs = f_e(&mixture(&p, &rhos)?, &mixture(&p, &sigmas)?)?;
    let mut rhs = 0.0;
    for i in 0..n {
        rhs += p[i] * f_e(&rhos[i], &sigmas[i])?;
    }
    Ok(rhs - lhs)
}

fn fe_symmetry(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    Ok((f_e(&rho, &sigma)? - f_e(&sigma, &rho)?).abs())
}

/// `F_E ∈ [0, 1]`, `F_E(ρ, ρ) = 1`, `F_E = 0` on orthogonal pure states.
fn fe_normalization(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let v = f_e(&rho, &sigma)?;
    let same = (1.0 - f_e(&rho, &rho)?).abs();
    let (a, b) = orthogonal_pair(rng, d)?;
    let ortho = f_e(&a, &b)?.abs();
    Ok((-v).max(v - 1.0).max(same).max(ortho))
}

fn fidelity_multiplicativity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (r1, s1) = (state(rng, d)?, state(rng, d)?);
    let (r2, s2) = (state(rng, 2)?, state(rng, 2)?);
    let joint = fidelity(&r1.kron(&r2)?, &s1.kron(&s2)?)?;
    Ok((joint - fidelity(&r1, &s1)? * fidelity(&r2, &s2)?).abs())
}

fn de_of_bures(x: f64) -> Result<f64> {
    d_e_from_bures(x.min(std::f64::consts::SQRT_2))
}

/// Finite-difference monotonicity and concavity of `D_B ↦ √Φ(1 − D_B²/2)`.
fn de_vs_bures_concave(rng: &mut SeededRng, _d: usize) -> Result<f64> {
    let max = std::f64::consts::SQRT_2;
    let h = rng.random_range(1e-3..0.05);
    let x = rng.random_range(h..max - h);
    let (lo, mid, hi) = (de_of_bures(x - h)?, de_of_bures(x)?, de_of_bures(x + h)?);
    Ok((lo - 2.0 * mid + hi).max(lo - mid).max(mid - hi))
}

fn de_contractivity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let e = any_channel(rng, d)?;
    Ok(d_e(&e.apply(&rho)?, &e.apply(&sigma)?)? - d_e(&rho, &sigma)?)
}

fn fe_monotonicity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let e = any_channel(rng, d)?;
    Ok(f_e(&rho, &sigma)? - f_e(&e.apply(&rho)?, &e.apply(&sigma)?)?)
}

fn fidelity_monotonicity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let e = any_channel(rng, d)?;
    Ok(fidelity(&rho, &sigma)? - fidelity(&e.apply(&rho)?, &e.apply(&sigma)?)?)
}

fn de_projective_contractivity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let basis = haar_unitary::<f64>(d, rng);
    let e = standard_channel(&ChannelKind::Projective(basis), d)?;
    Ok(d_e(&e.apply(&rho)?, &e.apply(&sigma)?)? - d_e(&rho, &sigma)?)
}

/// Largest single-step increase of `D_E(Eᵗρ, Eᵗσ)` over `t = 0..10`.
fn iterated_contractivity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (mut rho, mut sigma) = (state(rng, d)?, state(rng, d)?);
    let e = any_channel(rng, d)?;
    let mut prev = d_e(&rho, &sigma)?;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..10 {
        rho = e.apply(&rho)?;
        sigma = e.apply(&sigma)?;
        let next = d_e(&rho, &sigma)?;
        worst = worst.max(next - prev);
        prev = next;
    }
    Ok(worst)
}

fn optimizer_opts(rng: &mut SeededRng) -> OptimizerOptions {
    OptimizerOptions {
        seed: rng.random(),
        ..OptimizerOptions::default()
    }
}

fn purification_fidelity_oracle(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let opts = optimizer_opts(rng);
    Ok((fidelity_via_purification(&rho, &sigma, &opts)? - fidelity(&rho, &sigma)?).abs())
}

fn de_purification_oracle(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let opts = optimizer_opts(rng);
    let closed = phi_kernel(fidelity(&rho, &sigma)?.sqrt())?.sqrt();
    Ok((d_e_via_purification(&rho, &sigma, &opts)? - closed).abs())
}

/// Spectral route against the literal nested square root.
fn fidelity_closed_form_oracle(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    Ok((fidelity(&rho, &sigma)? - fidelity_nested_sqrt(&rho, &sigma)?).abs())
}

fn bures_consistency(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (rho, sigma) = (state(rng, d)?, state(rng, d)?);
    let b = bures(&rho, &sigma)?;
    let root = sqrt_fidelity(&rho, &sigma)?;
    let identity = (b * b - (2.0 - 2.0 * root)).abs();
    let through = (d_e_from_bures(b)? - d_e(&rho, &sigma)?).abs();
    Ok(identity.max(through))
}

fn entropy_bounds(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let rho = state(rng, d)?;
    let h = von_neumann_entropy(&rho);
    let pure_h = von_neumann_entropy(&pure(rng, d));
    Ok((-h).max(h - (d as f64).log2()).max(pure_h.abs()))
}

fn phi_monotone(rng: &mut SeededRng, _d: usize) -> Result<f64> {
    let a: f64 = rng.random();
    let b: f64 = rng.random();
    let (x, y) = (a.min(b), a.max(b));
    let (px, py) = (phi_kernel(x)?, phi_kernel(y)?);
    Ok((py - px).max(-py).max(px - 1.0))
}

fn purify_roundtrip(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let rho = state(rng, d)?;
    let psi = purify(&rho);
    Ok(purification_marginal(&psi, d)?.max_abs_diff(rho.matrix()))
}

fn reduced_dynamics_first_step(rng: &mut SeededRng, _d: usize) -> Result<f64> {
    first_step_margin(rng)
}

// ---- channels and process metrics ----

fn channel_tp(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let e = channel(rng, d)?;
    let s = random_standard_channel(d, rng)?;
    let u = unital(rng, d)?;
    Ok(e.tp_deviation().max(s.tp_deviation()).max(u.tp_deviation()))
}

fn choi_marginal(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let e = any_channel(rng, d)?;
    let marginal = jamiolkowski(&e)?
        .matrix()
        .partial_trace((d, d), qdist_core::Subsystem::A)?;
    Ok(marginal.max_abs_diff(&ComplexMatrix::identity(d).scale(1.0 / d as f64)))
}

/// Action rebuilt from the Choi state (and from Kraus operators recovered from it)
/// on every matrix unit `|i⟩⟨j|`.
fn jamiolkowski_inversion(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let e = any_channel(rng, d)?;
    let choi = jamiolkowski(&e)?;
    let rebuilt = Channel::from_choi(&choi)?;
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let mut unit = ComplexMatrix::zeros(d, d);
            unit[(i, j)] = qdist_core::C::new(1.0, 0.0);
            let direct = e.apply_matrix(&unit)?;
            worst = worst
                .max(choi.apply_to(&unit)?.max_abs_diff(&direct))
                .max(rebuilt.apply_matrix(&unit)?.max_abs_diff(&direct));
        }
    }
    Ok(worst)
}

fn compose_action(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let rho = state(rng, d)?;
    let ef = compose(&e, &f)?;
    let twice = e.apply(&f.apply(&rho)?)?;
    Ok(ef.apply(&rho)?.matrix().max_abs_diff(twice.matrix()))
}

fn tensor_action(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, 2)?);
    let (rho, sigma) = (state(rng, d)?, state(rng, 2)?);
    let joint = tensor(&e, &f)?.apply(&rho.kron(&sigma)?)?;
    let split = e.apply(&rho)?.kron(&f.apply(&sigma)?)?;
    Ok(joint.matrix().max_abs_diff(split.matrix()))
}

/// `ρ_{E∘F} = [Fᵀ ⊗ E](|Ψ⟩⟨Ψ|)`.
fn choi_composition_identity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let via = choi_of_composition(&f, &e)?;
    let direct = jamiolkowski(&compose(&e, &f)?)?;
    Ok(via.matrix().max_abs_diff(direct.matrix()))
}

/// Permuted `ρ_E ⊗ ρ_F` equals `ρ_{E⊗F}`.
fn choi_tensor_identity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, 2)?);
    let joint = jamiolkowski(&tensor(&e, &f)?)?;
    let factored = jamiolkowski(&e)?.tensor(&jamiolkowski(&f)?)?;
    Ok(joint.matrix().max_abs_diff(factored.matrix()))
}

fn delta_normalization(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let v = delta(&e, &f)?;
    Ok((-v).max(v - 1.0))
}

/// `Δ_E(E, E') = 0` when `E'` is `E` with unitarily remixed Kraus operators.
fn delta_identity(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let e = any_channel(rng, d)?;
    let k = e.kraus().len();
    let w = haar_unitary::<f64>(k, rng);
    let remixed = (0..k)
        .map(|i| {
            e.kraus()
                .iter()
                .enumerate()
                .fold(ComplexMatrix::zeros(d, d), |acc, (j, kj)| {
                    &acc + &kj.scale_c(w[(i, j)])
                })
        })
        .collect();
    let same = Channel::new(remixed)?;
    Ok(delta(&e, &e)?.max(delta(&e, &same)?))
}

fn delta_symmetry(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, d)?);
    Ok((delta(&e, &f)? - delta(&f, &e)?).abs())
}

fn delta_triangle(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f, g) = (any_channel(rng, d)?, any_channel(rng, d)?, any_channel(rng, d)?);
    Ok(delta(&e, &f)? - delta(&e, &g)? - delta(&g, &f)?)
}

/// `Δ_E(I⊗E, I⊗F) = Δ_E(E, F)` for an identity ancilla of dimension 2 or 3.
fn delta_stability(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let a = if d == 2 && rng.random_bool(0.5) { 3 } else { 2 };
    let id = Channel::identity(a);
    let lifted = delta(&tensor(&id, &e)?, &tensor(&id, &f)?)?;
    Ok((lifted - delta(&e, &f)?).abs())
}

fn chaining_margin(e1: &Channel, e2: &Channel, f1: &Channel, f2: &Channel) -> Result<f64> {
    let lhs = delta(&compose(e2, e1)?, &compose(f2, f1)?)?;
    Ok(lhs - delta(e1, f1)? - delta(e2, f2)?)
}

/// Chaining with doubly stochastic `F₁`.
fn delta_chaining(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e1, e2) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let (f1, f2) = (unital(rng, d)?, any_channel(rng, d)?);
    chaining_margin(&e1, &e2, &f1, &f2)
}

fn delta_chaining_nonunital(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e1, e2) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let (f1, f2) = (channel(rng, d)?, any_channel(rng, d)?);
    chaining_margin(&e1, &e2, &f1, &f2)
}

fn delta_postprocessing(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let r = unital(rng, d)?;
    Ok(delta(&compose(&r, &e)?, &compose(&r, &f)?)? - delta(&e, &f)?)
}

fn delta_postprocessing_nonunital(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let r = channel(rng, d)?;
    Ok(delta(&compose(&r, &e)?, &compose(&r, &f)?)? - delta(&e, &f)?)
}

fn delta_unitary_invariance(rng: &mut SeededRng, d: usize) -> Result<f64> {
    let (e, f) = (any_channel(rng, d)?, any_channel(rng, d)?);
    let u = random_unitary_channel::<f64>(d, rng);
    let v = random_unitary_channel::<f64>(d, rng);
    let wrap = |x: &Channel| -> Result<Channel> { compose(&u, &compose(x, &v)?) };
    Ok((delta(&wrap(&e)?, &wrap(&f)?)? - delta(&e, &f)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids: Vec<&str> = REGISTRY.iter().map(|p| p.id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn process_dims() {
        let p = lookup("delta_triangle").unwrap();
        let dims = [2, 3, 4];
        let picked: Vec<usize> = (0..10).map(|i| p.dim_for(&dims, i)).collect();
        assert_eq!(picked, [2, 2, 2, 2, 3, 2, 2, 2, 2, 3]);
        assert_eq!(p.dim_for(&[4], 0), 4);
    }
}
