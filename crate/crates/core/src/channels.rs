//! Kraus-form quantum operations and their Jamiołkowski (Choi) states.
//!
//! Choi states order the reference copy first and the channel output second:
//! `ρ_E = [I ⊗ E](|Ψ⟩⟨Ψ|)` with `|Ψ⟩ = d^{-1/2} Σ_j |j⟩ ⊗ |j⟩`.

use num_traits::{One, Zero};
use rand::Rng;
use sha2::{Digest, Sha256};

use crate::eigen::eig_psd;
use crate::error::{Error, Result};
use crate::limits::max_dim;
use crate::matrix::{factor_permutation, ComplexMatrix, Subsystem};
use crate::random::{haar_unitary, random_simplex};
use crate::scalar::{c, re, Real, C};
use crate::states::{check_same_dim, DensityMatrix};

/// Ordered operation elements `{K_j}` acting as `ρ ↦ Σ K_j ρ K_j†`.
#[derive(Debug, Clone)]
pub struct KrausChannel<T: Real> {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix<T>>,
    tp_deviation: T,
    unital: bool,
}

impl<T: Real> KrausChannel<T> {
    /// Builds a trace-preserving channel; fails if `‖Σ K†K − I‖_max > τ_tp`.
    pub fn new(kraus: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let ch = Self::completely_positive(kraus)?;
        if !ch.is_trace_preserving() {
            return Err(Error::NotTracePreserving {
                deviation: ch.tp_deviation.as_f64(),
            });
        }
        Ok(ch)
    }

    /// Builds a completely positive map without requiring trace preservation.
    pub fn completely_positive(kraus: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::BadShape {
            expected: 1,
            found: 0,
        })?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        for k in &kraus {
            if (k.rows(), k.cols()) != (dim_out, dim_in) {
                return Err(Error::DimensionMismatch {
                    expected: dim_out * dim_in,
                    found: k.rows() * k.cols(),
                });
            }
        }
        let tp_deviation = sum_products(&kraus, true).max_abs_diff(&ComplexMatrix::identity(dim_in));
        let tol = T::lit(T::TOLERANCES.trace_preserving);
        let unital = dim_in == dim_out
            && sum_products(&kraus, false).max_abs_diff(&ComplexMatrix::identity(dim_out)) <= tol;
        Ok(Self {
            dim_in,
            dim_out,
            kraus,
            tp_deviation,
            unital,
        })
    }

    /// Conjugation by a single unitary.
    pub fn unitary(u: ComplexMatrix<T>) -> Result<Self> {
        u.ensure_square()?;
        if !u.is_unitary(T::lit(T::TOLERANCES.hermitian)) {
            return Err(Error::BadParameter("operator is not unitary".into()));
        }
        Self::new(vec![u])
    }

    pub fn identity(d: usize) -> Self {
        Self::new(vec![ComplexMatrix::identity(d)]).expect("identity is trace preserving")
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix<T>] {
        &self.kraus
    }

    /// `‖Σ K†K − I‖_max`.
    pub fn tp_deviation(&self) -> T {
        self.tp_deviation
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.tp_deviation <= T::lit(T::TOLERANCES.trace_preserving)
    }

    /// `Σ K K† = I` (only for square channels).
    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// Trace preserving and unital.
    pub fn is_doubly_stochastic(&self) -> bool {
        self.is_trace_preserving() && self.unital
    }

    fn square_dim(&self) -> Result<usize> {
        if self.dim_in == self.dim_out {
            Ok(self.dim_in)
        } else {
            Err(Error::NonSquareChannel {
                dim_in: self.dim_in,
                dim_out: self.dim_out,
            })
        }
    }

    /// `Σ K_j m K_j†` for an arbitrary operator.
    pub fn apply_matrix(&self, m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        check_same_dim(self.dim_in, m.rows())?;
        m.ensure_square()?;
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = &out + &m.conjugate_by(k);
        }
        Ok(out)
    }

    /// `E(ρ) = Σ K_j ρ K_j†`.
    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        let out = self.apply_matrix(rho.matrix())?;
        DensityMatrix::new(out).map_err(|e| Error::OutputNotDensity(Box::new(e)))
    }

    /// `E` applied `times` times.
    pub fn apply_repeated(&self, rho: &DensityMatrix<T>, times: usize) -> Result<DensityMatrix<T>> {
        let mut state = rho.clone();
        for _ in 0..times {
            state = self.apply(&state)?;
        }
        Ok(state)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Self) -> Result<Self> {
        compose(self, first)
    }

    /// Content hash of the Choi state, invariant under the Kraus unitary freedom up
    /// to roundoff.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.dim_in as u64).to_le_bytes());
        h.update((self.dim_out as u64).to_le_bytes());
        match self.choi_matrix() {
            Ok(m) => hash_matrix(&mut h, &m),
            Err(_) => self.kraus.iter().for_each(|k| hash_matrix(&mut h, k)),
        }
        hex::encode(&h.finalize()[..16])
    }

    /// `[I ⊗ E](|Ψ⟩⟨Ψ|)` as a raw matrix (no validation).
    pub fn choi_matrix(&self) -> Result<ComplexMatrix<T>> {
        let d = self.square_dim()?;
        let n = d * d;
        if n > max_dim() {
            return Err(Error::DimensionOverflow { dim: n, max: max_dim() });
        }
        let scale = T::one() / T::lit(d as f64).sqrt();
        let mut out = ComplexMatrix::zeros(n, n);
        for k in &self.kraus {
            // (I ⊗ K)|Ψ⟩ = d^{-1/2} Σ_j |j⟩ ⊗ K|j⟩
            let v: Vec<C<T>> = (0..n).map(|idx| k[(idx % d, idx / d)] * scale).collect();
            out = &out + &ComplexMatrix::outer(&v, &v);
        }
        Ok(out)
    }

    /// Kraus operators recovered from a Choi state: `d·ρ_E = Σ μ_k |v_k⟩⟨v_k|`,
    /// `K_k[a, j] = √μ_k · v_k[j·d + a]`.
    pub fn from_choi(choi: &ChoiState<T>) -> Result<Self> {
        let d = choi.system_dim();
        let e = eig_psd(&choi.state().matrix().scale(T::lit(d as f64)))?;
        let top = e.values.iter().copied().fold(T::zero(), T::max);
        let floor = T::lit(1e3) * T::epsilon() * top;
        let mut kraus = Vec::new();
        for (idx, &mu) in e.values.iter().enumerate().rev() {
            if mu <= floor {
                continue;
            }
            let amp = mu.sqrt();
            kraus.push(ComplexMatrix::from_fn(d, d, |a, j| {
                e.vectors[(j * d + a, idx)] * amp
            }));
        }
        Self::completely_positive(kraus)
    }
}

fn hash_matrix<T: Real>(h: &mut Sha256, m: &ComplexMatrix<T>) {
    for z in m.as_slice() {
        h.update(z.re.as_f64().to_le_bytes());
        h.update(z.im.as_f64().to_le_bytes());
    }
}

/// `Σ K†K` when `adjoint_first`, else `Σ K K†`.
fn sum_products<T: Real>(kraus: &[ComplexMatrix<T>], adjoint_first: bool) -> ComplexMatrix<T> {
    let n = if adjoint_first {
        kraus[0].cols()
    } else {
        kraus[0].rows()
    };
    kraus.iter().fold(ComplexMatrix::zeros(n, n), |acc, k| {
        let p = if adjoint_first {
            &k.adjoint() * k
        } else {
            k * &k.adjoint()
        };
        &acc + &p
    })
}

/// Validated Jamiołkowski state of a square channel.
#[derive(Debug, Clone)]
pub struct ChoiState<T: Real> {
    rho: DensityMatrix<T>,
    d: usize,
}

impl<T: Real> ChoiState<T> {
    /// Checks that the state is valid and its reference marginal is `I/d`.
    pub fn new(m: ComplexMatrix<T>, d: usize) -> Result<Self> {
        check_same_dim(d * d, m.rows())?;
        let reference = m.partial_trace((d, d), Subsystem::A)?;
        let target = ComplexMatrix::identity(d).scale(T::one() / T::lit(d as f64));
        let deviation = reference.max_abs_diff(&target);
        if deviation > T::lit(T::TOLERANCES.recon(d * d)) {
            return Err(Error::NotTracePreserving {
                deviation: deviation.as_f64(),
            });
        }
        Ok(Self {
            rho: DensityMatrix::new(m)?,
            d,
        })
    }

    pub fn state(&self) -> &DensityMatrix<T> {
        &self.rho
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        self.rho.matrix()
    }

    pub fn system_dim(&self) -> usize {
        self.d
    }

    /// Channel action reconstructed from the Choi state: `E(ρ) = d·tr_ref[(ρᵀ ⊗ I) ρ_E]`.
    pub fn apply_to(&self, rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        let d = self.d;
        check_same_dim(d, rho.rows())?;
        let lifted = rho.transpose().kron(&ComplexMatrix::identity(d))?;
        let prod = &lifted * self.rho.matrix();
        Ok(prod
            .partial_trace((d, d), Subsystem::B)?
            .scale(T::lit(d as f64)))
    }

    /// `ρ_E ⊗ ρ_F` reordered into the factor order of `ρ_{E⊗F}`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let p = choi_tensor_permutation::<T>(self.d, other.d)?;
        let joint = self.rho.matrix().kron(other.rho.matrix())?;
        Self::new(joint.conjugate_by(&p), self.d * other.d)
    }
}

/// Permutation taking `ρ_E ⊗ ρ_F` (factors `ref_E, out_E, ref_F, out_F`) to the
/// Choi ordering of `E ⊗ F` (factors `ref_E, ref_F, out_E, out_F`).
pub fn choi_tensor_permutation<T: Real>(da: usize, db: usize) -> Result<ComplexMatrix<T>> {
    factor_permutation(&[da, da, db, db], &[0, 2, 1, 3])
}

/// `ρ_E = [I ⊗ E](|Ψ⟩⟨Ψ|)`.
pub fn jamiolkowski<T: Real>(ch: &KrausChannel<T>) -> Result<ChoiState<T>> {
    let d = ch.square_dim()?;
    ChoiState::new(ch.choi_matrix()?, d)
}

/// `|Ψ⟩⟨Ψ|` for `|Ψ⟩ = d^{-1/2} Σ_j |j⟩ ⊗ |j⟩`.
pub fn maximally_entangled<T: Real>(d: usize) -> ComplexMatrix<T> {
    let s = T::one() / T::lit(d as f64).sqrt();
    let v: Vec<C<T>> = (0..d * d)
        .map(|idx| if idx / d == idx % d { re(s) } else { C::zero() })
        .collect();
    ComplexMatrix::outer(&v, &v)
}

/// `e2 ∘ e1` with Kraus set `{K²_i K¹_j}`.
pub fn compose<T: Real>(e2: &KrausChannel<T>, e1: &KrausChannel<T>) -> Result<KrausChannel<T>> {
    check_same_dim(e2.dim_in, e1.dim_out)?;
    let mut kraus = Vec::with_capacity(e2.kraus.len() * e1.kraus.len());
    for a in &e2.kraus {
        for b in &e1.kraus {
            kraus.push(a * b);
        }
    }
    KrausChannel::completely_positive(kraus)
}

/// `ea ⊗ eb` with Kraus set `{K^a_i ⊗ K^b_j}`.
pub fn tensor<T: Real>(ea: &KrausChannel<T>, eb: &KrausChannel<T>) -> Result<KrausChannel<T>> {
    let mut kraus = Vec::with_capacity(ea.kraus.len() * eb.kraus.len());
    for a in &ea.kraus {
        for b in &eb.kraus {
            kraus.push(a.kron(b)?);
        }
    }
    KrausChannel::completely_positive(kraus)
}

/// `Eᵀ(ρ) = Σ K_jᵀ ρ K_j*`; trace preserving exactly when `E` is unital.
pub fn transpose_channel<T: Real>(ch: &KrausChannel<T>) -> Result<KrausChannel<T>> {
    KrausChannel::completely_positive(ch.kraus.iter().map(ComplexMatrix::transpose).collect())
}

/// `ρ_{E∘F}` computed as `[Fᵀ ⊗ E](|Ψ⟩⟨Ψ|)`.
pub fn choi_of_composition<T: Real>(
    f: &KrausChannel<T>,
    e: &KrausChannel<T>,
) -> Result<ChoiState<T>> {
    let d = f.square_dim()?;
    check_same_dim(d, e.square_dim()?)?;
    let map = tensor(&transpose_channel(f)?, e)?;
    let out = map.apply_matrix(&maximally_entangled(d))?;
    ChoiState::new(out, d)
}

/// Catalogue of standard channels.
#[derive(Debug, Clone)]
pub enum ChannelKind<T: Real> {
    Identity,
    Unitary(ComplexMatrix<T>),
    Depolarizing(f64),
    AmplitudeDamping(f64),
    Dephasing(f64),
    /// Rank-one projectors onto the columns of a unitary.
    Projective(ComplexMatrix<T>),
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("{name} parameter {p} outside [0, 1]")))
    }
}

fn require_qubit(name: &str, d: usize) -> Result<()> {
    if d == 2 {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("{name} is defined for d = 2, got d = {d}")))
    }
}

/// Qubit Paulis `[I, X, Y, Z]`.
pub fn paulis<T: Real>() -> [ComplexMatrix<T>; 4] {
    let (o, z, i) = (C::<T>::one(), C::<T>::zero(), c(T::zero(), T::one()));
    let m = |a, b, cc, dd| ComplexMatrix::from_vec(2, 2, vec![a, b, cc, dd]).expect("2x2");
    [m(o, z, z, o), m(z, o, o, z), m(z, -i, i, z), m(o, z, z, -o)]
}

/// Weyl operators `X^a Z^b` on `C^d` (the Paulis up to phase when `d = 2`).
pub fn weyl_operators<T: Real>(d: usize) -> Vec<ComplexMatrix<T>> {
    let omega = T::lit(2.0) * T::PI() / T::lit(d as f64);
    let mut ops = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            ops.push(ComplexMatrix::from_fn(d, d, |i, j| {
                if i == (j + a) % d {
                    let angle = omega * T::lit((b * j) as f64);
                    c(angle.cos(), angle.sin())
                } else {
                    C::zero()
                }
            }));
        }
    }
    ops
}

/// Canonical Kraus set for a catalogue entry.
///
/// Qubit sets: depolarizing `{√(1−3p/4) I, √(p/4) X, √(p/4) Y, √(p/4) Z}`,
/// amplitude damping `{[[1,0],[0,√(1−γ)]], [[0,√γ],[0,0]]}`, dephasing
/// `{√(1−λ) I, √λ Z}`. Depolarizing in `d > 2` uses the Weyl operators with the
/// same `ρ ↦ (1−p)ρ + p·I/d` action.
pub fn standard_channel<T: Real>(kind: &ChannelKind<T>, d: usize) -> Result<KrausChannel<T>> {
    if d == 0 {
        return Err(Error::BadParameter("dimension must be positive".into()));
    }
    match kind {
        ChannelKind::Identity => Ok(KrausChannel::identity(d)),
        ChannelKind::Unitary(u) => {
            check_same_dim(d, u.rows())?;
            KrausChannel::unitary(u.clone())
        }
        ChannelKind::Depolarizing(p) => {
            check_probability("depolarizing", *p)?;
            let p = T::lit(*p);
            if d == 2 {
                let [i, x, y, z] = paulis::<T>();
                let a = (T::one() - T::lit(0.75) * p).sqrt();
                let b = (p * T::lit(0.25)).sqrt();
                KrausChannel::new(vec![i.scale(a), x.scale(b), y.scale(b), z.scale(b)])
            } else {
                let dd = T::lit((d * d) as f64);
                let ops = weyl_operators::<T>(d);
                let a = (T::one() - p * (dd - T::one()) / dd).sqrt();
                let b = (p / dd).sqrt();
                let kraus = ops
                    .into_iter()
                    .enumerate()
                    .map(|(k, w)| w.scale(if k == 0 { a } else { b }))
                    .collect();
                KrausChannel::new(kraus)
            }
        }
        ChannelKind::AmplitudeDamping(g) => {
            check_probability("amplitude damping", *g)?;
            require_qubit("amplitude damping", d)?;
            let g = T::lit(*g);
            let k0 = ComplexMatrix::from_diag(&[T::one(), (T::one() - g).sqrt()]);
            let mut k1 = ComplexMatrix::zeros(2, 2);
            k1[(0, 1)] = re(g.sqrt());
            KrausChannel::new(vec![k0, k1])
        }
        ChannelKind::Dephasing(l) => {
            check_probability("dephasing", *l)?;
            require_qubit("dephasing", d)?;
            let l = T::lit(*l);
            let [i, _, _, z] = paulis::<T>();
            KrausChannel::new(vec![i.scale((T::one() - l).sqrt()), z.scale(l.sqrt())])
        }
        ChannelKind::Projective(basis) => {
            check_same_dim(d, basis.rows())?;
            if !basis.is_unitary(T::lit(T::TOLERANCES.hermitian)) {
                return Err(Error::BadParameter("projective basis is not orthonormal".into()));
            }
            let kraus = (0..d)
                .map(|k| {
                    let v = basis.column(k);
                    ComplexMatrix::outer(&v, &v)
                })
                .collect();
            KrausChannel::new(kraus)
        }
    }
}

/// Stinespring sample: a Haar isometry `C^d → C^{d·k}` cut into `k` Kraus blocks.
pub fn random_channel<T: Real>(
    d: usize,
    k: usize,
    rng: &mut (impl Rng + ?Sized),
) -> Result<KrausChannel<T>> {
    let big = haar_unitary::<T>(d * k, rng);
    let kraus = (0..k)
        .map(|block| ComplexMatrix::from_fn(d, d, |a, b| big[(block * d + a, b)]))
        .collect();
    KrausChannel::new(kraus)
}

/// Random mixture of `k` Haar unitaries (doubly stochastic).
pub fn random_unital_channel<T: Real>(
    d: usize,
    k: usize,
    rng: &mut (impl Rng + ?Sized),
) -> Result<KrausChannel<T>> {
    let weights = random_simplex(k, rng);
    let kraus = weights
        .into_iter()
        .map(|w| haar_unitary::<T>(d, rng).scale(T::lit(w).sqrt()))
        .collect();
    KrausChannel::new(kraus)
}

/// Conjugation by a Haar-random unitary.
pub fn random_unitary_channel<T: Real>(
    d: usize,
    rng: &mut (impl Rng + ?Sized),
) -> KrausChannel<T> {
    KrausChannel::unitary(haar_unitary(d, rng)).expect("Haar unitary is unitary")
}

/// Random member of the standard catalogue in dimension `d`.
pub fn random_standard_channel<T: Real>(
    d: usize,
    rng: &mut (impl Rng + ?Sized),
) -> Result<KrausChannel<T>> {
    let choices = if d == 2 { 6 } else { 4 };
    let p: f64 = rng.random();
    match rng.random_range(0..choices) {
        0 => standard_channel(&ChannelKind::Identity, d),
        1 => standard_channel(&ChannelKind::Unitary(haar_unitary(d, rng)), d),
        2 => standard_channel(&ChannelKind::Depolarizing(p), d),
        3 => standard_channel(&ChannelKind::Projective(haar_unitary(d, rng)), d),
        4 => standard_channel(&ChannelKind::AmplitudeDamping(p), d),
        _ => standard_channel(&ChannelKind::Dephasing(p), d),
    }
}
