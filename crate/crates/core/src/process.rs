//! Distances between quantum operations, measured on their Choi states.

use crate::channels::{jamiolkowski, KrausChannel};
use crate::error::Result;
use crate::metrics::{d_e, f_e, fidelity};
use crate::scalar::Real;
use crate::states::check_same_dim;

/// `Δ_E` together with content digests of both operands.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessDistance<T: Real> {
    pub value: T,
    pub e_digest: String,
    pub f_digest: String,
}

/// `Δ_E(E, F) = D_E(ρ_E, ρ_F)`.
pub fn delta_e<T: Real>(e: &KrausChannel<T>, f: &KrausChannel<T>) -> Result<T> {
    check_same_dim(e.dim_in(), f.dim_in())?;
    d_e(jamiolkowski(e)?.state(), jamiolkowski(f)?.state())
}

/// [`delta_e`] with digests for reporting.
pub fn process_distance<T: Real>(
    e: &KrausChannel<T>,
    f: &KrausChannel<T>,
) -> Result<ProcessDistance<T>> {
    Ok(ProcessDistance {
        value: delta_e(e, f)?,
        e_digest: e.digest(),
        f_digest: f.digest(),
    })
}

/// `1 − Δ_E²`.
pub fn delta_e_fidelity<T: Real>(e: &KrausChannel<T>, f: &KrausChannel<T>) -> Result<T> {
    check_same_dim(e.dim_in(), f.dim_in())?;
    f_e(jamiolkowski(e)?.state(), jamiolkowski(f)?.state())
}

/// Uhlmann fidelity of the two Choi states.
pub fn choi_fidelity<T: Real>(e: &KrausChannel<T>, f: &KrausChannel<T>) -> Result<T> {
    check_same_dim(e.dim_in(), f.dim_in())?;
    fidelity(jamiolkowski(e)?.state(), jamiolkowski(f)?.state())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{random_channel, random_unitary_channel, standard_channel, ChannelKind};
    use crate::error::Error;
    use crate::random::seeded_rng;
    use crate::states::phi_kernel;

    fn dep(p: f64) -> KrausChannel<f64> {
        standard_channel(&ChannelKind::Depolarizing(p), 2).unwrap()
    }

    #[test]
    fn identity_versus_full_depolarizing() {
        let id = KrausChannel::<f64>::identity(2);
        let expected = phi_kernel(0.5f64).unwrap().sqrt();
        let value = delta_e(&id, &dep(1.0)).unwrap();
        assert!((value - expected).abs() < 1e-12);
        assert!((value - 0.9007).abs() < 1e-3);
        let fe = delta_e_fidelity(&id, &dep(1.0)).unwrap();
        assert!((fe - 0.1887).abs() < 1e-4);
        assert!((choi_fidelity(&id, &dep(1.0)).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn monotone_in_depolarizing_strength() {
        let id = KrausChannel::<f64>::identity(2);
        let values: Vec<f64> = (0..=10)
            .map(|k| delta_e(&id, &dep(k as f64 / 10.0)).unwrap())
            .collect();
        assert_eq!(values[0], 0.0);
        assert!(values.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn unitary_invariance() {
        let mut rng = seeded_rng(3);
        let e = random_channel::<f64>(2, 2, &mut rng).unwrap();
        let f = random_channel::<f64>(2, 2, &mut rng).unwrap();
        let u = random_unitary_channel::<f64>(2, &mut rng);
        let base = delta_e(&e, &f).unwrap();
        let rotated = delta_e(&u.after(&e).unwrap(), &u.after(&f).unwrap()).unwrap();
        assert!((base - rotated).abs() < 1e-9);
    }

    #[test]
    fn digests_and_mismatch() {
        let pd = process_distance(&dep(0.1), &dep(0.1)).unwrap();
        assert_eq!(pd.value, 0.0);
        assert_eq!(pd.e_digest, pd.f_digest);
        assert!(matches!(
            delta_e(&dep(0.1), &KrausChannel::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
