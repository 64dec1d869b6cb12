use proptest::prelude::*;
use qdist_core::channels::{random_channel, random_unital_channel};
use qdist_core::eigen::eig_hermitian;
use qdist_core::metrics::{fidelity_nested_sqrt, fidelity_trace_norm};
use qdist_core::random::{haar_unitary, random_hermitian};
use qdist_core::states::random_density_with;
use qdist_core::*;

fn cfg() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn eigen_reconstructs(seed in any::<u64>(), d in 1usize..=6) {
        let h = random_hermitian::<f64>(d, &mut seeded_rng(seed));
        let e = eig_hermitian(&h).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&h) < 1e-12);
        prop_assert!(e.vectors.is_unitary(1e-12));
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let a = random_density_with::<f64>(da, da, &mut rng).unwrap();
        let b = random_density_with::<f64>(db, db, &mut rng).unwrap();
        let ab = a.kron(&b).unwrap();
        let ka = ab.matrix().partial_trace((da, db), Subsystem::A).unwrap();
        let kb = ab.matrix().partial_trace((da, db), Subsystem::B).unwrap();
        prop_assert!(ka.max_abs_diff(a.matrix()) < 1e-14);
        prop_assert!(kb.max_abs_diff(b.matrix()) < 1e-14);
    }

    #[test]
    fn measures_bounded_and_symmetric(seed in any::<u64>(), d in 2usize..=4, r1 in 1usize..=4, r2 in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let rho = random_density_with::<f64>(d, r1.min(d), &mut rng).unwrap();
        let sigma = random_density_with::<f64>(d, r2.min(d), &mut rng).unwrap();
        for m in Measure::ALL {
            let ab = metrics::evaluate(m, &rho, &sigma).unwrap().value;
            let ba = metrics::evaluate(m, &sigma, &rho).unwrap().value;
            prop_assert!(ab >= 0.0 && ab <= m.upper_bound());
            prop_assert_eq!(ab, ba);
        }
        let de = d_e(&rho, &sigma).unwrap();
        prop_assert!((f_e(&rho, &sigma).unwrap() - (1.0 - de * de)).abs() < 1e-15);
    }

    #[test]
    fn fidelity_routes_agree(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = seeded_rng(seed);
        let rho = random_density_with::<f64>(d, d, &mut rng).unwrap();
        let sigma = random_density_with::<f64>(d, d, &mut rng).unwrap();
        let f = fidelity(&rho, &sigma).unwrap();
        prop_assert!((fidelity_trace_norm(&rho, &sigma).unwrap() - f).abs() < 1e-12);
        prop_assert!((fidelity_nested_sqrt(&rho, &sigma).unwrap() - f).abs() < 1e-9);
    }

    #[test]
    fn unitary_invariance(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = seeded_rng(seed);
        let rho = random_density_with::<f64>(d, d, &mut rng).unwrap();
        let sigma = random_density_with::<f64>(d, 1, &mut rng).unwrap();
        let u = haar_unitary::<f64>(d, &mut rng);
        let a = d_e(&rho, &sigma).unwrap();
        let b = d_e(&rho.conjugate_by(&u).unwrap(), &sigma.conjugate_by(&u).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn channels_preserve_states(seed in any::<u64>(), d in 2usize..=3, k in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let e = random_channel::<f64>(d, k, &mut rng).unwrap();
        let u = random_unital_channel::<f64>(d, k, &mut rng).unwrap();
        let rho = random_density_with::<f64>(d, d, &mut rng).unwrap();
        for ch in [&e, &u] {
            let out = ch.apply(&rho).unwrap();
            prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        }
        let mixed = DensityMatrix::maximally_mixed(d);
        prop_assert!(u.apply(&mixed).unwrap().matrix().max_abs_diff(mixed.matrix()) < 1e-12);
    }
}

#[test]
fn single_precision_tracks_double() {
    let mut rng = seeded_rng(5);
    let rho = random_density_with::<f64>(3, 3, &mut rng).unwrap();
    let sigma = random_density_with::<f64>(3, 2, &mut rng).unwrap();
    let narrow = |m: &Matrix64| Matrix32::from_fn(3, 3, |i, j| {
        let z = m[(i, j)];
        C::new(z.re as f32, z.im as f32)
    });
    let rho32 = Density32::new(narrow(rho.matrix())).unwrap();
    let sigma32 = Density32::new(narrow(sigma.matrix())).unwrap();
    let wide = d_e(&rho, &sigma).unwrap();
    let single = d_e(&rho32, &sigma32).unwrap();
    assert!((wide - single as f64).abs() < 1e-4);
}

/// Mixing `(|0⟩⟨0|, |0⟩⟨0|)` and `(|0⟩⟨0|, |1⟩⟨1|)` with equal weights gives the pair
/// `(|0⟩⟨0|, I/2)`, whose `D_E² = Φ(1/√2) ≈ 0.601` exceeds the average `0.5`.
#[test]
fn de_squared_is_not_jointly_convex() {
    let zero = Density64::basis(2, 0);
    let one = Density64::basis(2, 1);
    let mixed = Density64::maximally_mixed(2);
    let lhs = metrics::d_e_squared(&zero, &mixed).unwrap();
    let rhs = 0.5 * metrics::d_e_squared(&zero, &zero).unwrap() + 0.5 * metrics::d_e_squared(&zero, &one).unwrap();
    // independent value: binary entropy of (1 ∓ 1/√2)/2
    let p = (1.0 - std::f64::consts::FRAC_1_SQRT_2) / 2.0;
    let expected = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
    assert!((lhs - expected).abs() < 1e-12);
    assert!((rhs - 0.5).abs() < 1e-12);
    assert!(lhs - rhs > 0.1);
    let fe_mix = f_e(&zero, &mixed).unwrap();
    assert!(fe_mix < 0.5 * f_e(&zero, &zero).unwrap() + 0.5 * f_e(&zero, &one).unwrap() - 0.1);
}
