use proptest::prelude::*;
use quasispin_core::{
    coupling_constants, couplings_at, free_energy_per_atom, gap_solve, mean_photon_number,
    population_inversion, Couplings, ModelParams, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn couplings_are_monotone_in_temperature(
        ratio in 0.05f64..0.95,
        omega_k in 0.2f64..2.0,
        t1 in 0.05f64..20.0,
        rel in 1e-6f64..3.0,
    ) {
        let params = ModelParams::new(1.0, ratio, omega_k, 100, Variant::Proposed).unwrap();
        let t2 = t1 * (1.0 + rel);
        let a = couplings_at(&params, t1).unwrap();
        let b = couplings_at(&params, t2).unwrap();
        prop_assert!(b.nbar > a.nbar);
        prop_assert!(b.lambda > a.lambda);
        prop_assert!(b.varpi < a.varpi);
    }

    #[test]
    fn splitting_identity_is_exact(ratio in 0.01f64..2.0, theta in 0.0f64..50.0) {
        for variant in [Variant::Proposed, Variant::Traditional] {
            let c = couplings_at(&ModelParams::from_ratio(ratio, variant).unwrap(), theta).unwrap();
            prop_assert_eq!(c.varpi, c.omega - c.lambda);
            prop_assert!(c.lambda > 0.0);
            let direct = c.lambda - c.varpi.abs();
            prop_assert!((c.excess - direct).abs() <= 1e-12 * c.lambda.max(c.varpi.abs()));
        }
    }

    #[test]
    fn photon_number_is_finite_and_nonnegative(theta in 0.0f64..1e6, omega_k in 1e-6f64..1e3) {
        let n = mean_photon_number(theta, omega_k).unwrap();
        prop_assert!(n.is_finite() && n >= 0.0);
    }

    #[test]
    fn exchange_to_decay_ratio(
        amplitude in 1e-3f64..1e3,
        gamma_cav in 1e-3f64..10.0,
        omega21 in 0.1f64..10.0,
        omega_k in 0.01f64..10.0,
    ) {
        let c = coupling_constants(amplitude, gamma_cav, omega21, omega_k).unwrap();
        prop_assume!(c.detuning.abs() > 1e-9);
        let expected = c.detuning / (2.0 * gamma_cav);
        prop_assert!(((c.chi / c.gamma) - expected).abs() <= 1e-12 * expected.abs());
        prop_assert!(c.gamma >= 0.0);
        prop_assert_eq!(c.chi.signum(), c.detuning.signum());
    }

    #[test]
    fn inversion_is_bounded(lambda in 0.01f64..3.0, varpi in -3.0f64..3.0, theta in 1e-6f64..5.0) {
        let cpl = Couplings::from_effective(theta, lambda, varpi);
        let sol = gap_solve(&cpl, 1e-10).unwrap();
        let rz = population_inversion(&cpl, &sol);
        prop_assert!((-0.5..=0.5).contains(&rz));
        prop_assert_eq!(sol.c_abs == 0.0, sol.phase == quasispin_core::Phase::Disordered);
        prop_assert!(sol.free_energy_per_atom <= free_energy_per_atom(0.0, &cpl).unwrap() + 1e-15);
    }
}

#[test]
fn argmin_is_invariant_under_energy_rescaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for _ in 0..20 {
        let cpl = Couplings::from_effective(
            rng.gen_range(0.01..1.5),
            rng.gen_range(0.1..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let a = gap_solve(&cpl, 1e-10).unwrap();
        let b = gap_solve(&cpl.scaled(7.3), 1e-10).unwrap();
        assert_eq!(a.phase, b.phase);
        assert!((a.c_abs - b.c_abs).abs() <= 1e-9, "{cpl:?}");
    }
}

#[test]
fn saturated_tanh_stays_finite() {
    for ratio in [0.3, 0.5, 0.6, 0.9] {
        for variant in [Variant::Proposed, Variant::Traditional] {
            let params = ModelParams::from_ratio(ratio, variant).unwrap();
            let cpl = couplings_at(&params, 1e-12).unwrap();
            let sol = gap_solve(&cpl, 1e-10).unwrap();
            assert!(sol.c_abs.is_finite());
            assert!(sol.free_energy_per_atom.is_finite());
            assert!(population_inversion(&cpl, &sol).is_finite());
            for c in [0.0, 0.25, 0.5, 1.0] {
                assert!(free_energy_per_atom(c, &cpl).unwrap().is_finite());
            }
        }
    }
}
