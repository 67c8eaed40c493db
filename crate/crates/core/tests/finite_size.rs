use quasispin_core::{compare_meanfield, ModelParams, Variant};

fn traditional_theta_cr() -> f64 {
    0.4 / 5f64.ln()
}

#[test]
fn deviation_shrinks_with_size_in_the_ordered_phase() {
    let params = ModelParams::from_ratio(0.6, Variant::Traditional).unwrap();
    let theta = 0.5 * traditional_theta_cr();
    let rows = compare_meanfield(&params, theta, &[8, 16, 32, 64, 128, 256, 512], 1e-10).unwrap();
    let mut bumps = 0;
    for w in rows.windows(2) {
        if w[1].deviation > w[0].deviation {
            assert!(w[1].deviation - w[0].deviation <= 1e-12);
            bumps += 1;
        }
    }
    assert!(bumps <= 1);
    assert!(rows.last().unwrap().deviation < 1e-9);
}

#[test]
fn fixed_j_sum_freezes_at_relaxation_value_above_critical_point() {
    // the j = N/2 manifold has one state per m, so no entropy competes with
    // the energy: the exact value tends to −ϖ/(2λ) while the mean-field
    // disordered value is −½tanh(ϖ/2θ)
    let params = ModelParams::from_ratio(0.6, Variant::Traditional).unwrap();
    let theta = 2.0 * traditional_theta_cr();
    let rows = compare_meanfield(&params, theta, &[8, 32, 128, 512], 1e-10).unwrap();
    let meanfield = -0.5 * (0.4 / (2.0 * theta)).tanh();
    for r in &rows {
        assert!((r.rz_meanfield - meanfield).abs() < 1e-15);
    }
    let last = rows.last().unwrap();
    assert!((last.rz_exact + 1.0 / 3.0).abs() < 1e-3);
    for w in rows.windows(2) {
        assert!(w[1].deviation >= w[0].deviation);
    }
}

#[test]
fn cold_limit_matches_relaxation_value() {
    for ratio in [0.55, 0.6, 0.9] {
        let params = ModelParams::from_ratio(ratio, Variant::Traditional).unwrap();
        let varpi = 1.0 - ratio;
        let target = -varpi / (2.0 * ratio);
        for r in compare_meanfield(&params, 1e-6, &[8, 64, 512], 1e-10).unwrap() {
            assert!((r.rz_exact - target).abs() <= 1.0 / (2.0 * r.n_atoms as f64) + 1e-9);
            assert!((r.rz_meanfield - target).abs() <= 1e-9);
        }
    }
}
