use monogamy_core::monogamy::{check_ckw, check_sorted_power, check_split_power, pairwise_measures};
use monogamy_core::{
    b_of, g_of, make_named_state, measure_pure_bipartition, Complex64, Inequality, MeasureKind, MonogamyParams,
    MonogamyReport, NamedFamily, PairProfile, StateVector, Subsystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `Σ aᵢ |0…1ᵢ…0⟩` with qubit 0 as the most significant bit.
fn generalized_w(amps: &[f64]) -> StateVector {
    let n = amps.len();
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (q, &a) in amps.iter().enumerate() {
        v[1 << (n - 1 - q)] = Complex64::new(a, 0.0);
    }
    StateVector::normalized(v).unwrap()
}

fn normalized(amps: &[f64]) -> Vec<f64> {
    let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
    amps.iter().map(|a| a / norm).collect()
}

#[test]
fn generalized_w_states_match_their_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 3..=7 {
        for _ in 0..20 {
            let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
            let a = normalized(&raw);
            let psi = generalized_w(&a);
            let profile = PairProfile::from_state(&psi).unwrap();
            let cut = 2.0 * a[0] * (1.0 - a[0] * a[0]).sqrt();
            assert!((profile.cut_concurrence - cut).abs() < 1e-12);
            for i in 1..n {
                assert!((profile.pair_concurrences[i - 1] - 2.0 * a[0] * a[i]).abs() < 1e-12);
            }
            // CKW is an equality on this family.
            assert!(profile.ckw().residual.abs() < 1e-12);
            for kind in MeasureKind::DISTANCE {
                let expected: Vec<f64> = (1..n).map(|i| kind.from_concurrence(2.0 * a[0] * a[i]).unwrap()).collect();
                let got = pairwise_measures(&psi, kind).unwrap();
                for (g, e) in got.iter().zip(&expected) {
                    assert!((g - e).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn named_families_across_sizes() {
    for n in 3..=8 {
        let w = make_named_state(NamedFamily::W, n).unwrap();
        let r = check_ckw(&w).unwrap();
        let nf = n as f64;
        assert!((r.lhs - 4.0 * (nf - 1.0) / (nf * nf)).abs() < 1e-12);
        assert!(r.residual.abs() < 1e-12);

        let ghz = make_named_state(NamedFamily::Ghz, n).unwrap();
        let g = measure_pure_bipartition(&ghz, &Subsystem::single(0), MeasureKind::Geometric).unwrap();
        assert!((g.value - 0.5).abs() < 1e-12);
        assert!(pairwise_measures(&ghz, MeasureKind::Bures).unwrap().iter().all(|v| v.abs() < 1e-12));
    }
}

#[test]
fn w_state_power_residuals_follow_the_closed_forms() {
    for n in 3..=6 {
        let nf = n as f64;
        let cut = 2.0 * (nf - 1.0).sqrt() / nf;
        let pair = 2.0 / nf;
        let w = make_named_state(NamedFamily::W, n).unwrap();
        for eta in [1.0, 2.0, 3.5] {
            let b = monogamy_core::check_power_monogamy(&w, MeasureKind::Bures, eta).unwrap();
            let expected = b_of(cut).unwrap().powf(eta) - (nf - 1.0) * b_of(pair).unwrap().powf(eta);
            assert!((b.residual - expected).abs() < 1e-12);
            let s = check_sorted_power(&w, MeasureKind::Geometric, eta).unwrap();
            // Equal pair values: the weights telescope to (N−1)^η.
            let expected = g_of(cut).unwrap().powf(eta) - (nf - 1.0).powf(eta) * g_of(pair).unwrap().powf(eta);
            assert!((s.residual - expected).abs() < 1e-12);
        }
    }
}

#[test]
fn split_bound_on_a_skewed_w_state() {
    // Pair values fall fast enough for the m = 1, k = 1 conditions, and the
    // last two are ordered so the k' = 1 condition holds as well.
    let a = normalized(&[1.0, 0.8, 0.25, 0.3]);
    let psi = generalized_w(&a);
    for kind in MeasureKind::DISTANCE {
        let r = check_split_power(&psi, kind, MonogamyParams { eta: 2.0, ..Default::default() }).unwrap();
        assert_eq!(r.inequality, Inequality::SplitPowerUnit);
        assert!(r.conditions_met, "{kind}: {:?}", r.per_pair_values);
        assert!(r.residual >= -1e-9);
        let general = check_split_power(&psi, kind, MonogamyParams { eta: 2.0, k: 1.0 + 1e-9, ..Default::default() });
        assert!((general.unwrap().rhs - r.rhs).abs() < 1e-7);
    }
}

#[test]
fn reports_serialize_with_flat_parameters() {
    let w = make_named_state(NamedFamily::W, 4).unwrap();
    let r = check_sorted_power(&w, MeasureKind::Bures, 2.0).unwrap().labeled("w4", Some(7));
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    for key in
        ["state_id", "kind", "inequality", "eta", "k", "k_prime", "m", "lhs", "rhs", "residual", "conditions_met"]
    {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["inequality"], "sorted-power");
    assert_eq!(v["kind"], "bures");
    assert_eq!(v["seed"], 7);
    let back: MonogamyReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn state_files_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=5 {
        let amps: Vec<Complex64> = (0..1 << n).map(|_| Complex64::new(rng.random(), rng.random())).collect();
        let psi = StateVector::normalized(amps).unwrap();
        // Loading renormalizes, so agreement is to rounding rather than bitwise.
        let back = StateVector::from_json(&psi.to_json()).unwrap();
        assert_eq!(back.n_qubits(), n);
        for (a, b) in back.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}
