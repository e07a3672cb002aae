//! Algebraic identities between the measures, checked on random tables.

use hoinfo::generators::random_with_cardinalities;
use hoinfo::measures::{self, generic_delta_k, EntropyProfile, TcDecomposition, TotalCorrelation};
use hoinfo::{compute_spectrum, EstimatorConfig, JointDistribution};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn cfg() -> EstimatorConfig {
    EstimatorConfig::default()
}

fn arb_system(min_vars: usize, max_vars: usize) -> impl Strategy<Value = JointDistribution> {
    (
        prop::collection::vec(2usize..=3, min_vars..=max_vars),
        any::<u64>(),
        prop::sample::select(vec![0.1, 0.3, 1.0, 3.0]),
    )
        .prop_map(|(cards, seed, c)| random_with_cardinalities(&cards, seed, c, &cfg()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dual_total_correlation_two_routes(d in arb_system(2, 5)) {
        let direct = measures::dual_total_correlation(&d).unwrap();
        let via_tc = measures::dual_total_correlation_via_tc(&d).unwrap();
        prop_assert!((direct - via_tc).abs() < TOL);
    }

    #[test]
    fn special_cases_of_both_families(d in arb_system(2, 5)) {
        let p = EntropyProfile::compute(&d).unwrap();
        let tc = TcDecomposition::compute(&d).unwrap();
        let (t, dd, s, o) = (
            p.total_correlation(),
            p.dual_total_correlation(),
            p.s_information(),
            p.o_information(),
        );
        prop_assert!((s - (t + dd)).abs() < TOL);
        for (k, delta, gamma) in [(0, s, s), (1, dd, t), (2, -o, o)] {
            prop_assert!((p.delta_k(k) - delta).abs() < TOL);
            prop_assert!((tc.delta_k(k) - delta).abs() < TOL);
            prop_assert!((p.gamma_k(k) - gamma).abs() < TOL);
            prop_assert!((tc.gamma_k(k) - gamma).abs() < TOL);
        }
    }

    #[test]
    fn linear_in_k(d in arb_system(2, 5), k in -3i64..8) {
        let p = EntropyProfile::compute(&d).unwrap();
        let t = p.total_correlation();
        let dd = p.dual_total_correlation();
        prop_assert!((p.delta_k(k + 1) - (p.delta_k(k) - t)).abs() < TOL);
        prop_assert!((p.gamma_k(k + 1) - (p.gamma_k(k) - dd)).abs() < TOL);
        let tc = TcDecomposition::compute(&d).unwrap();
        prop_assert!((tc.delta_k(k) - p.delta_k(k)).abs() < TOL);
        prop_assert!((tc.gamma_k(k) - p.gamma_k(k)).abs() < TOL);
    }

    #[test]
    fn non_negative_measures(d in arb_system(2, 5)) {
        let c = cfg();
        let r = hoinfo::MeasureReport::compute(&d).unwrap();
        prop_assert!(r.total_correlation >= -c.zero_tolerance);
        prop_assert!(r.dual_total_correlation >= -c.zero_tolerance);
        prop_assert!(r.s_information >= -c.zero_tolerance);
        let max_single = (0..d.n_vars())
            .map(|i| d.marginal_entropy(&hoinfo::VariableSubset::single(i)).unwrap())
            .fold(0.0, f64::max);
        prop_assert!(r.total_correlation <= (d.n_vars() - 1) as f64 * max_single + TOL);
    }

    #[test]
    fn additive_over_independent_blocks(a in arb_system(2, 3), b in arb_system(2, 3)) {
        let joined = a.product(&b, &cfg()).unwrap();
        let (pa, pb, pj) = (
            EntropyProfile::compute(&a).unwrap(),
            EntropyProfile::compute(&b).unwrap(),
            EntropyProfile::compute(&joined).unwrap(),
        );
        for k in 0..=joined.n_vars() as i64 {
            prop_assert!((pj.delta_k(k) - pa.delta_k(k) - pb.delta_k(k)).abs() < TOL);
            prop_assert!((pj.gamma_k(k) - pa.gamma_k(k) - pb.gamma_k(k)).abs() < TOL);
        }
        let (ra, rb, rj) = (pa.report(), pb.report(), pj.report());
        prop_assert!((rj.o_information - ra.o_information - rb.o_information).abs() < TOL);
    }

    #[test]
    fn spectrum_matches_summation_form(d in arb_system(2, 5)) {
        let s = compute_spectrum(&d, &cfg()).unwrap();
        let tc = TcDecomposition::compute(&d).unwrap();
        prop_assert_eq!(s.delta.len(), d.n_vars() + 1);
        for k in 0..=d.n_vars() {
            prop_assert!((s.delta[k] - tc.delta_k(k as i64)).abs() < TOL);
            prop_assert!((s.gamma[k] - tc.gamma_k(k as i64)).abs() < TOL);
            if k > 0 {
                prop_assert!(s.delta[k] <= s.delta[k - 1] + TOL);
                prop_assert!(s.gamma[k] <= s.gamma[k - 1] + TOL);
            }
        }
        prop_assert!((s.delta[0] - s.gamma[0]).abs() < TOL);
        if let Some(x) = s.delta_crossing {
            for (k, v) in s.delta.iter().enumerate() {
                if (k as f64) < x - 1e-6 {
                    prop_assert!(*v > 0.0);
                } else if (k as f64) > x + 1e-6 {
                    prop_assert!(*v < 0.0);
                }
            }
        }
    }

    #[test]
    fn generic_total_correlation_is_delta(d in arb_system(2, 4), k in 0i64..5) {
        let g = generic_delta_k(&TotalCorrelation, &d, k, &cfg()).unwrap();
        prop_assert!((g.value - measures::delta_k(&d, k).unwrap()).abs() < TOL);
    }

    #[test]
    fn mutual_information_symmetric(d in arb_system(2, 4), split in 1usize..4) {
        let n = d.n_vars();
        let split = split.min(n - 1);
        let a = hoinfo::VariableSubset::new((0..split).collect()).unwrap();
        let b = hoinfo::VariableSubset::new((split..n).collect()).unwrap();
        let ab = measures::mutual_information(&d, &a, &b).unwrap();
        let ba = measures::mutual_information(&d, &b, &a).unwrap();
        prop_assert!(ab >= -cfg().zero_tolerance);
        prop_assert!((ab - ba).abs() < 1e-12);
    }
}
