//! Closed-form values on pure synergies, pure redundancies and their compositions.

use hoinfo::generators::{self, compose_independent, giant_bit, parity};
use hoinfo::measures::{self, MeasureReport, TcDecomposition};
use hoinfo::{compute_spectrum, EstimatorConfig, GeneratorSpec, OrderDominance};

const TOL: f64 = 1e-9;

fn cfg() -> EstimatorConfig {
    EstimatorConfig::default()
}

fn close(a: f64, b: f64) {
    assert!((a - b).abs() < TOL, "{a} vs {b}");
}

#[test]
fn parity_leave_one_out_marginals_are_independent() {
    for k in 2..=5 {
        let tc = TcDecomposition::compute(&parity(k, &cfg()).unwrap()).unwrap();
        assert!(tc.marginals.iter().all(|t| t.abs() < 1e-12), "k={k}");
        close(tc.whole, 1.0);
    }
}

#[test]
fn parity_delta_vanishes_at_its_order() {
    for k in 2..=4usize {
        let d = parity(k, &cfg()).unwrap();
        close(measures::delta_k(&d, k as i64).unwrap(), 0.0);
        close(measures::delta_k_via_tc(&d, k as i64).unwrap(), 0.0);
        let s = compute_spectrum(&d, &cfg()).unwrap();
        assert_eq!(s.synergy_order, Some(k));
        assert_eq!(s.largest_positive_delta_k(), Some(k - 1));
        assert_eq!(
            s.sign_interpretation(k).unwrap(),
            OrderDominance::BalancedAtK
        );
    }
}

#[test]
fn parity_four_values() {
    let d = parity(4, &cfg()).unwrap();
    close(measures::delta_k(&d, 4).unwrap(), 0.0);
    close(measures::delta_k(&d, 3).unwrap(), 1.0);
    let s = compute_spectrum(&d, &cfg()).unwrap();
    for (got, want) in s.delta.iter().zip([4.0, 3.0, 2.0, 1.0, 0.0]) {
        close(*got, want);
    }
}

#[test]
fn modular_parity_is_pure_synergy() {
    for a in [3, 4] {
        for k in 2..=4usize {
            let d = generators::parity_mod(k, a, &cfg()).unwrap();
            close(measures::delta_k(&d, k as i64).unwrap(), 0.0);
            assert_eq!(compute_spectrum(&d, &cfg()).unwrap().synergy_order, Some(k));
        }
    }
}

#[test]
fn giant_bit_closed_forms() {
    for k in 2..=4usize {
        for a in [2usize, 3] {
            let d = giant_bit(k, a, &cfg()).unwrap();
            let h = (a as f64).log2();
            close(d.entropy(), h);
            for i in 0..k {
                close(
                    d.marginal_entropy(&hoinfo::VariableSubset::single(i))
                        .unwrap(),
                    h,
                );
            }
            let r = MeasureReport::compute(&d).unwrap();
            close(r.total_correlation, (k - 1) as f64 * h);
            close(r.dual_total_correlation, h);
            close(r.s_information, k as f64 * h);
            close(measures::gamma_k(&d, k as i64).unwrap(), 0.0);
            close(measures::gamma_k_via_tc(&d, k as i64).unwrap(), 0.0);
            let s = compute_spectrum(&d, &cfg()).unwrap();
            assert_eq!(s.redundancy_order, Some(k), "k={k} a={a}");
        }
    }
}

#[test]
fn giant_bit_pair_is_pairwise_only() {
    let r = MeasureReport::compute(&giant_bit(2, 2, &cfg()).unwrap()).unwrap();
    close(r.total_correlation, 1.0);
    close(r.dual_total_correlation, 1.0);
    close(r.o_information, 0.0);
}

#[test]
fn sign_semantics() {
    let c = cfg();
    close(
        measures::o_information(&parity(3, &c).unwrap()).unwrap(),
        -1.0,
    );
    close(
        measures::o_information(&giant_bit(3, 2, &c).unwrap()).unwrap(),
        1.0,
    );
    let s = compute_spectrum(&parity(3, &c).unwrap(), &c).unwrap();
    assert_eq!(
        s.sign_interpretation(2).unwrap(),
        OrderDominance::HigherOrderDominated
    );
    let s = compute_spectrum(&giant_bit(3, 2, &c).unwrap(), &c).unwrap();
    assert_eq!(
        s.sign_interpretation(2).unwrap(),
        OrderDominance::LowerOrderDominated
    );
}

#[test]
fn composed_parities() {
    let spec = [
        GeneratorSpec::Parity {
            order: 3,
            alphabet: 2,
        },
        GeneratorSpec::Parity {
            order: 3,
            alphabet: 2,
        },
    ];
    let d = compose_independent(&spec, &cfg()).unwrap();
    assert_eq!(d.n_vars(), 6);
    close(measures::total_correlation(&d), 2.0);
    close(measures::delta_k(&d, 3).unwrap(), 0.0);
    close(measures::delta_k(&d, 2).unwrap(), 2.0);
    assert_eq!(compute_spectrum(&d, &cfg()).unwrap().synergy_order, Some(3));
}

#[test]
fn mixed_composition_cancels_o_information() {
    let spec = [
        GeneratorSpec::Parity {
            order: 3,
            alphabet: 2,
        },
        GeneratorSpec::GiantBit {
            order: 3,
            alphabet: 2,
        },
    ];
    let d = compose_independent(&spec, &cfg()).unwrap();
    close(measures::o_information(&d).unwrap(), 0.0);
}

#[test]
fn point_mass_is_an_identity_for_composition() {
    let gb = GeneratorSpec::GiantBit {
        order: 3,
        alphabet: 2,
    };
    let alone = MeasureReport::compute(&gb.generate(&cfg()).unwrap()).unwrap();
    let with = compose_independent(
        &[
            gb,
            GeneratorSpec::PointMass {
                n_vars: 2,
                alphabet: 3,
            },
        ],
        &cfg(),
    )
    .unwrap();
    let joined = MeasureReport::compute(&with).unwrap();
    close(alone.total_correlation, joined.total_correlation);
    close(alone.dual_total_correlation, joined.dual_total_correlation);
    close(alone.s_information, joined.s_information);
    close(alone.o_information, joined.o_information);
}

#[test]
fn three_way_interaction_with_a_free_variable() {
    // X1 = X2 xor X3 alongside an independent X4: only dropping X4 keeps the
    // interaction, so the leave-one-out sum is (4 - 3) T.
    let c = cfg();
    let free = generators::random_distribution(1, 2, 0, 1e9, &c).unwrap();
    let d = parity(3, &c).unwrap().product(&free, &c).unwrap();
    let tc = TcDecomposition::compute(&d).unwrap();
    close(tc.marginals.iter().sum::<f64>(), (4.0 - 3.0) * tc.whole);
    close(tc.marginals[3], tc.whole);
    close(measures::delta_k(&d, 3).unwrap(), 0.0);
}

#[test]
fn pairwise_union_has_zero_delta_two() {
    let spec = [
        GeneratorSpec::GiantBit {
            order: 2,
            alphabet: 2,
        },
        GeneratorSpec::GiantBit {
            order: 2,
            alphabet: 3,
        },
        GeneratorSpec::GiantBit {
            order: 2,
            alphabet: 2,
        },
    ];
    let d = compose_independent(&spec, &cfg()).unwrap();
    close(measures::delta_k(&d, 2).unwrap(), 0.0);
    close(measures::o_information(&d).unwrap(), 0.0);
}
