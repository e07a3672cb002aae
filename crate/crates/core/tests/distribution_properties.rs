use hoinfo::dist::ZERO_MASS;
use hoinfo::generators::{giant_bit, parity, random_with_cardinalities};
use hoinfo::{EstimatorConfig, JointDistribution, VariableSubset};
use proptest::prelude::*;

fn cfg() -> EstimatorConfig {
    EstimatorConfig::default()
}

fn arb_dist(max_vars: usize) -> impl Strategy<Value = JointDistribution> {
    (
        prop::collection::vec(2usize..=3, 1..=max_vars),
        any::<u64>(),
        prop::sample::select(vec![0.1, 0.5, 1.0, 4.0]),
    )
        .prop_map(|(cards, seed, c)| random_with_cardinalities(&cards, seed, c, &cfg()).unwrap())
}

fn subset_of(n: usize, mask: u32) -> VariableSubset {
    VariableSubset::new((0..n).filter(|i| mask >> i & 1 == 1).collect()).unwrap()
}

proptest! {
    #[test]
    fn nested_marginals_agree(d in arb_dist(5), outer in 1u32..32, inner in 1u32..32) {
        let n = d.n_vars();
        let outer = outer & ((1 << n) - 1);
        let inner = inner & outer;
        prop_assume!(inner != 0);
        let s = subset_of(n, outer);
        let s2 = subset_of(n, inner);
        let direct = d.marginalize(&s2).unwrap();
        let m = d.marginalize(&s).unwrap();
        // Re-index inner subset positions inside the outer marginal.
        let pos: Vec<usize> = s2
            .indices()
            .iter()
            .map(|i| s.indices().iter().position(|j| j == i).unwrap())
            .collect();
        let two_step = m.marginalize(&VariableSubset::new(pos).unwrap()).unwrap();
        prop_assert_eq!(direct.cardinalities(), two_step.cardinalities());
        for ((sa, pa), (sb, pb)) in direct.support().iter().zip(two_step.support()) {
            prop_assert_eq!(sa, &sb);
            // Different grouping of the same sum; only rounding may differ.
            prop_assert!((pa - pb).abs() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn entropy_shrinks_under_marginalization(d in arb_dist(5), mask in 1u32..32) {
        let n = d.n_vars();
        let mask = mask & ((1 << n) - 1);
        prop_assume!(mask != 0);
        let h = d.entropy();
        let hm = d.marginal_entropy(&subset_of(n, mask)).unwrap();
        prop_assert!(hm <= h + 1e-12);
        prop_assert!(h >= 0.0);
        let cap: f64 = d.cardinalities().iter().map(|&c| (c as f64).log2()).sum();
        prop_assert!(h <= cap + 1e-12);
    }

    #[test]
    fn product_entropy_is_additive(a in arb_dist(3), b in arb_dist(3)) {
        let p = a.product(&b, &cfg()).unwrap();
        prop_assert!((p.entropy() - a.entropy() - b.entropy()).abs() < 1e-9);
    }

    #[test]
    fn dense_and_sparse_agree(d in arb_dist(5), mask in 1u32..32) {
        let n = d.n_vars();
        let mask = mask & ((1 << n) - 1);
        prop_assume!(mask != 0);
        let s = d.to_sparse();
        prop_assert!(!s.is_dense());
        prop_assert_eq!(d.entropy().to_bits(), s.entropy().to_bits());
        let keep = subset_of(n, mask);
        let md = d.marginalize(&keep).unwrap();
        let ms = s.marginalize(&keep).unwrap();
        prop_assert_eq!(md.support(), ms.support());
        prop_assert_eq!(md.entropy().to_bits(), ms.entropy().to_bits());
        let rd = hoinfo::MeasureReport::compute(&d);
        let rs = hoinfo::MeasureReport::compute(&s);
        prop_assert_eq!(rd, rs);
    }
}

#[test]
fn gadget_nested_marginals_are_exact() {
    let c = cfg();
    let systems = [
        parity(4, &c).unwrap(),
        giant_bit(4, 3, &c).unwrap(),
        parity(3, &c)
            .unwrap()
            .product(&giant_bit(2, 2, &c).unwrap(), &c)
            .unwrap(),
    ];
    for d in &systems {
        let n = d.n_vars();
        for outer in 1u32..(1 << n) {
            for inner in 1u32..(1 << n) {
                if inner & !outer != 0 {
                    continue;
                }
                let s = subset_of(n, outer);
                let s2 = subset_of(n, inner);
                let pos: Vec<usize> = s2
                    .indices()
                    .iter()
                    .map(|i| s.indices().iter().position(|j| j == i).unwrap())
                    .collect();
                let two = d
                    .marginalize(&s)
                    .unwrap()
                    .marginalize(&VariableSubset::new(pos).unwrap())
                    .unwrap();
                assert_eq!(two, d.marginalize(&s2).unwrap());
            }
        }
    }
}

#[test]
fn product_with_point_mass_keeps_measures() {
    let c = cfg();
    let gb = giant_bit(3, 2, &c).unwrap();
    let point = JointDistribution::from_entries(&[2], [([1], 1.0)], &c).unwrap();
    let joined = gb.product(&point, &c).unwrap();
    let a = hoinfo::MeasureReport::compute(&gb).unwrap();
    let b = hoinfo::MeasureReport::compute(&joined).unwrap();
    assert!((a.total_correlation - b.total_correlation).abs() < 1e-12);
    assert!((a.dual_total_correlation - b.dual_total_correlation).abs() < 1e-12);
    assert!((a.s_information - b.s_information).abs() < 1e-12);
    assert!((a.o_information - b.o_information).abs() < 1e-12);
}

#[test]
fn tiny_masses_do_not_poison_entropy() {
    let c = cfg();
    let d = JointDistribution::from_entries(&[2], [([0], 1.0 - 1e-17), ([1], 1e-17)], &c).unwrap();
    const { assert!(1e-17 < ZERO_MASS) };
    assert_eq!(d.entropy(), 0.0);
}
