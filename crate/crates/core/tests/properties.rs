mod common;

use bfh_core::bordered::TypeDStructure;
use bfh_core::catalog;
use bfh_core::coeff::{are_chain_homotopic, ChainMap, Homology};
use bfh_core::invariants::{d_invariant, torsion_order};
use bfh_core::json::Object;
use bfh_core::verify::type_d_mutants;
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn homology_is_invariant_under_reordering(m in model_strategy(6), seed in any::<u64>()) {
        let c = m.complex();
        let n = c.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut a = Homology::compute(&c).unwrap().signature();
        let mut b = Homology::compute(&c.permuted(&perm)).unwrap().signature();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn homotopy_is_an_equivalence_relation(
        m in model_strategy(5),
        h1 in prop::collection::vec(any::<bool>(), 1..40),
        h2 in prop::collection::vec(any::<bool>(), 1..40),
    ) {
        let c = m.complex();
        let f = ChainMap::identity(&c);
        let g = perturb(&c, &f, &random_homotopy(&c, &h1));
        let k = perturb(&c, &g, &random_homotopy(&c, &h2));
        prop_assert!(g.is_chain_map(&c, &c).unwrap());
        prop_assert!(are_chain_homotopic(&f, &f, &c, &c).unwrap());
        prop_assert!(are_chain_homotopic(&f, &g, &c, &c).unwrap());
        prop_assert!(are_chain_homotopic(&g, &f, &c, &c).unwrap());
        prop_assert!(are_chain_homotopic(&f, &k, &c, &c).unwrap());
        let nonzero = !Homology::compute(&c).unwrap().summands().is_empty();
        prop_assert_eq!(are_chain_homotopic(&f, &ChainMap::zero(&c), &c, &c).unwrap(), !nonzero);
    }

    #[test]
    fn complexes_round_trip_through_json(m in model_strategy(6)) {
        let o = Object::Complex(m.complex());
        prop_assert_eq!(Object::from_json(&o.to_json()).unwrap(), o);
    }

    #[test]
    fn torsion_order_and_d_survive_basis_changes(m in model_strategy(6), shift in -3i64..4) {
        let c = m.complex();
        let expected = m.summands.iter().filter_map(|s| s.1).max().unwrap_or(0);
        let h = Homology::compute(&c).unwrap();
        prop_assert_eq!(torsion_order(&h), expected);
        let shifted = Homology::compute(&c.grading_shifted(2 * shift)).unwrap();
        prop_assert_eq!(torsion_order(&shifted), expected);
        let towers: Vec<i64> = m.summands.iter().filter(|s| s.1.is_none()).map(|s| s.0).collect();
        if let [g] = towers.as_slice() {
            prop_assert_eq!(d_invariant(&c).unwrap(), *g);
        }
    }
}

#[test]
fn type_d_mutants_round_trip_through_json() {
    let all: Vec<(String, TypeDStructure)> = type_d_mutants(&catalog::cfd_j(), 60);
    assert!(all.len() > 60);
    for (label, d) in all {
        let o = Object::TypeD(d);
        assert_eq!(Object::from_json(&o.to_json()).unwrap(), o, "{label}");
    }
}
