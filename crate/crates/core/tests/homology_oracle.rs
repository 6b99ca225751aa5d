//! The F2[U] homology engine against complexes whose homology is known by
//! construction and against brute-force ranks of `C (x) F2[U]/U^k`.

mod common;

use bfh_core::catalog;
use bfh_core::coeff::{FreeComplex, Homology};
use bfh_core::pairing::box_tensor;
use common::*;
use proptest::prelude::*;

fn predicted_dim_mod(h: &Homology, k: usize) -> usize {
    h.summands()
        .iter()
        .map(|s| match s.order {
            None => k,
            Some(m) => 2 * k.min(m as usize),
        })
        .sum()
}

fn depth(c: &FreeComplex) -> usize {
    c.entries().iter().map(|e| e.coeff.u_exp as usize).sum::<usize>() + 2
}

fn agrees_with_brute_force(c: &FreeComplex) {
    let h = Homology::compute(c).unwrap();
    for k in 1..=depth(c) {
        assert_eq!(predicted_dim_mod(&h, k), brute_dim_mod(c, k), "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scrambled_sums_have_their_known_homology(m in model_strategy(6)) {
        let c = m.complex();
        prop_assert!(c.validate().is_ok());
        let mut sig = Homology::compute(&c).unwrap().signature();
        sig.sort();
        prop_assert_eq!(sig, m.summands.clone());
    }

    #[test]
    fn quotient_ranks_match(m in model_strategy(5)) {
        agrees_with_brute_force(&m.complex());
    }
}

#[test]
fn built_in_complexes_match_brute_force() {
    agrees_with_brute_force(&catalog::cfk_j().set_v_zero().unwrap());
    agrees_with_brute_force(&catalog::a0_j_summand());
    for p in 1..=3 {
        agrees_with_brute_force(&catalog::cfk_cable_j(p).unwrap());
    }
    let lon = catalog::cfa_longitude(&catalog::Config { jmax: 8 });
    agrees_with_brute_force(&box_tensor(&lon, &catalog::cfd_j()).unwrap().complex);
}

#[test]
fn hat_pairings_match_brute_force() {
    for n in 1..=6 {
        let m = catalog::cfa_framed_solid_torus_hat(n).unwrap();
        let c = box_tensor(&m, &catalog::cfd_j()).unwrap().complex;
        let h = Homology::compute(&c).unwrap();
        assert_eq!(h.rank(), brute_dim_mod(&c, 1));
        assert_eq!(h.rank(), n + 8);
    }
}

#[test]
fn morphism_space_dimension_by_brute_force() {
    let mor = bfh_core::bordered::MorComplex::new(&catalog::cfd_unknot(), &catalog::cfd_j()).unwrap();
    assert_eq!(mor.dim(), 82);
    assert_eq!(brute_dim_mod(mor.complex(), 1), 10);
}
