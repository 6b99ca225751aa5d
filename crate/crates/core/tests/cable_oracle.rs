//! The cable presentation against a pairing with a completed cable module.
//!
//! The cable module only carries operations with input `alpha`. Inside a
//! box of `cfd_j` the `y` generators reach each other along
//! `y1 -rho2-> b -rho1-> y2` and trivially, so the presentation rows out
//! of `beta|y` generators come from
//! `m1(beta_j) = U^{p-j} beta_{2p-j-1}` and
//! `m3(beta_i, rho2, rho1) = U beta_{i+1}`,
//! `m3(beta_{2p-i-1}, rho2, rho1) = beta_{2p-i-2}`.

use std::collections::BTreeSet;

use bfh_core::bordered::{Flavor, TypeAModule};
use bfh_core::catalog::{self, beta_id, Config};
use bfh_core::coeff::{FreeComplex, Homology};
use bfh_core::pairing::box_tensor;
use bfh_core::torus::AlgBasis::{R1, R2};

fn completed_cable(p: usize, cfg: &Config) -> TypeAModule {
    let cable = catalog::cfa_cable(p, cfg).unwrap();
    let mut b = TypeAModule::builder(Flavor::Minus);
    for (id, idem) in cable.generators() {
        b.generator(id, *idem).unwrap();
    }
    for op in cable.ops() {
        for &(out, u) in &op.out {
            b.op(cable.id(op.gen), &op.rhos, cable.id(out), u).unwrap();
        }
    }
    for j in 1..p {
        b.op(&beta_id(j), &[], &beta_id(2 * p - j - 1), (p - j) as u32).unwrap();
    }
    for i in 1..p.saturating_sub(1) {
        b.op(&beta_id(i), &[R2, R1], &beta_id(i + 1), 1).unwrap();
        b.op(&beta_id(2 * p - i - 1), &[R2, R1], &beta_id(2 * p - i - 2), 0).unwrap();
    }
    b.truncated_at(cfg.jmax);
    b.build()
}

fn entries(c: &FreeComplex) -> BTreeSet<(String, String, u32)> {
    c.entries()
        .iter()
        .map(|e| (c.id(e.from).to_string(), c.id(e.to).to_string(), e.coeff.u_exp))
        .collect()
}

#[test]
fn completed_pairing_reproduces_the_presentation() {
    let cfg = Config { jmax: 16 };
    for p in 1..=6 {
        let paired = box_tensor(&completed_cable(p, &cfg), &catalog::cfd_j()).unwrap();
        assert!(!paired.partial);
        let pres = catalog::cfk_cable_j(p).unwrap();
        assert_eq!(entries(&paired.complex), entries(&pres), "p = {p}");
        assert!(paired.deepest_match <= cfg.jmax / 2);
    }
}

#[test]
fn presentation_homology_has_one_tower_and_order_p() {
    for p in 1..=8 {
        let h = Homology::compute(&catalog::cfk_cable_j(p).unwrap()).unwrap();
        assert_eq!(h.tower_rank(), 1);
        let max = h.summands().iter().filter_map(|s| s.order).max().unwrap_or(0);
        assert_eq!(max as usize, p.max(1), "p = {p}");
    }
}

#[test]
fn displayed_rows_break_the_differential_from_p_three() {
    assert_eq!(
        entries(&catalog::cfk_cable_j_printed(2).unwrap()),
        entries(&catalog::cfk_cable_j(2).unwrap())
    );
    for p in 3..=6 {
        assert!(!catalog::cfk_cable_j_printed(p).unwrap().validate().is_ok(), "p = {p}");
    }
}
