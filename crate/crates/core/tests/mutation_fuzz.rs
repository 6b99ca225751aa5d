use bfh_core::catalog;
use bfh_core::coeff::Homology;
use bfh_core::verify::{complex_mutants, mutation_fuzz, type_a_mutants, type_d_mutants};

#[test]
fn mutants_are_detected() {
    let r = mutation_fuzz().unwrap();
    println!("{} mutants, {}/{} relevant detected", r.mutants, r.detected, r.relevant);
    assert!(r.mutants >= 200);
    assert!(r.relevant >= 200);
    assert!(r.detected * 100 >= r.relevant * 99, "missed: {:?}", r.missed);
}

#[test]
fn mutant_families_are_single_entry_changes() {
    let j = catalog::cfd_j();
    for (label, d) in type_d_mutants(&j, 40) {
        assert_eq!(d.arrows().len().abs_diff(j.arrows().len()), 1, "{label}");
    }
    let k = catalog::cfk_j();
    for (label, c) in complex_mutants(&k).unwrap() {
        assert_eq!(c.entries().len().abs_diff(k.entries().len()), 1, "{label}");
    }
    let lon = catalog::cfa_longitude(&catalog::Config { jmax: 4 });
    for (label, m) in type_a_mutants(&lon).unwrap() {
        assert_eq!(m.ops().len() + 1, lon.ops().len(), "{label}");
    }
}

#[test]
fn some_valid_mutants_change_homology() {
    // Not every detection comes from a validator.
    let golden = Homology::compute(&catalog::cfk_j().set_v_zero().unwrap()).unwrap().signature();
    let changed = complex_mutants(&catalog::cfk_j())
        .unwrap()
        .into_iter()
        .filter(|(_, c)| c.validate().is_ok())
        .filter(|(_, c)| Homology::compute(&c.set_v_zero().unwrap()).unwrap().signature() != golden)
        .count();
    assert!(changed > 0);
}
