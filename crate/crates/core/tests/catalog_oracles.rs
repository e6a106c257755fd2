mod common;

use hdisc::algebra::VarietyClass;
use hdisc::catalog::{decorate, enum_distributive_lattices};
use hdisc::morphism::isomorphic;

use common::{
    automorphisms, is_regular_involution, is_ws5_box, oracle_dualneg_level, oracle_lattice_count, orbit_count,
    unary_maps,
};

#[test]
fn lattice_counts_match_poset_oracle() {
    for n in 1..=7 {
        let library = enum_distributive_lattices(n).unwrap().len();
        assert_eq!(library, oracle_lattice_count(n), "size {n}");
    }
}

#[test]
fn lattice_counts_known_prefix() {
    let counts: Vec<usize> = (1..=8).map(oracle_lattice_count).collect();
    assert_eq!(counts, [1, 1, 1, 2, 3, 5, 8, 15]);
}

#[test]
fn ws5_boxes_match_exhaustive_maps() {
    for n in 1..=6 {
        for l in enum_distributive_lattices(n).unwrap() {
            let boxes = unary_maps(n, |b| is_ws5_box(&l, b));
            let expected = orbit_count(&boxes, &automorphisms(&l));
            assert_eq!(decorate(VarietyClass::Ws5, &l).len(), expected, "{}", l.name());
        }
    }
}

#[test]
fn regular_involutions_match_exhaustive_maps() {
    for n in 1..=6 {
        for l in enum_distributive_lattices(n).unwrap() {
            let invs = unary_maps(n, |f| is_regular_involution(&l, f));
            let expected = orbit_count(&invs, &automorphisms(&l));
            assert_eq!(decorate(VarietyClass::Hri, &l).len(), expected, "{}", l.name());
        }
    }
}

#[test]
fn dual_pseudocomplement_decorations_match_levels() {
    for n in 1..=7 {
        for l in enum_distributive_lattices(n).unwrap() {
            let level = oracle_dualneg_level(&l);
            for k in [1, 2, 3, 8] {
                let expected = usize::from(level.is_some_and(|lv| lv <= k));
                assert_eq!(decorate(VarietyClass::Hdp(k), &l).len(), expected, "{} hdp:{k}", l.name());
                assert_eq!(decorate(VarietyClass::Dht(k), &l).len(), expected, "{} dht:{k}", l.name());
            }
        }
    }
}

#[test]
fn decorations_are_pairwise_non_isomorphic() {
    for class in common::all_classes() {
        let algebras = common::algebras(class, 6);
        for (i, a) in algebras.iter().enumerate() {
            for b in &algebras[i + 1..] {
                if a.size() == b.size() {
                    assert!(isomorphic(a, b).unwrap().is_none(), "{} and {}", a.name(), b.name());
                }
            }
        }
    }
}

#[test]
fn relabelled_algebras_have_the_same_canonical_form() {
    for class in common::all_classes() {
        for a in common::algebras(class, 5) {
            let canon = hdisc::algebra::canonical_form(&a);
            for b in common::relabellings(&a, 6) {
                assert_eq!(hdisc::algebra::canonical_form(&b), canon, "{}", a.name());
                assert!(isomorphic(&a, &b).unwrap().is_some());
            }
        }
    }
}
