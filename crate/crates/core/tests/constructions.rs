mod common;

use common::*;
use matroid_core::axioms::{check_z_axioms, lattice_meet};
use matroid_core::constructions::{
    build_n_ip, build_n_planes, counterexample_rank5, uniform, vamos,
};
use matroid_core::kernel::ElementSet;
use matroid_core::linear::counterexample_matrix;

#[test]
fn every_builder_output_passes_the_axioms() {
    let u34 = uniform(3, 4).unwrap();
    let u46 = uniform(4, 6).unwrap();
    let u45 = uniform(4, 5).unwrap();
    let planes3 = build_n_planes(&u34, &set(&u34, &["1", "2"]), &set(&u34, &["3", "4"])).unwrap();
    let planes4 =
        build_n_planes(&u46, &set(&u46, &["1", "2", "3"]), &set(&u46, &["4", "5", "6"])).unwrap();
    let ip = build_n_ip(&u45, &set(&u45, &["1", "2"]), &set(&u45, &["3", "4", "5"])).unwrap();
    for m in [&vamos(), &counterexample_rank5(), &planes3.n, &planes4.n, &ip.n] {
        assert!(check_z_axioms(m.presentation()).is_ok());
        assert_eq!(&m.cyclic_flats_from_oracle(), m.presentation());
    }
}

/// The two observations behind the (Z3) verification: for X = H1 ∪ A
/// and any incomparable Y in Z(M'),
///   r((H1∪A) ∩ Y) = r(H1 ∩ Y) ≤ r(Y) - 1, and
///   r(H1 ∩ Y) = r(H1 ∧ Y) + |(H1 ∩ Y) - (H1 ∧ Y)|.
#[test]
fn planes_construction_proof_observations() {
    for (m, h, h2) in [
        (uniform(3, 4).unwrap(), ["1", "2"].as_slice(), ["3", "4"].as_slice()),
        (uniform(4, 6).unwrap(), ["1", "2", "3"].as_slice(), ["4", "5", "6"].as_slice()),
    ] {
        let h = ElementSet::from_labels(m.ground(), h).unwrap();
        let h2 = ElementSet::from_labels(m.ground(), h2).unwrap();
        let c = build_n_planes(&m, &h, &h2).unwrap();
        let n = &c.n;
        let x = c.h1.union(&c.a_set);
        let mprime_pres_in_n: Vec<(ElementSet, u32)> = c
            .m_prime
            .presentation()
            .iter()
            .map(|(s, r)| (ElementSet::from_labels(n.ground(), &s.label_vec()).unwrap(), r))
            .collect();
        for (y, ry) in &mprime_pres_in_n {
            if x.is_subset_of(y) || y.is_subset_of(&x) {
                continue;
            }
            let via_x = n.rank_of(&x.intersection(y)).unwrap();
            let via_h1 = n.rank_of(&c.h1.intersection(y)).unwrap();
            assert_eq!(via_x, via_h1);
            assert!(via_h1 + 1 <= *ry, "r(H1 ∩ Y) must stay below r(Y)");

            // lattice meet taken in Z(N), which restricts to Z(M')
            let meet = lattice_meet(n.presentation(), &c.h1, y).unwrap();
            let cap = c.h1.intersection(y);
            let expected = n.rank_of(&meet).unwrap() + (cap.difference(&meet).len() as u32);
            assert_eq!(via_h1, expected);
        }
    }
}

#[test]
fn vamos_hyperplanes_are_already_cyclic_so_m_prime_is_m() {
    let v = vamos();
    let h = set(&v, &["a", "a'", "b", "b'"]);
    let h2 = set(&v, &["c", "c'", "d", "d'"]);
    let c = build_n_planes(&v, &h, &h2).unwrap();
    assert_eq!(c.m_prime, v);
    assert_eq!(c.h1, ElementSet::from_labels(c.n.ground(), &h.label_vec()).unwrap());
    assert_eq!(c.n.size(), 8 + 3 + 3);
    assert_eq!(c.n.rank(), 5);
}

#[test]
fn deleting_added_elements_recovers_the_input() {
    let u45 = uniform(4, 5).unwrap();
    let line = set(&u45, &["1", "2"]);
    let h = set(&u45, &["3", "4", "5"]);
    let c = build_n_ip(&u45, &line, &h).unwrap();
    let base = ElementSet::from_labels(c.n.ground(), u45.ground().labels()).unwrap();
    assert_eq!(c.n.restriction(&base).unwrap(), u45);
    // intermediate M' also restricts back
    let base_mp = ElementSet::from_labels(c.m_prime.ground(), u45.ground().labels()).unwrap();
    assert_eq!(c.m_prime.restriction(&base_mp).unwrap(), u45);
}

#[test]
fn ip_construction_modular_pairs_from_the_proof() {
    use matroid_core::modcuts::is_modular_pair;
    let u45 = uniform(4, 5).unwrap();
    let c = build_n_ip(&u45, &set(&u45, &["1", "2"]), &set(&u45, &["3", "4", "5"])).unwrap();
    let n = &c.n;
    assert!(is_modular_pair(n, &c.d1.union(&c.line), &c.d1.union(&c.h_prime)).unwrap());
    assert!(is_modular_pair(n, &c.d1, &c.d2).unwrap());
    assert!(is_modular_pair(n, &c.a_set, &c.line).unwrap());
    // and the disjointness facts those steps rely on
    assert!(c.a_set.is_disjoint_from(&c.line));
    assert_eq!(c.d1.intersection(&c.d2), c.a_set);
}

#[test]
fn counterexample_groups_match_the_matroid() {
    let a = counterexample_matrix();
    let m = counterexample_rank5();
    assert_eq!(m.size(), 11);
    assert_eq!(m.rank(), 5);
    let l4 = a.group_set(&m, "l4").unwrap();
    assert_eq!(m.rank_of(&l4).unwrap(), 2);
    for (group, rank) in [("d1", 3), ("d2", 3), ("d3", 3)] {
        let d = a.group_set(&m, group).unwrap();
        assert_eq!(m.rank_of(&d).unwrap(), rank);
        assert!(m.is_flat(&d).unwrap());
    }
}

#[test]
fn planes_construction_rejects_bad_inputs() {
    let m = uniform(3, 4).unwrap();
    // not disjoint
    assert!(build_n_planes(&m, &set(&m, &["1", "2"]), &set(&m, &["2", "3"])).is_err());
    // not a hyperplane
    assert!(build_n_planes(&m, &set(&m, &["1"]), &set(&m, &["3", "4"])).is_err());
    // rank too small
    let low = uniform(2, 4).unwrap();
    assert!(build_n_planes(&low, &set(&low, &["1"]), &set(&low, &["2"])).is_err());
}

#[test]
fn ip_construction_rejects_meeting_line_and_hyperplane() {
    let m = uniform(4, 5).unwrap();
    assert!(build_n_ip(&m, &set(&m, &["1", "2"]), &set(&m, &["2", "3", "4"])).is_err());
}
