use proptest::prelude::*;

use qutrit_mub::mcs::McsCatalog;
use qutrit_mub::mub::{verify_projectors, BasisSet};
use qutrit_mub::partition::{enumerate_partitions, group_by_separable};
use qutrit_mub::{Mcs, PauliOp, Trit};

fn op(n: usize) -> impl Strategy<Value = PauliOp> {
    (0..3i64, 0..9u64.pow(n as u32)).prop_map(move |(p, i)| PauliOp::from_index(n, i).with_phase(Trit::new(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_matrices(a in op(2), b in op(2)) {
        let lhs = a.multiply(&b).unwrap().to_matrix().unwrap();
        let rhs = a.to_matrix().unwrap().mul(&b.to_matrix().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(a in op(3), b in op(3), c in op(3)) {
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn cube_is_identity(a in op(3)) {
        prop_assert!(a.canonical().pow(3).is_identity());
        prop_assert_eq!(a.multiply(&a.dagger()).unwrap(), PauliOp::identity(3));
    }

    #[test]
    fn commutator_phase_is_symplectic(a in op(2), b in op(2)) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        prop_assert!(ab.same_up_to_phase(&ba));
        prop_assert_eq!(a.commutes_with(&b).unwrap(), ab == ba);
    }

    #[test]
    fn index_round_trips(i in 0..729u64) {
        let a = PauliOp::from_index(3, i);
        prop_assert_eq!(a.index(), i);
        prop_assert_eq!(a.to_string().parse::<PauliOp>().unwrap(), a);
    }
}

#[test]
fn mcs_counts_match_product_formula() {
    for (n, want) in [(1, 4), (2, 40), (3, 1120)] {
        assert_eq!(McsCatalog::new(n).unwrap().len(), want);
    }
}

#[test]
fn mcs_containing_fixed_operator() {
    let two = McsCatalog::new(2).unwrap();
    assert_eq!(two.containing(&"ZX".parse().unwrap()).unwrap().len(), 4);
    let three = McsCatalog::new(3).unwrap();
    assert_eq!(three.containing(&"ZXI".parse().unwrap()).unwrap().len(), 40);
}

#[test]
fn two_qutrit_partitions_split_by_completion_count() {
    let parts = enumerate_partitions(2).unwrap();
    assert_eq!(parts.len(), 36);
    let groups = group_by_separable(&parts).unwrap();
    assert_eq!(groups.len(), 24);
    let twos = groups.values().filter(|g| g.len() == 2).count();
    assert_eq!((twos, groups.len() - twos), (12, 12));
}

#[test]
fn eigenbasis_of_bell_mcs() {
    let b = BasisSet::from_mcs(&Mcs::from_generator_str("ZX,VZ").unwrap()).unwrap();
    assert_eq!(b.states().len(), 9);
    let rep = verify_projectors(&b, true);
    assert!(rep.passed(), "{rep}");
}
