use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::*;
use crate::chars::{decompose, InducedModule, Subgroup};
use crate::exactnum::{CycInt, Prime};
use crate::rootcomb::{BVector, Root, RootTables, Subset};
use crate::unitri::{Caps, Group, GroupElem, NondegChar};

fn module(n: usize, q: u32) -> (Group, InducedModule) {
    let g = Group::build(n, q).unwrap();
    let chi = NondegChar::standard(g.tables(), g.prime());
    let m = InducedModule::new(&g, &chi).unwrap();
    (g, m)
}

fn matrix(x: &GroupElem, n: usize) -> Vec<Vec<u32>> {
    (1..=n).map(|i| (1..=n).map(|j| x.get(i, j)).collect()).collect()
}

#[test]
fn x_matrices_of_the_small_cases() {
    let t = RootTables::new(3).unwrap();
    let p = Prime::new(5).unwrap();
    let x = build_x_sb(&t, p, &Subset::full(&t), &BVector(vec![3])).unwrap();
    assert_eq!(matrix(&x, 3), vec![vec![1, 0, 3], vec![0, 1, 3], vec![0, 0, 1]]);
    assert!(build_x_sb(&t, p, &Subset::full(&t), &BVector(vec![0])).is_err());
    let x = build_x_sb(&t, p, &Subset::empty(&t), &BVector(vec![4])).unwrap();
    assert_eq!(matrix(&x, 3), vec![vec![1, 0, 4], vec![0, 1, 0], vec![0, 0, 1]]);

    let t = RootTables::new(4).unwrap();
    let x = build_x_sb(&t, p, &Subset::empty(&t), &BVector(vec![2, 4])).unwrap();
    assert_eq!(matrix(&x, 4), vec![vec![1, 0, 0, 2], vec![0, 1, 3, 4], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    let x = build_x_sb(&t, p, &Subset::full(&t), &BVector(vec![2, 4])).unwrap();
    assert_eq!(matrix(&x, 4), vec![vec![1, 0, 0, 2], vec![0, 1, 0, 4], vec![0, 0, 1, 2], vec![0, 0, 0, 1]]);

    let t = RootTables::new(5).unwrap();
    let s = Subset::from_roots(&t, &[Root::new(2, 3)]).unwrap();
    let x = build_x_sb(&t, p, &s, &BVector(vec![2, 3])).unwrap();
    assert_eq!(
        matrix(&x, 5),
        vec![vec![1, 0, 0, 0, 2], vec![0, 1, 0, 1, 3], vec![0, 0, 1, 1, 3], vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]]
    );
    let x = build_x_sb(&t, p, &Subset::empty(&t), &BVector(vec![2, 3])).unwrap();
    assert_eq!(x.get(2, 4), 1);
    assert_eq!(x.get(3, 4), 0);
    let s = Subset::from_roots(&t, &[Root::new(1, 4)]).unwrap();
    let x = build_x_sb(&t, p, &s, &BVector(vec![1, 4])).unwrap();
    assert_eq!(
        matrix(&x, 5),
        vec![vec![1, 0, 0, 0, 1], vec![0, 1, 0, 0, 4], vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 1], vec![0, 0, 0, 0, 1]]
    );
    assert!(in_zero_minus(&t, &x));
}

#[test]
fn printed_n5_matrix_fails_the_criterion() {
    // x_34 = 0 as in the worked n = 5 example with S = {(2,3)}: not compatible.
    let (g, m) = module(5, 2);
    let t = g.tables();
    let s = Subset::from_roots(t, &[Root::new(2, 3)]).unwrap();
    let mut x = build_x_sb(t, g.prime(), &s, &BVector(vec![1, 1])).unwrap();
    assert!(xi_compatible(&g, &m.gplus, &m.xi_exps, &x));
    x.set(3, 4, 0);
    assert!(!xi_compatible(&g, &m.gplus, &m.xi_exps, &x));
    assert!(sandwich(&g, &m.gplus, &m.xi_exps, &x).unwrap().is_zero());
}

#[test]
fn group_algebra_units() {
    let (g, m) = module(3, 2);
    let one = GroupAlgebraElem::one(&g);
    let px = p_xi(&g, &m.gplus, &m.xi_exps);
    assert_eq!(px.support_len(), 2);
    assert_eq!(px.mul(&g, &one).unwrap(), px);
    assert_eq!(one.mul(&g, &px).unwrap(), px);
    let a = g.element(3);
    let b = g.element(5);
    let p = g.prime();
    let da = GroupAlgebraElem::monomial(p, 3, 0);
    let db = GroupAlgebraElem::monomial(p, 5, 0);
    assert_eq!(da.mul(&g, &db).unwrap(), GroupAlgebraElem::monomial(p, g.index(&g.mul(&a, &b)), 0));
    let trivial = Subgroup::from_indices(vec![g.index(&g.identity())]);
    assert_eq!(p_xi(&g, &trivial, &[0]), one);
}

#[test]
fn p_xi_is_quasi_idempotent() {
    for (n, q) in [(3usize, 2u32), (3, 3), (4, 2)] {
        let (g, m) = module(n, q);
        let px = p_xi(&g, &m.gplus, &m.xi_exps);
        let sq = px.mul(&g, &px).unwrap();
        let c = px.proportional(&sq).unwrap();
        assert_eq!(c, crate::exactnum::CycRat::from_int(CycInt::from_int(g.prime(), BigInt::from(m.gplus.order()))));
        let e = sandwich(&g, &m.gplus, &m.xi_exps, &g.identity()).unwrap();
        assert_eq!(e, sq);
    }
}

#[test]
fn sandwich_lives_on_the_double_coset() {
    let (g, m) = module(3, 3);
    for idx in 0..g.order() as usize {
        let x = g.element(idx);
        let w = sandwich(&g, &m.gplus, &m.xi_exps, &x).unwrap();
        let coset = double_coset(&g, &m.gplus, &x);
        assert!(w.support().all(|s| coset.binary_search(&s).is_ok()));
    }
}

#[test]
fn nonvanishing_exactly_when_compatible() {
    let caps = Caps::default();
    for q in [2u32, 3, 5] {
        let (g, m) = module(3, q);
        let (total, agree) = nonvanishing_equivalence(&g, &m, &caps).unwrap();
        assert_eq!(total, agree);
    }
    let (g, m) = module(4, 2);
    let (total, agree) = nonvanishing_equivalence(&g, &m, &caps).unwrap();
    assert_eq!(total, agree);
}

#[test]
fn basis_sizes_and_checks() {
    let caps = Caps::default();
    for (n, q, size) in [(3usize, 2u32, 3usize), (3, 3, 5), (4, 2, 6), (4, 3, 15), (5, 2, 9)] {
        let (g, m) = module(n, q);
        let basis = hecke_basis(&g, &m, &caps).unwrap();
        assert_eq!(basis.len(), size);
        assert!(basis.holds(g.tables()), "n={} q={}", n, q);
        let scan = hecke_dim_by_cosets(&g, &m, &caps).unwrap();
        assert_eq!(scan.compatible, size);
        let dec = decompose(&g, &m.chi, &caps, false).unwrap();
        assert_eq!(dec.component_count, size);
        assert!(proportionality_check(&g, &m, &basis, 4).unwrap());
    }
}

#[test]
fn commutativity_and_closure() {
    let caps = Caps::default();
    for (n, q) in [(3usize, 2u32), (3, 3), (4, 2)] {
        let (g, m) = module(n, q);
        let basis = hecke_basis(&g, &m, &caps).unwrap();
        let pairs = all_pairs(basis.len());
        let rep = verify_commutativity(&g, &basis, &pairs).unwrap();
        assert!(rep.holds(), "n={} q={} {:?}", n, q, rep.failures);
        assert!(!rep.partial());
    }
}

#[test]
fn identity_slot_acts_as_a_scalar() {
    let caps = Caps::default();
    let (g, m) = module(4, 2);
    let basis = hecke_basis(&g, &m, &caps).unwrap();
    let e = basis.elements.iter().position(|e| e.x.is_identity()).unwrap();
    let rep = verify_commutativity(&g, &basis, &[(e, 3), (e, e)]).unwrap();
    assert!(rep.holds());
    let order = BigInt::from(m.gplus.order() * m.gplus.order());
    let c = rep.constants.iter().find(|c| c.i == e && c.j == 3).unwrap();
    assert_eq!(c.m, 3);
    assert_eq!(c.value, crate::exactnum::CycRat::from_int(CycInt::from_int(g.prime(), order)));
}

#[test]
fn a_noncommuting_pair_is_reported() {
    // Without the character the double coset algebra of G+ in UT(4, 2) is
    // not commutative.
    let caps = Caps::default();
    let (g, mut m) = module(4, 2);
    m.xi_exps = vec![0; m.xi_exps.len()];
    let h = m.gplus.clone();
    let mut elements = Vec::new();
    let mut seen = alloc::collections::BTreeSet::new();
    for idx in 0..g.order() as usize {
        let x = g.element(idx);
        let c = double_coset(&g, &h, &x);
        if seen.insert(c[0]) {
            elements.push(HeckeBasisElem {
                s: Subset::empty(g.tables()),
                b: BVector(vec![]),
                element: sandwich(&g, &h, &m.xi_exps, &x).unwrap(),
                coset_id: c[0],
                coset: c,
                compatible: true,
                replaced: false,
                x,
            });
        }
    }
    let basis = HeckeBasis { elements, expected: 0, constructed_ok: true };
    let rep = verify_commutativity(&g, &basis, &all_pairs(basis.len())).unwrap();
    assert!(rep.commuting < rep.pairs_checked);
    let _ = caps;
}
