use unitri::chars::{component_entry, inner_product, ConjugacyClasses, DecompositionReport, InducedModule};
use unitri::hecke::{all_pairs, hecke_basis, verify_commutativity};
use unitri::ideal::{verify_orbit_equations, verify_separation};
use unitri::unitri::{canonical_forms, orbit_of, NondegChar};
use unitri::{Caps, Group, Prime, RootTables};

fn setup(n: usize, q: u32) -> (Group, NondegChar) {
    let t = RootTables::new(n).unwrap();
    let p = Prime::new(q).unwrap();
    let chi = NondegChar::standard(&t, p);
    (Group::new(t, p), chi)
}

fn component_count(n: usize, q: u32) -> usize {
    let k = (n - 1) / 2;
    let eps = u32::from(n % 2 == 0);
    (q.pow(eps) * (2 * q - 1).pow(k as u32)) as usize
}

#[test]
fn decomposition_of_small_groups() {
    let caps = Caps::default();
    for (n, q) in [(3, 2), (3, 3), (4, 2), (5, 2)] {
        let (group, chi) = setup(n, q);
        let module = InducedModule::new(&group, &chi).unwrap();
        let classes = ConjugacyClasses::new(&group, &caps).unwrap();
        let character = module.character(&group, &classes).unwrap();
        let forms = canonical_forms(group.tables(), group.prime(), &chi);
        assert_eq!(forms.len(), component_count(n, q));
        let entries = forms
            .iter()
            .map(|cf| component_entry(&group, &module, cf, &caps, Some(&character)))
            .collect::<unitri::Result<Vec<_>>>()
            .unwrap();
        let norm = inner_product(&character, &character).unwrap();
        let report = DecompositionReport::assemble(&group, entries, Some(norm));
        assert!(report.holds(), "n={} q={}", n, q);
    }
}

#[test]
fn orbits_are_cut_out_and_separated() {
    let caps = Caps::default();
    for (n, q) in [(3, 3), (4, 2), (4, 3)] {
        let (group, chi) = setup(n, q);
        let t = group.tables();
        for cf in canonical_forms(t, group.prime(), &chi) {
            let orbit = orbit_of(t, group.prime(), &cf.form, &caps).unwrap();
            let rep = verify_orbit_equations(t, group.prime(), &chi, &cf.s, &cf.a, &caps).unwrap();
            assert!(rep.holds() && !rep.partial);
            assert_eq!(rep.variety_points, Some(orbit.size() as u64));
        }
        assert!(verify_separation(t, group.prime(), &chi, &caps).unwrap().holds());
    }
}

#[test]
fn hecke_algebras_are_commutative() {
    let caps = Caps::default();
    for (n, q) in [(3, 2), (4, 2), (4, 3)] {
        let (group, chi) = setup(n, q);
        let module = InducedModule::new(&group, &chi).unwrap();
        let basis = hecke_basis(&group, &module, &caps).unwrap();
        assert_eq!(basis.len(), component_count(n, q));
        assert!(basis.holds(group.tables()));
        let rep = verify_commutativity(&group, &basis, &all_pairs(basis.len())).unwrap();
        assert!(rep.holds());
    }
}
