use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::*;
use crate::exactnum::Prime;
use crate::rootcomb::{compute_lsets, AVector, Root, RootTables, Subset};
use crate::unitri::{canonical_forms, Caps, LinForm, NondegChar};

fn r(i: usize, j: usize) -> Root {
    Root::new(i, j)
}

fn x(t: &RootTables, i: usize, j: usize) -> MultiPoly {
    x_var(t, i, j, t.dim()).unwrap()
}

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn subset(t: &RootTables, roots: &[Root]) -> Subset {
    Subset::from_roots(t, roots).unwrap()
}

#[test]
fn minor_examples() {
    let t = RootTables::new(3).unwrap();
    let s = Subset::empty(&t);
    let l = compute_lsets(&t, &s);
    assert_eq!(minor_m_gamma(r(1, 3), &t, &s, &l).unwrap().poly, x(&t, 1, 3));

    let t = RootTables::new(4).unwrap();
    let s = Subset::empty(&t);
    let l = compute_lsets(&t, &s);
    let m = minor_m_gamma(r(2, 3), &t, &s, &l).unwrap();
    assert_eq!(s_gamma(r(2, 3), &t, &s, &l).unwrap(), vec![r(1, 4), r(2, 3)]);
    assert_eq!((m.rows.clone(), m.cols.clone()), (vec![1, 2], vec![3, 4]));
    assert_eq!(m.poly, x(&t, 1, 3).mul(&x(&t, 2, 4)).sub(&x(&t, 1, 4).mul(&x(&t, 2, 3))));
    assert_eq!(render_minor(&m.rows, &m.cols), "det[[y31,y32],[y41,y42]]");
    assert!(minor_m_gamma(r(3, 4), &t, &s, &l).is_err());

    let t = RootTables::new(5).unwrap();
    let s = subset(&t, &[r(2, 3)]);
    let l = compute_lsets(&t, &s);
    let m = minor_m_gamma(r(2, 4), &t, &s, &l).unwrap();
    assert_eq!(render_minor(&m.rows, &m.cols), "det[[y41,y42],[y51,y52]]");
}

#[test]
fn characteristic_minor_examples() {
    let t = RootTables::new(4).unwrap();
    let tp = char_minor(1, &t).unwrap();
    let want = x(&t, 1, 2).mul(&x(&t, 2, 4)).add(&x(&t, 1, 3).mul(&x(&t, 3, 4)));
    assert!(tp.p(1).sign_relative_to(&want).is_some());
    assert_eq!(render_y_poly(&t, tp.p(1)), "y42y21 + y43y31");

    let t = RootTables::new(5).unwrap();
    let tp = char_minor(1, &t).unwrap();
    assert_eq!(render_y_poly(&t, tp.p(1)), "y52y21 + y53y31 + y54y41");
    assert!(char_minor(0, &t).is_err());
    assert!(char_minor(3, &t).is_err());
}

#[test]
fn leading_characteristic_coefficient_is_the_corner_minor() {
    for n in 3..=6 {
        let t = RootTables::new(n).unwrap();
        for i in 1..=(n - 1) / 2 {
            let tp = char_minor(i, &t).unwrap();
            assert_eq!(tp.top(), n - 2 * i);
            let corner = corner_minor(i, &t).unwrap();
            assert!(tp.p(0).sign_relative_to(&corner).is_some(), "n={} i={}", n, i);
            assert_eq!(tp.p(0).degree(), Some(i as u32));
        }
    }
}

#[test]
fn generator_counts_and_degrees() {
    for n in 3..=7 {
        let t = RootTables::new(n).unwrap();
        for s in Subset::all(&t) {
            let gens = symbolic_generators(&t, &s).unwrap();
            assert_eq!(gens.len(), t.r_zero_count() + 2 * s.len());
            for (_, kind, poly) in &gens {
                if let GeneratorKind::Minor { rows, .. } = kind {
                    assert_eq!(poly.degree(), Some(rows.len() as u32));
                    assert!(rows.len() <= t.k + 1);
                }
                assert!(poly.is_homogeneous());
            }
        }
    }
    let t = RootTables::new(5).unwrap();
    assert_eq!(symbolic_generators(&t, &subset(&t, &[r(1, 4)])).unwrap().len(), 4);
}

#[test]
fn evaluation_examples() {
    let t = RootTables::new(3).unwrap();
    let p = prime(5);
    assert_eq!(evaluate_poly(&MultiPoly::constant(3, BigInt::from(12)), &LinForm::zero(&t), p), 2);
    let chi = NondegChar::standard(&t, p);
    let s = Subset::empty(&t);
    let l = compute_lsets(&t, &s);
    let a = AVector::new(&l, vec![3], p).unwrap();
    let gens = build_generators(&t, p, &chi, &s, &a).unwrap();
    assert_eq!(evaluate_poly(&x(&t, 1, 3), &gens.form, p), 3);

    let t = RootTables::new(4).unwrap();
    let p = prime(5);
    let chi = NondegChar::standard(&t, p);
    let s = Subset::empty(&t);
    let l = compute_lsets(&t, &s);
    for (a1, a2) in [(1u32, 0u32), (2, 3), (4, 4)] {
        // a-parameters in root order: (1,4) then (2,3)
        let a = AVector::new(&l, vec![a1, a2], p).unwrap();
        let gens = build_generators(&t, p, &chi, &s, &a).unwrap();
        assert_eq!(gens.get(r(1, 4)).unwrap().value, a1);
        assert_eq!(gens.get(r(2, 3)).unwrap().value, (5 * 5 - a1 * a2) % 5);
        assert_eq!(render_equation(&t, gens.get(r(1, 4)).unwrap()), alloc::format!("y41 = {}", a1));
    }
}

#[test]
fn n5_all_of_pi() {
    let t = RootTables::new(5).unwrap();
    let p = prime(3);
    let chi = NondegChar::new(&t, p, &[(r(1, 4), 1), (r(2, 3), 2)]).unwrap();
    let s = Subset::full(&t);
    let l = compute_lsets(&t, &s);
    let a = AVector::new(&l, vec![2, 1], p).unwrap();
    let gens = build_generators(&t, p, &chi, &s, &a).unwrap();
    assert_eq!(gens.len(), 6);
    let texts: Vec<String> = gens.generators.iter().map(|g| render_equation(&t, g)).collect();
    assert!(texts.contains(&String::from("y41 = 1")));
    assert!(texts.contains(&String::from("y51 = 0")));
    assert!(texts.contains(&String::from("y52 = 0")));
    // -c1 c2 = -2 = 1 mod 3
    assert!(texts.contains(&String::from("det[[y31,y32],[y41,y42]] = 1")));
}

#[test]
fn orbit_equations_small_cases() {
    let caps = Caps::default();
    for (n, q) in [(3usize, 2u32), (3, 3), (3, 5), (4, 2), (4, 3), (5, 2)] {
        let t = RootTables::new(n).unwrap();
        let p = prime(q);
        let chi = NondegChar::standard(&t, p);
        for cf in canonical_forms(&t, p, &chi) {
            let rep = verify_orbit_equations(&t, p, &chi, &cf.s, &cf.a, &caps).unwrap();
            assert!(!rep.partial);
            assert!(rep.holds(), "n={} q={} {:?}", n, q, rep);
        }
    }
    let t = RootTables::new(3).unwrap();
    let p = prime(2);
    let chi = NondegChar::standard(&t, p);
    let s = Subset::empty(&t);
    let a = AVector::new(&compute_lsets(&t, &s), vec![1], p).unwrap();
    assert_eq!(verify_orbit_equations(&t, p, &chi, &s, &a, &caps).unwrap().variety_points, Some(4));
}

#[test]
fn orbit_equations_partial_past_the_cap() {
    let caps = Caps { group: 100, orbit: 100_000 };
    let t = RootTables::new(4).unwrap();
    let p = prime(3);
    let chi = NondegChar::standard(&t, p);
    let cf = &canonical_forms(&t, p, &chi)[0];
    let rep = verify_orbit_equations(&t, p, &chi, &cf.s, &cf.a, &caps).unwrap();
    assert!(rep.partial);
    assert_eq!(rep.variety_points, None);
    assert!(rep.holds());
}

#[test]
fn lambda_satisfies_its_own_equations() {
    let t = RootTables::new(6).unwrap();
    let p = prime(2);
    let chi = NondegChar::standard(&t, p);
    for cf in canonical_forms(&t, p, &chi) {
        let gens = build_generators(&t, p, &chi, &cf.s, &cf.a).unwrap();
        assert!(gens.contains(&cf.form.coords));
    }
}

#[test]
fn separation_small_cases() {
    let caps = Caps::default();
    for (n, q, forms) in [(3usize, 2u32, 3usize), (3, 3, 5), (4, 2, 6), (4, 3, 15), (5, 2, 9)] {
        let t = RootTables::new(n).unwrap();
        let p = prime(q);
        let chi = NondegChar::standard(&t, p);
        let rep = verify_separation(&t, p, &chi, &caps).unwrap();
        assert_eq!(rep.forms, forms);
        assert!(rep.holds(), "n={} q={}", n, q);
        assert_eq!(rep.pairs.len(), forms * (forms - 1) / 2);
    }
}

#[test]
fn point_equivalence_catches_a_wrong_equation() {
    // n = 3, S = Π: the reduced equation y32 = a is equivalent, y32 = a + 1 is not.
    let t = RootTables::new(3).unwrap();
    let p = prime(3);
    let np = 2;
    let a = MultiPoly::var(np, 0);
    let c = MultiPoly::var(np, 1);
    let y = |i, j| x(&t, j, i);
    let mk = |lhs: MultiPoly, lt: &str, rhs: MultiPoly, rt: &str| Equation {
        lhs_text: String::from(lt),
        rhs_text: String::from(rt),
        lhs,
        rhs,
    };
    let base = |last: Equation| EquationSystem {
        s: Subset::full(&t),
        params: vec![
            Param { name: String::from("a"), root: r(2, 3), nonzero: false },
            Param { name: String::from("c"), root: r(1, 2), nonzero: true },
        ],
        lambda: vec![(r(1, 2), c.clone()), (r(2, 3), a.clone())],
        equations: vec![mk(y(3, 1), "y31", MultiPoly::zero(np), "0"), mk(y(2, 1), "y21", c.clone(), "c"), last],
    };
    let good = base(mk(y(3, 2), "y32", a.clone(), "a"));
    let rep = match_system(&t, p, &good, &Caps::default()).unwrap();
    assert!(rep.holds(), "{:?}", rep);
    assert_eq!(rep.literal(), 2);
    assert_eq!(rep.matches[2].kind, MatchKind::PointEquivalent);
    let bad = base(mk(y(3, 2), "y32", a.add(&MultiPoly::one(np)), "a + 1"));
    assert!(!match_system(&t, p, &bad, &Caps::default()).unwrap().holds());
}

fn family(
    n: usize,
    s: &[Root],
    params: &[(&str, Root, bool)],
    lambda: &[(Root, &str)],
) -> (RootTables, EquationSystem) {
    let t = RootTables::new(n).unwrap();
    let np = params.len();
    let var = |name: &str| MultiPoly::var(np, params.iter().position(|x| x.0 == name).unwrap());
    let sys = EquationSystem {
        s: subset(&t, s),
        params: params.iter().map(|&(name, root, nonzero)| Param { name: String::from(name), root, nonzero }).collect(),
        lambda: lambda.iter().map(|&(root, name)| (root, var(name))).collect(),
        equations: Vec::new(),
    };
    (t, sys)
}

fn texts(d: &DisplaySystem) -> Vec<String> {
    d.equations.iter().map(|e| e.text()).collect()
}

#[test]
fn display_reduces_the_n3_char_coefficient() {
    let (t, sys) =
        family(3, &[r(1, 2)], &[("a", r(2, 3), false), ("c", r(1, 2), true)], &[(r(1, 2), "c"), (r(2, 3), "a")]);
    for q in [2, 3, 5] {
        let d = display_system(&t, prime(q), &sys, &Caps::default()).unwrap();
        assert_eq!(texts(&d), ["y31 = 0", "y21 = c", "y32 = a"]);
        assert_eq!(d.equations[2].form, DisplayForm::Variable);
        assert_eq!(d.exact, Some(true));
    }
}

#[test]
fn display_of_the_n5_families() {
    let c = [("c1", r(1, 4), true), ("c2", r(2, 3), false)];
    let with = |a: [(&'static str, Root, bool); 2]| [a[0], a[1], c[0], c[1]];
    let (t, iii) = family(
        5,
        &[r(2, 3)],
        &with([("a1", r(1, 5), true), ("a2", r(3, 4), false)]),
        &[(r(2, 3), "c2"), (r(3, 4), "a2"), (r(1, 5), "a1")],
    );
    let d = display_system(&t, prime(2), &iii, &Caps::default()).unwrap();
    assert_eq!(
        texts(&d),
        [
            "y51 = a1",
            "det[[y41,y42],[y51,y52]] = 0",
            "det[[y31,y32],[y51,y52]] = -a1c2",
            "det[[y41,y43],[y51,y53]] = -a1a2"
        ]
    );
    assert_eq!(d.exact, Some(true));

    let (t, iv) = family(
        5,
        &[r(1, 4), r(2, 3)],
        &with([("a1", r(3, 5), false), ("a2", r(4, 5), false)]),
        &[(r(1, 4), "c1"), (r(2, 3), "c2"), (r(3, 5), "a1"), (r(4, 5), "a2")],
    );
    let d = display_system(&t, prime(2), &iv, &Caps::default()).unwrap();
    assert_eq!(
        texts(&d),
        ["y51 = 0", "y41 = c1", "y52 = 0", "det[[y31,y32],[y41,y42]] = -c1c2", "y53 = a1", "y53y31 + y54y41 = a2c1"]
    );
    let forms: Vec<DisplayForm> = d.equations.iter().map(|e| e.form).collect();
    assert_eq!(forms[4], DisplayForm::Variable);
    assert_eq!(forms[5], DisplayForm::ZerosDropped);
    assert_eq!(d.exact, Some(true));
}

#[test]
fn display_of_one_orbit() {
    let t = RootTables::new(4).unwrap();
    let p = prime(3);
    let chi = NondegChar::new(&t, p, &[(r(1, 3), 1)]).unwrap();
    let s = subset(&t, &[r(1, 3)]);
    let l = compute_lsets(&t, &s);
    let a = AVector::new(&l, vec![1, 2], p).unwrap();
    let gens = build_generators(&t, p, &chi, &s, &a).unwrap();
    let d = display_equations(&t, &gens, &Caps::default()).unwrap();
    assert_eq!(texts(&d), ["y41 = 0", "y31 = 1", "y42 = 1", "y42y21 + y43y31 = 2"]);
    assert_eq!(d.exact, Some(true));
}

#[test]
fn display_is_exact_where_the_generators_are_not() {
    // n = 5, lambda(E_23) = 0, S = Π.
    let t = RootTables::new(5).unwrap();
    let p = prime(2);
    let chi = NondegChar::new(&t, p, &[(r(1, 4), 1), (r(2, 3), 0)]).unwrap();
    let s = Subset::full(&t);
    let l = compute_lsets(&t, &s);
    let a = AVector::new(&l, vec![1, 1], p).unwrap();
    let rep = verify_orbit_equations(&t, p, &chi, &s, &a, &Caps::default()).unwrap();
    assert!(!rep.holds());
    let gens = build_generators(&t, p, &chi, &s, &a).unwrap();
    let d = display_equations(&t, &gens, &Caps::default()).unwrap();
    assert_eq!(d.exact, Some(true));
    assert!(texts(&d).contains(&String::from("y53 = 1")));
}
