//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use unitri::algebra::NilpotentAlgebra;
use unitri::chars::{
    character_formula_agreement, check_independence_off_pi, inner_product, orbit_character, ConjugacyClasses,
    InducedModule,
};
use unitri::hecke::{all_pairs, hecke_basis, nonvanishing_equivalence, verify_commutativity};
use unitri::ideal::{verify_orbit_equations, verify_separation};
use unitri::unitri::{build_p_s, canonical_forms, is_associative_polarization, orbit_of, NondegChar};
use unitri::{Caps, Group, Root};
use unitri_cli::args::Cli;
use unitri_cli::commands::{counting_identity_table, decomposition, r_plus_minus_s, Case};
use unitri_cli::fixtures::{equation_checks, load_builtin, substituted_check};
use unitri_cli::report::Status;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn case(n: usize, q: u32) -> (Case, Group) {
    let c = Case::new(n, q, None).expect("valid case");
    let g = c.group();
    (c, g)
}

const COUNTS: [(usize, u32, usize); 6] = [(3, 2, 3), (3, 3, 5), (4, 2, 6), (4, 3, 15), (5, 2, 9), (5, 3, 25)];
const SMALL: [(usize, u32); 5] = [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2)];

fn caps() -> Caps {
    Caps::default()
}

fn component_counts() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, q, expected) in COUNTS {
        let (c, g) = case(n, q);
        let start = Instant::now();
        let d = decomposition(&g, &c.chi, &caps(), false).expect("decomposition");
        let took = start.elapsed();
        let limit = if (n, q) == (5, 3) { Duration::from_secs(600) } else { Duration::from_secs(10) };
        ok &= d.component_count == expected && d.multiplicity_free() && took < limit;
        notes.push(format!("n={} q={}: {} in {:.2}s", n, q, d.component_count, took.as_secs_f64()));
    }
    outcome(ok, notes.join(", "))
}

fn dimension_identity() -> Outcome {
    let mut ok = true;
    for (n, q, _) in COUNTS {
        let (c, g) = case(n, q);
        let d = decomposition(&g, &c.chi, &caps(), false).expect("decomposition");
        let t = &c.t;
        let expected = u128::from(q).pow((t.r_plus.len() + t.r_zero.len()) as u32);
        ok &= d.total_dim == expected;
    }
    let start = Instant::now();
    let ns: Vec<usize> = (3..=8).collect();
    let (counting, _) = counting_identity_table(&ns, &[2, 3, 5]);
    let took = start.elapsed();
    outcome(
        ok && counting && took < Duration::from_secs(1),
        format!("counting identity for n <= 8 in {:.3}s", took.as_secs_f64()),
    )
}

fn irreducibility() -> Outcome {
    let start = Instant::now();
    let mut forms = 0;
    let mut ok = true;
    for (n, q) in SMALL {
        let (c, g) = case(n, q);
        for cf in canonical_forms(&c.t, c.p, &c.chi) {
            let orbit = orbit_of(&c.t, c.p, &cf.form, &caps()).expect("orbit");
            let chi = orbit_character(&g, &orbit, &caps()).expect("orbit character");
            ok &= inner_product(&chi, &chi).expect("inner product") == BigRational::from_integer(1.into());
            forms += 1;
        }
    }
    let took = start.elapsed();
    outcome(ok && took < Duration::from_secs(120), format!("{} characters in {:.2}s", forms, took.as_secs_f64()))
}

fn polarization() -> Outcome {
    let start = Instant::now();
    let mut forms = 0;
    let mut ok = true;
    for (n, q, _) in COUNTS {
        let (c, _) = case(n, q);
        let t = &c.t;
        for cf in canonical_forms(t, c.p, &c.chi) {
            let ps = build_p_s(t, &cf.lsets);
            let r = r_plus_minus_s(t, &cf.s);
            let size = orbit_of(t, c.p, &cf.form, &caps()).expect("orbit").size();
            ok &= is_associative_polarization(t, q, &ps, &cf.form).holds()
                && ps.dim() == t.dim() - r as usize
                && size as u128 == u128::from(q).pow(2 * r);
            forms += 1;
        }
    }
    let took = start.elapsed();
    outcome(ok && took < Duration::from_secs(60), format!("{} forms in {:.2}s", forms, took.as_secs_f64()))
}

fn character_formula() -> Outcome {
    let start = Instant::now();
    let mut forms = 0;
    let mut ok = true;
    for (n, q) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
        let (c, g) = case(n, q);
        let classes = ConjugacyClasses::new(&g, &caps()).expect("classes");
        for cf in canonical_forms(&c.t, c.p, &c.chi) {
            ok &= character_formula_agreement(&g, &classes, &cf, &caps()).expect("characters");
            forms += 1;
        }
    }
    let took = start.elapsed();
    outcome(ok && took < Duration::from_secs(300), format!("{} forms in {:.2}s", forms, took.as_secs_f64()))
}

fn defining_ideal() -> Outcome {
    let mut forms = 0;
    let mut ok = true;
    for (n, q, _) in COUNTS {
        let (c, _) = case(n, q);
        let t = &c.t;
        let reports: Vec<bool> = canonical_forms(t, c.p, &c.chi)
            .par_iter()
            .map(|cf| {
                let r = verify_orbit_equations(t, c.p, &c.chi, &cf.s, &cf.a, &caps()).expect("orbit equations");
                r.holds() && !r.partial && r.variety_points.is_some()
            })
            .collect();
        forms += reports.len();
        ok &= reports.iter().all(|&b| b);
    }
    let mut fixture_checks = 0;
    for f in load_builtin() {
        for q in [2, 3] {
            for check in equation_checks(&f, q, &caps()) {
                if check.name.ends_with("equation tokens") || check.name.ends_with("displayed system is exact") {
                    ok &= check.status == Status::Pass;
                    fixture_checks += 1;
                }
            }
            ok &= substituted_check(&f, q, &caps()).status == Status::Pass;
            fixture_checks += 1;
        }
    }
    outcome(ok, format!("{} orbits, {} fixture comparisons", forms, fixture_checks))
}

fn separation() -> Outcome {
    let mut ok = true;
    let mut orbits = 0;
    for (n, q) in SMALL {
        let (c, _) = case(n, q);
        let rep = verify_separation(&c.t, c.p, &c.chi, &caps()).expect("separation");
        ok &= rep.disjoint();
        orbits += rep.forms;
    }
    outcome(ok, format!("{} orbits pairwise disjoint", orbits))
}

fn hecke() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, q, expected) in COUNTS {
        let (c, g) = case(n, q);
        let module = InducedModule::new(&g, &c.chi).expect("module");
        let basis = hecke_basis(&g, &module, &caps()).expect("basis");
        ok &= basis.len() == expected && basis.holds(&c.t);
        if (n, q) != (5, 3) {
            let rep = verify_commutativity(&g, &basis, &all_pairs(basis.len())).expect("commutativity");
            ok &= rep.holds() && !rep.partial();
            notes.push(format!("n={} q={}: {} pairs", n, q, rep.pairs_checked));
        }
    }
    for q in [2, 3, 5] {
        let (c, g) = case(3, q);
        let module = InducedModule::new(&g, &c.chi).expect("module");
        let (total, agree) = nonvanishing_equivalence(&g, &module, &caps()).expect("scan");
        ok &= total == agree && total as u128 == g.order();
    }
    let took = start.elapsed();
    outcome(ok && took < Duration::from_secs(600), format!("{} in {:.2}s", notes.join(", "), took.as_secs_f64()))
}

fn random_char(c: &Case, rng: &mut ChaCha8Rng, on_pi: &[(Root, u32)]) -> NondegChar {
    let mut values = on_pi.to_vec();
    for &r in &c.t.pi0 {
        if !c.t.in_pi(r) {
            values.push((r, rng.random_range(0..c.q())));
        }
    }
    NondegChar::new(&c.t, c.p, &values).expect("nondegenerate")
}

fn independence_off_pi() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ok = true;
    let mut pairs = 0;
    for (n, q) in [(3, 2), (3, 3), (4, 2), (4, 3)] {
        let (c, g) = case(n, q);
        let classes = ConjugacyClasses::new(&g, &caps()).expect("classes");
        for _ in 0..5 {
            let on_pi: Vec<(Root, u32)> =
                c.t.pi
                    .iter()
                    .map(|&r| (r, if c.t.in_pi0(r) { rng.random_range(0..q) } else { rng.random_range(1..q) }))
                    .collect();
            let a = random_char(&c, &mut rng, &on_pi);
            let b = random_char(&c, &mut rng, &on_pi);
            ok &= check_independence_off_pi(&g, &classes, &a, &b).expect("characters");
            pairs += 1;
        }
    }
    outcome(ok, format!("{} pairs", pairs))
}

fn commutative_algebra() -> Outcome {
    let mut ok = true;
    let mut searches = 0;
    for q in [2u32, 3] {
        let alg = NilpotentAlgebra::two_dim_commutative(q);
        for la in 0..q {
            for lb in 0..q {
                let found = alg.search_associative_polarization(&[la, lb]).expect("search");
                ok &= found.is_some() == (lb == 0);
                searches += 1;
            }
        }
    }
    outcome(ok, format!("{} exhaustive searches", searches))
}

fn fast_and_slow() -> Outcome {
    let mut ok = true;
    for (n, q) in [(4, 2), (3, 3)] {
        let (c, g) = case(n, q);
        let d = decomposition(&g, &c.chi, &caps(), true).expect("decomposition");
        ok &= d.paths_agree() && d.entries.iter().all(|e| e.multiplicity_slow.is_some());
    }
    outcome(ok, "n=4 q=2, n=3 q=3")
}

fn determinism() -> Outcome {
    let run = || {
        let cli = Cli::try_parse_from(["unitri", "verify", "--level", "quick"]).expect("arguments");
        unitri_cli::run_rendered(&cli).expect("verify runs")
    };
    let (a, code_a) = run();
    let (b, code_b) = run();
    outcome(a == b && code_a == 0 && code_b == 0, format!("{} bytes, exit {}", a.len(), code_a))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("component counts", component_counts),
        ("dimension identity", dimension_identity),
        ("irreducibility", irreducibility),
        ("associative polarizations", polarization),
        ("character formula", character_formula),
        ("defining ideal", defining_ideal),
        ("orbit separation", separation),
        ("Hecke algebra", hecke),
        ("independence off the simple roots", independence_off_pi),
        ("two-dimensional commutative algebra", commutative_algebra),
        ("fast and slow multiplicities", fast_and_slow),
        ("deterministic reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.ok);
        println!("criterion {:2} {}: {} ({})", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
