//! `verify`: every check over the fixed list of cases, in a fixed order.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use unitri::algebra::NilpotentAlgebra;
use unitri::chars::{
    character_formula_agreement, check_independence_off_pi, inner_product, orbit_character, polarization_independence,
    translated_polarization_check, weight_vector_check, ConjugacyClasses, DecompositionReport, InducedModule,
};
use unitri::hecke::{all_pairs, hecke_basis, hecke_dim_by_cosets, nonvanishing_equivalence, HeckeBasis};
use unitri::ideal::{build_generators, display_equations, verify_generator_set, verify_separation};
use unitri::rootcomb::{compute_lsets, enumerate_lambda_s};
use unitri::unitri::{build_p_s, canonical_forms, is_associative_polarization, orbit_of, CanonicalForm, NondegChar};
use unitri::{Caps, Group, Root, Subset};

use crate::args::{Global, Level, UsageError, VerifyArgs};
use crate::commands::{
    basis_checks, combine, commutativity, commutativity_json, commutativity_status, companion_check,
    counting_identity_table, decomposition, decomposition_checks, decomposition_json, error_status, ideal_checks,
    ideal_data, polarization_json, r_plus_minus_s, root_checks, separation_checks, subset_json, Case, IdealData,
};
use crate::fixtures::{self, equation_checks, substituted_check, x_matrix_check, Fixture};
use crate::report::{error_details, Report, Status};

type Named = (String, Status, Value);

/// What runs for one `(n, q)`.
#[derive(Clone, Copy, Debug)]
pub struct Scope {
    pub n: usize,
    pub q: u32,
    /// Counting checks only: components, dimensions, polarizations, orbit
    /// equations and the Hecke basis size.
    pub counting_only: bool,
    pub independence_pairs: bool,
}

pub fn cases(level: Level) -> Vec<Scope> {
    let full = |n, q| Scope { n, q, counting_only: false, independence_pairs: n <= 4 && q <= 3 };
    let mut out = vec![full(3, 2), full(3, 3), full(3, 5), full(4, 2), full(4, 3), full(5, 2)];
    if level == Level::Full {
        for (n, q) in [(5, 3), (6, 2)] {
            out.push(Scope { n, q, counting_only: true, independence_pairs: false });
        }
    }
    out
}

/// Fixture comparisons: `(fixture n, q)` pairs.
fn fixture_levels(level: Level, n: usize) -> Vec<u32> {
    match (level, n) {
        (_, 3) | (_, 4) => vec![2, 3],
        (Level::Quick, _) => vec![2],
        (Level::Full, _) => vec![2, 3],
    }
}

struct CaseData {
    scope: Scope,
    case: Case,
    group: Group,
    forms: Vec<CanonicalForm>,
    classes: Option<ConjugacyClasses>,
    module: Option<InducedModule>,
}

fn build_case(scope: Scope, caps: &Caps) -> Result<CaseData, String> {
    let case = Case::new(scope.n, scope.q, None).map_err(|e| e.0)?;
    let group = case.group();
    let forms = canonical_forms(&case.t, case.p, &case.chi);
    let classes =
        if scope.counting_only { None } else { Some(ConjugacyClasses::new(&group, caps).map_err(|e| e.to_string())?) };
    let module = InducedModule::new(&group, &case.chi).ok();
    Ok(CaseData { scope, case, group, forms, classes, module })
}

fn seed_for(seed: u64, scope: &Scope, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((scope.n as u64) << 40) ^ (u64::from(scope.q) << 20) ^ salt)
}

/// Runs `stage` over every case in parallel and appends its checks in case
/// order.
fn stage<F>(report: &mut Report, name: &str, data: &[CaseData], f: F)
where
    F: Fn(&CaseData) -> Vec<Named> + Sync,
{
    let start = Instant::now();
    let out: Vec<Vec<Named>> = data.par_iter().map(&f).collect();
    for (d, checks) in data.iter().zip(out) {
        let prefix = format!("{}: ", d.case.label());
        for (name, status, details) in checks {
            report.check(format!("{}{}", prefix, name), status, details);
        }
    }
    report.record_time(name, start.elapsed().as_secs_f64());
}

fn one(name: &str, r: (Status, Value)) -> Vec<Named> {
    vec![(name.to_string(), r.0, r.1)]
}

fn polarization_check(d: &CaseData, caps: &Caps) -> (Status, Value) {
    let t = &d.case.t;
    let mut bad = Vec::new();
    for cf in &d.forms {
        let ps = build_p_s(t, &cf.lsets);
        let verdict = is_associative_polarization(t, d.case.q(), &ps, &cf.form);
        let r = r_plus_minus_s(t, &cf.s);
        let size = match orbit_of(t, d.case.p, &cf.form, caps) {
            Ok(o) => o.size(),
            Err(e) => return (error_status(&e), error_details(&e)),
        };
        let dim_ok = ps.dim() == t.dim() - r as usize;
        let size_ok = size as u128 == u128::from(d.case.q()).pow(2 * r);
        if !(verdict.holds() && dim_ok && size_ok) {
            bad.push(json!({ "S": subset_json(t, &cf.s), "a": cf.a.values, "verdict": polarization_json(&verdict), "dim": ps.dim(), "orbit_size": size }));
        }
    }
    (Status::of(bad.is_empty()), json!({ "forms": d.forms.len(), "failures": bad }))
}

fn character_checks(d: &CaseData, caps: &Caps, seed: u64) -> Vec<Named> {
    let (Some(classes), false) = (&d.classes, d.scope.counting_only) else {
        return Vec::new();
    };
    let t = &d.case.t;
    let g = &d.group;
    let mut rng = seed_for(seed, &d.scope, 0x9e37);
    let mut formula = Vec::new();
    let mut irreducible = Vec::new();
    let mut dims = Vec::new();
    let mut weight = Vec::new();
    let mut other = Vec::new();
    let mut translated = Vec::new();
    let mut other_found = 0usize;
    for cf in &d.forms {
        formula.push(match character_formula_agreement(g, classes, cf, caps) {
            Ok(true) => Status::Pass,
            Ok(false) => Status::Fail,
            Err(e) => error_status(&e),
        });
        match orbit_of(t, d.case.p, &cf.form, caps).and_then(|o| orbit_character(g, &o, caps)) {
            Ok(chi) => {
                let norm = inner_product(&chi, &chi);
                irreducible.push(Status::of(norm.as_ref().is_ok_and(|n| n.is_integer() && n.to_integer() == 1.into())));
                let expected = num_bigint::BigInt::from(u64::from(d.case.q()).pow(r_plus_minus_s(t, &cf.s)));
                dims.push(Status::of(chi.degree() == Some(expected)));
            }
            Err(e) => {
                irreducible.push(error_status(&e));
                dims.push(error_status(&e));
            }
        }
        weight.push(match weight_vector_check(g, &d.case.chi, cf, caps) {
            Ok(ok) => Status::of(ok),
            Err(e) => error_status(&e),
        });
        other.push(match polarization_independence(g, classes, cf, caps) {
            Ok(Some(ok)) => {
                other_found += 1;
                Status::of(ok)
            }
            Ok(None) => Status::Pass,
            Err(e) => error_status(&e),
        });
        let idx = rng.random_range(0..g.order() as usize);
        let elem = g.element(idx);
        translated.push(match translated_polarization_check(g, classes, cf, &elem, caps) {
            Ok(ok) => Status::of(ok),
            Err(e) => error_status(&e),
        });
    }
    let forms = d.forms.len();
    vec![
        ("character formula".into(), combine(formula), json!({ "forms": forms })),
        ("irreducibility".into(), combine(irreducible), json!({ "forms": forms })),
        ("character degree".into(), combine(dims), json!({ "forms": forms })),
        ("weight vector".into(), combine(weight), json!({ "forms": forms })),
        (
            "induction from another polarization".into(),
            combine(other),
            json!({ "forms": forms, "other_polarizations_found": other_found }),
        ),
        ("induction from a translated polarization".into(), combine(translated), json!({ "forms": forms })),
    ]
}

/// Random pairs of characters agreeing on `Π`.
fn independence_check(d: &CaseData, seed: u64) -> (Status, Value) {
    let Some(classes) = &d.classes else {
        return (Status::Partial, Value::Null);
    };
    let t = &d.case.t;
    let p = d.case.p;
    let q = d.case.q();
    let mut rng = seed_for(seed, &d.scope, 0x51ed);
    let mut pairs = Vec::new();
    let mut ok = true;
    let random_char = |rng: &mut ChaCha8Rng, on_pi: &[(Root, u32)]| -> NondegChar {
        let mut values: Vec<(Root, u32)> = on_pi.to_vec();
        for &r in &t.pi0 {
            if !t.in_pi(r) {
                values.push((r, rng.random_range(0..q)));
            }
        }
        NondegChar::new(t, p, &values).expect("nonzero on Π")
    };
    for _ in 0..5 {
        let on_pi: Vec<(Root, u32)> =
            t.pi.iter()
                .map(|&r| (r, if t.in_pi0(r) { rng.random_range(0..q) } else { rng.random_range(1..q) }))
                .collect();
        let a = random_char(&mut rng, &on_pi);
        let b = random_char(&mut rng, &on_pi);
        let equal = check_independence_off_pi(&d.group, classes, &a, &b);
        ok &= matches!(equal, Ok(true));
        pairs.push(json!({
            "lambda": a.form().coords,
            "lambda_prime": b.form().coords,
            "equal": equal.as_ref().ok(),
        }));
    }
    (Status::of(ok), json!({ "pairs": pairs }))
}

fn hecke_checks(d: &CaseData, caps: &Caps) -> (Option<HeckeBasis>, Vec<Named>) {
    let Some(module) = &d.module else {
        return (None, one("induced module", (Status::Fail, Value::Null)));
    };
    let mut out = Vec::new();
    if !d.scope.counting_only {
        let scan = hecke_dim_by_cosets(&d.group, module, caps);
        let expected = unitri::hecke::expected_hecke_dim(&d.case.t, d.case.q());
        out.push((
            "compatible double cosets".to_string(),
            match &scan {
                Ok(s) => Status::of(s.compatible as u128 == expected),
                Err(e) => error_status(e),
            },
            match scan {
                Ok(s) => json!({ "cosets": s.cosets, "compatible": s.compatible, "expected": expected.to_string() }),
                Err(e) => error_details(&e),
            },
        ));
        let nv = nonvanishing_equivalence(&d.group, module, caps);
        out.push((
            "nonvanishing iff compatible".to_string(),
            match &nv {
                Ok((total, agree)) => Status::of(total == agree),
                Err(e) => error_status(e),
            },
            match nv {
                Ok((total, agree)) => json!({ "elements": total, "agree": agree }),
                Err(e) => error_details(&e),
            },
        ));
    }
    match hecke_basis(&d.group, module, caps) {
        Ok(b) => (Some(b), out),
        Err(e) => {
            out.push(("Hecke basis".to_string(), error_status(&e), error_details(&e)));
            (None, out)
        }
    }
}

/// `lambda(E23) = 0` at `n = 5`: the generator variety of `S = Π` has `q`
/// times the orbit's points, while the displayed equations are exact.
fn vanishing_value_checks(q: u32, caps: &Caps) -> Vec<Named> {
    let case = match Case::new(5, q, Some("1,4=1;2,3=0")) {
        Ok(c) => c,
        Err(e) => return one("lambda(E23)=0", (Status::Fail, json!({ "error": e.0 }))),
    };
    let t = &case.t;
    let forms = canonical_forms(t, case.p, &case.chi);
    let results: Vec<_> = forms
        .par_iter()
        .map(|cf| -> unitri::Result<(Option<u64>, usize, Option<bool>)> {
            let gens = build_generators(t, case.p, &case.chi, &cf.s, &cf.a)?;
            let rep = verify_generator_set(t, &gens, caps)?;
            let d = display_equations(t, &gens, caps)?;
            Ok((rep.variety_points, rep.orbit_size, d.exact))
        })
        .collect();
    let mut larger = Vec::new();
    let mut exact = Vec::new();
    for (cf, r) in forms.iter().zip(&results) {
        match r {
            Ok((points, size, ex)) => {
                if *points != Some(*size as u64) {
                    larger.push(json!({ "S": subset_json(t, &cf.s), "a": cf.a.values, "variety_points": points, "orbit_size": size }));
                }
                exact.push(match ex {
                    Some(true) => Status::Pass,
                    Some(false) => Status::Fail,
                    None => Status::Partial,
                });
            }
            Err(e) => exact.push(error_status(e)),
        }
    }
    let label = format!("n=5 q={} lambda(E23)=0: ", q);
    vec![
        (format!("{}displayed equations cut out each orbit", label), combine(exact), json!({ "forms": forms.len() })),
        (
            // A known deviation, reported as partial: the raw generators do
            // not cut out these orbits.
            format!("{}generator varieties", label),
            Status::Partial,
            json!({ "forms_with_extra_points": larger }),
        ),
    ]
}

/// The two-dimensional commutative algebra has no associative polarization
/// when `lambda(E13) != 0`, and has one when `lambda(E13) = 0`.
fn commutative_algebra_check() -> (Status, Value) {
    let mut rows = Vec::new();
    let mut ok = true;
    for q in [2u32, 3] {
        let alg = NilpotentAlgebra::two_dim_commutative(q);
        for la in 0..q {
            for lb in 0..q {
                let found = alg.search_associative_polarization(&[la, lb]);
                let expect_found = lb == 0;
                let good = matches!(&found, Ok(f) if f.is_some() == expect_found);
                ok &= good;
                rows.push(json!({ "q": q, "lambda": [la, lb], "found": found.ok().map(|f| f.is_some()) }));
            }
        }
    }
    (Status::of(ok), json!({ "searches": rows }))
}

fn fixture_checks(report: &mut Report, fixtures: &[Fixture], level: Level, caps: &Caps) {
    let start = Instant::now();
    let jobs: Vec<(&Fixture, u32)> =
        fixtures.iter().flat_map(|f| fixture_levels(level, f.n).into_iter().map(move |q| (f, q))).collect();
    let out: Vec<Vec<fixtures::FixtureCheck>> = jobs
        .par_iter()
        .map(|&(f, q)| {
            let mut v = equation_checks(f, q, caps);
            v.push(substituted_check(f, q, caps));
            v.push(x_matrix_check(f, q, caps));
            v
        })
        .collect();
    for c in out.into_iter().flatten() {
        report.check(c.name, c.status, c.details);
    }
    report.record_time("fixtures", start.elapsed().as_secs_f64());
}

pub fn cmd_verify(v: &VerifyArgs, g: &Global) -> Result<Report, UsageError> {
    let fixtures = match &v.fixtures {
        None => fixtures::load_builtin(),
        Some(dir) => fixtures::load_dir(dir).map_err(UsageError)?,
    };
    let level = v.level;
    let caps = g.caps;
    let params = json!({
        "level": match level { Level::Quick => "quick", Level::Full => "full" },
        "fixtures": v.fixtures.as_ref().map_or("built-in".to_string(), |p| p.display().to_string()),
        "seed": g.seed,
    });
    let mut report = Report::new("verify", params, g.timing);

    let start = Instant::now();
    let built: Vec<Result<CaseData, String>> = cases(level).into_par_iter().map(|s| build_case(s, &caps)).collect();
    report.record_time("setup", start.elapsed().as_secs_f64());
    let mut data = Vec::new();
    for (scope, b) in cases(level).iter().zip(built) {
        match b {
            Ok(d) => data.push(d),
            Err(e) => report.check(format!("n={} q={}: setup", scope.n, scope.q), Status::Fail, json!({ "error": e })),
        }
    }

    stage(&mut report, "roots", &data, |d| {
        let mut r = Report::new("", Value::Null, false);
        root_checks(&mut r, "", &d.case.t);
        r.checks.into_iter().map(|c| (c.name, c.status, c.details)).collect()
    });
    stage(&mut report, "companions", &data, |d| {
        let subsets: Vec<Subset> = Subset::all(&d.case.t).collect();
        let counts_ok = subsets.iter().all(|s| {
            let l = compute_lsets(&d.case.t, s);
            enumerate_lambda_s(&l, d.case.p).len() as u128
                == crate::commands::expected_lambda_s(&d.case.t, d.case.q(), s)
        });
        vec![
            ("companion roots".into(), companion_check(&d.case.t, &subsets).0, json!({ "subsets": subsets.len() })),
            ("parameter counts".into(), Status::of(counts_ok), json!({ "subsets": subsets.len() })),
        ]
    });
    stage(&mut report, "polarization", &data, |d| one("associative polarizations", polarization_check(d, &caps)));
    stage(&mut report, "characters", &data, |d| character_checks(d, &caps, g.seed));

    let start = Instant::now();
    let ideals: Vec<IdealData> = data.par_iter().map(|d| ideal_data(&d.case, &caps)).collect();
    for (d, i) in data.iter().zip(&ideals) {
        ideal_checks(&mut report, &format!("{}: ", d.case.label()), &d.case, i);
    }
    report.record_time("ideal", start.elapsed().as_secs_f64());
    let start = Instant::now();
    let separations: Vec<_> = data
        .par_iter()
        .map(|d| (!d.scope.counting_only).then(|| verify_separation(&d.case.t, d.case.p, &d.case.chi, &caps)))
        .collect();
    for (d, s) in data.iter().zip(&separations) {
        if let Some(s) = s {
            separation_checks(&mut report, &format!("{}: ", d.case.label()), s);
        }
    }
    report.record_time("separation", start.elapsed().as_secs_f64());

    let start = Instant::now();
    let decs: Vec<unitri::Result<DecompositionReport>> =
        data.par_iter().map(|d| decomposition(&d.group, &d.case.chi, &caps, !d.scope.counting_only)).collect();
    let mut summary = Vec::new();
    for (d, dec) in data.iter().zip(&decs) {
        let prefix = format!("{}: ", d.case.label());
        match dec {
            Ok(r) => {
                decomposition_checks(&mut report, &prefix, r, !d.scope.counting_only);
                summary.push(json!({
                    "n": d.scope.n,
                    "q": d.scope.q,
                    "components": r.component_count,
                    "total_dim": r.total_dim.to_string(),
                    "decomposition": decomposition_json(&d.case.t, r),
                }));
            }
            Err(e) => report.check(format!("{}decomposition", prefix), error_status(e), error_details(e)),
        }
    }
    report.record_time("decomposition", start.elapsed().as_secs_f64());

    stage(&mut report, "independence", &data, |d| {
        if d.scope.independence_pairs {
            one("characters agreeing on Π induce equal characters", independence_check(d, g.seed))
        } else {
            Vec::new()
        }
    });
    let start = Instant::now();
    let (st, det) = commutative_algebra_check();
    report.check("two-dimensional commutative algebra: polarization search", st, det);
    report.record_time("commutative algebra", start.elapsed().as_secs_f64());

    let start = Instant::now();
    let hecke: Vec<(Option<HeckeBasis>, Vec<Named>)> = data.par_iter().map(|d| hecke_checks(d, &caps)).collect();
    for (d, (basis, checks)) in data.iter().zip(&hecke) {
        let prefix = format!("{}: ", d.case.label());
        for (name, status, details) in checks {
            report.check(format!("{}{}", prefix, name), *status, details.clone());
        }
        if let Some(b) = basis {
            basis_checks(&mut report, &prefix, &d.case.t, b);
        }
    }
    report.record_time("hecke basis", start.elapsed().as_secs_f64());
    let start = Instant::now();
    for (d, (basis, _)) in data.iter().zip(&hecke) {
        if let (Some(b), false) = (basis, d.scope.counting_only) {
            let pairs = all_pairs(b.len());
            let (status, details) = match commutativity(&d.group, b, &pairs) {
                Ok(r) => (commutativity_status(&r), commutativity_json(&r)),
                Err(e) => (error_status(&e), error_details(&e)),
            };
            report.check(format!("{}: commutativity", d.case.label()), status, details);
        }
    }
    report.record_time("commutativity", start.elapsed().as_secs_f64());

    fixture_checks(&mut report, &fixtures, level, &caps);

    let start = Instant::now();
    let ns: Vec<usize> = (3..=8).collect();
    let (ok, table) = counting_identity_table(&ns, &[2, 3, 5]);
    report.check("counting identity for 3 <= n <= 8", Status::of(ok), table);
    report.record_time("counting identity", start.elapsed().as_secs_f64());

    let start = Instant::now();
    let qs: &[u32] = if level == Level::Full { &[2, 3] } else { &[2] };
    for &q in qs {
        for (name, status, details) in vanishing_value_checks(q, &caps) {
            report.check(name, status, details);
        }
    }
    report.record_time("lambda(E23)=0", start.elapsed().as_secs_f64());

    report.set("cases", Value::Array(summary));
    report.set("check_count", json!(report.checks.len()));
    let failed: Vec<&str> =
        report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect();
    let failed = json!(failed);
    report.set("failed", failed);
    let mut md = String::from("| case | components | total dim |\n|---|---|---|\n");
    if let Value::Array(rows) = &report.results["cases"] {
        for r in rows {
            md.push_str(&format!(
                "| n={} q={} | {} | {} |\n",
                r["n"],
                r["q"],
                r["components"],
                r["total_dim"].as_str().unwrap_or("")
            ));
        }
    }
    report.markdown = md;
    Ok(report)
}
