//! The subcommands other than `verify`, and the computations they share
//! with the verification suite.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use unitri::chars::{component_entry, inner_product, ConjugacyClasses, DecompositionReport, InducedModule};
use unitri::hecke::{
    all_pairs, hecke_basis, hecke_dim_by_cosets, nonvanishing_equivalence, verify_commutativity, CommutativityReport,
    HeckeBasis,
};
use unitri::ideal::{
    build_generators, display_equations, render_equation, verify_generator_set, verify_separation, DisplaySystem,
    GeneratorSet, OrbitEquationReport, SeparationReport,
};
use unitri::rootcomb::{companion_pairs, companion_sums_avoid_s, compute_lsets, enumerate_lambda_s, AVector, LSets};
use unitri::unitri::{
    build_lambda_sa, build_p_s, canonical_forms, is_associative_polarization, orbit_of, stabilizer_dim, CanonicalForm,
    NondegChar, PolarizationVerdict, Subalgebra,
};
use unitri::{Caps, Error, Group, GroupElem, LinForm, Prime, Root, RootTables, Subset};

use crate::args::{self, CaseArgs, DecomposeArgs, Global, HeckeArgs, LsetsArgs, OrbitArgs, UsageError};
use crate::report::{error_details, root_order, roots_json, Report, Status};

/// `n`, `q` and a nondegenerate character.
pub struct Case {
    pub t: RootTables,
    pub p: Prime,
    pub chi: NondegChar,
}

impl Case {
    pub fn new(n: usize, q: u32, lambda: Option<&str>) -> Result<Self, UsageError> {
        let t = args::tables(n)?;
        let p = args::prime(q)?;
        let chi = args::parse_lambda(&t, p, lambda)?;
        Ok(Case { t, p, chi })
    }

    pub fn from_args(c: &CaseArgs) -> Result<Self, UsageError> {
        Self::new(c.n, c.q, c.lambda.as_deref())
    }

    pub fn n(&self) -> usize {
        self.t.n
    }

    pub fn q(&self) -> u32 {
        self.p.get()
    }

    pub fn label(&self) -> String {
        format!("n={} q={}", self.n(), self.q())
    }

    /// The character on `Π0 ∪ Π`, keyed `i,j`.
    pub fn lambda_json(&self) -> Value {
        let mut roots: Vec<Root> = self.t.pi0.iter().chain(&self.t.pi).copied().collect();
        roots.sort();
        roots.dedup();
        let m: Map<String, Value> =
            roots.iter().map(|&r| (format!("{},{}", r.i, r.j), json!(self.chi.value(&self.t, r)))).collect();
        Value::Object(m)
    }

    pub fn params(&self) -> Value {
        json!({ "n": self.n(), "q": self.q(), "lambda": self.lambda_json(), "root_order": root_order(&self.t) })
    }

    pub fn group(&self) -> Group {
        Group::new(self.t.clone(), self.p)
    }
}

pub fn subset_json(t: &RootTables, s: &Subset) -> Value {
    roots_json(&s.roots(t))
}

pub fn subset_text(t: &RootTables, s: &Subset) -> String {
    let roots: Vec<String> = s.roots(t).iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", roots.join(", "))
}

pub fn a_json(a: &AVector) -> Value {
    json!({ "roots": roots_json(&a.roots), "values": a.values })
}

fn a_text(a: &AVector) -> String {
    let parts: Vec<String> = a.roots.iter().zip(&a.values).map(|(r, v)| format!("{}={}", r, v)).collect();
    format!("({})", parts.join(", "))
}

pub fn x_name(r: &Root) -> String {
    format!("x{}{}", r.i, r.j)
}

/// `Partial` for a resource cap, `Fail` for anything else.
pub fn error_status(e: &Error) -> Status {
    match e {
        Error::CapExceeded { .. } => Status::Partial,
        _ => Status::Fail,
    }
}

pub fn from_result(r: unitri::Result<(Status, Value)>) -> (Status, Value) {
    r.unwrap_or_else(|e| (error_status(&e), error_details(&e)))
}

/// Worst status first: fail, partial, pass.
pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
    let mut out = Status::Pass;
    for s in statuses {
        match s {
            Status::Fail => return Status::Fail,
            Status::Partial => out = Status::Partial,
            Status::Pass => {}
        }
    }
    out
}

pub fn r_plus_minus_s(t: &RootTables, s: &Subset) -> u32 {
    (t.r_plus_count() - s.len()) as u32
}

// ---- roots -------------------------------------------------------------

pub fn root_checks(report: &mut Report, prefix: &str, t: &RootTables) {
    let n = t.n;
    let total = n * (n - 1) / 2;
    report.run(&format!("{}root partition", prefix), || {
        let sizes = (t.r_plus.len(), t.r_zero.len(), t.r_minus.len());
        let ok = sizes.0 + sizes.1 + sizes.2 == total
            && sizes.1 == t.k + t.eps
            && sizes.0 == sizes.2
            && t.r_plus.iter().all(|r| r.i + r.j < n + 1)
            && t.r_zero.iter().all(|r| r.i + r.j == n + 1)
            && t.r_minus.iter().all(|r| r.i + r.j > n + 1);
        (Status::of(ok), json!({ "r_plus": sizes.0, "r_zero": sizes.1, "r_minus": sizes.2, "total": total }))
    });
    report.run(&format!("{}coordinate order", prefix), || {
        let sorted = t.roots.windows(2).all(|w| w[0] < w[1]);
        let indexed = t.roots.iter().enumerate().all(|(idx, &r)| t.index(r) == idx);
        let first = t.roots.first() == Some(&Root::new(1, n));
        (
            Status::of(sorted && indexed && first && t.roots.len() == total),
            json!({ "first": t.roots.first().map(|r| r.to_string()) }),
        )
    });
    report.run(&format!("{}simple roots", prefix), || {
        let pi0 = t.pi0.iter().enumerate().all(|(idx, r)| *r == Root::new(idx + 1, idx + 2)) && t.pi0.len() == t.k;
        let pi = t.pi.len() == t.k
            && t.pi.iter().enumerate().all(|(idx, r)| *r == Root::new(idx + 1, n - idx - 1))
            && t.pi.iter().all(|r| t.r_plus.contains(r));
        (Status::of(pi0 && pi), json!({ "pi0": roots_json(&t.pi0), "pi": roots_json(&t.pi) }))
    });
}

pub fn cmd_roots(c: &CaseArgs, g: &Global) -> Result<Report, UsageError> {
    let case = Case::from_args(c)?;
    let t = &case.t;
    let mut report = Report::new("roots", case.params(), g.timing);
    report.set("n", json!(t.n));
    report.set("k", json!(t.k));
    report.set("eps", json!(t.eps));
    report.set("dim", json!(t.dim()));
    report.set("order", root_order(t));
    report.set("r_plus", roots_json(&t.r_plus));
    report.set("r_zero", roots_json(&t.r_zero));
    report.set("r_minus", roots_json(&t.r_minus));
    report.set("pi0", roots_json(&t.pi0));
    report.set("pi", roots_json(&t.pi));
    let names: Vec<String> = t.roots.iter().map(|r| r.to_string()).collect();
    report.markdown = format!(
        "Coordinate order: {}\n\n- R+: {} roots\n- R0: {} roots\n- R-: {} roots\n- Π0: {}\n- Π: {}\n",
        names.join(" "),
        t.r_plus.len(),
        t.r_zero.len(),
        t.r_minus.len(),
        t.pi0.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "),
        t.pi.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "),
    );
    root_checks(&mut report, "", t);
    Ok(report)
}

// ---- lsets -------------------------------------------------------------

pub fn lsets_json(t: &RootTables, l: &LSets) -> Value {
    json!({
        "plus": roots_json(&l.plus),
        "zero": roots_json(&l.zero),
        "zerozero": roots_json(&l.zerozero),
        "minus": roots_json(&l.minus),
        "r_s_size": l.r_s(t).len(),
    })
}

/// `q^(s+ε) (q-1)^(k-s)`.
pub fn expected_lambda_s(t: &RootTables, q: u32, s: &Subset) -> u128 {
    let q = u128::from(q);
    q.pow((s.len() + t.eps) as u32) * (q - 1).pow((t.k - s.len()) as u32)
}

/// Companions `β(α)` for `α ∈ R+ \ S`, and the sums `α_i + β_j`.
pub fn companion_check(t: &RootTables, subsets: &[Subset]) -> (Status, Value) {
    let mut details = Vec::new();
    let mut ok = true;
    for s in subsets {
        let l = compute_lsets(t, s);
        let (pairs, sums) = match (companion_pairs(t, s, &l), companion_sums_avoid_s(t, s, &l)) {
            (Ok(p), Ok(x)) => (p, x),
            (Err(e), _) | (_, Err(e)) => return (Status::Fail, error_details(&e)),
        };
        let targets: Vec<Root> = s.roots(t).into_iter().chain(l.zero.iter().copied()).collect();
        let r_s = l.r_s(t);
        let each_ok = pairs.len() == t.r_plus.len() - s.len()
            && pairs.iter().all(|(a, b)| !r_s.contains(b) && a.j == b.i && targets.contains(&Root::new(a.i, b.j)));
        ok &= sums && each_ok;
        details.push(json!({
            "S": subset_json(t, s),
            "pairs": pairs.iter().map(|(a, b)| json!([[a.i, a.j], [b.i, b.j]])).collect::<Vec<_>>(),
            "sums_allowed": sums,
        }));
    }
    (Status::of(ok), Value::Array(details))
}

pub fn cmd_lsets(a: &LsetsArgs, g: &Global) -> Result<Report, UsageError> {
    let case = Case::from_args(&a.case)?;
    let t = &case.t;
    let subsets: Vec<Subset> = match &a.subset {
        Some(text) => vec![args::parse_subset(t, text)?],
        None => Subset::all(t).collect(),
    };
    let mut params = case.params();
    params["subset"] = json!(a.subset);
    let mut report = Report::new("lsets", params, g.timing);
    let mut md = String::from("| S | L+ | L0 | L00 | L- | p_S | |Λ_S| |\n|---|---|---|---|---|---|---|\n");
    let mut rows = Vec::new();
    let mut counts_ok = true;
    let mut dims_ok = true;
    for s in &subsets {
        let l = compute_lsets(t, s);
        let ps = build_p_s(t, &l);
        let count = enumerate_lambda_s(&l, case.p).len() as u128;
        let expected = expected_lambda_s(t, case.q(), s);
        counts_ok &= count == expected;
        dims_ok &= ps.dim() == t.dim() - (t.r_plus_count() - s.len());
        let show = |v: &[Root]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        md.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            subset_text(t, s),
            show(&l.plus),
            show(&l.zero),
            show(&l.zerozero),
            show(&l.minus),
            ps.roots.iter().map(x_name).collect::<Vec<_>>().join(" "),
            count
        ));
        rows.push(json!({
            "S": subset_json(t, s),
            "lsets": lsets_json(t, &l),
            "p_s": ps.roots.iter().map(x_name).collect::<Vec<_>>(),
            "p_s_dim": ps.dim(),
            "lambda_s_size": count.to_string(),
            "lambda_s_expected": expected.to_string(),
        }));
    }
    report.set("subsets", Value::Array(rows));
    report.markdown = md;
    root_checks(&mut report, "", t);
    report.run("companion roots", || companion_check(t, &subsets));
    report.run("parameter counts", || (Status::of(counts_ok), Value::Null));
    report.run("p_S dimension", || (Status::of(dims_ok), Value::Null));
    Ok(report)
}

// ---- decompose ---------------------------------------------------------

/// The decomposition with the components computed in parallel. The full
/// character of `V(lambda)` is formed when the group fits in the caps, for
/// the norm and, with `slow`, the inner-product multiplicities.
pub fn decomposition(group: &Group, chi: &NondegChar, caps: &Caps, slow: bool) -> unitri::Result<DecompositionReport> {
    let module = InducedModule::new(group, chi)?;
    let forms = canonical_forms(group.tables(), group.prime(), chi);
    let chi_v = if group.order() <= caps.group {
        let classes = ConjugacyClasses::new(group, caps)?;
        Some(module.character(group, &classes)?)
    } else {
        None
    };
    let slow_ref = if slow { chi_v.as_ref() } else { None };
    let entries = forms
        .par_iter()
        .map(|cf| component_entry(group, &module, cf, caps, slow_ref))
        .collect::<unitri::Result<Vec<_>>>()?;
    let norm = match &chi_v {
        Some(v) => Some(inner_product(v, v)?),
        None => None,
    };
    Ok(DecompositionReport::assemble(group, entries, norm))
}

pub fn decomposition_json(t: &RootTables, d: &DecompositionReport) -> Value {
    json!({
        "components": d.entries.iter().map(|e| json!({
            "S": subset_json(t, &e.s),
            "a": a_json(&e.a),
            "dim": e.dimension,
            "multiplicity": e.multiplicity.to_string(),
            "multiplicity_slow": e.multiplicity_slow.as_ref().map(|m| m.to_string()),
            "orbit_size": e.orbit_size,
        })).collect::<Vec<_>>(),
        "component_count": d.component_count,
        "expected_count": d.expected_count.to_string(),
        "total_dim": d.total_dim.to_string(),
        "expected_total_dim": d.expected_total_dim.to_string(),
        "norm": d.norm.as_ref().map(|n| n.to_string()),
    })
}

pub fn decomposition_checks(report: &mut Report, prefix: &str, d: &DecompositionReport, slow: bool) {
    report.check(
        format!("{}multiplicity-free", prefix),
        Status::of(d.multiplicity_free()),
        json!({ "multiplicities": d.entries.iter().map(|e| e.multiplicity.to_string()).collect::<Vec<_>>() }),
    );
    report.check(
        format!("{}total dimension", prefix),
        Status::of(d.total_dim == d.expected_total_dim),
        json!({ "total": d.total_dim.to_string(), "expected": d.expected_total_dim.to_string() }),
    );
    report.check(
        format!("{}component count", prefix),
        Status::of(d.component_count as u128 == d.expected_count),
        json!({ "count": d.component_count, "expected": d.expected_count.to_string() }),
    );
    let norm_status = match &d.norm {
        None => Status::Partial,
        Some(n) => Status::of(*n == num_rational::BigRational::from_integer(BigInt::from(d.component_count))),
    };
    report.check(
        format!("{}norm of the character", prefix),
        norm_status,
        json!({ "norm": d.norm.as_ref().map(|n| n.to_string()) }),
    );
    if slow {
        let ran = d.entries.iter().all(|e| e.multiplicity_slow.is_some());
        let status = if !d.paths_agree() {
            Status::Fail
        } else if ran {
            Status::Pass
        } else {
            Status::Partial
        };
        report.check(
            format!("{}fast and slow multiplicities agree", prefix),
            status,
            json!({ "components": d.entries.len() }),
        );
    }
}

fn decomposition_markdown(t: &RootTables, d: &DecompositionReport) -> String {
    let mut md = String::from("| S | a | dim | multiplicity |\n|---|---|---|---|\n");
    for e in &d.entries {
        md.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            subset_text(t, &e.s),
            a_text(&e.a),
            e.dimension,
            e.multiplicity
        ));
    }
    md.push_str(&format!(
        "\nComponents: {} (expected {})\n\nTotal dimension: {} (expected {})\n",
        d.component_count, d.expected_count, d.total_dim, d.expected_total_dim
    ));
    md
}

pub fn cmd_decompose(a: &DecomposeArgs, g: &Global) -> Result<Report, UsageError> {
    let case = Case::from_args(&a.case)?;
    let mut params = case.params();
    params["slow"] = json!(a.slow);
    let mut report = Report::new("decompose", params, g.timing);
    let group = case.group();
    let mut result = None;
    report.run("decomposition", || match decomposition(&group, &case.chi, &g.caps, a.slow) {
        Ok(d) => {
            let details = json!({ "components": d.component_count });
            result = Some(d);
            (Status::Pass, details)
        }
        Err(e) => (error_status(&e), error_details(&e)),
    });
    if let Some(d) = result {
        report.set("decomposition", decomposition_json(&case.t, &d));
        report.markdown = decomposition_markdown(&case.t, &d);
        decomposition_checks(&mut report, "", &d, a.slow);
    }
    Ok(report)
}

// ---- orbit -------------------------------------------------------------

pub struct OrbitData {
    pub cf: CanonicalForm,
    pub orbit_size: usize,
    pub expected_size: u128,
    pub ps: Subalgebra,
    pub polarization: PolarizationVerdict,
    pub stabilizer: usize,
    pub gens: GeneratorSet,
    pub equations: OrbitEquationReport,
    pub display: DisplaySystem,
}

pub fn orbit_data(case: &Case, s: &Subset, a: &AVector, caps: &Caps) -> unitri::Result<OrbitData> {
    let t = &case.t;
    let lsets = compute_lsets(t, s);
    let form = build_lambda_sa(t, case.p, &case.chi, s, &lsets, a)?;
    let orbit = orbit_of(t, case.p, &form, caps)?;
    let ps = build_p_s(t, &lsets);
    let polarization = is_associative_polarization(t, case.q(), &ps, &form);
    let gens = build_generators(t, case.p, &case.chi, s, a)?;
    let equations = verify_generator_set(t, &gens, caps)?;
    let display = display_equations(t, &gens, caps)?;
    Ok(OrbitData {
        cf: CanonicalForm { s: *s, lsets, a: a.clone(), form: form.clone() },
        orbit_size: orbit.size(),
        expected_size: u128::from(case.q()).pow(2 * r_plus_minus_s(t, s)),
        ps,
        polarization,
        stabilizer: stabilizer_dim(t, case.q(), &form),
        gens,
        equations,
        display,
    })
}

/// `lambda` as the lower-triangular matrix of `y` values, one line per row.
pub fn lower_triangular(t: &RootTables, f: &LinForm) -> Vec<String> {
    let y = f.lower_matrix(t);
    (1..t.n).map(|j| y[j][..j].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect()
}

pub fn orbit_equation_status(r: &OrbitEquationReport) -> Status {
    if !r.holds() {
        Status::Fail
    } else if r.partial {
        Status::Partial
    } else {
        Status::Pass
    }
}

pub fn orbit_equation_json(r: &OrbitEquationReport) -> Value {
    json!({
        "generators": r.generator_count,
        "expected_generators": r.expected_generators,
        "orbit_size": r.orbit_size,
        "expected_size": r.expected_size.to_string(),
        "orbit_in_variety": r.orbit_in_variety,
        "variety_points": r.variety_points,
        "stable": r.stable,
        "vanishing_pattern": r.vanishing_pattern,
        "degrees": r.degrees,
    })
}

pub fn display_status(d: &DisplaySystem) -> Status {
    match d.exact {
        Some(true) => Status::Pass,
        Some(false) => Status::Fail,
        None => Status::Partial,
    }
}

pub fn cmd_orbit(o: &OrbitArgs, g: &Global) -> Result<Report, UsageError> {
    let case = Case::from_args(&o.case)?;
    let t = &case.t;
    let s = args::parse_subset(t, &o.subset)?;
    let a = args::parse_a(t, case.p, &s, o.a.as_deref())?;
    let mut params = case.params();
    params["subset"] = subset_json(t, &s);
    params["a"] = a_json(&a);
    let mut report = Report::new("orbit", params, g.timing);
    let data = match orbit_data(&case, &s, &a, &g.caps) {
        Ok(d) => d,
        Err(e) => {
            report.check("orbit", error_status(&e), error_details(&e));
            return Ok(report);
        }
    };
    let lines = lower_triangular(t, &data.cf.form);
    let equations: Vec<String> = data.display.equations.iter().map(|e| e.text()).collect();
    report.set("lambda_lower", json!(lines));
    report.set("lambda", json!(data.cf.form.coords));
    report.set("lsets", lsets_json(t, &data.cf.lsets));
    report.set("orbit_size", json!(data.orbit_size));
    report.set("p_s", json!(data.ps.roots.iter().map(x_name).collect::<Vec<_>>()));
    report.set("p_s_dim", json!(data.ps.dim()));
    report.set("equations", json!(equations));
    report.set("equation_forms", json!(data.display.equations.iter().map(|e| e.form.name()).collect::<Vec<_>>()));
    report.set("generators", json!(data.gens.generators.iter().map(|x| render_equation(t, x)).collect::<Vec<_>>()));

    let mut md = format!("S = {}, a = {}\n\nlambda_{{S,a}}:\n\n", subset_text(t, &s), a_text(&a));
    for line in &lines {
        md.push_str(&format!("    {}\n", line));
    }
    md.push_str(&format!("\nOrbit size: {}\n\n", data.orbit_size));
    md.push_str(&format!("p_S: {}\n\nEquations:\n\n", data.ps.roots.iter().map(x_name).collect::<Vec<_>>().join(", ")));
    for e in &equations {
        md.push_str(&format!("- {}\n", e));
    }
    report.markdown = md;

    let r = r_plus_minus_s(t, &s);
    report.check(
        "orbit size",
        Status::of(data.orbit_size as u128 == data.expected_size),
        json!({ "size": data.orbit_size, "expected": data.expected_size.to_string() }),
    );
    report.check(
        "p_S is an associative polarization",
        Status::of(data.polarization.holds()),
        polarization_json(&data.polarization),
    );
    report.check(
        "p_S dimension",
        Status::of(data.ps.dim() == t.dim() - r as usize && 2 * data.ps.dim() == t.dim() + data.stabilizer),
        json!({ "dim": data.ps.dim(), "stabilizer": data.stabilizer }),
    );
    report.check("orbit equations", orbit_equation_status(&data.equations), orbit_equation_json(&data.equations));
    report.check(
        "displayed equations cut out the orbit",
        display_status(&data.display),
        json!({ "exact": data.display.exact }),
    );
    Ok(report)
}

pub fn polarization_json(v: &PolarizationVerdict) -> Value {
    json!({
        "closed": v.closed,
        "square_vanishes": v.square_vanishes,
        "isotropic": v.isotropic,
        "maximal": v.maximal,
        "violation": v.violation.map(|(a, b)| json!([[a.i, a.j], [b.i, b.j]])),
    })
}

// ---- ideal -------------------------------------------------------------

pub struct IdealData {
    pub forms: Vec<CanonicalForm>,
    pub reports: Vec<unitri::Result<(OrbitEquationReport, DisplaySystem)>>,
}

pub fn ideal_data(case: &Case, caps: &Caps) -> IdealData {
    let forms = canonical_forms(&case.t, case.p, &case.chi);
    let reports = forms
        .par_iter()
        .map(|cf| {
            let gens = build_generators(&case.t, case.p, &case.chi, &cf.s, &cf.a)?;
            let rep = verify_generator_set(&case.t, &gens, caps)?;
            let display = display_equations(&case.t, &gens, caps)?;
            Ok((rep, display))
        })
        .collect();
    IdealData { forms, reports }
}

pub fn ideal_checks(report: &mut Report, prefix: &str, case: &Case, data: &IdealData) {
    let t = &case.t;
    let mut statuses = Vec::new();
    let mut exact = Vec::new();
    let mut failures = Vec::new();
    for (cf, r) in data.forms.iter().zip(&data.reports) {
        match r {
            Ok((rep, display)) => {
                let st = orbit_equation_status(rep);
                if st == Status::Fail {
                    failures.push(
                        json!({ "S": subset_json(t, &cf.s), "a": cf.a.values, "report": orbit_equation_json(rep) }),
                    );
                }
                statuses.push(st);
                exact.push(display_status(display));
            }
            Err(e) => {
                statuses.push(error_status(e));
                exact.push(error_status(e));
                failures.push(json!({ "S": subset_json(t, &cf.s), "a": cf.a.values, "error": e.to_string() }));
            }
        }
    }
    let scanned = data.reports.iter().filter(|r| matches!(r, Ok((rep, _)) if !rep.partial)).count();
    report.check(
        format!("{}orbit equations", prefix),
        combine(statuses),
        json!({ "forms": data.forms.len(), "scanned": scanned, "failures": failures }),
    );
    report.check(
        format!("{}displayed equations cut out each orbit", prefix),
        combine(exact),
        json!({ "forms": data.forms.len() }),
    );
}

pub fn separation_checks(report: &mut Report, prefix: &str, sep: &unitri::Result<SeparationReport>) {
    let (status, details) = match sep {
        Ok(r) => (
            Status::of(r.holds()),
            json!({
                "forms": r.forms,
                "union_size": r.union_size,
                "size_sum": r.size_sum,
                "one_form_per_orbit": r.one_form_per_orbit,
                "pairs": r.pairs.len(),
                "structural_witnesses": r.structural_witnesses(),
                "all_witnessed": r.all_witnessed(),
            }),
        ),
        Err(e) => (error_status(e), error_details(e)),
    };
    report.check(format!("{}orbit separation", prefix), status, details);
}

pub fn cmd_ideal(c: &CaseArgs, g: &Global) -> Result<Report, UsageError> {
    let case = Case::from_args(c)?;
    let t = &case.t;
    let mut report = Report::new("ideal", case.params(), g.timing);
    let data = ideal_data(&case, &g.caps);
    let rows: Vec<Value> = data
        .forms
        .iter()
        .zip(&data.reports)
        .map(|(cf, r)| match r {
            Ok((rep, d)) => json!({
                "S": subset_json(t, &cf.s),
                "a": a_json(&cf.a),
                "orbit_size": rep.orbit_size,
                "variety_points": rep.variety_points,
                "equations": d.equations.iter().map(|e| e.text()).collect::<Vec<_>>(),
            }),
            Err(e) => json!({ "S": subset_json(t, &cf.s), "a": a_json(&cf.a), "error": e.to_string() }),
        })
        .collect();
    let mut md = String::new();
    for (cf, r) in data.forms.iter().zip(&data.reports) {
        md.push_str(&format!("### S = {}, a = {}\n\n", subset_text(t, &cf.s), a_text(&cf.a)));
        match r {
            Ok((_, d)) => d.equations.iter().for_each(|e| md.push_str(&format!("- {}\n", e.text()))),
            Err(e) => md.push_str(&format!("error: {}\n", e)),
        }
        md.push('\n');
    }
    report.set("forms", Value::Array(rows));
    report.markdown = md;
    ideal_checks(&mut report, "", &case, &data);
    let sep = verify_separation(t, case.p, &case.chi, &g.caps);
    separation_checks(&mut report, "", &sep);
    Ok(report)
}

// ---- hecke -------------------------------------------------------------

/// Commutativity over `pairs`, in parallel chunks merged in order.
pub fn commutativity(
    group: &Group,
    basis: &HeckeBasis,
    pairs: &[(usize, usize)],
) -> unitri::Result<CommutativityReport> {
    let chunk = pairs.len().div_ceil(4 * rayon::current_num_threads()).max(1);
    let parts =
        pairs.par_chunks(chunk).map(|c| verify_commutativity(group, basis, c)).collect::<unitri::Result<Vec<_>>>()?;
    let mut out = CommutativityReport {
        pairs_checked: 0,
        pairs_total: all_pairs(basis.len()).len(),
        commuting: 0,
        closed: 0,
        constants: Vec::new(),
        failures: Vec::new(),
    };
    for p in parts {
        out.pairs_checked += p.pairs_checked;
        out.commuting += p.commuting;
        out.closed += p.closed;
        out.constants.extend(p.constants);
        out.failures.extend(p.failures);
    }
    Ok(out)
}

pub fn commutativity_status(r: &CommutativityReport) -> Status {
    if !r.holds() {
        Status::Fail
    } else if r.partial() {
        Status::Partial
    } else {
        Status::Pass
    }
}

pub fn commutativity_json(r: &CommutativityReport) -> Value {
    json!({
        "pairs_checked": r.pairs_checked,
        "pairs_total": r.pairs_total,
        "commuting": r.commuting,
        "closed": r.closed,
        "failures": r.failures,
    })
}

pub fn matrix_rows(x: &GroupElem) -> Vec<Vec<u32>> {
    (1..=x.n()).map(|i| (1..=x.n()).map(|j| x.get(i, j)).collect()).collect()
}

pub fn basis_checks(report: &mut Report, prefix: &str, t: &RootTables, basis: &HeckeBasis) {
    report.check(
        format!("{}Hecke basis size", prefix),
        Status::of(basis.len() as u128 == basis.expected),
        json!({ "size": basis.len(), "expected": basis.expected.to_string() }),
    );
    report.check(
        format!("{}X_(S,b) pass the compatibility criterion", prefix),
        Status::of(basis.all_compatible() && basis.constructed_ok),
        json!({ "constructed_ok": basis.constructed_ok, "replaced": basis.elements.iter().filter(|e| e.replaced).count() }),
    );
    report.check(
        format!("{}X_(S,b) in distinct double cosets", prefix),
        Status::of(basis.distinct_cosets()),
        Value::Null,
    );
    report.check(format!("{}X_(S,b) lie in E + g0 + g-", prefix), Status::of(basis.in_zero_minus(t)), Value::Null);
    report.check(format!("{}basis elements are nonzero", prefix), Status::of(basis.all_nonzero()), Value::Null);
}

pub fn cmd_hecke(h: &HeckeArgs, g: &Global) -> Result<Report, UsageError> {
    let case = Case::from_args(&h.case)?;
    let t = &case.t;
    let mut params = case.params();
    params["pairs"] = json!(h.pairs);
    let mut report = Report::new("hecke", params, g.timing);
    let group = case.group();
    let module = match InducedModule::new(&group, &case.chi) {
        Ok(m) => m,
        Err(e) => {
            report.check("induced module", error_status(&e), error_details(&e));
            return Ok(report);
        }
    };
    let basis = match hecke_basis(&group, &module, &g.caps) {
        Ok(b) => b,
        Err(e) => {
            report.check("Hecke basis", error_status(&e), error_details(&e));
            return Ok(report);
        }
    };
    report.set(
        "basis",
        Value::Array(
            basis
                .elements
                .iter()
                .map(|e| {
                    json!({
                        "S": subset_json(t, &e.s),
                        "b": e.b.0,
                        "x": matrix_rows(&e.x),
                        "coset_size": e.coset.len(),
                        "support": e.element.support_len(),
                        "compatible": e.compatible,
                        "replaced": e.replaced,
                    })
                })
                .collect(),
        ),
    );
    basis_checks(&mut report, "", t, &basis);

    report.run("compatible double cosets", || {
        from_result(hecke_dim_by_cosets(&group, &module, &g.caps).map(|scan| {
            (
                Status::of(scan.compatible as u128 == basis.expected),
                json!({ "cosets": scan.cosets, "compatible": scan.compatible }),
            )
        }))
    });
    report.run("nonvanishing iff compatible", || {
        from_result(
            nonvanishing_equivalence(&group, &module, &g.caps)
                .map(|(total, agree)| (Status::of(total == agree), json!({ "elements": total, "agree": agree }))),
        )
    });

    let mut pairs = all_pairs(basis.len());
    if let Some(limit) = h.pairs {
        pairs.truncate(limit);
    }
    let mut constants = Value::Null;
    report.run("commutativity", || match commutativity(&group, &basis, &pairs) {
        Ok(r) => {
            constants = Value::Array(
                r.constants
                    .iter()
                    .map(|c| json!({ "i": c.i, "j": c.j, "m": c.m, "value": c.value.to_string() }))
                    .collect(),
            );
            (commutativity_status(&r), commutativity_json(&r))
        }
        Err(e) => (error_status(&e), error_details(&e)),
    });
    report.set("structure_constants", constants);

    let mut md = String::from("| # | S | b | X_(S,b) |\n|---|---|---|---|\n");
    for (idx, e) in basis.elements.iter().enumerate() {
        let rows: Vec<String> =
            matrix_rows(&e.x).iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
        md.push_str(&format!("| {} | {} | {:?} | {} |\n", idx, subset_text(t, &e.s), e.b.0, rows.join("; ")));
    }
    report.markdown = md;
    Ok(report)
}

/// `C(k, s) q^(r+ + ε) (q-1)^(k-s)` summed over `s`, against `q^(r+ + r0)`.
pub fn counting_identity_table(ns: &[usize], qs: &[u32]) -> (bool, Value) {
    let mut ok = true;
    let mut rows = BTreeMap::new();
    for &n in ns {
        for &q in qs {
            let (lhs, rhs) = unitri::chars::counting_dimension_identity(n, q);
            ok &= lhs == rhs;
            rows.insert(format!("n={} q={}", n, q), json!([lhs.to_string(), rhs.to_string()]));
        }
    }
    (ok, json!(rows))
}
