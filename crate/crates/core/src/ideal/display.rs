//! The displayed form of an orbit's equations. Each generator equation of
//! degree above one is replaced, when possible, by a single coordinate or a
//! `2x2` minor of lower degree, or else by itself with the terms in
//! coordinates fixed to zero dropped. A replacement is kept only if the
//! resulting system cuts out exactly the orbit for every parameter value,
//! checked by exhaustive scan of `g*(F_q)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::fixture::{assignments, EquationSystem};
use super::generators::{minor_of_x, symbolic_generators, GeneratorKind, GeneratorSet};
use super::poly::{CompiledPoly, MultiPoly};
use super::render::{render_minor, render_param_poly, render_y_poly, y_name};
use super::verify::{ambient_size, decode_point};
use crate::error::Result;
use crate::exactnum::Prime;
use crate::rootcomb::{Root, RootTables};
use crate::unitri::{orbit_of, Caps, Orbit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisplayForm {
    /// The generator itself, up to an overall sign.
    Generator,
    /// The generator with terms in zero coordinates removed.
    ZerosDropped,
    Variable,
    Minor,
}

impl DisplayForm {
    pub fn name(self) -> &'static str {
        match self {
            DisplayForm::Generator => "generator",
            DisplayForm::ZerosDropped => "zeros-dropped",
            DisplayForm::Variable => "variable",
            DisplayForm::Minor => "minor",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DisplayEquation {
    pub gamma: Root,
    pub form: DisplayForm,
    pub lhs: MultiPoly,
    /// The value at `lambda_{S,a}`, a polynomial in the parameters.
    pub rhs: MultiPoly,
    pub lhs_text: String,
    pub rhs_text: String,
    /// `false` when the ambient space was too large to scan and the
    /// generator was kept as it is.
    pub scanned: bool,
}

impl DisplayEquation {
    pub fn text(&self) -> String {
        format!("{} = {}", self.lhs_text, self.rhs_text)
    }
}

struct Case {
    values: Vec<u32>,
    orbit: Orbit,
}

struct Context<'a> {
    t: &'a RootTables,
    p: Prime,
    names: &'a [String],
    lam_vars: &'a [MultiPoly],
    cases: Vec<Case>,
    total: Option<u64>,
}

impl Context<'_> {
    fn rhs_text(&self, rhs: &MultiPoly) -> String {
        if self.names.is_empty() {
            rhs.eval_mod(&[], self.p.get()).to_string()
        } else {
            render_param_poly(self.names, rhs)
        }
    }

    /// Every case: all equations hold on the orbit and cut out nothing else.
    fn exact(&self, system: &[(MultiPoly, MultiPoly)]) -> bool {
        let Some(total) = self.total else { return false };
        let p = self.p.get();
        let compiled: Vec<CompiledPoly> = system.iter().map(|(l, _)| l.compile(p)).collect();
        let mut mu = alloc::vec![0u8; self.t.dim()];
        self.cases.iter().all(|c| {
            let values: Vec<u32> = system.iter().map(|(_, r)| r.eval_mod(&c.values, p)).collect();
            let holds = |mu: &[u8]| compiled.iter().zip(&values).all(|(f, &v)| f.eval(mu) == v);
            if !c.orbit.points.iter().all(|pt| holds(&pt.coords)) {
                return false;
            }
            let mut count = 0usize;
            for idx in 0..total {
                decode_point(idx, p, &mut mu);
                if holds(&mu) {
                    count += 1;
                    if count > c.orbit.size() {
                        return false;
                    }
                }
            }
            count == c.orbit.size()
        })
    }

    /// The system with `candidate` in `slot` cuts out exactly the orbit.
    fn accepts(&self, system: &[(MultiPoly, MultiPoly)], slot: usize, candidate: &MultiPoly, rhs: &MultiPoly) -> bool {
        let mut swapped = system.to_vec();
        swapped[slot] = (candidate.clone(), rhs.clone());
        self.exact(&swapped)
    }
}

fn normalized(t: &RootTables, poly: &MultiPoly, rhs: &MultiPoly) -> (MultiPoly, MultiPoly, String) {
    let text = render_y_poly(t, poly);
    if text.starts_with('-') {
        let neg = poly.neg();
        let text = render_y_poly(t, &neg);
        (neg, rhs.neg(), text)
    } else {
        (poly.clone(), rhs.clone(), text)
    }
}

fn drop_vars(poly: &MultiPoly, zeros: &[usize]) -> MultiPoly {
    MultiPoly::from_terms(
        poly.nvars(),
        poly.terms().filter(|(e, _)| zeros.iter().all(|&v| e[v] == 0)).map(|(e, c)| (e.clone(), c.clone())),
    )
}

/// Single coordinates and the `2x2` minors of `X` lying above the diagonal,
/// each ordered by its text.
fn low_degree_candidates(t: &RootTables, degree: u32) -> Result<Vec<(DisplayForm, MultiPoly, String)>> {
    let mut out = Vec::new();
    if degree == 1 {
        for v in 0..t.dim() {
            out.push((DisplayForm::Variable, MultiPoly::var(t.dim(), v), y_name(t, v)));
        }
    } else if degree == 2 {
        let n = t.n;
        for r1 in 1..=n {
            for r2 in r1 + 1..=n {
                for c1 in r2 + 1..=n {
                    for c2 in c1 + 1..=n {
                        let m = minor_of_x(t, &[r1, r2], &[c1, c2])?;
                        out.push((DisplayForm::Minor, m.poly, render_minor(&m.rows, &m.cols)));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.2.cmp(&b.2));
    Ok(out)
}

/// The displayed equations, and whether they cut out exactly the orbit for
/// every parameter value (`None` when the ambient space was not scanned).
#[derive(Clone, Debug)]
pub struct DisplaySystem {
    pub equations: Vec<DisplayEquation>,
    pub exact: Option<bool>,
}

fn display_all(ctx: &Context<'_>, symbolic: &[(Root, GeneratorKind, MultiPoly)]) -> Result<DisplaySystem> {
    let t = ctx.t;
    let zeros: Vec<usize> = symbolic
        .iter()
        .filter_map(|(_, _, poly)| {
            let support = poly.support();
            let single = support.len() == 1 && *poly == MultiPoly::var(t.dim(), support[0]);
            (single && poly.substitute(ctx.lam_vars).is_zero()).then(|| support[0])
        })
        .collect();
    let mut out: Vec<DisplayEquation> = symbolic
        .iter()
        .map(|(gamma, kind, poly)| {
            let rhs = poly.substitute(ctx.lam_vars);
            let (lhs, rhs, lhs_text) = match kind {
                GeneratorKind::Minor { rows, cols } => (poly.clone(), rhs, render_minor(rows, cols)),
                GeneratorKind::CharCoefficient { .. } => normalized(t, poly, &rhs),
            };
            DisplayEquation {
                gamma: *gamma,
                form: DisplayForm::Generator,
                rhs_text: ctx.rhs_text(&rhs),
                lhs,
                rhs,
                lhs_text,
                scanned: ctx.total.is_some(),
            }
        })
        .collect();
    if ctx.total.is_none() {
        return Ok(DisplaySystem { equations: out, exact: None });
    }
    let mut system: Vec<(MultiPoly, MultiPoly)> = out.iter().map(|e| (e.lhs.clone(), e.rhs.clone())).collect();
    for slot in 0..out.len() {
        let degree = out[slot].lhs.degree().unwrap_or(0);
        if degree <= 1 {
            continue;
        }
        let mut choice: Option<(DisplayForm, MultiPoly, MultiPoly, String)> = None;
        'search: for d in 1..degree {
            for (kind, cand, text) in low_degree_candidates(t, d)? {
                if system.iter().any(|(l, _)| *l == cand || l.neg() == cand) {
                    continue;
                }
                let crhs = cand.substitute(ctx.lam_vars);
                if ctx.accepts(&system, slot, &cand, &crhs) {
                    choice = Some((kind, cand, crhs, text));
                    break 'search;
                }
            }
        }
        if choice.is_none() {
            let dropped = drop_vars(&out[slot].lhs, &zeros);
            if dropped != out[slot].lhs && !dropped.is_zero() {
                let drhs = dropped.substitute(ctx.lam_vars);
                if ctx.accepts(&system, slot, &dropped, &drhs) {
                    let (l, r, text) = normalized(t, &dropped, &drhs);
                    choice = Some((DisplayForm::ZerosDropped, l, r, text));
                }
            }
        }
        if let Some((form, lhs, rhs, text)) = choice {
            system[slot] = (lhs.clone(), rhs.clone());
            let e = &mut out[slot];
            e.form = form;
            e.rhs_text = ctx.rhs_text(&rhs);
            e.lhs = lhs;
            e.rhs = rhs;
            e.lhs_text = text;
        }
    }
    let exact = ctx.exact(&system);
    Ok(DisplaySystem { equations: out, exact: Some(exact) })
}

/// The displayed equations for one concrete orbit.
pub fn display_equations(t: &RootTables, gens: &GeneratorSet, caps: &Caps) -> Result<DisplaySystem> {
    let lam_vars: Vec<MultiPoly> =
        gens.form.coords.iter().map(|&c| MultiPoly::constant(0, num_bigint::BigInt::from(c))).collect();
    let orbit = orbit_of(t, gens.p, &gens.form, caps)?;
    let ctx = Context {
        t,
        p: gens.p,
        names: &[],
        lam_vars: &lam_vars,
        cases: alloc::vec![Case { values: Vec::new(), orbit }],
        total: ambient_size(t, gens.p, caps),
    };
    let symbolic: Vec<(Root, GeneratorKind, MultiPoly)> =
        gens.generators.iter().map(|g| (g.gamma, g.kind.clone(), g.poly.clone())).collect();
    display_all(&ctx, &symbolic)
}

/// The displayed equations of a parametrized family, in the parameter
/// names of `sys`; replacements must hold for every parameter value.
pub fn display_system(t: &RootTables, p: Prime, sys: &EquationSystem, caps: &Caps) -> Result<DisplaySystem> {
    let symbolic = symbolic_generators(t, &sys.s)?;
    let np = sys.params.len();
    let mut lam_vars: Vec<MultiPoly> = (0..t.dim()).map(|_| MultiPoly::zero(np)).collect();
    for (r, poly) in &sys.lambda {
        lam_vars[t.index(*r)] = poly.clone();
    }
    let names: Vec<String> = sys.params.iter().map(|x| x.name.clone()).collect();
    let mut cases = Vec::new();
    for asg in assignments(t, p, sys)? {
        let orbit = orbit_of(t, p, &asg.form, caps)?;
        cases.push(Case { values: asg.values, orbit });
    }
    let ctx = Context { t, p, names: &names, lam_vars: &lam_vars, cases, total: ambient_size(t, p, caps) };
    display_all(&ctx, &symbolic)
}
