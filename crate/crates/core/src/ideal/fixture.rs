//! Checking a written-out list of orbit equations against the generators.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::generators::{instantiate, symbolic_generators, GeneratorSet};
use super::poly::MultiPoly;
use super::render::{render_generator, render_param_poly};
use super::verify::{ambient_size, decode_point};
use crate::error::{Error, Result};
use crate::exactnum::Prime;
use crate::rootcomb::{compute_lsets, odometer, AVector, Root, RootTables, Subset};
use crate::unitri::{orbit_of, Caps, LinForm, NondegChar};

/// A named parameter standing for the value of `lambda_{S,a}` on `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub root: Root,
    pub nonzero: bool,
}

/// `lhs(y) = rhs(params)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs_text: String,
    pub rhs_text: String,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub s: Subset,
    pub params: Vec<Param>,
    /// Nonzero entries of `lambda_{S,a}`, as polynomials in the parameters.
    pub lambda: Vec<(Root, MultiPoly)>,
    pub equations: Vec<Equation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchKind {
    /// `lhs = sign F_gamma` and `rhs = sign F_gamma^0` as polynomials.
    Literal {
        sign: i8,
        tokens: bool,
    },
    /// Holds on the orbit, and swapping it for `F_gamma` leaves the
    /// `F_q`-points of the variety unchanged, for every parameter value.
    PointEquivalent,
    Unmatched,
}

#[derive(Clone, Debug)]
pub struct EquationMatch {
    pub text: String,
    pub gamma: Option<Root>,
    pub kind: MatchKind,
    /// The generator equation in the same notation.
    pub generator_text: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SystemReport {
    pub lambda_agrees: bool,
    pub count_agrees: bool,
    pub assignments: usize,
    pub matches: Vec<EquationMatch>,
}

impl SystemReport {
    pub fn holds(&self) -> bool {
        self.lambda_agrees
            && self.count_agrees
            && self.matches.iter().all(|m| match m.kind {
                MatchKind::Literal { tokens, .. } => tokens,
                MatchKind::PointEquivalent => true,
                MatchKind::Unmatched => false,
            })
    }

    pub fn literal(&self) -> usize {
        self.matches.iter().filter(|m| matches!(m.kind, MatchKind::Literal { .. })).count()
    }
}

pub(super) struct Assignment {
    pub(super) values: Vec<u32>,
    pub(super) chi: NondegChar,
    pub(super) a: AVector,
    pub(super) form: LinForm,
}

pub(super) fn assignments(t: &RootTables, p: Prime, sys: &EquationSystem) -> Result<Vec<Assignment>> {
    let lsets = compute_lsets(t, &sys.s);
    let ranges: Vec<(u32, u32)> = sys.params.iter().map(|x| (u32::from(x.nonzero), p.get())).collect();
    let mut out = Vec::new();
    for values in odometer(&ranges) {
        let value_of = |r: Root| sys.params.iter().position(|x| x.root == r).map(|i| values[i]);
        let chi_vals: Vec<(Root, u32)> = t.pi0.iter().chain(&t.pi).map(|&r| (r, value_of(r).unwrap_or(0))).collect();
        let chi = NondegChar::new(t, p, &chi_vals)?;
        let avals = lsets
            .a_domain()
            .iter()
            .map(|&r| value_of(r).ok_or_else(|| Error::BadParameter(format!("no parameter names the value at {}", r))))
            .collect::<Result<Vec<u32>>>()?;
        let a = AVector::new(&lsets, avals, p)?;
        let mut form = LinForm::zero(t);
        let pt: Vec<u32> = values.clone();
        for (r, poly) in &sys.lambda {
            form.set(t, *r, poly.eval_mod(&pt, p.get()));
        }
        out.push(Assignment { values, chi, a, form });
    }
    Ok(out)
}

/// Variety of `gens` with the equation at `slot` replaced by `eq = value`.
pub(super) fn same_points(
    t: &RootTables,
    gens: &GeneratorSet,
    slot: usize,
    eq: &MultiPoly,
    value: u32,
    total: u64,
) -> bool {
    let compiled = eq.compile(gens.p.get());
    let mut mu = vec_zero(t);
    for idx in 0..total {
        decode_point(idx, gens.p.get(), &mut mu);
        let others = gens.generators.iter().enumerate().all(|(i, g)| i == slot || g.holds_at(&mu));
        if !others {
            continue;
        }
        if gens.generators[slot].holds_at(&mu) != (compiled.eval(&mu) == value) {
            return false;
        }
    }
    true
}

fn vec_zero(t: &RootTables) -> Vec<u8> {
    alloc::vec![0; t.dim()]
}

/// Matches each equation in `sys` to a generator of `S ⊔ L_S`.
pub fn match_system(t: &RootTables, p: Prime, sys: &EquationSystem, caps: &Caps) -> Result<SystemReport> {
    let symbolic = symbolic_generators(t, &sys.s)?;
    let np = sys.params.len();
    let mut lam_vars: Vec<MultiPoly> = (0..t.dim()).map(|_| MultiPoly::zero(np)).collect();
    for (r, poly) in &sys.lambda {
        lam_vars[t.index(*r)] = poly.clone();
    }
    let names: Vec<String> = sys.params.iter().map(|x| x.name.clone()).collect();
    let assigns = assignments(t, p, sys)?;
    let mut sets = Vec::with_capacity(assigns.len());
    let mut lambda_agrees = true;
    for asg in &assigns {
        let gens = instantiate(t, p, &asg.chi, &sys.s, &asg.a, &symbolic)?;
        lambda_agrees &= gens.form == asg.form;
        sets.push(gens);
    }
    let count_agrees = sys.equations.len() == symbolic.len();

    let mut used = alloc::vec![false; symbolic.len()];
    let mut matches: Vec<EquationMatch> = Vec::new();
    for eq in &sys.equations {
        let mut found = None;
        for (slot, (gamma, _, poly)) in symbolic.iter().enumerate() {
            if used[slot] {
                continue;
            }
            if let Some(sign) = poly.sign_relative_to(&eq.lhs) {
                let value = poly.substitute(&lam_vars);
                let signed = if sign < 0 { value.neg() } else { value };
                if signed == eq.rhs {
                    let g =
                        &sets.first().ok_or_else(|| Error::Invalid(String::from("no parameter values")))?.generators
                            [slot];
                    let lhs = render_generator(t, g, sign);
                    let rhs = render_param_poly(&names, &signed);
                    let tokens = lhs == eq.lhs_text && rhs == eq.rhs_text;
                    found = Some((slot, *gamma, MatchKind::Literal { sign, tokens }, format!("{} = {}", lhs, rhs)));
                    break;
                }
            }
        }
        if let Some((slot, gamma, kind, text)) = found {
            used[slot] = true;
            matches.push(EquationMatch {
                text: format!("{} = {}", eq.lhs_text, eq.rhs_text),
                gamma: Some(gamma),
                kind,
                generator_text: Some(text),
            });
        } else {
            matches.push(EquationMatch {
                text: format!("{} = {}", eq.lhs_text, eq.rhs_text),
                gamma: None,
                kind: MatchKind::Unmatched,
                generator_text: None,
            });
        }
    }

    let total = ambient_size(t, p, caps);
    for (eidx, eq) in sys.equations.iter().enumerate() {
        if matches[eidx].kind != MatchKind::Unmatched {
            continue;
        }
        let Some(total) = total else { continue };
        let mut on_orbit = true;
        for (asg, gens) in assigns.iter().zip(&sets) {
            let value = eq.rhs.eval_mod(&asg.values, p.get());
            let compiled = eq.lhs.compile(p.get());
            let orbit = orbit_of(t, p, &gens.form, caps)?;
            on_orbit &= orbit.points.iter().all(|mu| compiled.eval(&mu.coords) == value);
        }
        if !on_orbit {
            continue;
        }
        for slot in 0..symbolic.len() {
            if used[slot] {
                continue;
            }
            let ok = assigns
                .iter()
                .zip(&sets)
                .all(|(asg, gens)| same_points(t, gens, slot, &eq.lhs, eq.rhs.eval_mod(&asg.values, p.get()), total));
            if ok {
                used[slot] = true;
                let g = &sets[0].generators[slot];
                let value = g.poly.substitute(&lam_vars);
                matches[eidx].gamma = Some(g.gamma);
                matches[eidx].kind = MatchKind::PointEquivalent;
                matches[eidx].generator_text =
                    Some(format!("{} = {}", render_generator(t, g, 1), render_param_poly(&names, &value)));
                break;
            }
        }
    }
    Ok(SystemReport { lambda_agrees, count_agrees, assignments: assigns.len(), matches })
}
