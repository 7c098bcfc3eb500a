use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::generators::{build_generators, GeneratorKind, GeneratorSet};
use crate::error::Result;
use crate::exactnum::Prime;
use crate::rootcomb::{AVector, Root, RootTables, Subset};
use crate::unitri::{canonical_forms, coadjoint_root, orbit_of, Caps, LinForm, NondegChar};

/// Outcome of a scan over a range of points of `g*`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarietyScan {
    pub points: u64,
    /// Variety points whose image under some generator leaves the variety.
    pub unstable: u64,
}

impl VarietyScan {
    pub fn merge(&mut self, other: &VarietyScan) {
        self.points += other.points;
        self.unstable += other.unstable;
    }
}

/// Number of points of `F_p^N`, or `None` past the cap.
pub fn ambient_size(t: &RootTables, p: Prime, caps: &Caps) -> Option<u64> {
    let total = u128::from(p.get()).checked_pow(t.dim() as u32)?;
    (total <= caps.group).then(|| total as u64)
}

pub(crate) fn decode_point(mut idx: u64, p: u32, out: &mut [u8]) {
    for c in out.iter_mut() {
        *c = (idx % u64::from(p)) as u8;
        idx /= u64::from(p);
    }
}

/// Points with index in `range` (base-`p` digits in root order) on the
/// variety, and the stability check under `x_r(1)` for every root `r`.
pub fn scan_variety(gens: &GeneratorSet, t: &RootTables, range: Range<u64>) -> VarietyScan {
    let p = gens.p.get();
    let mut scan = VarietyScan::default();
    let mut mu = LinForm::zero(t);
    for idx in range {
        decode_point(idx, p, &mut mu.coords);
        if !gens.contains(&mu.coords) {
            continue;
        }
        scan.points += 1;
        if !stable_at(gens, t, &mu) {
            scan.unstable += 1;
        }
    }
    scan
}

fn stable_at(gens: &GeneratorSet, t: &RootTables, mu: &LinForm) -> bool {
    t.roots.iter().all(|&r| gens.contains(&coadjoint_root(t, gens.p.get(), r, 1, mu).coords))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEquationReport {
    pub s: Subset,
    pub a: Vec<u32>,
    pub generator_count: usize,
    pub expected_generators: usize,
    pub orbit_size: usize,
    pub expected_size: u128,
    pub orbit_in_variety: bool,
    /// `None` when `q^N` is past the cap.
    pub variety_points: Option<u64>,
    pub stable: bool,
    /// `F^0 = 0` exactly where `lambda_{S,a}(E_gamma) = 0`.
    pub vanishing_pattern: bool,
    pub degrees: bool,
    pub partial: bool,
}

impl OrbitEquationReport {
    pub fn holds(&self) -> bool {
        self.generator_count == self.expected_generators
            && self.orbit_size as u128 == self.expected_size
            && self.orbit_in_variety
            && self.variety_points.map_or(true, |v| u128::from(v) == self.expected_size)
            && self.stable
            && self.vanishing_pattern
            && self.degrees
    }
}

/// The checks that do not need the variety scan.
pub fn orbit_equation_checks(t: &RootTables, gens: &GeneratorSet, caps: &Caps) -> Result<OrbitEquationReport> {
    let p = gens.p;
    let orbit = orbit_of(t, p, &gens.form, caps)?;
    let orbit_in_variety = orbit.points.iter().all(|mu| gens.contains(&mu.coords));
    let stable = orbit.points.iter().all(|mu| stable_at(gens, t, mu));
    let vanishing_pattern = gens.generators.iter().all(|g| {
        let lam = gens.form.get(t, g.gamma);
        let by_set = if gens.lsets.plus.contains(&g.gamma) {
            g.value == 0
        } else if gens.lsets.zero.contains(&g.gamma) {
            g.value != 0
        } else {
            true
        };
        by_set && ((g.value == 0) == (lam == 0))
    });
    let degrees = gens.generators.iter().all(|g| match &g.kind {
        GeneratorKind::Minor { rows, .. } => {
            g.poly.degree() == Some(rows.len() as u32) && g.poly.is_homogeneous() && rows.len() <= t.k + 1
        }
        GeneratorKind::CharCoefficient { .. } => g.poly.is_homogeneous(),
    });
    let r = t.r_plus_count() - gens.s.len();
    Ok(OrbitEquationReport {
        s: gens.s,
        a: gens.a.values.clone(),
        generator_count: gens.len(),
        expected_generators: t.r_zero_count() + 2 * gens.s.len(),
        orbit_size: orbit.size(),
        expected_size: u128::from(p.get()).pow(2 * r as u32),
        orbit_in_variety,
        variety_points: None,
        stable,
        vanishing_pattern,
        degrees,
        partial: true,
    })
}

pub fn verify_orbit_equations(
    t: &RootTables,
    p: Prime,
    chi: &NondegChar,
    s: &Subset,
    a: &AVector,
    caps: &Caps,
) -> Result<OrbitEquationReport> {
    let gens = build_generators(t, p, chi, s, a)?;
    verify_generator_set(t, &gens, caps)
}

pub fn verify_generator_set(t: &RootTables, gens: &GeneratorSet, caps: &Caps) -> Result<OrbitEquationReport> {
    let mut rep = orbit_equation_checks(t, gens, caps)?;
    if let Some(total) = ambient_size(t, gens.p, caps) {
        let scan = scan_variety(gens, t, 0..total);
        rep.variety_points = Some(scan.points);
        rep.stable &= scan.unstable == 0;
        rep.partial = false;
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The structural witness: `F_{gamma*}` with `gamma*` the `L_S^+`
    /// root in the first row where the subsets differ.
    LPlus {
        first: usize,
        gamma: Root,
    },
    /// Same `S`, a generator on `L_S^0 ⊔ L_S^00 ⊔ L_S^-` separating.
    Parameter {
        first: usize,
        gamma: Root,
    },
    /// Some other generator of either side separates.
    Other {
        first: usize,
        gamma: Root,
    },
    None,
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub forms: usize,
    pub union_size: usize,
    pub size_sum: usize,
    /// Each orbit contains exactly one canonical form.
    pub one_form_per_orbit: bool,
    pub pairs: Vec<(usize, usize, Witness)>,
}

impl SeparationReport {
    pub fn disjoint(&self) -> bool {
        self.union_size == self.size_sum && self.one_form_per_orbit
    }

    pub fn all_witnessed(&self) -> bool {
        self.pairs.iter().all(|(_, _, w)| *w != Witness::None)
    }

    pub fn structural_witnesses(&self) -> usize {
        self.pairs.iter().filter(|(_, _, w)| matches!(w, Witness::LPlus { .. } | Witness::Parameter { .. })).count()
    }

    pub fn holds(&self) -> bool {
        self.disjoint() && self.all_witnessed()
    }
}

/// Whether `mu` violates the generator of `gens` at `gamma`.
fn separates(gens: &GeneratorSet, gamma: Root, mu: &LinForm) -> bool {
    gens.get(gamma).is_some_and(|g| !g.holds_at(&mu.coords))
}

fn witness(t: &RootTables, a: (usize, &GeneratorSet), b: (usize, &GeneratorSet)) -> Witness {
    let (ia, ga) = a;
    let (ib, gb) = b;
    if ga.s != gb.s {
        let row = (1..=t.k).find(|&i| ga.s.has_row(i) != gb.s.has_row(i)).unwrap();
        let (first, gs, other) = if ga.s.has_row(row) { (ia, ga, gb) } else { (ib, gb, ga) };
        if let Some(&gamma) = gs.lsets.plus.iter().find(|r| r.i == row) {
            if separates(gs, gamma, &other.form) {
                return Witness::LPlus { first, gamma };
            }
        }
    } else {
        for g in &ga.generators {
            if ga.a.get(g.gamma).is_some() && separates(ga, g.gamma, &gb.form) {
                return Witness::Parameter { first: ia, gamma: g.gamma };
            }
        }
    }
    for (first, gs, other) in [(ia, ga, gb), (ib, gb, ga)] {
        if let Some(g) = gs.generators.iter().find(|g| !g.holds_at(&other.form.coords)) {
            return Witness::Other { first, gamma: g.gamma };
        }
    }
    Witness::None
}

/// Exact orbit sets of all `lambda_{S,a}` and a separating generator for
/// every pair.
pub fn verify_separation(t: &RootTables, p: Prime, chi: &NondegChar, caps: &Caps) -> Result<SeparationReport> {
    let forms = canonical_forms(t, p, chi);
    let mut gens = Vec::with_capacity(forms.len());
    for cf in &forms {
        gens.push(build_generators(t, p, chi, &cf.s, &cf.a)?);
    }
    let mut owner: BTreeMap<LinForm, usize> = BTreeMap::new();
    let mut size_sum = 0;
    let mut hits = vec![0usize; forms.len()];
    for (idx, cf) in forms.iter().enumerate() {
        let orbit = orbit_of(t, p, &cf.form, caps)?;
        size_sum += orbit.size();
        for (jdx, other) in forms.iter().enumerate() {
            if orbit.contains(&other.form) {
                hits[idx] += 1;
                if jdx != idx {
                    hits[idx] += 1;
                }
            }
        }
        for mu in orbit.points {
            owner.entry(mu).or_insert(idx);
        }
    }
    let mut pairs = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            pairs.push((i, j, witness(t, (i, &gens[i]), (j, &gens[j]))));
        }
    }
    Ok(SeparationReport {
        forms: forms.len(),
        union_size: owner.len(),
        size_sum,
        one_form_per_orbit: hits.iter().all(|&h| h == 1),
        pairs,
    })
}
