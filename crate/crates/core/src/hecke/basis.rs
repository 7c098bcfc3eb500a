use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::algebra::{double_coset, sandwich, xi_compatible, GroupAlgebraElem};
use crate::chars::{InducedModule, Subgroup};
use crate::error::{Error, Result};
use crate::exactnum::{CycRat, Prime};
use crate::rootcomb::{enumerate_lambda_prime, BVector, Part, RootTables, Subset};
use crate::unitri::{Caps, Group, GroupElem};

/// `X_{S,b}`: last column from `b`, then for `(i, n-i)` outside `S`
/// column `n - i` is `b_i` times the last column (rows `i+1..n-i-1`).
pub fn build_x_sb(t: &RootTables, p: Prime, s: &Subset, b: &BVector) -> Result<GroupElem> {
    let b = BVector::new(t, s, b.0.clone(), p)?;
    let q = p.get();
    let n = t.n;
    let mut x = GroupElem::identity(n);
    for i in 1..=t.k + t.eps {
        x.set(i, n, b.get(i));
    }
    for i in 1..=t.k {
        x.set(n - i, n, if s.has_row(i) { b.get(i) } else { 0 });
    }
    for i in 1..=t.k {
        let inside = s.has_row(i);
        for j in i + 1..n - i {
            x.set(j, n - i, if inside { 0 } else { b.get(i) * x.get(j, n) % q });
        }
    }
    Ok(x)
}

/// Whether `x - E` has entries only on `R0 ⊔ R-`.
pub fn in_zero_minus(t: &RootTables, x: &GroupElem) -> bool {
    t.roots.iter().all(|&r| t.part(r) != Part::Plus || x.get(r.i, r.j) == 0)
}

#[derive(Clone, Debug)]
pub struct HeckeBasisElem {
    pub s: Subset,
    pub b: BVector,
    pub x: GroupElem,
    /// `P_xi x P_xi`.
    pub element: GroupAlgebraElem,
    /// Smallest group index in `G+ x G+`.
    pub coset_id: usize,
    pub coset: Vec<usize>,
    pub compatible: bool,
    /// The constructed matrix failed and a representative was searched for.
    pub replaced: bool,
}

#[derive(Clone, Debug)]
pub struct HeckeBasis {
    pub elements: Vec<HeckeBasisElem>,
    pub expected: u128,
    /// All constructed `X_{S,b}` passed without replacement.
    pub constructed_ok: bool,
}

impl HeckeBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn distinct_cosets(&self) -> bool {
        let ids: BTreeSet<usize> = self.elements.iter().map(|e| e.coset_id).collect();
        ids.len() == self.elements.len()
    }

    pub fn all_compatible(&self) -> bool {
        self.elements.iter().all(|e| e.compatible)
    }

    pub fn all_nonzero(&self) -> bool {
        self.elements.iter().all(|e| !e.element.is_zero())
    }

    pub fn in_zero_minus(&self, t: &RootTables) -> bool {
        self.elements.iter().all(|e| in_zero_minus(t, &e.x))
    }

    pub fn holds(&self, t: &RootTables) -> bool {
        self.len() as u128 == self.expected
            && self.constructed_ok
            && self.distinct_cosets()
            && self.all_compatible()
            && self.all_nonzero()
            && self.in_zero_minus(t)
    }
}

/// `q^eps (2q - 1)^k`.
pub fn expected_hecke_dim(t: &RootTables, q: u32) -> u128 {
    u128::from(q).pow(t.eps as u32) * (2 * u128::from(q) - 1).pow(t.k as u32)
}

fn slot(
    group: &Group,
    h: &Subgroup,
    exps: &[u32],
    s: Subset,
    b: BVector,
    x: GroupElem,
    replaced: bool,
) -> Result<HeckeBasisElem> {
    let coset = double_coset(group, h, &x);
    Ok(HeckeBasisElem {
        s,
        b,
        compatible: xi_compatible(group, h, exps, &x),
        element: sandwich(group, h, exps, &x)?,
        coset_id: coset[0],
        coset,
        x,
        replaced,
    })
}

/// Elements of `E + g0 + g-` in index order.
fn zero_minus_elements(group: &Group) -> impl Iterator<Item = GroupElem> + '_ {
    let t = group.tables();
    let free: Vec<_> = t.roots.iter().copied().filter(|&r| t.part(r) != Part::Plus).collect();
    let p = group.p() as u64;
    let count = p.pow(free.len() as u32);
    (0..count).map(move |mut idx| {
        let mut x = GroupElem::identity(t.n);
        for r in &free {
            x.set(r.i, r.j, (idx % p) as u32);
            idx /= p;
        }
        x
    })
}

/// The basis `{P_xi X_{S,b} P_xi}` with every check of the construction.
pub fn hecke_basis(group: &Group, module: &InducedModule, caps: &Caps) -> Result<HeckeBasis> {
    group.check_enumerable(caps, "Hecke basis")?;
    let t = group.tables();
    let p = group.prime();
    let h = module.gplus.as_ref();
    let exps = &module.xi_exps;
    let mut elements: Vec<HeckeBasisElem> = Vec::new();
    let mut claimed: BTreeSet<usize> = BTreeSet::new();
    let mut constructed_ok = true;
    for s in Subset::all(t) {
        for b in enumerate_lambda_prime(t, &s, p) {
            let x = build_x_sb(t, p, &s, &b)?;
            let mut e = slot(group, h, exps, s, b.clone(), x, false)?;
            let ok = e.compatible && !e.element.is_zero() && !claimed.contains(&e.coset_id) && in_zero_minus(t, &e.x);
            if !ok {
                constructed_ok = false;
                let found = zero_minus_elements(group)
                    .find(|y| xi_compatible(group, h, exps, y) && !claimed.contains(&double_coset(group, h, y)[0]));
                if let Some(y) = found {
                    e = slot(group, h, exps, s, b, y, true)?;
                }
            }
            claimed.insert(e.coset_id);
            elements.push(e);
        }
    }
    Ok(HeckeBasis { elements, expected: expected_hecke_dim(t, p.get()), constructed_ok })
}

/// `u_i u_j = sum_m c_ij^m u_m`, nonzero terms only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub m: usize,
    pub value: CycRat,
}

#[derive(Clone, Debug)]
pub struct CommutativityReport {
    pub pairs_checked: usize,
    pub pairs_total: usize,
    pub commuting: usize,
    /// Pairs whose product reduced against the basis.
    pub closed: usize,
    pub constants: Vec<StructureConstant>,
    pub failures: Vec<(usize, usize)>,
}

impl CommutativityReport {
    pub fn partial(&self) -> bool {
        self.pairs_checked < self.pairs_total
    }

    pub fn holds(&self) -> bool {
        self.commuting == self.pairs_checked && self.closed == self.pairs_checked
    }
}

/// Writes `w` in the basis, using that basis supports lie in distinct
/// double cosets.
fn reduce(basis: &HeckeBasis, owner: &BTreeMap<usize, usize>, w: &GroupAlgebraElem) -> Option<Vec<(usize, CycRat)>> {
    if w.support().any(|g| !owner.contains_key(&g)) {
        return None;
    }
    let mut out = Vec::new();
    for (m, e) in basis.elements.iter().enumerate() {
        let part = w.restrict(|g| owner.get(&g) == Some(&m));
        if part.is_zero() {
            continue;
        }
        out.push((m, e.element.proportional(&part)?));
    }
    Some(out)
}

/// Unordered pairs `i <= j` of basis positions.
pub fn all_pairs(len: usize) -> Vec<(usize, usize)> {
    (0..len).flat_map(|i| (i..len).map(move |j| (i, j))).collect()
}

/// `u v = v u` and closure for the listed pairs.
pub fn verify_commutativity(
    group: &Group,
    basis: &HeckeBasis,
    pairs: &[(usize, usize)],
) -> Result<CommutativityReport> {
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (m, e) in basis.elements.iter().enumerate() {
        for g in e.element.support() {
            if owner.insert(g, m).is_some() {
                return Err(Error::Invalid(alloc::string::String::from("basis supports overlap")));
            }
        }
    }
    let mut rep = CommutativityReport {
        pairs_checked: 0,
        pairs_total: all_pairs(basis.len()).len(),
        commuting: 0,
        closed: 0,
        constants: Vec::new(),
        failures: Vec::new(),
    };
    for &(i, j) in pairs {
        let u = &basis.elements[i].element;
        let v = &basis.elements[j].element;
        let uv = u.mul(group, v)?;
        let vu = if i == j { uv.clone() } else { v.mul(group, u)? };
        rep.pairs_checked += 1;
        let commutes = uv == vu;
        if commutes {
            rep.commuting += 1;
        }
        match reduce(basis, &owner, &uv) {
            Some(terms) => {
                rep.closed += 1;
                for (m, value) in terms {
                    rep.constants.push(StructureConstant { i, j, m, value });
                }
            }
            None => {
                if commutes {
                    rep.failures.push((i, j));
                }
            }
        }
        if !commutes {
            rep.failures.push((i, j));
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetScan {
    pub cosets: usize,
    pub compatible: usize,
}

/// Walks all `(G+, G+)` double cosets and counts those passing the
/// criterion.
pub fn hecke_dim_by_cosets(group: &Group, module: &InducedModule, caps: &Caps) -> Result<CosetScan> {
    let size = group.check_enumerable(caps, "double cosets")?;
    let h = module.gplus.as_ref();
    let mut seen = alloc::vec![false; size];
    let mut scan = CosetScan { cosets: 0, compatible: 0 };
    for idx in 0..size {
        if seen[idx] {
            continue;
        }
        let x = group.element(idx);
        for g in double_coset(group, h, &x) {
            seen[g] = true;
        }
        scan.cosets += 1;
        if xi_compatible(group, h, &module.xi_exps, &x) {
            scan.compatible += 1;
        }
    }
    Ok(scan)
}

/// `P_xi x P_xi != 0` against the criterion, for every `x` in `G`.
pub fn nonvanishing_equivalence(group: &Group, module: &InducedModule, caps: &Caps) -> Result<(usize, usize)> {
    let size = group.check_enumerable(caps, "nonvanishing scan")?;
    let h = module.gplus.as_ref();
    let mut agree = 0;
    for idx in 0..size {
        let x = group.element(idx);
        let nonzero = !sandwich(group, h, &module.xi_exps, &x)?.is_zero();
        if nonzero == xi_compatible(group, h, &module.xi_exps, &x) {
            agree += 1;
        }
    }
    Ok((size, agree))
}

/// Within each basis coset, `P_xi y P_xi` for other elements `y` of the
/// coset passing the criterion is a multiple of the basis element.
pub fn proportionality_check(
    group: &Group,
    module: &InducedModule,
    basis: &HeckeBasis,
    per_coset: usize,
) -> Result<bool> {
    let h = module.gplus.as_ref();
    for e in &basis.elements {
        for &g in e.coset.iter().take(per_coset) {
            let y = group.element(g);
            if !xi_compatible(group, h, &module.xi_exps, &y) {
                return Ok(false);
            }
            let w = sandwich(group, h, &module.xi_exps, &y)?;
            if e.element.proportional(&w).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
