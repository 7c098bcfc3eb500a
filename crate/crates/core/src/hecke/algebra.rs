use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::chars::Subgroup;
use crate::error::{Error, Result};
use crate::exactnum::{CycInt, CycRat, Prime};
use crate::unitri::{Group, GroupElem};

/// Coefficient `sum_k c_k zeta^k`, kept with `c_{p-1} = 0` so equal values
/// have equal vectors.
pub type Histogram = Vec<i128>;

fn normalize(h: &mut Histogram) {
    let top = h[h.len() - 1];
    if top != 0 {
        for c in h.iter_mut() {
            *c -= top;
        }
    }
}

fn overflow() -> Error {
    Error::Invalid(alloc::string::String::from("group algebra coefficient overflow"))
}

fn is_zero_hist(h: &Histogram) -> bool {
    h.iter().all(|&c| c == 0)
}

fn hist_to_cyc(p: Prime, h: &Histogram) -> CycInt {
    CycInt::from_full(p, h.iter().map(|&c| BigInt::from(c)).collect())
}

/// An element of the group algebra `Z[zeta_p][G]`, keyed by group index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElem {
    p: Prime,
    terms: BTreeMap<usize, Histogram>,
}

impl GroupAlgebraElem {
    pub fn zero(p: Prime) -> Self {
        GroupAlgebraElem { p, terms: BTreeMap::new() }
    }

    /// `zeta^k g`.
    pub fn monomial(p: Prime, g: usize, k: u32) -> Self {
        let mut e = Self::zero(p);
        e.add_power(g, k, 1).expect("a single term cannot overflow");
        e
    }

    /// The unit mass at the identity.
    pub fn one(group: &Group) -> Self {
        Self::monomial(group.prime(), group.index(&group.identity()), 0)
    }

    fn add_power(&mut self, g: usize, k: u32, c: i128) -> Result<()> {
        let p = self.p.get() as usize;
        let entry = self.terms.entry(g).or_insert_with(|| vec![0; p]);
        let slot = &mut entry[k as usize % p];
        *slot = slot.checked_add(c).ok_or_else(overflow)?;
        Ok(())
    }

    fn finish(mut self) -> Self {
        self.terms.retain(|_, h| {
            normalize(h);
            !is_zero_hist(h)
        });
        self
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, g: usize) -> CycInt {
        match self.terms.get(&g) {
            Some(h) => hist_to_cyc(self.p, h),
            None => CycInt::zero(self.p),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&g, h) in &other.terms {
            for (k, &c) in h.iter().enumerate() {
                if c != 0 {
                    out.add_power(g, k as u32, c)?;
                }
            }
        }
        Ok(out.finish())
    }

    /// `(u v)(g) = sum_{xy = g} u(x) v(y)`.
    pub fn mul(&self, group: &Group, other: &Self) -> Result<Self> {
        let p = self.p.get() as usize;
        let left: Vec<(GroupElem, &Histogram)> = self.terms.iter().map(|(&g, h)| (group.element(g), h)).collect();
        let right: Vec<(GroupElem, &Histogram)> = other.terms.iter().map(|(&g, h)| (group.element(g), h)).collect();
        let mut out = Self::zero(self.p);
        for (x, hx) in &left {
            for (y, hy) in &right {
                let idx = group.index(&group.mul(x, y));
                for (a, &ca) in hx.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    for (b, &cb) in hy.iter().enumerate() {
                        if cb == 0 {
                            continue;
                        }
                        let c = ca.checked_mul(cb).ok_or_else(overflow)?;
                        out.add_power(idx, ((a + b) % p) as u32, c)?;
                    }
                }
            }
        }
        Ok(out.finish())
    }

    /// `c` with `other = c * self`, if one exists.
    pub fn proportional(&self, other: &Self) -> Option<CycRat> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.len() != other.terms.len() || !self.terms.keys().eq(other.terms.keys()) {
            return None;
        }
        let g0 = *self.terms.keys().next().unwrap();
        let c = CycRat::from_int(other.coefficient(g0)).div(&CycRat::from_int(self.coefficient(g0)))?;
        for &g in self.terms.keys() {
            let lhs = CycRat::from_int(other.coefficient(g));
            let rhs = c.mul(&CycRat::from_int(self.coefficient(g)));
            if lhs != rhs {
                return None;
            }
        }
        Some(c)
    }

    /// Restriction to a set of group indices.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        GroupAlgebraElem {
            p: self.p,
            terms: self.terms.iter().filter(|(g, _)| keep(**g)).map(|(&g, h)| (g, h.clone())).collect(),
        }
    }
}

/// `P_xi = sum_{h in H} xi(h^-1) h`, with `xi(h) = zeta^exps[pos(h)]`.
pub fn p_xi(group: &Group, h: &Subgroup, exps: &[u32]) -> GroupAlgebraElem {
    let p = group.p();
    let mut out = GroupAlgebraElem::zero(group.prime());
    for (&g, &e) in h.members().iter().zip(exps) {
        out.add_power(g, (p - e % p) % p, 1).expect("one term per member");
    }
    out.finish()
}

/// `P_xi x P_xi` as the double sum over `H x H`.
pub fn sandwich(group: &Group, h: &Subgroup, exps: &[u32], x: &GroupElem) -> Result<GroupAlgebraElem> {
    let p = group.p();
    let elems: Vec<(GroupElem, u32)> =
        h.members().iter().zip(exps).map(|(&g, &e)| (group.element(g), (p - e % p) % p)).collect();
    let mut out = GroupAlgebraElem::zero(group.prime());
    for (h1, e1) in &elems {
        let left = group.mul(h1, x);
        for (h2, e2) in &elems {
            let idx = group.index(&group.mul(&left, h2));
            out.add_power(idx, (e1 + e2) % p, 1)?;
        }
    }
    Ok(out.finish())
}

/// The double coset `H x H`, sorted.
pub fn double_coset(group: &Group, h: &Subgroup, x: &GroupElem) -> Vec<usize> {
    let elems: Vec<GroupElem> = h.members().iter().map(|&g| group.element(g)).collect();
    let mut out: Vec<usize> = Vec::with_capacity(elems.len() * elems.len());
    for h1 in &elems {
        let left = group.mul(h1, x);
        for h2 in &elems {
            out.push(group.index(&group.mul(&left, h2)));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `xi(y) = xi(x^-1 y x)` for every `y` in `x H x^-1 ∩ H`.
pub fn xi_compatible(group: &Group, h: &Subgroup, exps: &[u32], x: &GroupElem) -> bool {
    let xi = group.inv(x);
    h.members().iter().zip(exps).all(|(&m, &e)| {
        let y = group.mul(&group.mul(x, &group.element(m)), &xi);
        match h.position(group.index(&y)) {
            Some(pos) => exps[pos] == e,
            None => true,
        }
    })
}
