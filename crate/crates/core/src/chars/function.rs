use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{CycInt, Prime};
use crate::rootcomb::Root;
use crate::unitri::{Group, GroupElem, LinForm, Subalgebra};

/// A subgroup of `G`, as the ascending list of member indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn from_indices(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    /// `E + span{E_r}` for a coordinate subalgebra.
    pub fn coordinate(group: &Group, sub: &Subalgebra) -> Self {
        Subgroup { members: group.coordinate_subgroup(&sub.roots) }
    }

    /// `E + span(basis)` for a subspace given by coordinate rows.
    pub fn from_basis(group: &Group, basis: &[Vec<u32>]) -> Self {
        let p = group.p();
        let d = group.tables().dim();
        let mut points: Vec<Vec<u32>> = vec![vec![0; d]];
        for b in basis {
            let base = points.clone();
            for t in 1..p {
                points.extend(base.iter().map(|x| x.iter().zip(b).map(|(u, v)| (u + t * v) % p).collect()));
            }
        }
        let members = points
            .iter()
            .map(|x| {
                let coords: Vec<u8> = x.iter().map(|&v| v as u8).collect();
                group.index(&group.from_coords(&coords))
            })
            .collect();
        Self::from_indices(members)
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, group: &Group, g: &GroupElem) -> Self {
        let gi = group.inv(g);
        Self::from_indices(
            self.members.iter().map(|&h| group.index(&group.mul(&group.mul(g, &group.element(h)), &gi))).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn position(&self, idx: usize) -> Option<usize> {
        self.members.binary_search(&idx).ok()
    }

    /// Closure under multiplication, checked exhaustively.
    pub fn is_closed(&self, group: &Group) -> bool {
        self.members.iter().all(|&a| {
            let ga = group.element(a);
            self.members.iter().all(|&b| self.contains(group.index(&group.mul(&ga, &group.element(b)))))
        })
    }
}

/// Sum of roots of unity `sum_k c_k zeta^k` kept unreduced, length `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSum(pub Vec<i64>);

impl ZetaSum {
    pub fn zero(p: u32) -> Self {
        ZetaSum(vec![0; p as usize])
    }

    pub fn add_power(&mut self, k: u32) {
        self.0[k as usize] += 1;
    }

    pub fn to_cyc(&self, p: Prime) -> CycInt {
        CycInt::from_exponent_counts(p, &self.0)
    }
}

/// A `Z[zeta_p]`-valued function on `G` or on a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFunction {
    p: Prime,
    group_order: usize,
    support: Option<Arc<Subgroup>>,
    values: Vec<CycInt>,
}

impl GroupFunction {
    pub fn on_group(group: &Group, values: Vec<CycInt>) -> Self {
        debug_assert_eq!(values.len() as u128, group.order());
        GroupFunction { p: group.prime(), group_order: group.order() as usize, support: None, values }
    }

    pub fn on_subgroup(group: &Group, sub: Arc<Subgroup>, values: Vec<CycInt>) -> Self {
        debug_assert_eq!(values.len(), sub.order());
        GroupFunction { p: group.prime(), group_order: group.order() as usize, support: Some(sub), values }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn support(&self) -> Option<&Arc<Subgroup>> {
        self.support.as_ref()
    }

    /// Number of points of the domain.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[CycInt] {
        &self.values
    }

    /// Group index of the `pos`-th domain point.
    pub fn domain_index(&self, pos: usize) -> usize {
        match &self.support {
            None => pos,
            Some(s) => s.members()[pos],
        }
    }

    /// Value at a group index, `None` off the domain.
    pub fn at(&self, idx: usize) -> Option<&CycInt> {
        match &self.support {
            None => self.values.get(idx),
            Some(s) => s.position(idx).map(|pos| &self.values[pos]),
        }
    }

    /// Value at the identity, which has index 0.
    pub fn at_identity(&self) -> &CycInt {
        self.at(0).expect("every domain contains the identity")
    }

    /// The degree `chi(e)` as a rational integer, if it is one.
    pub fn degree(&self) -> Option<BigInt> {
        self.at_identity().as_integer().cloned()
    }

    pub fn restrict(&self, sub: &Arc<Subgroup>) -> Result<Self> {
        let values = sub
            .members()
            .iter()
            .map(|&h| {
                self.at(h)
                    .cloned()
                    .ok_or_else(|| Error::Invalid(alloc::string::String::from("restriction outside the domain")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupFunction { p: self.p, group_order: self.group_order, support: Some(sub.clone()), values })
    }

    fn same_domain(&self, other: &Self) -> bool {
        self.p == other.p
            && self.group_order == other.group_order
            && match (&self.support, &other.support) {
                (None, None) => true,
                (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a == b,
                _ => false,
            }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.same_domain(other) {
            return Err(Error::Invalid(alloc::string::String::from("functions on different domains")));
        }
        Ok(GroupFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }
}

/// `(1/|D|) sum_g chi(g) conj(psi(g))` over the common domain `D`.
pub fn inner_product(chi: &GroupFunction, psi: &GroupFunction) -> Result<BigRational> {
    if !chi.same_domain(psi) {
        return Err(Error::Invalid(alloc::string::String::from("inner product of functions on different domains")));
    }
    let p = chi.p;
    let mut acc = CycInt::zero(p);
    for (a, b) in chi.values.iter().zip(&psi.values) {
        acc = &acc + &(a * &b.conj());
    }
    let total = acc.as_integer().ok_or(Error::NotRational("inner product"))?;
    Ok(BigRational::new(total.clone(), BigInt::from(chi.values.len())))
}

/// The character `xi(1 + x) = e^{lambda(x)}` on a subgroup, as exponents.
pub fn xi_exponents(group: &Group, lambda: &LinForm, sub: &Subgroup) -> Vec<u32> {
    sub.members().iter().map(|&h| lambda.eval(&group.coords(&group.element(h)), group.p())).collect()
}

fn exponents_to_function(group: &Group, sub: Arc<Subgroup>, exps: &[u32]) -> GroupFunction {
    let p = group.prime();
    let values = exps.iter().map(|&e| CycInt::zeta_pow(p, u64::from(e))).collect();
    GroupFunction::on_subgroup(group, sub, values)
}

/// `xi_lambda` on `P = E + p` for a coordinate subalgebra `p`; rejects forms
/// that do not vanish on `p^2`.
pub fn xi_from_form(group: &Group, lambda: &LinForm, sub: &Subalgebra) -> Result<GroupFunction> {
    let t = group.tables();
    if !sub.is_closed(t) {
        return Err(Error::Invalid(alloc::string::String::from("subspace is not an associative subalgebra")));
    }
    for &a in &sub.roots {
        for &b in &sub.roots {
            if a.j == b.i && lambda.get(t, Root::new(a.i, b.j)) != 0 {
                return Err(Error::NotMultiplicative(a, b));
            }
        }
    }
    let h = Arc::new(Subgroup::coordinate(group, sub));
    let exps = xi_exponents(group, lambda, &h);
    Ok(exponents_to_function(group, h, &exps))
}

/// `xi_lambda` on an arbitrary subgroup `E + p`; multiplicativity is checked
/// on all pairs of members.
pub fn xi_on_subgroup(group: &Group, lambda: &LinForm, sub: Arc<Subgroup>) -> Result<GroupFunction> {
    let exps = xi_exponents(group, lambda, &sub);
    if !is_homomorphism(group, &sub, &exps) {
        return Err(Error::NotMultiplicativeGeneral(alloc::string::String::from(
            "xi(gh) != xi(g) xi(h) on the given subgroup",
        )));
    }
    Ok(exponents_to_function(group, sub, &exps))
}

/// Exhaustive check that `h -> zeta^exps[h]` is multiplicative on `sub`.
pub fn is_homomorphism(group: &Group, sub: &Subgroup, exps: &[u32]) -> bool {
    let p = group.p();
    let members = sub.members();
    for (i, &a) in members.iter().enumerate() {
        let ga = group.element(a);
        for (j, &b) in members.iter().enumerate() {
            let c = group.index(&group.mul(&ga, &group.element(b)));
            match sub.position(c) {
                Some(k) if exps[k] == (exps[i] + exps[j]) % p => {}
                _ => return false,
            }
        }
    }
    true
}

/// The trivial character on a subgroup.
pub fn trivial(group: &Group, sub: Arc<Subgroup>) -> GroupFunction {
    let one = CycInt::one(group.prime());
    let values = vec![one; sub.order()];
    GroupFunction::on_subgroup(group, sub, values)
}

/// `1/|D| · sum`, used for multiplicities: the value must be an integer.
pub fn rational_to_integer(r: &BigRational) -> Result<BigInt> {
    if r.denom().is_one() {
        Ok(r.numer().clone())
    } else if r.is_zero() {
        Ok(BigInt::zero())
    } else {
        Err(Error::NotRational("expected an integer multiplicity"))
    }
}
