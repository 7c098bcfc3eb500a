use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::function::{
    inner_product, rational_to_integer, xi_exponents, xi_from_form, xi_on_subgroup, GroupFunction, Subgroup,
};
use super::induce::{induce_character, induce_from_exponents, ConjugacyClasses};
use super::orbitchar::{orbit_character, orbit_character_on, orbit_sqrt};
use crate::algebra::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::linalg::inv_mod;
use crate::rootcomb::{binomial, weight_companions, AVector, Subset};
use crate::unitri::{
    build_p_s, coadjoint, orbit_of, CanonicalForm, Caps, Group, GroupElem, LinForm, NondegChar, Subalgebra,
};

/// `V(lambda)`: the subgroup `G+` with the character `xi_lambda` on it.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub chi: NondegChar,
    pub gplus: Arc<Subgroup>,
    pub xi: GroupFunction,
    pub xi_exps: Vec<u32>,
}

impl InducedModule {
    pub fn new(group: &Group, chi: &NondegChar) -> Result<Self> {
        let t = group.tables();
        let gplus_alg = Subalgebra::new(t, t.r_plus.clone());
        let xi = xi_from_form(group, chi.form(), &gplus_alg)?;
        let gplus = xi.support().expect("xi lives on G+").clone();
        let xi_exps = xi_exponents(group, chi.form(), &gplus);
        Ok(InducedModule { chi: chi.clone(), gplus, xi, xi_exps })
    }

    /// The character of `V(lambda)` on all of `G`.
    pub fn character(&self, group: &Group, classes: &ConjugacyClasses) -> Result<GroupFunction> {
        induce_from_exponents(group, classes, self.gplus.members(), &self.xi_exps)
    }
}

/// `<Res_{G+} chi, xi_lambda>_{G+}`.
pub fn multiplicity_frobenius(component: &GroupFunction, xi: &GroupFunction) -> Result<BigInt> {
    let sub = xi.support().ok_or(Error::Invalid(alloc::string::String::from("xi must live on a subgroup")))?;
    let res = match component.support() {
        Some(s) if Arc::ptr_eq(s, sub) || **s == **sub => component.clone(),
        _ => component.restrict(sub)?,
    };
    rational_to_integer(&inner_product(&res, xi)?)
}

/// One row of the decomposition table.
#[derive(Clone, Debug)]
pub struct ComponentEntry {
    pub s: Subset,
    pub a: AVector,
    pub form: LinForm,
    pub orbit_size: usize,
    pub dimension: u64,
    pub multiplicity: BigInt,
    /// The multiplicity by the slow route `<chi_{S,a}, chi_V>_G`, when run.
    pub multiplicity_slow: Option<BigInt>,
}

/// The multiplicity and dimension of one canonical form's component.
pub fn component_entry(
    group: &Group,
    module: &InducedModule,
    cf: &CanonicalForm,
    caps: &Caps,
    chi_v: Option<&GroupFunction>,
) -> Result<ComponentEntry> {
    let orbit = orbit_of(group.tables(), group.prime(), &cf.form, caps)?;
    let dimension = orbit_sqrt(group.p(), orbit.size())?;
    let on_gplus = orbit_character_on(group, &orbit, &module.gplus)?;
    let multiplicity = multiplicity_frobenius(&on_gplus, &module.xi)?;
    let multiplicity_slow = match chi_v {
        None => None,
        Some(v) => {
            let full = orbit_character(group, &orbit, caps)?;
            Some(rational_to_integer(&inner_product(&full, v)?)?)
        }
    };
    Ok(ComponentEntry {
        s: cf.s,
        a: cf.a.clone(),
        form: cf.form.clone(),
        orbit_size: orbit.size(),
        dimension,
        multiplicity,
        multiplicity_slow,
    })
}

/// The decomposition of `V(lambda)` into the components `V_{S,a}`.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub entries: Vec<ComponentEntry>,
    pub total_dim: u128,
    pub component_count: usize,
    pub expected_total_dim: u128,
    pub expected_count: u128,
    /// `<chi_V, chi_V>`, when the whole group was enumerated.
    pub norm: Option<BigRational>,
}

impl DecompositionReport {
    pub fn assemble(group: &Group, entries: Vec<ComponentEntry>, norm: Option<BigRational>) -> Self {
        let t = group.tables();
        let q = group.p() as u128;
        let total_dim = entries.iter().map(|e| e.multiplicity.to_u128().unwrap_or(0) * u128::from(e.dimension)).sum();
        DecompositionReport {
            component_count: entries.len(),
            total_dim,
            expected_total_dim: q.pow((t.r_plus.len() + t.r_zero.len()) as u32),
            expected_count: expected_component_count(t.n, group.p()),
            norm,
            entries,
        }
    }

    pub fn multiplicity_free(&self) -> bool {
        self.entries.iter().all(|e| e.multiplicity.is_one())
    }

    /// Fast and slow multiplicities agree wherever the slow route ran.
    pub fn paths_agree(&self) -> bool {
        self.entries.iter().all(|e| e.multiplicity_slow.as_ref().map_or(true, |m| *m == e.multiplicity))
    }

    pub fn holds(&self) -> bool {
        self.multiplicity_free()
            && self.paths_agree()
            && self.total_dim == self.expected_total_dim
            && self.component_count as u128 == self.expected_count
            && self.norm.as_ref().map_or(true, |n| *n == BigRational::from_integer(BigInt::from(self.component_count)))
    }
}

/// `q^eps (2q - 1)^k`.
pub fn expected_component_count(n: usize, q: u32) -> u128 {
    let k = ((n - 1) / 2) as u32;
    let eps = u32::from(n % 2 == 0);
    (q as u128).pow(eps) * (2 * q as u128 - 1).pow(k)
}

/// Both sides of `sum_s C(k,s) q^{r+ + eps} (q-1)^{k-s} = q^{r+ + r0}`.
pub fn counting_dimension_identity(n: usize, q: u32) -> (u128, u128) {
    let k = (n - 1) / 2;
    let eps = usize::from(n % 2 == 0);
    let r_plus = (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| i + j < n + 1).count();
    let r_zero = k + eps;
    let q = q as u128;
    let lhs = (0..=k)
        .map(|s| binomial(k as u64, s as u64) * q.pow((r_plus + eps) as u32) * (q - 1).pow((k - s) as u32))
        .sum();
    (lhs, q.pow((r_plus + r_zero) as u32))
}

/// The full decomposition, sequentially. With `slow`, every multiplicity is
/// also computed as `<chi_{S,a}, ind xi>_G`.
pub fn decompose(group: &Group, chi: &NondegChar, caps: &Caps, slow: bool) -> Result<DecompositionReport> {
    let module = InducedModule::new(group, chi)?;
    let forms = crate::unitri::canonical_forms(group.tables(), group.prime(), chi);
    let chi_v = if group.order() <= caps.group {
        let classes = ConjugacyClasses::new(group, caps)?;
        Some(module.character(group, &classes)?)
    } else {
        None
    };
    let slow_ref = if slow { chi_v.as_ref() } else { None };
    let entries =
        forms.iter().map(|cf| component_entry(group, &module, cf, caps, slow_ref)).collect::<Result<Vec<_>>>()?;
    let norm = match &chi_v {
        Some(v) => Some(inner_product(v, v)?),
        None => None,
    };
    Ok(DecompositionReport::assemble(group, entries, norm))
}

/// `V(lambda) ≅ V(lambda')` tested as equality of induced characters; the two
/// characters must agree on `Π`.
pub fn check_independence_off_pi(
    group: &Group,
    classes: &ConjugacyClasses,
    a: &NondegChar,
    b: &NondegChar,
) -> Result<bool> {
    let t = group.tables();
    if t.pi.iter().any(|&r| a.value(t, r) != b.value(t, r)) {
        return Err(Error::Invalid(alloc::string::String::from("characters differ on Pi")));
    }
    Ok(induced_characters_equal(group, classes, a, b)?)
}

/// Whether `ind xi_a` and `ind xi_b` coincide, without any hypothesis.
pub fn induced_characters_equal(
    group: &Group,
    classes: &ConjugacyClasses,
    a: &NondegChar,
    b: &NondegChar,
) -> Result<bool> {
    let ca = InducedModule::new(group, a)?.character(group, classes)?;
    let cb = InducedModule::new(group, b)?.character(group, classes)?;
    Ok(ca == cb)
}

/// The element `g_0 = prod x_{beta(alpha)}(t_alpha)` over `alpha in Π \ S`,
/// with `lambda_{S,a}(E_{gamma(alpha)}) t_alpha = lambda(E_alpha)`.
pub fn weight_shift(group: &Group, chi: &NondegChar, cf: &CanonicalForm) -> Result<GroupElem> {
    let t = group.tables();
    let p = group.p();
    let mut g0 = group.identity();
    for &alpha in &t.pi {
        if cf.s.contains(t, alpha) {
            continue;
        }
        let (gamma, beta) = weight_companions(alpha, t, &cf.s, &cf.lsets)?;
        let c = cf.form.get(t, gamma);
        if c == 0 {
            return Err(Error::Degenerate(gamma));
        }
        let s = chi.value(t, alpha) * inv_mod(c, p) % p;
        g0 = group.mul(&g0, &GroupElem::root_element(t.n, beta, s));
    }
    Ok(g0)
}

/// Realizes `V_{S,a}` as functions with `f(hg) = xi(h) f(g)` on `P_S` under
/// right translation, and checks that `g_0 f_0` has `g+`-weight `lambda`:
/// `v(g(1+u)) = e^{lambda(u)} v(g)` for every `g` and every `1+u in G+`.
pub fn weight_vector_check(group: &Group, chi: &NondegChar, cf: &CanonicalForm, caps: &Caps) -> Result<bool> {
    let order = group.check_enumerable(caps, "weight vector check")?;
    let t = group.tables();
    let p = group.p();
    let ps = Subgroup::coordinate(group, &build_p_s(t, &cf.lsets));
    let xi_ps = xi_exponents(group, &cf.form, &ps);
    let g0 = weight_shift(group, chi, cf)?;
    // v(g) = f0(g g0) = xi(g g0) on P_S g0^-1, zero elsewhere
    let v = |g: &GroupElem| -> Option<u32> { ps.position(group.index(&group.mul(g, &g0))).map(|pos| xi_ps[pos]) };
    if v(&group.inv(&g0)).is_none() {
        return Ok(false);
    }
    let gplus = group.coordinate_subgroup(&t.r_plus);
    let us: Vec<(GroupElem, u32)> = gplus
        .iter()
        .map(|&u| {
            let e = group.element(u);
            let w = chi.form().eval(&group.coords(&e), p);
            (e, w)
        })
        .collect();
    for gi in 0..order {
        let g = group.element(gi);
        let vg = v(&g);
        for (u, w) in &us {
            let lhs = v(&group.mul(&g, u));
            let rhs = vg.map(|e| (e + w) % p);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `chi_{S,a}` by the orbit formula equals `ind_{P_S}^G xi_{S,a}`.
pub fn character_formula_agreement(
    group: &Group,
    classes: &ConjugacyClasses,
    cf: &CanonicalForm,
    caps: &Caps,
) -> Result<bool> {
    let orbit = orbit_of(group.tables(), group.prime(), &cf.form, caps)?;
    let by_orbit = orbit_character(group, &orbit, caps)?;
    let xi = xi_from_form(group, &cf.form, &build_p_s(group.tables(), &cf.lsets))?;
    let induced = induce_character(group, classes, &xi)?;
    Ok(by_orbit == induced)
}

/// Induction from some associative polarization other than the coordinate
/// one, found by exhaustive subspace search; `None` when the search is out of
/// range or only finds `p_S`.
pub fn polarization_independence(
    group: &Group,
    classes: &ConjugacyClasses,
    cf: &CanonicalForm,
    caps: &Caps,
) -> Result<Option<bool>> {
    let t = group.tables();
    if t.dim() > 6 || group.p() > 3 {
        return Ok(None);
    }
    let alg = NilpotentAlgebra::ut(t, group.p());
    let lam: Vec<u32> = cf.form.coords.iter().map(|&c| u32::from(c)).collect();
    let ps_roots = build_p_s(t, &cf.lsets).roots;
    let total = t.dim() + alg.stabilizer_dim(&lam);
    let dim = total / 2;
    let candidates = crate::linalg::subspaces(t.dim(), dim, group.p());
    let ps_basis: Vec<Vec<u32>> = {
        let mut b: Vec<Vec<u32>> =
            ps_roots.iter().map(|r| (0..t.dim()).map(|c| u32::from(c == t.index(*r))).collect()).collect();
        crate::linalg::rref(&mut b, group.p());
        b
    };
    let other = candidates.into_iter().find(|b| *b != ps_basis && alg.polarization_verdict(b, &lam).holds());
    let Some(basis) = other else {
        return Ok(None);
    };
    let sub = Arc::new(Subgroup::from_basis(group, &basis));
    let xi = xi_on_subgroup(group, &cf.form, sub)?;
    let induced = induce_character(group, classes, &xi)?;
    let orbit = orbit_of(t, group.prime(), &cf.form, caps)?;
    Ok(Some(induced == orbit_character(group, &orbit, caps)?))
}

/// For `mu = g . lambda_{S,a}` with the translated polarization
/// `g p_S g^-1`: the induced character equals the orbit character of
/// `lambda_{S,a}`.
pub fn translated_polarization_check(
    group: &Group,
    classes: &ConjugacyClasses,
    cf: &CanonicalForm,
    g: &GroupElem,
    caps: &Caps,
) -> Result<bool> {
    let t = group.tables();
    let mu = coadjoint(group, g, &cf.form);
    let ps = Subgroup::coordinate(group, &build_p_s(t, &cf.lsets));
    let translated = Arc::new(ps.conjugate(group, g));
    let xi = xi_on_subgroup(group, &mu, translated)?;
    let induced = induce_character(group, classes, &xi)?;
    let orbit = orbit_of(t, group.prime(), &cf.form, caps)?;
    Ok(induced == orbit_character(group, &orbit, caps)?)
}
