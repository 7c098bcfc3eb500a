use alloc::string::String;
use alloc::vec::Vec;

use super::poly::{determinant, CompiledPoly, MultiPoly};
use crate::error::{Error, Result};
use crate::exactnum::Prime;
use crate::rootcomb::{compute_lsets, AVector, LSets, Root, RootTables, Subset};
use crate::unitri::{build_lambda_sa, LinForm, NondegChar};

/// The generic matrix entry `x_ij` (the function `lambda -> lambda(E_ij)`).
pub fn x_var(t: &RootTables, i: usize, j: usize, nvars: usize) -> Result<MultiPoly> {
    let r = t.root(i, j)?;
    Ok(MultiPoly::var(nvars, t.index(r)))
}

/// Rows and columns of `S_gamma`: `gamma` together with the roots of
/// `S ⊔ L_S^0` strictly above and strictly right of it.
pub fn s_gamma(gamma: Root, t: &RootTables, s: &Subset, lsets: &LSets) -> Result<Vec<Root>> {
    if !t.is_root(gamma.i, gamma.j) {
        return Err(Error::BadRoot(gamma.i, gamma.j));
    }
    let mut out: Vec<Root> =
        s.roots(t).into_iter().chain(lsets.zero.iter().copied()).filter(|r| r.i < gamma.i && r.j > gamma.j).collect();
    out.push(gamma);
    out.sort();
    Ok(out)
}

/// A minor of `X` with its row and column sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: MultiPoly,
}

pub fn minor_of_x(t: &RootTables, rows: &[usize], cols: &[usize]) -> Result<Minor> {
    if rows.len() != cols.len() {
        return Err(Error::Invalid(String::from("minor rows and columns differ in number")));
    }
    let nv = t.dim();
    let mut m = Vec::with_capacity(rows.len());
    for &r in rows {
        let mut row = Vec::with_capacity(cols.len());
        for &c in cols {
            if r < 1 || c > t.n {
                return Err(Error::BadRoot(r, c));
            }
            row.push(if r < c { x_var(t, r, c, nv)? } else { MultiPoly::zero(nv) });
        }
        m.push(row);
    }
    Ok(Minor { rows: rows.to_vec(), cols: cols.to_vec(), poly: determinant(&m, nv) })
}

/// `M_gamma` for `gamma ∈ S ⊔ L_S^+ ⊔ L_S^0 ⊔ L_S^00`.
pub fn minor_m_gamma(gamma: Root, t: &RootTables, s: &Subset, lsets: &LSets) -> Result<Minor> {
    let allowed = s.contains(t, gamma)
        || lsets.plus.contains(&gamma)
        || lsets.zero.contains(&gamma)
        || lsets.zerozero.contains(&gamma);
    if !allowed {
        return Err(Error::BadParameter(alloc::format!("{} is not in S ⊔ L_S^+ ⊔ L_S^0 ⊔ L_S^00", gamma)));
    }
    let sg = s_gamma(gamma, t, s, lsets)?;
    let mut rows: Vec<usize> = sg.iter().map(|r| r.i).collect();
    let mut cols: Vec<usize> = sg.iter().map(|r| r.j).collect();
    rows.sort_unstable();
    cols.sort_unstable();
    rows.dedup();
    cols.dedup();
    if rows.len() != sg.len() || cols.len() != sg.len() {
        return Err(Error::Invalid(alloc::format!("S_gamma for {} repeats a row or column", gamma)));
    }
    minor_of_x(t, &rows, &cols)
}

/// `|X - tau E|_i` as a polynomial in `tau`; `coeffs[d]` multiplies `tau^d`.
#[derive(Clone, Debug)]
pub struct TauPoly {
    pub i: usize,
    pub coeffs: Vec<MultiPoly>,
}

impl TauPoly {
    /// `P_{gamma,j}`, the coefficient of `tau^(n-2i-j)`.
    pub fn p(&self, j: usize) -> &MultiPoly {
        &self.coeffs[self.top() - j]
    }

    pub fn top(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Deletes columns `1..=i` and rows `n-i+1..=n` of `X - tau E`.
pub fn char_minor(i: usize, t: &RootTables) -> Result<TauPoly> {
    let n = t.n;
    if i < 1 || 2 * i + 1 > n {
        return Err(Error::BadParameter(alloc::format!("characteristic minor index {} out of range for n = {}", i, n)));
    }
    let nv = t.dim() + 1;
    let tau = MultiPoly::var(nv, t.dim());
    let size = n - i;
    let mut m = Vec::with_capacity(size);
    for r in 1..=size {
        let mut row = Vec::with_capacity(size);
        for c in i + 1..=n {
            row.push(if r < c {
                x_var(t, r, c, nv)?
            } else if r == c {
                tau.neg()
            } else {
                MultiPoly::zero(nv)
            });
        }
        m.push(row);
    }
    let d = determinant(&m, nv);
    let top = n - 2 * i;
    let coeffs = (0..=top).map(|e| d.coefficient_of(t.dim(), e as u8).truncate_vars(t.dim())).collect();
    Ok(TauPoly { i, coeffs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Minor { rows: Vec<usize>, cols: Vec<usize> },
    CharCoefficient { i: usize },
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub gamma: Root,
    pub kind: GeneratorKind,
    pub poly: MultiPoly,
    /// `F_gamma^0`, the value at `lambda_{S,a}`.
    pub value: u32,
    compiled: CompiledPoly,
}

impl Generator {
    /// `F_gamma(mu) = F_gamma^0`.
    pub fn holds_at(&self, mu: &[u8]) -> bool {
        self.compiled.eval(mu) == self.value
    }

    pub fn eval(&self, mu: &[u8]) -> u32 {
        self.compiled.eval(mu)
    }
}

/// Generators `F_gamma - F_gamma^0`, `gamma ∈ S ⊔ L_S`, in root order.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub p: Prime,
    pub s: Subset,
    pub lsets: LSets,
    pub a: AVector,
    pub form: LinForm,
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether `mu` lies on the variety of the generators.
    pub fn contains(&self, mu: &[u8]) -> bool {
        self.generators.iter().all(|g| g.holds_at(mu))
    }

    pub fn get(&self, gamma: Root) -> Option<&Generator> {
        self.generators.iter().find(|g| g.gamma == gamma)
    }
}

/// The polynomial `F_gamma` without evaluation data.
pub fn f_gamma(gamma: Root, t: &RootTables, s: &Subset, lsets: &LSets) -> Result<(GeneratorKind, MultiPoly)> {
    if lsets.minus.contains(&gamma) {
        let i = t.n - gamma.i;
        let tp = char_minor(i, t)?;
        Ok((GeneratorKind::CharCoefficient { i }, tp.p(1).clone()))
    } else {
        let m = minor_m_gamma(gamma, t, s, lsets)?;
        Ok((GeneratorKind::Minor { rows: m.rows, cols: m.cols }, m.poly))
    }
}

/// Polynomials of `S ⊔ L_S` for the given `S`, sharing the symbolic part
/// across all `a`.
pub fn symbolic_generators(t: &RootTables, s: &Subset) -> Result<Vec<(Root, GeneratorKind, MultiPoly)>> {
    let lsets = compute_lsets(t, s);
    let mut gammas: Vec<Root> = s.roots(t);
    gammas.extend(lsets.all());
    gammas.sort();
    gammas.into_iter().map(|g| f_gamma(g, t, s, &lsets).map(|(k, p)| (g, k, p))).collect()
}

pub fn instantiate(
    t: &RootTables,
    p: Prime,
    chi: &NondegChar,
    s: &Subset,
    a: &AVector,
    symbolic: &[(Root, GeneratorKind, MultiPoly)],
) -> Result<GeneratorSet> {
    let lsets = compute_lsets(t, s);
    let form = build_lambda_sa(t, p, chi, s, &lsets, a)?;
    let expected = t.r_zero_count() + 2 * s.len();
    if symbolic.len() != expected {
        return Err(Error::Invalid(alloc::format!("{} generators, expected r0 + 2s = {}", symbolic.len(), expected)));
    }
    let generators = symbolic
        .iter()
        .map(|(g, k, poly)| {
            let compiled = poly.compile(p.get());
            let value = compiled.eval(&form.coords);
            Generator { gamma: *g, kind: k.clone(), poly: poly.clone(), value, compiled }
        })
        .collect();
    Ok(GeneratorSet { p, s: *s, lsets, a: a.clone(), form, generators })
}

pub fn build_generators(t: &RootTables, p: Prime, chi: &NondegChar, s: &Subset, a: &AVector) -> Result<GeneratorSet> {
    let symbolic = symbolic_generators(t, s)?;
    instantiate(t, p, chi, s, a, &symbolic)
}

/// `P(lambda)` with `x_r -> lambda(E_r)`, reduced mod `p`.
pub fn evaluate_poly(poly: &MultiPoly, lambda: &LinForm, p: Prime) -> u32 {
    let pt: Vec<u32> = lambda.coords.iter().map(|&c| u32::from(c)).collect();
    poly.eval_mod(&pt, p.get())
}

/// `det` of the corner block, rows `1..=i`, columns `n-i+1..=n`.
pub fn corner_minor(i: usize, t: &RootTables) -> Result<MultiPoly> {
    let rows: Vec<usize> = (1..=i).collect();
    let cols: Vec<usize> = (t.n - i + 1..=t.n).collect();
    Ok(minor_of_x(t, &rows, &cols)?.poly)
}
