use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::group::{Caps, Group, GroupElem};
use crate::error::{Error, Result};
use crate::exactnum::Prime;
use crate::linalg;
use crate::rootcomb::{compute_lsets, enumerate_lambda_s, AVector, LSets, Part, Root, RootTables, Subset};

/// Coordinates of an element `x = sum x_r E_r` of the algebra, in root order.
pub type AlgElem = Vec<u8>;

/// A linear form on the algebra, `coords[pos(r)] = lambda(E_r)`.
///
/// In the lower-triangular picture of `g*` the value at `(i,j)` sits at
/// `y_ji`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm {
    pub coords: Vec<u8>,
}

impl LinForm {
    pub fn zero(t: &RootTables) -> Self {
        LinForm { coords: vec![0; t.dim()] }
    }

    pub fn from_values(t: &RootTables, p: Prime, values: &[(Root, u32)]) -> Self {
        let mut f = Self::zero(t);
        for &(r, v) in values {
            f.set(t, r, v % p.get());
        }
        f
    }

    pub fn get(&self, t: &RootTables, r: Root) -> u32 {
        u32::from(self.coords[t.index(r)])
    }

    pub fn set(&mut self, t: &RootTables, r: Root, v: u32) {
        self.coords[t.index(r)] = v as u8;
    }

    /// `lambda(x)` for `x` given by coordinates.
    pub fn eval(&self, x: &[u8], p: u32) -> u32 {
        let s: u64 = self.coords.iter().zip(x).map(|(&a, &b)| u64::from(a) * u64::from(b)).sum();
        (s % u64::from(p)) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The lower-triangular matrix `Y` with `Y[j][i] = lambda(E_ij)`, 0-based.
    pub fn lower_matrix(&self, t: &RootTables) -> Vec<Vec<u32>> {
        let mut y = vec![vec![0u32; t.n]; t.n];
        for r in &t.roots {
            y[r.j - 1][r.i - 1] = self.get(t, *r);
        }
        y
    }

    pub fn from_lower_matrix(t: &RootTables, y: &[Vec<u32>]) -> Self {
        let mut f = Self::zero(t);
        for r in &t.roots {
            f.set(t, *r, y[r.j - 1][r.i - 1]);
        }
        f
    }
}

fn matmul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut c = vec![vec![0u32; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
            }
        }
    }
    c
}

fn full_matrix(g: &GroupElem) -> Vec<Vec<u32>> {
    let n = g.n();
    (0..n).map(|i| (0..n).map(|j| u32::from(g.entries()[i][j])).collect()).collect()
}

/// `(g . lambda)(x) = lambda(g^-1 x g)`: the new lower matrix is the strictly
/// lower part of `g Y g^-1`.
pub fn coadjoint(group: &Group, g: &GroupElem, lambda: &LinForm) -> LinForm {
    let t = group.tables();
    let p = group.p();
    let y = lambda.lower_matrix(t);
    let gy = matmul(&full_matrix(g), &y, p);
    let res = matmul(&gy, &full_matrix(&group.inv(g)), p);
    LinForm::from_lower_matrix(t, &res)
}

/// `coadjoint(x_r(s), lambda)` by one row and one column operation.
pub fn coadjoint_root(t: &RootTables, p: u32, r: Root, s: u32, lambda: &LinForm) -> LinForm {
    let mut y = lambda.lower_matrix(t);
    let (a, b) = (r.i - 1, r.j - 1);
    let n = t.n;
    for c in 0..n {
        y[a][c] = (y[a][c] + s * y[b][c]) % p;
    }
    for row in y.iter_mut() {
        row[b] = (row[b] + (p - s) * row[a] % p) % p;
    }
    LinForm::from_lower_matrix(t, &y)
}

/// A coadjoint orbit, kept as the set of its points.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub base: LinForm,
    pub points: BTreeSet<LinForm>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, f: &LinForm) -> bool {
        self.points.contains(f)
    }
}

/// Breadth-first closure of `lambda` under every `x_r(s)`.
pub fn orbit_of(t: &RootTables, p: Prime, lambda: &LinForm, caps: &Caps) -> Result<Orbit> {
    let p = p.get();
    let mut points = BTreeSet::new();
    let mut queue = VecDeque::new();
    points.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(f) = queue.pop_front() {
        for &r in &t.roots {
            for s in 1..p {
                let g = coadjoint_root(t, p, r, s, &f);
                if !points.contains(&g) {
                    if points.len() >= caps.orbit {
                        return Err(Error::CapExceeded {
                            what: "orbit search",
                            needed: points.len() as u128 + 1,
                            cap: caps.orbit as u128,
                        });
                    }
                    points.insert(g.clone());
                    queue.push_back(g);
                }
            }
        }
    }
    Ok(Orbit { base: lambda.clone(), points })
}

/// `lambda(E_a E_b)`.
fn lambda_product(t: &RootTables, lambda: &LinForm, a: Root, b: Root) -> u32 {
    if a.j == b.i {
        lambda.get(t, Root::new(a.i, b.j))
    } else {
        0
    }
}

/// The matrix of `B(E_a, E_b) = lambda([E_a, E_b])` in root order.
pub fn skew_form(t: &RootTables, p: u32, lambda: &LinForm) -> Vec<Vec<u32>> {
    t.roots
        .iter()
        .map(|&a| {
            t.roots
                .iter()
                .map(|&b| (lambda_product(t, lambda, a, b) + p - lambda_product(t, lambda, b, a)) % p)
                .collect()
        })
        .collect()
}

/// `dim g^lambda = N - rank B_lambda`.
pub fn stabilizer_dim(t: &RootTables, p: u32, lambda: &LinForm) -> usize {
    t.dim() - linalg::rank(&skew_form(t, p, lambda), p)
}

/// A coordinate subspace `span{E_r : r in roots}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub roots: Vec<Root>,
    mask: u64,
}

impl Subalgebra {
    pub fn new(t: &RootTables, mut roots: Vec<Root>) -> Self {
        roots.sort();
        roots.dedup();
        let mask = t.mask(&roots);
        Subalgebra { roots, mask }
    }

    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    pub fn contains(&self, t: &RootTables, r: Root) -> bool {
        self.mask >> t.index(r) & 1 == 1
    }

    /// Closed under the associative product.
    pub fn is_closed(&self, t: &RootTables) -> bool {
        self.roots.iter().all(|&a| self.roots.iter().all(|&b| a.j != b.i || self.contains(t, Root::new(a.i, b.j))))
    }
}

/// Outcome of the four-part associative polarization test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationVerdict {
    pub closed: bool,
    pub square_vanishes: bool,
    pub isotropic: bool,
    pub maximal: bool,
    /// First product `E_a E_b` on which `lambda` is nonzero, if any.
    pub violation: Option<(Root, Root)>,
}

impl PolarizationVerdict {
    pub fn holds(&self) -> bool {
        self.closed && self.square_vanishes && self.isotropic && self.maximal
    }
}

pub fn is_associative_polarization(t: &RootTables, p: u32, sub: &Subalgebra, lambda: &LinForm) -> PolarizationVerdict {
    let closed = sub.is_closed(t);
    let mut violation = None;
    let mut isotropic = true;
    for &a in &sub.roots {
        for &b in &sub.roots {
            let ab = lambda_product(t, lambda, a, b);
            if ab != 0 && violation.is_none() {
                violation = Some((a, b));
            }
            if ab != lambda_product(t, lambda, b, a) {
                isotropic = false;
            }
        }
    }
    let stab = stabilizer_dim(t, p, lambda);
    PolarizationVerdict {
        closed,
        square_vanishes: violation.is_none(),
        isotropic,
        maximal: 2 * sub.dim() == t.dim() + stab,
        violation,
    }
}

/// A nondegenerate character of `g+`: a form supported on `Π0 ∪ Π`, nonzero
/// on `Π \ Π0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegChar {
    form: LinForm,
}

impl NondegChar {
    pub fn new(t: &RootTables, p: Prime, values: &[(Root, u32)]) -> Result<Self> {
        let mut form = LinForm::zero(t);
        for &(r, v) in values {
            if !t.is_root(r.i, r.j) || t.part(r) != Part::Plus {
                return Err(Error::BadRoot(r.i, r.j));
            }
            if !t.in_pi0(r) && !t.in_pi(r) {
                if v % p.get() != 0 {
                    return Err(Error::NotACharacter(r));
                }
                continue;
            }
            form.set(t, r, v % p.get());
        }
        for &r in &t.pi {
            if !t.in_pi0(r) && form.get(t, r) == 0 {
                return Err(Error::Degenerate(r));
            }
        }
        Ok(NondegChar { form })
    }

    /// The character with value 1 on `Π` and 0 on `Π0 \ Π`.
    pub fn standard(t: &RootTables, p: Prime) -> Self {
        let values: Vec<(Root, u32)> = t.pi.iter().map(|&r| (r, 1)).collect();
        Self::new(t, p, &values).expect("the standard character is nondegenerate")
    }

    pub fn value(&self, t: &RootTables, r: Root) -> u32 {
        self.form.get(t, r)
    }

    /// As a form on all of `g`, zero off `g+`.
    pub fn form(&self) -> &LinForm {
        &self.form
    }
}

/// `lambda_{S,a}`: `lambda` on `Π0 \ Π` and on `S`, `a` on
/// `L_S^0 ⊔ L_S^00 ⊔ L_S^-`, zero elsewhere.
pub fn build_lambda_sa(
    t: &RootTables,
    p: Prime,
    chi: &NondegChar,
    s: &Subset,
    lsets: &LSets,
    a: &AVector,
) -> Result<LinForm> {
    let checked = AVector::new(lsets, a.values.clone(), p)?;
    if checked.roots != a.roots {
        return Err(Error::BadParameter(String::from("parameter roots do not match L_S")));
    }
    let mut f = LinForm::zero(t);
    for &r in &t.pi0 {
        if !t.in_pi(r) {
            f.set(t, r, chi.value(t, r));
        }
    }
    for r in s.roots(t) {
        f.set(t, r, chi.value(t, r));
    }
    for (&r, &v) in a.roots.iter().zip(&a.values) {
        f.set(t, r, v);
    }
    Ok(f)
}

/// `p_S = span{E_r : r in R+ ⊔ L_S}`.
pub fn build_p_s(t: &RootTables, lsets: &LSets) -> Subalgebra {
    Subalgebra::new(t, lsets.r_s(t))
}

/// One canonical form with its combinatorial data.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub s: Subset,
    pub lsets: LSets,
    pub a: AVector,
    pub form: LinForm,
}

/// All `lambda_{S,a}`, by ascending `S` mask then lexicographic `a`.
pub fn canonical_forms(t: &RootTables, p: Prime, chi: &NondegChar) -> Vec<CanonicalForm> {
    let mut out = Vec::new();
    for s in Subset::all(t) {
        let lsets = compute_lsets(t, &s);
        for a in enumerate_lambda_s(&lsets, p) {
            let form = build_lambda_sa(t, p, chi, &s, &lsets, &a).expect("enumerated parameters are valid");
            out.push(CanonicalForm { s, lsets: lsets.clone(), a, form });
        }
    }
    out
}
