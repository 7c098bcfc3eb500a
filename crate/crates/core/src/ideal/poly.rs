use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sparse polynomial with integer coefficients in `nvars` variables.
///
/// A monomial is its exponent vector; for polynomials on `g*` variable `r`
/// is `x_r` in the global root order, so keys sort by that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars);
        let mut e = vec![0; nvars];
        e[v] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u8>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u8>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let drop = {
            let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *slot += c;
            slot.is_zero()
        };
        if drop {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u8>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| u32::from(x)).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(|e| e.iter().map(|&x| u32::from(x)).sum::<u32>());
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    /// Variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.terms.keys().any(|e| e[v] > 0)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Coefficient of `v^d`, as a polynomial in which `v` no longer occurs.
    pub fn coefficient_of(&self, v: usize, d: u8) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut e = e.clone();
                e[v] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Drops variables `>= keep`, which must not occur.
    pub fn truncate_vars(&self, keep: usize) -> Self {
        let mut out = Self::zero(keep);
        for (e, c) in &self.terms {
            assert!(e[keep..].iter().all(|&x| x == 0), "variable beyond {} occurs", keep);
            out.add_term(e[..keep].to_vec(), c.clone());
        }
        out
    }

    /// Embeds into a ring with more variables.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.resize(nvars, 0);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Value at a point of `F_p^nvars`.
    pub fn eval_mod(&self, point: &[u32], p: u32) -> u32 {
        assert_eq!(point.len(), self.nvars);
        let pb = BigInt::from(p);
        let mut acc: u64 = 0;
        for (e, c) in &self.terms {
            let mut m: u64 = c.mod_floor(&pb).to_u64().unwrap();
            for (v, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    m = m * u64::from(point[v]) % u64::from(p);
                }
            }
            acc = (acc + m) % u64::from(p);
        }
        acc as u32
    }

    /// Substitutes `vars[v]` for each variable.
    pub fn substitute(&self, vars: &[MultiPoly]) -> MultiPoly {
        assert_eq!(vars.len(), self.nvars);
        let target = vars.first().map_or(0, |v| v.nvars);
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut m = MultiPoly::constant(target, c.clone());
            for (v, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    m = m.mul(&vars[v]);
                }
            }
            out = out.add(&m);
        }
        out
    }

    /// Reduces coefficients to `F_p` form for fast repeated evaluation.
    pub fn compile(&self, p: u32) -> CompiledPoly {
        let pb = BigInt::from(p);
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let c = c.mod_floor(&pb).to_u32().unwrap();
                (c != 0).then(|| {
                    let f: Vec<(usize, u8)> =
                        e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(v, &x)| (v, x)).collect();
                    (c, f)
                })
            })
            .collect();
        CompiledPoly { p, terms }
    }

    /// `+1` or `-1` if `other = ±self`, else `None`.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        if self == other {
            Some(1)
        } else if self.is_zero() {
            None
        } else if *self == other.neg() {
            Some(-1)
        } else {
            None
        }
    }

    /// Leading coefficient sign of the largest monomial.
    pub fn leading_sign(&self) -> i8 {
        match self.terms.iter().next_back() {
            None => 0,
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }
}

/// Coefficients reduced mod `p`, zero terms dropped.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    p: u32,
    terms: Vec<(u32, Vec<(usize, u8)>)>,
}

impl CompiledPoly {
    pub fn eval(&self, point: &[u8]) -> u32 {
        let p = u64::from(self.p);
        let mut acc = 0u64;
        for (c, f) in &self.terms {
            let mut m = u64::from(*c);
            for &(v, x) in f {
                for _ in 0..x {
                    m = m * u64::from(point[v]) % p;
                }
            }
            acc += m;
        }
        (acc % p) as u32
    }
}

/// Determinant by Laplace expansion along rows, memoised on the set of
/// columns still available.
pub fn determinant(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let size = m.len();
    assert!(m.iter().all(|r| r.len() == size));
    assert!(size < 32);
    let mut memo: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    det_rec(m, 0, (1u32 << size) - 1, nvars, &mut memo)
}

fn det_rec(
    m: &[Vec<MultiPoly>],
    row: usize,
    cols: u32,
    nvars: usize,
    memo: &mut BTreeMap<u32, MultiPoly>,
) -> MultiPoly {
    if row == m.len() {
        return MultiPoly::one(nvars);
    }
    if let Some(d) = memo.get(&cols) {
        return d.clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    let mut sign_neg = false;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let minor = det_rec(m, row + 1, cols & !(1 << c), nvars, memo);
            let term = entry.mul(&minor);
            acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
        }
        sign_neg = !sign_neg;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn two_by_two() {
        let m = vec![vec![v(4, 0), v(4, 1)], vec![v(4, 2), v(4, 3)]];
        let d = determinant(&m, 4);
        assert_eq!(d, v(4, 0).mul(&v(4, 3)).sub(&v(4, 1).mul(&v(4, 2))));
        assert_eq!(d.degree(), Some(2));
        assert!(d.is_homogeneous());
    }

    #[test]
    fn identity_and_triangular() {
        let n = 1;
        let one = MultiPoly::one(n);
        let z = MultiPoly::zero(n);
        let x = v(n, 0);
        let m = vec![
            vec![x.clone(), one.clone(), one.clone()],
            vec![z.clone(), x.clone(), one.clone()],
            vec![z.clone(), z.clone(), x.clone()],
        ];
        assert_eq!(determinant(&m, n), x.mul(&x).mul(&x));
        assert_eq!(determinant(&[], 3), MultiPoly::one(3));
    }

    #[test]
    fn canonical_zero_and_constant() {
        let p = v(2, 0).sub(&v(2, 0));
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
        assert_eq!(MultiPoly::constant(2, BigInt::from(7)).eval_mod(&[1, 1], 5), 2);
        assert_eq!(MultiPoly::constant(2, BigInt::from(-1)).eval_mod(&[0, 0], 3), 2);
    }

    #[test]
    fn coefficients_and_substitution() {
        let x = v(2, 0);
        let t = v(2, 1);
        let p = x.mul(&t).mul(&t).add(&x).sub(&t);
        assert_eq!(p.coefficient_of(1, 2), x);
        assert_eq!(p.coefficient_of(1, 0), x);
        assert_eq!(p.coefficient_of(1, 1), MultiPoly::constant(2, BigInt::from(-1)));
        let s = p.substitute(&[MultiPoly::var(1, 0), MultiPoly::constant(1, BigInt::from(2))]);
        // 4x + x - 2
        assert_eq!(s, MultiPoly::var(1, 0).scale(&BigInt::from(5)).sub(&MultiPoly::constant(1, BigInt::from(2))));
    }

    proptest! {
        #[test]
        fn det_is_multiplicative_on_points(a in proptest::collection::vec(0u32..5, 9), b in proptest::collection::vec(0u32..5, 9)) {
            let nv = 9;
            let x: Vec<Vec<MultiPoly>> = (0..3).map(|i| (0..3).map(|j| v(nv, 3 * i + j)).collect()).collect();
            let d = determinant(&x, nv);
            let prod: Vec<u32> = (0..9).map(|ij| {
                let (i, j) = (ij / 3, ij % 3);
                (0..3).map(|l| a[3 * i + l] * b[3 * l + j]).sum::<u32>() % 5
            }).collect();
            let lhs = d.eval_mod(&prod, 5);
            let rhs = d.eval_mod(&a, 5) * d.eval_mod(&b, 5) % 5;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compiled_matches_eval(pt in proptest::collection::vec(0u8..7, 3), c in -20i64..20) {
            let p = v(3, 0).mul(&v(3, 1)).scale(&BigInt::from(c)).add(&v(3, 2).mul(&v(3, 2))).sub(&MultiPoly::constant(3, BigInt::from(c)));
            let pt32: Vec<u32> = pt.iter().map(|&x| u32::from(x)).collect();
            prop_assert_eq!(p.compile(7).eval(&pt), p.eval_mod(&pt32, 7));
        }
    }
}
