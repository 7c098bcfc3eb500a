//! Positional combinatorics of the roots of `UT(n)`: the partition
//! `R = R+ ⊔ R0 ⊔ R-`, the simple roots, subsets `S ⊆ Π`, the sets `L_S`
//! and the parameter spaces of the canonical forms and Hecke basis.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Prime;

/// A root `(i, j)` with `1 <= i < j <= n`, labelling the matrix unit `E_ij`.
///
/// The ordering is the total order used throughout: `a < b` when `a` lies in
/// a higher row, or in the same row strictly to the right. The smallest root
/// is `(1, n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub const fn new(i: usize, j: usize) -> Self {
        Root { i, j }
    }
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.i.cmp(&other.i).then(other.j.cmp(&self.j))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(i,j) + (j,s) = (i,s)`, in either order; `None` when undefined.
pub fn root_sum(a: Root, b: Root) -> Option<Root> {
    if a.j == b.i {
        Some(Root::new(a.i, b.j))
    } else if b.j == a.i {
        Some(Root::new(b.i, a.j))
    } else {
        None
    }
}

/// Which part of the partition a root falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Plus,
    Zero,
    Minus,
}

/// All root data for a fixed `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTables {
    pub n: usize,
    pub k: usize,
    pub eps: usize,
    /// All roots in ascending order; the position in this list is the
    /// coordinate index used by linear forms and polynomials.
    pub roots: Vec<Root>,
    pub r_plus: Vec<Root>,
    pub r_zero: Vec<Root>,
    pub r_minus: Vec<Root>,
    pub pi0: Vec<Root>,
    pub pi: Vec<Root>,
    pos: [[u8; 9]; 9],
}

pub const MAX_N: usize = 8;

impl RootTables {
    pub fn new(n: usize) -> Result<Self> {
        if !(3..=MAX_N).contains(&n) {
            return Err(Error::BadSize(n));
        }
        let mut roots = Vec::new();
        for i in 1..n {
            for j in (i + 1..=n).rev() {
                roots.push(Root::new(i, j));
            }
        }
        debug_assert!(roots.windows(2).all(|w| w[0] < w[1]));
        let mut pos = [[u8::MAX; 9]; 9];
        for (idx, r) in roots.iter().enumerate() {
            pos[r.i][r.j] = idx as u8;
        }
        let k = (n - 1) / 2;
        let eps = usize::from(n % 2 == 0);
        let part = |r: &Root| classify(n, *r);
        let r_plus = roots.iter().copied().filter(|r| part(r) == Part::Plus).collect();
        let r_zero = roots.iter().copied().filter(|r| part(r) == Part::Zero).collect();
        let r_minus = roots.iter().copied().filter(|r| part(r) == Part::Minus).collect();
        let mut pi0: Vec<Root> = (1..=k).map(|i| Root::new(i, i + 1)).collect();
        let mut pi: Vec<Root> = (1..=k).map(|i| Root::new(i, n - i)).collect();
        pi0.sort();
        pi.sort();
        Ok(RootTables { n, k, eps, roots, r_plus, r_zero, r_minus, pi0, pi, pos })
    }

    /// `N = n(n-1)/2`.
    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    pub fn part(&self, r: Root) -> Part {
        classify(self.n, r)
    }

    pub fn is_root(&self, i: usize, j: usize) -> bool {
        1 <= i && i < j && j <= self.n
    }

    pub fn root(&self, i: usize, j: usize) -> Result<Root> {
        if self.is_root(i, j) {
            Ok(Root::new(i, j))
        } else {
            Err(Error::BadRoot(i, j))
        }
    }

    /// Coordinate index of a root.
    pub fn index(&self, r: Root) -> usize {
        let p = self.pos[r.i][r.j];
        debug_assert!(p != u8::MAX, "not a root: {}", r);
        p as usize
    }

    /// Coordinate index of `(i, j)`, or `None` if it is not a root.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        if self.is_root(i, j) {
            Some(self.pos[i][j] as usize)
        } else {
            None
        }
    }

    /// Bit mask over coordinate indices.
    pub fn mask(&self, roots: &[Root]) -> u64 {
        roots.iter().fold(0, |m, r| m | (1u64 << self.index(*r)))
    }

    pub fn in_pi(&self, r: Root) -> bool {
        r.i <= self.k && r.i + r.j == self.n
    }

    pub fn in_pi0(&self, r: Root) -> bool {
        r.i <= self.k && r.j == r.i + 1
    }

    /// The Π root in row `i`, for `1 <= i <= k`.
    pub fn pi_root(&self, i: usize) -> Root {
        Root::new(i, self.n - i)
    }

    pub fn r_plus_count(&self) -> usize {
        self.r_plus.len()
    }

    pub fn r_zero_count(&self) -> usize {
        self.r_zero.len()
    }
}

fn classify(n: usize, r: Root) -> Part {
    match (r.i + r.j).cmp(&(n + 1)) {
        Ordering::Less => Part::Plus,
        Ordering::Equal => Part::Zero,
        Ordering::Greater => Part::Minus,
    }
}

/// A subset `S ⊆ Π`, stored as a bit mask over rows: bit `i-1` is set when
/// `(i, n-i) ∈ S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    mask: u32,
    k: u8,
}

impl Subset {
    pub fn empty(t: &RootTables) -> Self {
        Subset { mask: 0, k: t.k as u8 }
    }

    pub fn full(t: &RootTables) -> Self {
        Subset { mask: (1u32 << t.k) - 1, k: t.k as u8 }
    }

    pub fn from_mask(t: &RootTables, mask: u32) -> Result<Self> {
        if mask >> t.k != 0 {
            return Err(Error::Invalid(alloc::format!("subset mask {:#b} exceeds k = {}", mask, t.k)));
        }
        Ok(Subset { mask, k: t.k as u8 })
    }

    pub fn from_roots(t: &RootTables, roots: &[Root]) -> Result<Self> {
        let mut mask = 0;
        for &r in roots {
            if !t.in_pi(r) {
                return Err(Error::NotInPi(r));
            }
            mask |= 1 << (r.i - 1);
        }
        Ok(Subset { mask, k: t.k as u8 })
    }

    /// All `2^k` subsets, by ascending mask.
    pub fn all(t: &RootTables) -> impl Iterator<Item = Subset> {
        let k = t.k as u8;
        (0..1u32 << t.k).map(move |mask| Subset { mask, k })
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// Whether the Π root of row `i` belongs to `S`.
    pub fn has_row(&self, i: usize) -> bool {
        i >= 1 && i <= self.k as usize && self.mask >> (i - 1) & 1 == 1
    }

    pub fn contains(&self, t: &RootTables, r: Root) -> bool {
        t.in_pi(r) && self.has_row(r.i)
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Members in ascending root order.
    pub fn roots(&self, t: &RootTables) -> Vec<Root> {
        (1..=t.k).filter(|&i| self.has_row(i)).map(|i| t.pi_root(i)).collect()
    }
}

/// The sets `L_S^+`, `L_S^0`, `L_S^00`, `L_S^-`, each ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSets {
    pub plus: Vec<Root>,
    pub zero: Vec<Root>,
    pub zerozero: Vec<Root>,
    pub minus: Vec<Root>,
}

impl LSets {
    /// `L_S`, ascending.
    pub fn all(&self) -> Vec<Root> {
        let mut v: Vec<Root> =
            self.plus.iter().chain(&self.zero).chain(&self.zerozero).chain(&self.minus).copied().collect();
        v.sort();
        v
    }

    /// The domain `L_S^0 ⊔ L_S^00 ⊔ L_S^-` of the parameters `a`, ascending.
    pub fn a_domain(&self) -> Vec<Root> {
        let mut v: Vec<Root> = self.zero.iter().chain(&self.zerozero).chain(&self.minus).copied().collect();
        v.sort();
        v
    }

    /// `R_S = R+ ⊔ L_S`, ascending.
    pub fn r_s(&self, t: &RootTables) -> Vec<Root> {
        let mut v = t.r_plus.clone();
        v.extend(self.all());
        v.sort();
        v
    }
}

/// The row-`i` root of `L_S^0 ⊔ L_S^+` (or of `L_S^00` for `i = k+1`) sits
/// directly below the Π root of the nearest row `i* < i` whose Π root is
/// outside `S`, or in the last column when there is no such row.
fn l_column(t: &RootTables, s: &Subset, i: usize) -> usize {
    let i_star = (1..i.min(t.k + 1)).rev().find(|&r| !s.has_row(r)).unwrap_or(0);
    t.n - i_star
}

pub fn compute_lsets(t: &RootTables, s: &Subset) -> LSets {
    let mut plus = Vec::new();
    let mut zero = Vec::new();
    for i in 1..=t.k {
        let r = Root::new(i, l_column(t, s, i));
        if s.has_row(i) {
            plus.push(r);
        } else {
            zero.push(r);
        }
    }
    let zerozero = if t.eps == 1 { alloc::vec![Root::new(t.k + 1, l_column(t, s, t.k + 1))] } else { Vec::new() };
    let mut minus: Vec<Root> = plus.iter().map(|r| Root::new(t.n - r.i, r.j)).collect();
    minus.sort();
    LSets { plus, zero, zerozero, minus }
}

/// A parameter vector `a ∈ Λ_S`: one value per root of the domain
/// `L_S^0 ⊔ L_S^00 ⊔ L_S^-`, ascending, nonzero on `L_S^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AVector {
    pub roots: Vec<Root>,
    pub values: Vec<u32>,
}

impl AVector {
    pub fn new(lsets: &LSets, values: Vec<u32>, p: Prime) -> Result<Self> {
        let roots = lsets.a_domain();
        if roots.len() != values.len() {
            return Err(Error::BadParameter(alloc::format!("expected {} values, got {}", roots.len(), values.len())));
        }
        for (r, &v) in roots.iter().zip(&values) {
            if v >= p.get() {
                return Err(Error::BadParameter(alloc::format!("value {} at {} not reduced mod {}", v, r, p)));
            }
            if v == 0 && lsets.zero.contains(r) {
                return Err(Error::BadParameter(alloc::format!("a must be nonzero at {}", r)));
            }
        }
        Ok(AVector { roots, values })
    }

    pub fn get(&self, r: Root) -> Option<u32> {
        self.roots.iter().position(|&x| x == r).map(|i| self.values[i])
    }
}

/// Odometer over per-slot value ranges, first slot most significant.
pub(crate) fn odometer(ranges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if ranges.iter().any(|&(lo, hi)| lo >= hi) {
        return out;
    }
    let mut cur: Vec<u32> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(cur.clone());
        let mut slot = ranges.len();
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            cur[slot] += 1;
            if cur[slot] < ranges[slot].1 {
                break;
            }
            cur[slot] = ranges[slot].0;
        }
    }
}

/// All of `Λ_S` in lexicographic order; `q^(s+ε)(q-1)^(k-s)` vectors.
pub fn enumerate_lambda_s(lsets: &LSets, p: Prime) -> Vec<AVector> {
    let roots = lsets.a_domain();
    let ranges: Vec<(u32, u32)> = roots.iter().map(|r| (u32::from(lsets.zero.contains(r)), p.get())).collect();
    odometer(&ranges).into_iter().map(|values| AVector { roots: roots.clone(), values }).collect()
}

/// A parameter vector `b ∈ Λ'_S`: `(b_1, ..., b_{k+ε})` with `b_i ≠ 0`
/// whenever `(i, n-i) ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BVector(pub Vec<u32>);

impl BVector {
    pub fn new(t: &RootTables, s: &Subset, values: Vec<u32>, p: Prime) -> Result<Self> {
        if values.len() != t.k + t.eps {
            return Err(Error::BadParameter(alloc::format!("expected {} values, got {}", t.k + t.eps, values.len())));
        }
        for (idx, &v) in values.iter().enumerate() {
            if v >= p.get() {
                return Err(Error::BadParameter(alloc::format!("b_{} = {} not reduced", idx + 1, v)));
            }
            if v == 0 && s.has_row(idx + 1) {
                return Err(Error::BadParameter(alloc::format!("b_{} must be nonzero", idx + 1)));
            }
        }
        Ok(BVector(values))
    }

    /// `b_i` (1-based), read as zero beyond `k + ε`.
    pub fn get(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.0.len() {
            self.0[i - 1]
        } else {
            0
        }
    }
}

/// All of `Λ'_S` in lexicographic order; `(q-1)^s q^(k+ε-s)` vectors.
pub fn enumerate_lambda_prime(t: &RootTables, s: &Subset, p: Prime) -> Vec<BVector> {
    let ranges: Vec<(u32, u32)> = (1..=t.k + t.eps).map(|i| (u32::from(s.has_row(i)), p.get())).collect();
    odometer(&ranges).into_iter().map(BVector).collect()
}

/// The unique `β ∈ R \ R_S` with `α + β ∈ S ⊔ L_S^0`, for `α ∈ R+ \ S`.
pub fn companion_beta(alpha: Root, t: &RootTables, s: &Subset, lsets: &LSets) -> Result<Root> {
    if t.part(alpha) != Part::Plus || s.contains(t, alpha) {
        return Err(Error::Invalid(alloc::format!("{} is not in R+ \\ S", alpha)));
    }
    let r_s = t.mask(&lsets.r_s(t));
    let target = t.mask(&s.roots(t)) | t.mask(&lsets.zero);
    let hits: Vec<Root> = t
        .roots
        .iter()
        .copied()
        .filter(|&b| r_s >> t.index(b) & 1 == 0)
        .filter(|&b| matches!(root_sum(alpha, b), Some(c) if target >> t.index(c) & 1 == 1))
        .collect();
    match hits.as_slice() {
        [b] => Ok(*b),
        _ => Err(Error::NotUnique(alloc::format!("{} candidates for the companion of {}", hits.len(), alpha))),
    }
}

/// `R+ \ S` in ascending order, paired with the companions `β_i`.
pub fn companion_pairs(t: &RootTables, s: &Subset, lsets: &LSets) -> Result<Vec<(Root, Root)>> {
    t.r_plus
        .iter()
        .copied()
        .filter(|&a| !s.contains(t, a))
        .map(|a| companion_beta(a, t, s, lsets).map(|b| (a, b)))
        .collect()
}

/// Checks that for `i < j` every defined sum `α_i + β_j` falls in
/// `(R+ \ (S ⊔ Π0)) ⊔ L_S^+`.
pub fn companion_sums_avoid_s(t: &RootTables, s: &Subset, lsets: &LSets) -> Result<bool> {
    let pairs = companion_pairs(t, s, lsets)?;
    let ok_mask = t
        .r_plus
        .iter()
        .copied()
        .filter(|&r| !s.contains(t, r) && !t.in_pi0(r))
        .fold(t.mask(&lsets.plus), |m, r| m | 1u64 << t.index(r));
    for (i, &(a, _)) in pairs.iter().enumerate() {
        for &(_, b) in &pairs[i + 1..] {
            if let Some(c) = root_sum(a, b) {
                if ok_mask >> t.index(c) & 1 == 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// For `α = (i, i+1) ∈ Π0 \ Π`: `β(α) = (i+1, n-i) ∈ R0` and
/// `γ(α) = (i, n-i) ∈ Π \ Π0`, with `α + β(α) = γ(α)`.
pub fn pi0_companions(alpha: Root, t: &RootTables) -> Result<(Root, Root)> {
    if !t.in_pi0(alpha) || t.in_pi(alpha) {
        return Err(Error::NotSimple(alpha));
    }
    let i = alpha.i;
    Ok((Root::new(i + 1, t.n - i), Root::new(i, t.n - i)))
}

/// For `α = (i, n-i) ∈ Π \ S`: the unique `γ(α) ∈ L_S^0` in row `i` strictly
/// right of `α`, and `β(α) = (n-i, j*)` with `α + β(α) = γ(α)`.
pub fn weight_companions(alpha: Root, t: &RootTables, s: &Subset, lsets: &LSets) -> Result<(Root, Root)> {
    if !t.in_pi(alpha) {
        return Err(Error::NotInPi(alpha));
    }
    if s.contains(t, alpha) {
        return Err(Error::Invalid(alloc::format!("{} lies in S", alpha)));
    }
    let hits: Vec<Root> = lsets.zero.iter().copied().filter(|g| g.i == alpha.i && g.j > alpha.j).collect();
    match hits.as_slice() {
        [g] => Ok((*g, Root::new(alpha.j, g.j))),
        _ => Err(Error::NotUnique(alloc::format!("{} L_S^0 roots right of {}", hits.len(), alpha))),
    }
}

/// `C(k, s)`.
pub fn binomial(k: u64, s: u64) -> u128 {
    (0..s).fold(1u128, |acc, i| acc * u128::from(k - i) / u128::from(i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn r(i: usize, j: usize) -> Root {
        Root::new(i, j)
    }

    fn p(x: u32) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn tables_small_cases() {
        let t = RootTables::new(3).unwrap();
        assert_eq!(t.r_plus, vec![r(1, 2)]);
        assert_eq!(t.r_zero, vec![r(1, 3)]);
        assert_eq!(t.r_minus, vec![r(2, 3)]);
        assert_eq!(t.pi, vec![r(1, 2)]);
        assert_eq!(t.pi0, vec![r(1, 2)]);
        assert_eq!((t.k, t.eps), (1, 0));

        let t = RootTables::new(4).unwrap();
        assert_eq!(t.r_plus, vec![r(1, 3), r(1, 2)]);
        assert_eq!(t.r_zero, vec![r(1, 4), r(2, 3)]);
        assert_eq!(t.pi, vec![r(1, 3)]);
        assert_eq!(t.pi0, vec![r(1, 2)]);
        assert_eq!((t.k, t.eps), (1, 1));

        let t = RootTables::new(5).unwrap();
        assert_eq!(t.pi, vec![r(1, 4), r(2, 3)]);
        assert_eq!(t.pi0, vec![r(1, 2), r(2, 3)]);
        assert_eq!(t.r_minus, vec![r(2, 5), r(3, 5), r(3, 4), r(4, 5)]);
        assert_eq!((t.k, t.eps), (2, 0));
        assert!(RootTables::new(2).is_err());
    }

    #[test]
    fn order_starts_at_corner() {
        let t = RootTables::new(6).unwrap();
        assert_eq!(t.roots[0], r(1, 6));
        assert_eq!(t.roots[1], r(1, 5));
        assert!(r(2, 6) > r(1, 2));
        assert!(r(2, 3) > r(2, 4));
    }

    #[test]
    fn sums() {
        assert_eq!(root_sum(r(1, 2), r(2, 3)), Some(r(1, 3)));
        assert_eq!(root_sum(r(1, 2), r(3, 4)), None);
        assert_eq!(root_sum(r(2, 3), r(3, 5)), Some(r(2, 5)));
        assert_eq!(root_sum(r(3, 5), r(2, 3)), Some(r(2, 5)));
    }

    #[test]
    fn lsets_examples() {
        let t = RootTables::new(5).unwrap();
        let l = compute_lsets(&t, &Subset::from_roots(&t, &[r(1, 4)]).unwrap());
        assert_eq!((l.plus.clone(), l.minus.clone(), l.zero.clone()), (vec![r(1, 5)], vec![r(4, 5)], vec![r(2, 5)]));
        let l = compute_lsets(&t, &Subset::from_roots(&t, &[r(2, 3)]).unwrap());
        assert_eq!((l.plus.clone(), l.minus.clone(), l.zero.clone()), (vec![r(2, 4)], vec![r(3, 4)], vec![r(1, 5)]));
        let l = compute_lsets(&t, &Subset::full(&t));
        assert_eq!(l.plus, vec![r(1, 5), r(2, 5)]);
        assert_eq!(l.minus, vec![r(3, 5), r(4, 5)]);
        assert!(l.zero.is_empty());
        let l = compute_lsets(&t, &Subset::empty(&t));
        assert_eq!(l.zero, vec![r(1, 5), r(2, 4)]);

        let t = RootTables::new(4).unwrap();
        let l = compute_lsets(&t, &Subset::empty(&t));
        assert_eq!(l.zero, vec![r(1, 4)]);
        assert_eq!(l.zerozero, vec![r(2, 3)]);
        assert!(l.plus.is_empty() && l.minus.is_empty());
        let l = compute_lsets(&t, &Subset::full(&t));
        assert_eq!(l.plus, vec![r(1, 4)]);
        assert_eq!(l.zerozero, vec![r(2, 4)]);
        assert_eq!(l.minus, vec![r(3, 4)]);
    }

    #[test]
    fn lambda_s_counts() {
        let t = RootTables::new(3).unwrap();
        let l = compute_lsets(&t, &Subset::empty(&t));
        assert_eq!(enumerate_lambda_s(&l, p(2)).len(), 1);
        let t = RootTables::new(4).unwrap();
        let l = compute_lsets(&t, &Subset::full(&t));
        assert_eq!(enumerate_lambda_s(&l, p(2)).len(), 4);
        let t = RootTables::new(5).unwrap();
        let l = compute_lsets(&t, &Subset::empty(&t));
        let all = enumerate_lambda_s(&l, p(3));
        assert_eq!(all.len(), 4);
        assert!(all.windows(2).all(|w| w[0].values < w[1].values));
    }

    #[test]
    fn companions() {
        let t = RootTables::new(3).unwrap();
        let s = Subset::empty(&t);
        let l = compute_lsets(&t, &s);
        assert_eq!(companion_beta(r(1, 2), &t, &s, &l).unwrap(), r(2, 3));
        assert_eq!(weight_companions(r(1, 2), &t, &s, &l).unwrap(), (r(1, 3), r(2, 3)));

        let t = RootTables::new(5).unwrap();
        let s = Subset::from_roots(&t, &[r(1, 4)]).unwrap();
        let l = compute_lsets(&t, &s);
        assert_eq!(companion_beta(r(1, 2), &t, &s, &l).unwrap(), r(2, 4));
        assert_eq!(weight_companions(r(2, 3), &t, &s, &l).unwrap(), (r(2, 5), r(3, 5)));

        let t = RootTables::new(4).unwrap();
        let s = Subset::empty(&t);
        let l = compute_lsets(&t, &s);
        assert_eq!(companion_beta(r(1, 3), &t, &s, &l).unwrap(), r(3, 4));
        assert_eq!(weight_companions(r(1, 3), &t, &s, &l).unwrap(), (r(1, 4), r(3, 4)));
        assert_eq!(pi0_companions(r(1, 2), &t).unwrap(), (r(2, 3), r(1, 3)));

        let t = RootTables::new(5).unwrap();
        assert_eq!(pi0_companions(r(1, 2), &t).unwrap(), (r(2, 4), r(1, 4)));
        assert!(pi0_companions(r(2, 3), &t).is_err());
        let t = RootTables::new(6).unwrap();
        assert_eq!(pi0_companions(r(2, 3), &t).unwrap(), (r(3, 4), r(2, 4)));
    }

    #[test]
    fn exhaustive_invariants() {
        for n in 3..=MAX_N {
            let t = RootTables::new(n).unwrap();
            assert_eq!(t.r_plus.len() + t.r_zero.len() + t.r_minus.len(), n * (n - 1) / 2);
            assert_eq!(t.r_zero.len(), t.k + t.eps);
            let inter: Vec<Root> = t.pi0.iter().copied().filter(|x| t.pi.contains(x)).collect();
            if n % 2 == 0 {
                assert!(inter.is_empty());
            } else {
                assert_eq!(inter, vec![r(t.k, t.k + 1)]);
            }
            for s in Subset::all(&t) {
                let l = compute_lsets(&t, &s);
                assert_eq!(l.plus.len(), s.len());
                assert_eq!(l.minus.len(), s.len());
                assert_eq!(l.zero.len(), t.k - s.len());
                assert_eq!(l.zerozero.len(), t.eps);
                let all = l.all();
                let mut dedup = all.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
                assert!(all.iter().all(|x| t.part(*x) != Part::Plus));
                for x in &l.plus {
                    assert!(l.minus.contains(&r(n - x.i, x.j)));
                }
                if n <= 6 {
                    assert!(companion_pairs(&t, &s, &l).is_ok());
                    assert!(companion_sums_avoid_s(&t, &s, &l).unwrap());
                }
            }
        }
    }

    #[test]
    fn lambda_prime_counts() {
        for n in 3..=6 {
            let t = RootTables::new(n).unwrap();
            for q in [2u32, 3, 5] {
                let total: usize = Subset::all(&t).map(|s| enumerate_lambda_prime(&t, &s, p(q)).len()).sum();
                let expected = (q as usize).pow(t.eps as u32) * (2 * q as usize - 1).pow(t.k as u32);
                assert_eq!(total, expected);
            }
        }
    }

    proptest! {
        #[test]
        fn order_is_total_and_matches_rule(n in 3usize..=8, a in 0usize..28, b in 0usize..28) {
            let t = RootTables::new(n).unwrap();
            let (x, y) = (t.roots[a % t.dim()], t.roots[b % t.dim()]);
            let rule = y.i > x.i || (y.i == x.i && y.j <= x.j);
            prop_assert_eq!(y >= x, rule);
            prop_assert_eq!(t.index(x) < t.index(y), x < y);
        }

        #[test]
        fn lambda_s_size(n in 3usize..=7, qi in 0usize..3, m in 0u32..8) {
            let q = [2u32, 3, 5][qi];
            let t = RootTables::new(n).unwrap();
            let s = Subset::from_mask(&t, m & ((1 << t.k) - 1)).unwrap();
            let l = compute_lsets(&t, &s);
            let count = enumerate_lambda_s(&l, p(q)).len();
            let expected = (q as usize).pow((s.len() + t.eps) as u32) * (q as usize - 1).pow((t.k - s.len()) as u32);
            prop_assert_eq!(count, expected);
        }
    }
}
