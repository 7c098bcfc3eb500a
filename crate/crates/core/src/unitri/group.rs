use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Prime;
use crate::rootcomb::{Root, RootTables};

/// Resource limits for exhaustive enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `q^N` for which the whole group (or `g*`) is enumerated.
    pub group: u128,
    /// Largest orbit explored by breadth-first search.
    pub orbit: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { group: 1_000_000, orbit: 100_000 }
    }
}

/// An upper unitriangular matrix over `F_p`, `n <= 8`. Entries are stored
/// 0-based; only the strictly upper part is ever nonzero off the diagonal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    n: u8,
    m: [[u8; 8]; 8],
}

impl GroupElem {
    pub fn identity(n: usize) -> Self {
        let mut m = [[0u8; 8]; 8];
        for (i, row) in m.iter_mut().enumerate().take(n) {
            row[i] = 1;
        }
        GroupElem { n: n as u8, m }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        u32::from(self.m[i - 1][j - 1])
    }

    /// Sets entry `(i, j)`, 1-based, `i < j`.
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(i < j);
        self.m[i - 1][j - 1] = v as u8;
    }

    /// The one-parameter element `x_r(t) = E + t E_r`.
    pub fn root_element(n: usize, r: Root, t: u32) -> Self {
        let mut g = Self::identity(n);
        g.set(r.i, r.j, t);
        g
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        let n = self.n as usize;
        let mut out = Self::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                let mut acc = 0u32;
                for k in i..=j {
                    acc += u32::from(self.m[i][k]) * u32::from(other.m[k][j]);
                }
                out.m[i][j] = (acc % p) as u8;
            }
        }
        out
    }

    pub fn inv(&self, p: u32) -> Self {
        // back substitution on (E + x)^-1, column by column
        let n = self.n as usize;
        let mut out = Self::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut acc = 0u32;
                for k in i + 1..=j {
                    acc += u32::from(self.m[i][k]) * u32::from(out.m[k][j]);
                }
                out.m[i][j] = ((p - acc % p) % p) as u8;
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n as usize)
    }

    /// The raw 0-based entries.
    pub fn entries(&self) -> &[[u8; 8]; 8] {
        &self.m
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        f.write_str("[")?;
        for i in 0..n {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.m[i][j])?;
            }
        }
        f.write_str("]")
    }
}

/// `UT(n, F_p)` together with its dense enumeration: element `E + x` has index
/// `sum_r x_r p^pos(r)` with `pos` the coordinate index of the root.
#[derive(Clone, Debug)]
pub struct Group {
    tables: RootTables,
    p: Prime,
    order: u128,
}

impl Group {
    pub fn new(tables: RootTables, p: Prime) -> Self {
        let order = (p.get() as u128).checked_pow(tables.dim() as u32).unwrap_or(u128::MAX);
        Group { tables, p, order }
    }

    pub fn build(n: usize, p: u32) -> Result<Self> {
        Ok(Self::new(RootTables::new(n)?, Prime::new(p)?))
    }

    pub fn tables(&self) -> &RootTables {
        &self.tables
    }

    pub fn n(&self) -> usize {
        self.tables.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn p(&self) -> u32 {
        self.p.get()
    }

    /// `|G| = q^N`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Fails unless `q^N` is within the cap.
    pub fn check_enumerable(&self, caps: &Caps, what: &'static str) -> Result<usize> {
        if self.order > caps.group {
            return Err(Error::CapExceeded { what, needed: self.order, cap: caps.group });
        }
        Ok(self.order as usize)
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem::identity(self.n())
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        a.mul(b, self.p())
    }

    pub fn inv(&self, a: &GroupElem) -> GroupElem {
        a.inv(self.p())
    }

    /// `g^-1 h g`.
    pub fn conj(&self, g: &GroupElem, h: &GroupElem) -> GroupElem {
        self.mul(&self.mul(&self.inv(g), h), g)
    }

    pub fn index(&self, g: &GroupElem) -> usize {
        let p = self.p() as usize;
        let mut idx = 0usize;
        for r in self.tables.roots.iter().rev() {
            idx = idx * p + g.get(r.i, r.j) as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> GroupElem {
        let p = self.p() as usize;
        let mut g = self.identity();
        for r in &self.tables.roots {
            g.set(r.i, r.j, (idx % p) as u32);
            idx /= p;
        }
        g
    }

    /// Coordinates of `g - E` in root order.
    pub fn coords(&self, g: &GroupElem) -> Vec<u8> {
        self.tables.roots.iter().map(|r| g.get(r.i, r.j) as u8).collect()
    }

    pub fn from_coords(&self, coords: &[u8]) -> GroupElem {
        let mut g = self.identity();
        for (r, &v) in self.tables.roots.iter().zip(coords) {
            g.set(r.i, r.j, u32::from(v));
        }
        g
    }

    /// Every element, in index order.
    pub fn elements(&self, caps: &Caps) -> Result<impl Iterator<Item = GroupElem> + '_> {
        let size = self.check_enumerable(caps, "group enumeration")?;
        Ok((0..size).map(move |i| self.element(i)))
    }

    /// The index of every element of `E + span{E_r : r in roots}`, ascending.
    pub fn coordinate_subgroup(&self, roots: &[Root]) -> Vec<usize> {
        let p = self.p() as usize;
        let mut weights: Vec<usize> = roots.iter().map(|r| p.pow(self.tables.index(*r) as u32)).collect();
        weights.sort_unstable();
        let mut out = alloc::vec![0usize];
        for w in weights {
            let base = out.clone();
            for t in 1..p {
                out.extend(base.iter().map(|b| b + t * w));
            }
        }
        out.sort_unstable();
        out
    }

    /// The generators `x_(i,i+1)(1)` of the group.
    pub fn simple_generators(&self) -> Vec<GroupElem> {
        (1..self.n()).map(|i| GroupElem::root_element(self.n(), Root::new(i, i + 1), 1)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn group_orders() {
        let caps = Caps::default();
        for (n, p, size) in [(3, 2, 8usize), (5, 2, 1024), (4, 3, 729)] {
            let g = Group::build(n, p).unwrap();
            let elems: Vec<GroupElem> = g.elements(&caps).unwrap().collect();
            assert_eq!(elems.len(), size);
            let mut sorted = elems.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), size);
            for (i, e) in elems.iter().enumerate().step_by(7) {
                assert_eq!(g.index(e), i);
            }
        }
        let big = Group::build(8, 5).unwrap();
        assert!(matches!(big.check_enumerable(&caps, "x"), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn coordinate_subgroup_is_closed() {
        let g = Group::build(4, 3).unwrap();
        let roots = [Root::new(1, 2), Root::new(1, 3), Root::new(1, 4)];
        let members = g.coordinate_subgroup(&roots);
        assert_eq!(members.len(), 27);
        for &a in &members {
            for &b in members.iter().step_by(5) {
                let c = g.index(&g.mul(&g.element(a), &g.element(b)));
                assert!(members.binary_search(&c).is_ok());
            }
        }
    }

    proptest! {
        #[test]
        fn group_axioms(n in 3usize..=6, pi in 0usize..3, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let p = [2u32, 3, 5][pi];
            let g = Group::build(n, p).unwrap();
            let size = g.order().min(1 << 40) as u64;
            let [x, y, z] = [a, b, c].map(|v| g.element((v % size) as usize));
            prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
            prop_assert!(g.mul(&x, &g.inv(&x)).is_identity());
            prop_assert!(g.mul(&g.inv(&x), &x).is_identity());
            prop_assert_eq!(g.mul(&x, &g.identity()), x);
        }
    }
}
