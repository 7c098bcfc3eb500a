//! Finite-dimensional nilpotent associative algebras over `F_p` given by
//! structure constants, with the associative polarization test for
//! arbitrary (non-coordinate) subspaces and an exhaustive search.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rootcomb::{Root, RootTables};

/// Basis `e_0, ..., e_{d-1}` with `e_a e_b = sum_c table[a][b][c] e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentAlgebra {
    pub p: u32,
    pub names: Vec<String>,
    table: Vec<Vec<Vec<u32>>>,
}

/// Outcome of the polarization test on a subspace given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceVerdict {
    pub closed: bool,
    pub square_vanishes: bool,
    pub isotropic: bool,
    pub maximal: bool,
}

impl SubspaceVerdict {
    pub fn holds(&self) -> bool {
        self.closed && self.square_vanishes && self.isotropic && self.maximal
    }
}

impl NilpotentAlgebra {
    pub fn from_table(p: u32, names: Vec<String>, table: Vec<Vec<Vec<u32>>>) -> Self {
        NilpotentAlgebra { p, names, table }
    }

    /// `ut(n, F_p)` on the matrix units in root order.
    pub fn ut(t: &RootTables, p: u32) -> Self {
        let d = t.dim();
        let mut table = vec![vec![vec![0u32; d]; d]; d];
        for (a, ra) in t.roots.iter().enumerate() {
            for (b, rb) in t.roots.iter().enumerate() {
                if ra.j == rb.i {
                    table[a][b][t.index(Root::new(ra.i, rb.j))] = 1;
                }
            }
        }
        let names = t.roots.iter().map(|r| alloc::format!("E{}{}", r.i, r.j)).collect();
        NilpotentAlgebra { p, names, table }
    }

    /// The commutative algebra `span{A = E12 + E23, B = E13}` inside `ut(3)`:
    /// `A^2 = B`, every other product zero.
    pub fn two_dim_commutative(p: u32) -> Self {
        let mut table = vec![vec![vec![0u32; 2]; 2]; 2];
        table[0][0][1] = 1;
        NilpotentAlgebra { p, names: vec![String::from("E12+E23"), String::from("E13")], table }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let d = self.dim();
        let p = self.p as u64;
        let mut out = vec![0u64; d];
        for a in 0..d {
            if x[a] == 0 {
                continue;
            }
            for b in 0..d {
                if y[b] == 0 {
                    continue;
                }
                let s = x[a] as u64 * y[b] as u64 % p;
                for (c, &k) in self.table[a][b].iter().enumerate() {
                    out[c] = (out[c] + s * k as u64) % p;
                }
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        xy.iter().zip(&yx).map(|(a, b)| (a + self.p - b) % self.p).collect()
    }

    fn apply(&self, lambda: &[u32], x: &[u32]) -> u32 {
        let s: u64 = lambda.iter().zip(x).map(|(&a, &b)| a as u64 * b as u64).sum();
        (s % self.p as u64) as u32
    }

    fn unit(&self, a: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        v[a] = 1;
        v
    }

    /// Checks associativity and nilpotency of the structure constants.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    if self.mul(&self.mul(&ea, &eb), &ec) != self.mul(&ea, &self.mul(&eb, &ec)) {
                        return Err(Error::Invalid(String::from("structure constants are not associative")));
                    }
                }
            }
        }
        // a^(d+1) = 0 for nilpotent algebras of dimension d
        let mut power: Vec<Vec<u32>> = (0..d).map(|a| self.unit(a)).collect();
        for _ in 0..d {
            let mut next = Vec::new();
            for x in &power {
                for a in 0..d {
                    let v = self.mul(x, &self.unit(a));
                    if v.iter().any(|&c| c != 0) {
                        next.push(v);
                    }
                }
            }
            power = next;
        }
        if power.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(String::from("algebra is not nilpotent")))
        }
    }

    /// `dim a^lambda` where `a^lambda = {x : lambda([x, a]) = 0}`.
    pub fn stabilizer_dim(&self, lambda: &[u32]) -> usize {
        let d = self.dim();
        let b: Matrix = (0..d)
            .map(|a| (0..d).map(|c| self.apply(lambda, &self.bracket(&self.unit(a), &self.unit(c)))).collect())
            .collect();
        d - linalg::rank(&b, self.p)
    }

    pub fn polarization_verdict(&self, basis: &Matrix, lambda: &[u32]) -> SubspaceVerdict {
        let p = self.p;
        let dim = linalg::rank(basis, p);
        let mut closed = true;
        let mut square_vanishes = true;
        let mut isotropic = true;
        for u in basis {
            for v in basis {
                let uv = self.mul(u, v);
                if self.apply(lambda, &uv) != 0 {
                    square_vanishes = false;
                }
                if self.apply(lambda, &self.bracket(u, v)) != 0 {
                    isotropic = false;
                }
                let mut ext = basis.clone();
                ext.push(uv);
                if linalg::rank(&ext, p) != dim {
                    closed = false;
                }
            }
        }
        SubspaceVerdict {
            closed,
            square_vanishes,
            isotropic,
            maximal: 2 * dim == self.dim() + self.stabilizer_dim(lambda),
        }
    }

    /// Some associative polarization of `lambda`, found by enumerating every
    /// subspace of the only admissible dimension; `None` if there is none.
    /// Limited to dimension at most 6 over `p <= 3`.
    pub fn search_associative_polarization(&self, lambda: &[u32]) -> Result<Option<Matrix>> {
        let d = self.dim();
        if d > 6 || self.p > 3 {
            return Err(Error::CapExceeded {
                what: "subspace enumeration",
                needed: (self.p as u128).pow(d as u32),
                cap: 729,
            });
        }
        let total = d + self.stabilizer_dim(lambda);
        if total % 2 != 0 {
            return Ok(None);
        }
        Ok(linalg::subspaces(d, total / 2, self.p).into_iter().find(|b| self.polarization_verdict(b, lambda).holds()))
    }
}
