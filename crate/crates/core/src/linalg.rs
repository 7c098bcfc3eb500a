//! Dense linear algebra over `F_p` on row-major `u32` matrices.

use alloc::vec;
use alloc::vec::Vec;

pub type Matrix = Vec<Vec<u32>>;

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut r = 1u64;
    let mut b = u64::from(a % p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % u64::from(p);
        }
        b = b * b % u64::from(p);
        e >>= 1;
    }
    r as u32
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, p: u32) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(r, src);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = (f as u64 * m[r][j] as u64 % p as u64) as u32;
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r.max(0));
    pivots
}

pub fn rank(m: &Matrix, p: u32) -> usize {
    let mut w = m.clone();
    rref(&mut w, p).len()
}

/// Every `dim`-dimensional subspace of `F_p^ambient`, as its RREF basis.
///
/// Subspaces are enumerated through their pivot sets, which yields each
/// exactly once; the order is deterministic.
pub fn subspaces(ambient: usize, dim: usize, p: u32) -> Vec<Matrix> {
    let mut out = Vec::new();
    if dim > ambient {
        return out;
    }
    let mut pivots: Vec<usize> = (0..dim).collect();
    loop {
        // free slots: (row, col) with col > pivot[row], col not a pivot
        let mut free = Vec::new();
        for (row, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..ambient {
                if !pivots.contains(&c) {
                    free.push((row, c));
                }
            }
        }
        let total = (p as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut m = vec![vec![0u32; ambient]; dim];
            for (row, &pc) in pivots.iter().enumerate() {
                m[row][pc] = 1;
            }
            let mut c = code;
            for &(row, col) in &free {
                m[row][col] = (c % p as u64) as u32;
                c /= p as u64;
            }
            out.push(m);
        }
        // next pivot combination
        let mut idx = dim;
        loop {
            if idx == 0 {
                return out;
            }
            idx -= 1;
            if pivots[idx] < ambient - dim + idx {
                pivots[idx] += 1;
                for t in idx + 1..dim {
                    pivots[t] = pivots[t - 1] + 1;
                }
                break;
            }
        }
        if dim == 0 {
            return out;
        }
    }
}

/// Gaussian binomial `[ambient choose dim]_p`.
pub fn gaussian_binomial(ambient: u32, dim: u32, p: u64) -> u64 {
    if dim > ambient {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..dim {
        num *= p.pow(ambient - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&vec![vec![1, 1], vec![1, 1]], 2), 1);
        assert_eq!(rank(&vec![vec![0, 1], vec![1, 0]], 2), 2);
        assert_eq!(rank(&vec![vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank(&vec![vec![0, 0]], 5), 0);
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for p in [2u32, 3] {
            for ambient in 0..=4usize {
                for dim in 0..=ambient {
                    let subs = subspaces(ambient, dim, p);
                    assert_eq!(subs.len() as u64, gaussian_binomial(ambient as u32, dim as u32, p as u64));
                    for s in &subs {
                        assert_eq!(rank(s, p), dim);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 4), 1..5)) {
            let mut a = rows.clone();
            let piv = rref(&mut a, 5);
            let mut b = a.clone();
            let piv2 = rref(&mut b, 5);
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(piv, piv2);
            let mut t: Matrix = (0..4).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
            prop_assert_eq!(rref(&mut t, 5).len(), a.len());
        }
    }
}
