use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::function::{GroupFunction, Subgroup, ZetaSum};
use crate::error::{Error, Result};
use crate::exactnum::CycInt;
use crate::unitri::{Caps, Group, Orbit};

/// `sqrt|Ω|` when `|Ω|` is an even power of `q`.
pub fn orbit_sqrt(p: u32, size: usize) -> Result<u64> {
    let mut d = 0u32;
    let mut s = size as u64;
    while s > 1 && s % p as u64 == 0 {
        s /= p as u64;
        d += 1;
    }
    if s != 1 || d % 2 != 0 {
        return Err(Error::InexactDivision("orbit size is not an even power of q"));
    }
    Ok((p as u64).pow(d / 2))
}

/// `chi(1 + x) = |Ω|^{-1/2} sum_{mu in Ω} e^{mu(x)}` on all of `G`.
///
/// The sum over the orbit is the Fourier transform of the orbit's indicator
/// on `F_p^N`; it is taken one coordinate at a time, with values kept as
/// length-`p` exponent vectors so that multiplying by `zeta^k` is a rotation.
pub fn orbit_character(group: &Group, orbit: &Orbit, caps: &Caps) -> Result<GroupFunction> {
    let order = group.check_enumerable(caps, "orbit character")?;
    let p = group.p() as usize;
    let root = orbit_sqrt(group.p(), orbit.size())?;
    let mut arr = vec![0i64; order * p];
    for mu in &orbit.points {
        let idx = group.index(&group.from_coords(&mu.coords));
        arr[idx * p] = 1;
    }
    let mut block = vec![0i64; p * p];
    let mut out = vec![0i64; p * p];
    let mut stride = 1usize;
    for _ in 0..group.tables().dim() {
        for base in 0..order {
            if (base / stride) % p != 0 {
                continue;
            }
            for m in 0..p {
                let src = (base + m * stride) * p;
                block[m * p..(m + 1) * p].copy_from_slice(&arr[src..src + p]);
            }
            out.iter_mut().for_each(|v| *v = 0);
            for x in 0..p {
                let dst = &mut out[x * p..(x + 1) * p];
                for m in 0..p {
                    let shift = m * x % p;
                    let v = &block[m * p..(m + 1) * p];
                    for k in 0..p {
                        dst[(k + shift) % p] += v[k];
                    }
                }
            }
            for x in 0..p {
                let dst = (base + x * stride) * p;
                arr[dst..dst + p].copy_from_slice(&out[x * p..(x + 1) * p]);
            }
        }
        stride *= p;
    }
    let divisor = BigInt::from(root);
    let prime = group.prime();
    let values = arr
        .chunks(p)
        .map(|c| {
            CycInt::from_exponent_counts(prime, c)
                .div_exact(&divisor)
                .ok_or(Error::InexactDivision("orbit character formula"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupFunction::on_group(group, values))
}

/// The same formula evaluated directly on the members of a subgroup.
pub fn orbit_character_on(group: &Group, orbit: &Orbit, sub: &Arc<Subgroup>) -> Result<GroupFunction> {
    let p = group.p();
    let prime = group.prime();
    let divisor = BigInt::from(orbit_sqrt(p, orbit.size())?);
    let points: Vec<&[u8]> = orbit.points.iter().map(|m| m.coords.as_slice()).collect();
    let values = sub
        .members()
        .iter()
        .map(|&h| {
            let x = group.coords(&group.element(h));
            let mut acc = ZetaSum::zero(p);
            for mu in &points {
                let s: u64 = mu.iter().zip(&x).map(|(&a, &b)| u64::from(a) * u64::from(b)).sum();
                acc.add_power((s % u64::from(p)) as u32);
            }
            acc.to_cyc(prime).div_exact(&divisor).ok_or(Error::InexactDivision("orbit character formula"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupFunction::on_subgroup(group, sub.clone(), values))
}
