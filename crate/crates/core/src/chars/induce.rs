use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::function::{GroupFunction, ZetaSum};
use crate::error::{Error, Result};
use crate::exactnum::CycInt;
use crate::unitri::{Caps, Group};

/// The conjugacy classes of `G`, found by closing each element under
/// conjugation by the generators `x_(i,i+1)(1)`.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    /// Class number of every group index.
    pub class_of: Vec<u32>,
    /// Size of every class.
    pub sizes: Vec<usize>,
    /// Smallest index in every class.
    pub representatives: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn new(group: &Group, caps: &Caps) -> Result<Self> {
        let order = group.check_enumerable(caps, "conjugacy classes")?;
        let gens: Vec<_> = group.simple_generators();
        let gens_inv: Vec<_> = gens.iter().map(|g| group.inv(g)).collect();
        let mut class_of = vec![u32::MAX; order];
        let mut sizes = Vec::new();
        let mut representatives = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..order {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            class_of[start] = id;
            queue.push_back(start);
            let mut size = 0usize;
            while let Some(x) = queue.pop_front() {
                size += 1;
                let h = group.element(x);
                for (g, gi) in gens.iter().zip(&gens_inv) {
                    let y = group.index(&group.mul(&group.mul(gi, &h), g));
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        queue.push_back(y);
                    }
                }
            }
            sizes.push(size);
            representatives.push(start);
        }
        Ok(ConjugacyClasses { class_of, sizes, representatives })
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }
}

/// `ind_H^G xi` evaluated class by class:
/// `chi(g) = |G| / (|K| |H|) · sum_{h in K ∩ H} xi(h)` for the class `K` of `g`.
pub fn induce_character(group: &Group, classes: &ConjugacyClasses, xi: &GroupFunction) -> Result<GroupFunction> {
    let order = classes.class_of.len();
    let p = group.prime();
    let sub = match xi.support() {
        None => return Ok(xi.clone()),
        Some(s) => s.clone(),
    };
    let mut sums: Vec<Option<CycInt>> = vec![None; classes.count()];
    for (pos, &h) in sub.members().iter().enumerate() {
        let c = classes.class_of[h] as usize;
        let v = &xi.values()[pos];
        sums[c] = Some(match sums[c].take() {
            None => v.clone(),
            Some(acc) => &acc + v,
        });
    }
    let h_order = BigInt::from(sub.order());
    let g_order = BigInt::from(order);
    let class_values: Vec<CycInt> = sums
        .iter()
        .zip(&classes.sizes)
        .map(|(s, &k)| match s {
            None => Ok(CycInt::zero(p)),
            Some(s) => s
                .scale(&g_order)
                .div_exact(&(&h_order * BigInt::from(k)))
                .ok_or(Error::InexactDivision("induced character")),
        })
        .collect::<Result<_>>()?;
    let values = classes.class_of.iter().map(|&c| class_values[c as usize].clone()).collect();
    Ok(GroupFunction::on_group(group, values))
}

/// Same as [`induce_character`] for a character given by exponents, which
/// avoids building cyclotomic values per member.
pub fn induce_from_exponents(
    group: &Group,
    classes: &ConjugacyClasses,
    members: &[usize],
    exps: &[u32],
) -> Result<GroupFunction> {
    let p = group.prime();
    let mut sums: Vec<Option<ZetaSum>> = vec![None; classes.count()];
    for (&h, &e) in members.iter().zip(exps) {
        let c = classes.class_of[h] as usize;
        sums[c].get_or_insert_with(|| ZetaSum::zero(p.get())).add_power(e);
    }
    let h_order = BigInt::from(members.len());
    let g_order = BigInt::from(classes.class_of.len());
    let class_values: Vec<CycInt> = sums
        .iter()
        .zip(&classes.sizes)
        .map(|(s, &k)| match s {
            None => Ok(CycInt::zero(p)),
            Some(s) => s
                .to_cyc(p)
                .scale(&g_order)
                .div_exact(&(&h_order * BigInt::from(k)))
                .ok_or(Error::InexactDivision("induced character")),
        })
        .collect::<Result<_>>()?;
    let values = classes.class_of.iter().map(|&c| class_values[c as usize].clone()).collect();
    Ok(GroupFunction::on_group(group, values))
}
