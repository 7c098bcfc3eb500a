//! The Hecke algebra `P_xi A_G P_xi` of the induced module and its basis
//! indexed by `(S, b)`.

mod algebra;
mod basis;

#[cfg(test)]
mod tests;

pub use algebra::{double_coset, p_xi, sandwich, xi_compatible, GroupAlgebraElem, Histogram};
pub use basis::{
    all_pairs, build_x_sb, expected_hecke_dim, hecke_basis, hecke_dim_by_cosets, in_zero_minus,
    nonvanishing_equivalence, proportionality_check, verify_commutativity, CommutativityReport, CosetScan, HeckeBasis,
    HeckeBasisElem, StructureConstant,
};
