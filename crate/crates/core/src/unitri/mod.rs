//! The group `G = UT(n, F_p)`, linear forms on its algebra, the coadjoint
//! action and orbits, associative polarizations and the canonical forms
//! `lambda_{S,a}` with their subalgebras `p_S`.

mod forms;
mod group;

pub use forms::{
    build_lambda_sa, build_p_s, canonical_forms, coadjoint, coadjoint_root, is_associative_polarization, orbit_of,
    skew_form, stabilizer_dim, AlgElem, CanonicalForm, LinForm, NondegChar, Orbit, PolarizationVerdict, Subalgebra,
};
pub use group::{Caps, Group, GroupElem};
