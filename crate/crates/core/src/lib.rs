//! Exact orbit-method computations for the unitriangular group `UT(n, F_p)`
//! and the representation `V(lambda)` induced from a nondegenerate character
//! of the subgroup `G+`.
//!
//! The crate is `no_std` (with `alloc`). Everything is computed exactly:
//! field elements live in [`Fp`], character values in the cyclotomic ring
//! [`CycInt`] and its fraction field [`CycRat`].
//!
//! Layout:
//! - [`rootcomb`]: root combinatorics, the sets `L_S`, parameter spaces.
//! - [`unitri`]: the group, its algebra, coadjoint orbits, polarizations and
//!   the canonical forms `lambda_{S,a}`.
//! - [`chars`]: characters, induction, the orbit character formula and the
//!   decomposition of `V(lambda)`.
//! - [`ideal`]: polynomial generators of the orbit ideals and brute-force
//!   variety checks.
//! - [`hecke`]: the group algebra, the Hecke algebra basis `P X_{S,b} P`.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod chars;
mod error;
pub mod exactnum;
pub mod hecke;
pub mod ideal;
pub mod linalg;
pub mod rootcomb;
pub mod unitri;

pub use error::{Error, Result};
pub use exactnum::{additive_character, CycInt, CycRat, Fp, Prime};
pub use rootcomb::{Root, RootTables, Subset};
pub use unitri::{Caps, Group, GroupElem, LinForm};
