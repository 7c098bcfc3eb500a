//! Exact arithmetic: the prime fields `F_p` and the cyclotomic ring `Z[zeta_p]`.

mod cyclo;
mod fp;

pub use cyclo::{additive_character, CycInt, CycRat};
pub use fp::{is_prime, Fp, Prime};
