use alloc::string::String;

use crate::rootcomb::Root;

/// Errors raised by the constructions and verifiers of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime below 256")]
    NotPrime(u32),
    #[error("matrix size n = {0} is out of range (need 3 <= n <= 8)")]
    BadSize(usize),
    #[error("mismatched moduli: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("({0},{1}) is not a root")]
    BadRoot(usize, usize),
    #[error("{0} is not a simple root of the required kind")]
    NotSimple(Root),
    #[error("{0} does not belong to the subset Pi")]
    NotInPi(Root),
    #[error("character is degenerate: value at {0} must be nonzero")]
    Degenerate(Root),
    #[error("character is not supported on Pi_0 and Pi: nonzero value at {0}")]
    NotACharacter(Root),
    #[error("parameter vector rejected: {0}")]
    BadParameter(String),
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },
    #[error("lambda does not vanish on the product E_{0} E_{1}")]
    NotMultiplicative(Root, Root),
    #[error("lambda does not vanish on the square of the subalgebra: {0}")]
    NotMultiplicativeGeneral(String),
    #[error("inexact division in Z[zeta]: {0}")]
    InexactDivision(&'static str),
    #[error("expected a rational value: {0}")]
    NotRational(&'static str),
    #[error("uniqueness failed: {0}")]
    NotUnique(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
