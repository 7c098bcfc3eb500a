use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fp::{Fp, Prime};
use crate::error::{Error, Result};

/// An element of `Z[zeta_p]` in the basis `1, zeta, ..., zeta^(p-2)`.
///
/// The representation is canonical: `zeta^(p-1)` is always rewritten as
/// `-(1 + zeta + ... + zeta^(p-2))`, so equality is coefficient equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

/// `e^x = zeta_p^x`, the fixed nontrivial additive character of `F_p`.
pub fn additive_character(x: Fp) -> CycInt {
    CycInt::zeta_pow(Prime::new(x.modulus()).expect("Fp carries a prime"), x.value() as u64)
}

impl CycInt {
    pub fn zero(p: Prime) -> Self {
        CycInt { p: p.get(), coeffs: vec![BigInt::zero(); p.get() as usize - 1] }
    }

    pub fn one(p: Prime) -> Self {
        Self::from_int(p, BigInt::one())
    }

    pub fn from_int(p: Prime, value: BigInt) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = value;
        z
    }

    pub fn zeta_pow(p: Prime, k: u64) -> Self {
        let mut counts = vec![0i64; p.get() as usize];
        counts[(k % p.get() as u64) as usize] = 1;
        Self::from_exponent_counts(p, &counts)
    }

    /// Builds `sum_i counts[i] zeta^i` from a length-`p` vector.
    pub fn from_exponent_counts(p: Prime, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p.get() as usize);
        let top = counts[counts.len() - 1];
        CycInt { p: p.get(), coeffs: counts[..counts.len() - 1].iter().map(|&c| BigInt::from(c - top)).collect() }
    }

    /// Builds `sum_i full[i] zeta^i` from a length-`p` vector of integers.
    pub fn from_full(p: Prime, mut full: Vec<BigInt>) -> Self {
        assert_eq!(full.len(), p.get() as usize);
        let top = full.pop().expect("p >= 2");
        if !top.is_zero() {
            for c in &mut full {
                *c -= &top;
            }
        }
        CycInt { p: p.get(), coeffs: full }
    }

    /// Coefficients in the canonical basis, length `p - 1`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn prime(&self) -> Prime {
        Prime::new(self.p).expect("constructed from a Prime")
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// gcd of the coefficients (zero for the zero element).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Exact division by a rational integer; `None` when the quotient leaves `Z[zeta]`.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CycInt { p: self.p, coeffs })
    }

    /// The Galois automorphism `zeta -> zeta^k`, `k` prime to `p`.
    pub fn galois(&self, k: u32) -> Self {
        let p = self.p as usize;
        debug_assert!(k as usize % p != 0);
        let mut out = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[(i * k as usize) % p] += c;
            }
        }
        Self::from_full(self.prime(), out)
    }

    /// Complex conjugation, `zeta^i -> zeta^(p-i)`.
    pub fn conj(&self) -> Self {
        self.galois(self.p - 1)
    }

    /// The field norm down to `Q`, the product of all Galois conjugates.
    pub fn norm(&self) -> BigInt {
        let mut acc = self.clone();
        for k in 2..self.p {
            acc = &acc * &self.galois(k);
        }
        acc.as_integer().cloned().expect("the norm of a cyclotomic integer is rational")
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(self * other)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(self + other)
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt<{}>({})", self.p, self)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{}z", mag)?,
                (_, true) => write!(f, "z^{}", i)?,
                (_, false) => write!(f, "{}z^{}", mag, i)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "cyclotomic modulus mismatch");
        CycInt { p: self.p, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "cyclotomic modulus mismatch");
        CycInt { p: self.p, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a CycInt> for &'a CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "cyclotomic modulus mismatch");
        let p = self.p as usize;
        let mut out = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % p] += a * b;
                }
            }
        }
        CycInt::from_full(self.prime(), out)
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(self, rhs: CycInt) -> CycInt {
        &self + &rhs
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: CycInt) -> CycInt {
        &self * &rhs
    }
}

/// An element of `Q(zeta_p)` written as `numerator / denominator`.
///
/// Canonical: the denominator is positive and coprime to the content of the
/// numerator; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl CycRat {
    pub fn new(num: CycInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let (mut num, mut den) = (num, den);
        if den.is_negative() {
            num = -&num;
            den = -den;
        }
        let g = num.content().gcd(&den);
        if num.is_zero() {
            den = BigInt::one();
        } else if !g.is_one() {
            num = num.div_exact(&g).expect("g divides the content");
            den /= &g;
        }
        Ok(CycRat { num, den })
    }

    pub fn from_int(value: CycInt) -> Self {
        CycRat { num: value, den: BigInt::one() }
    }

    pub fn zero(p: Prime) -> Self {
        Self::from_int(CycInt::zero(p))
    }

    pub fn numerator(&self) -> &CycInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The rational value, when this element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num.as_integer().map(|n| BigRational::new(n.clone(), self.den.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &self.num.scale(&other.den) + &other.num.scale(&self.den);
        Self::new(num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycRat { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    /// Multiplicative inverse: `a^-1 = (prod_{k>=2} sigma_k(a)) / N(a)`.
    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let mut cofactor = CycInt::one(self.num.prime());
        for k in 2..self.num.modulus() {
            cofactor = &cofactor * &self.num.galois(k);
        }
        let norm = (&cofactor * &self.num).as_integer().cloned().expect("norm is rational");
        Some(Self::new(cofactor.scale(&self.den), norm).expect("nonzero norm"))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.mul(&inv))
    }
}

impl fmt::Debug for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycRat<{}>({})", self.num.modulus(), self)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn additive_character_values() {
        let p2 = prime(2);
        assert_eq!(additive_character(Fp::new(0, p2)), CycInt::one(p2));
        assert_eq!(additive_character(Fp::new(1, p2)).coeffs(), &ints(&[-1])[..]);
        let p3 = prime(3);
        let total = (0..3).fold(CycInt::zero(p3), |acc, x| &acc + &additive_character(Fp::new(x, p3)));
        assert!(total.is_zero());
    }

    #[test]
    fn products_reduce_canonically() {
        let p3 = prime(3);
        let z = CycInt::zeta_pow(p3, 1);
        assert_eq!((&z * &z).coeffs(), &ints(&[-1, -1])[..]);
        assert_eq!(&z * &CycInt::one(p3), z);
        let p5 = prime(5);
        let prod = &CycInt::zeta_pow(p5, 1) * &CycInt::zeta_pow(p5, 4);
        assert_eq!(prod, CycInt::one(p5));
        assert_eq!(CycInt::zeta_pow(p3, 1).checked_mul(&CycInt::one(p5)), Err(Error::ModulusMismatch(3, 5)));
    }

    #[test]
    fn conjugation() {
        let p3 = prime(3);
        assert_eq!(CycInt::one(p3).conj(), CycInt::one(p3));
        assert_eq!(CycInt::zeta_pow(p3, 1).conj().coeffs(), &ints(&[-1, -1])[..]);
    }

    #[test]
    fn rational_recognition() {
        let p3 = prime(3);
        let six = CycInt::from_int(p3, BigInt::from(6));
        let r = CycRat::new(six, BigInt::from(3)).unwrap();
        assert_eq!(r.as_rational(), Some(BigRational::from_integer(BigInt::from(2))));
        let z = CycRat::new(CycInt::zeta_pow(p3, 1), BigInt::from(7)).unwrap();
        assert_eq!(z.as_rational(), None);
        let p2 = prime(2);
        let sum = &CycInt::one(p2) + &CycInt::zeta_pow(p2, 1);
        let r = CycRat::new(sum, BigInt::from(2)).unwrap();
        assert_eq!(r.as_rational(), Some(BigRational::zero()));
    }

    #[test]
    fn canonical_fraction() {
        let p5 = prime(5);
        let num = CycInt::from_full(p5, ints(&[4, 6, 0, 2, 0]));
        let r = CycRat::new(num, BigInt::from(-4)).unwrap();
        assert_eq!(r.denominator(), &BigInt::from(2));
        assert_eq!(r.numerator().coeffs(), &ints(&[-2, -3, 0, -1])[..]);
    }

    #[test]
    fn display_forms() {
        let p5 = prime(5);
        let a = CycInt::from_full(p5, ints(&[1, -1, 0, 2, 0]));
        assert_eq!(alloc::format!("{}", a), "1 - z + 2z^3");
        assert_eq!(alloc::format!("{}", CycInt::zero(p5)), "0");
    }

    fn cyc(p: u32) -> impl Strategy<Value = CycInt> {
        proptest::collection::vec(-20i64..20, p as usize - 1).prop_map(move |v| {
            let mut full = ints(&v);
            full.push(BigInt::zero());
            CycInt::from_full(prime(p), full)
        })
    }

    fn cyc_any() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
        prop_oneof![Just(2u32), Just(3u32), Just(5u32), Just(7u32)].prop_flat_map(|p| (cyc(p), cyc(p), cyc(p)))
    }

    proptest! {
        #[test]
        fn root_of_unity_orthogonality(pi in 0usize..4, a in 0i64..7) {
            let p = prime([2, 3, 5, 7][pi]);
            let s = (0..p.get() as i64).fold(CycInt::zero(p), |acc, x| {
                &acc + &additive_character(Fp::new(a * x, p))
            });
            if a % p.get() as i64 == 0 {
                prop_assert_eq!(s, CycInt::from_int(p, BigInt::from(p.get())));
            } else {
                prop_assert!(s.is_zero());
            }
        }

        #[test]
        fn ring_laws((a, b, c) in cyc_any()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
            let mut full = a.coeffs().to_vec();
            full.push(BigInt::zero());
            prop_assert_eq!(CycInt::from_full(a.prime(), full), a.clone());
        }

        #[test]
        fn field_inverse((a, b, _c) in cyc_any()) {
            let ra = CycRat::from_int(a.clone());
            match ra.inv() {
                None => prop_assert!(a.is_zero()),
                Some(inv) => {
                    let one = CycRat::from_int(CycInt::one(a.prime()));
                    prop_assert_eq!(ra.mul(&inv), one);
                    let rb = CycRat::from_int(b.clone());
                    prop_assert_eq!(rb.div(&ra).unwrap().mul(&ra), rb);
                }
            }
        }
    }
}
