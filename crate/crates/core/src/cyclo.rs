//! Exact arithmetic in the ring of integers `Z[ζ_p]` for an odd prime `p`.
//!
//! Elements are stored on the basis `1, ζ, …, ζ^{p-2}`. Any `ζ^{p-1}` term
//! `c` is rewritten as `-c` on every basis coefficient, using
//! `1 + ζ + … + ζ^{p-1} = 0`; the representation is therefore unique and
//! equality is coefficient-wise.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::is_odd_prime;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    fn check_prime(p: u32) -> Result<()> {
        if is_odd_prime(p as u64) {
            Ok(())
        } else {
            Err(Error::InvalidPrime(p as u64))
        }
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::check_prime(p)?;
        Ok(Self::zero_unchecked(p))
    }

    fn zero_unchecked(p: u32) -> Self {
        CyclotomicInteger {
            p,
            coeffs: vec![BigInt::zero(); p as usize - 1],
        }
    }

    pub fn from_integer(p: u32, n: impl Into<BigInt>) -> Result<Self> {
        let mut z = Self::zero(p)?;
        z.coeffs[0] = n.into();
        Ok(z)
    }

    /// `ζ_p^{k mod p}`.
    pub fn root_power(p: u32, k: i64) -> Result<Self> {
        let mut raw = vec![0i64; p as usize];
        Self::check_prime(p)?;
        raw[k.rem_euclid(p as i64) as usize] = 1;
        Self::from_exponent_counts(p, &raw)
    }

    /// Canonical form of `Σ raw[k] ζ^k` for `k = 0..p`.
    pub fn canonicalize(p: u32, raw: &[BigInt]) -> Result<Self> {
        Self::check_prime(p)?;
        if raw.len() != p as usize {
            return Err(Error::WrongLength {
                expected: p as usize,
                got: raw.len(),
            });
        }
        let top = &raw[p as usize - 1];
        let coeffs = raw[..p as usize - 1].iter().map(|c| c - top).collect();
        Ok(CyclotomicInteger { p, coeffs })
    }

    /// Canonical form of `Σ counts[k] ζ^k`; the usual output of a
    /// character-sum histogram.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Result<Self> {
        Self::check_prime(p)?;
        if counts.len() != p as usize {
            return Err(Error::WrongLength {
                expected: p as usize,
                got: counts.len(),
            });
        }
        let top = counts[p as usize - 1];
        let coeffs = counts[..p as usize - 1]
            .iter()
            .map(|&c| BigInt::from(c - top))
            .collect();
        Ok(CyclotomicInteger { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coefficients of `1, ζ, …, ζ^{p-2}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(n)` iff the element is the rational integer `n`.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Like [`as_rational_integer`](Self::as_rational_integer), narrowed to `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        self.as_rational_integer().and_then(|n| n.to_i64())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicInteger { p: self.p, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Convolution modulo `x^p - 1`, then canonicalization.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.p as usize;
        let mut raw = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % p] += a * b;
                }
            }
        }
        Self::canonicalize(self.p, &raw)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::from_integer(p, BigInt::one())
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::MismatchedPrime {
                left: self.p,
                right: other.p,
            })
        }
    }
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[ζ_{}]{:?}", self.p, self.coeffs)
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_rational_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}ζ")?,
                _ => write!(f, "{c}ζ^{i}")?,
            }
        }
        Ok(())
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        -&self
    }
}

// Operator forms panic on mismatched primes; use the `checked_*` methods
// when operands come from different contexts.
impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: Self) -> CyclotomicInteger {
        self.checked_add(rhs).expect("cyclotomic add")
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: Self) -> CyclotomicInteger {
        self.checked_sub(rhs).expect("cyclotomic sub")
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: Self) -> CyclotomicInteger {
        self.checked_mul(rhs).expect("cyclotomic mul")
    }
}

impl Add for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: Self) -> CyclotomicInteger {
        &self + &rhs
    }
}

impl Sub for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: Self) -> CyclotomicInteger {
        &self - &rhs
    }
}

impl Mul for CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: Self) -> CyclotomicInteger {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn z(p: u32, basis: &[i64]) -> CyclotomicInteger {
        let mut raw = ints(basis);
        raw.push(BigInt::zero());
        CyclotomicInteger::canonicalize(p, &raw).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let c = CyclotomicInteger::canonicalize(3, &ints(&[0, 1, 1])).unwrap();
        assert_eq!(c.coeffs(), ints(&[-1, 0]).as_slice());
        let c = CyclotomicInteger::canonicalize(3, &ints(&[5, 0, 0])).unwrap();
        assert_eq!(c.coeffs(), ints(&[5, 0]).as_slice());
        let c = CyclotomicInteger::canonicalize(5, &ints(&[0, 1, 1, 1, 1])).unwrap();
        assert_eq!(c.coeffs(), ints(&[-1, 0, 0, 0]).as_slice());
    }

    #[test]
    fn canonicalize_rejects_bad_input() {
        assert_eq!(
            CyclotomicInteger::canonicalize(4, &ints(&[0, 0, 0, 0])),
            Err(Error::InvalidPrime(4))
        );
        assert!(matches!(
            CyclotomicInteger::canonicalize(5, &ints(&[0, 0])),
            Err(Error::WrongLength { .. })
        ));
    }

    #[test]
    fn mul_examples() {
        let zeta = CyclotomicInteger::root_power(3, 1).unwrap();
        let zeta2 = CyclotomicInteger::root_power(3, 2).unwrap();
        assert_eq!(&zeta * &zeta2, CyclotomicInteger::one(3).unwrap());
        let g = z(3, &[1, 2]);
        assert_eq!((&g * &g).as_i64(), Some(-3));
    }

    #[test]
    fn mismatched_primes() {
        let a = CyclotomicInteger::one(3).unwrap();
        let b = CyclotomicInteger::one(5).unwrap();
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::MismatchedPrime { left: 3, right: 5 })
        );
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn root_powers() {
        assert_eq!(
            CyclotomicInteger::root_power(3, 0).unwrap(),
            CyclotomicInteger::one(3).unwrap()
        );
        assert_eq!(
            CyclotomicInteger::root_power(3, 2).unwrap().coeffs(),
            ints(&[-1, -1]).as_slice()
        );
        assert_eq!(
            CyclotomicInteger::root_power(5, 7).unwrap(),
            z(5, &[0, 0, 1, 0])
        );
        assert_eq!(
            CyclotomicInteger::root_power(5, -3).unwrap(),
            z(5, &[0, 0, 1, 0])
        );
    }

    #[test]
    fn rational_detection() {
        assert_eq!(z(3, &[-54, 0]).as_i64(), Some(-54));
        assert_eq!(CyclotomicInteger::root_power(3, 1).unwrap().as_i64(), None);
        assert_eq!(CyclotomicInteger::zero(7).unwrap().as_i64(), Some(0));
    }

    #[test]
    fn full_orbit_sums_to_zero() {
        for p in [3u32, 5, 7, 11, 13] {
            let mut acc = CyclotomicInteger::zero(p).unwrap();
            for k in 0..p as i64 {
                acc = &acc + &CyclotomicInteger::root_power(p, k).unwrap();
            }
            assert!(acc.is_zero(), "p = {p}");
        }
    }
}
