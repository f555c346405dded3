//! Prime and extension field arithmetic for `F_p ⊂ F_{p^e}`.
//!
//! An [`ExtElement`] is stored as its index in the canonical enumeration
//! order: the coordinate tuple `(c_0, …, c_{e-1})` in the power basis of the
//! modulus, read as base-`p` digits with `c_0` least significant. Iterating
//! indices `0..q` therefore walks the field lexicographically with the
//! constant term varying fastest, and the prime subfield occupies indices
//! `0..p`.
//!
//! The modulus is primitive, so `X` generates `F_q^*` and multiplication runs
//! through discrete log / antilog tables built once per context.

mod linalg;

pub use linalg::{LinearMap, SolutionSet};

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd, is_odd_prime, legendre as legendre_symbol, primitive_root};
use crate::error::{Error, Result};
use crate::poly;

/// Largest field order the table representation accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElement(u32);

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement(0);
    pub const ONE: ExtElement = ExtElement(1);

    /// Element with the given enumeration index; the caller guarantees
    /// `index < q`.
    pub const fn from_index(index: u32) -> Self {
        ExtElement(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeElement(u32);

impl PrimeElement {
    /// Reduces `value` mod `p`.
    pub fn new(value: i64, p: u32) -> Self {
        PrimeElement(value.rem_euclid(p as i64) as u32)
    }

    pub const fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Immutable description of `F_p ⊂ F_{p^e}` with its lookup tables.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[k]` is the index of `X^k`, `0 <= k < q - 1`.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
    prime_generator: u32,
}

impl FieldContext {
    /// Builds `F_{p^e}`. Without an override the modulus is the
    /// lexicographically smallest monic primitive polynomial of degree `e`,
    /// comparing coefficient tuples `(c_0, …, c_{e-1})` with `c_0` most
    /// significant.
    pub fn new(p: u32, e: u32, modulus_override: Option<&[u32]>) -> Result<Self> {
        if !is_odd_prime(p as u64) {
            return Err(Error::InvalidPrime(p as u64));
        }
        if e < 2 {
            return Err(Error::InvalidDegree(e));
        }
        let q = match (p as u64).checked_pow(e) {
            Some(q) if q <= MAX_FIELD_ORDER => q as u32,
            _ => return Err(Error::FieldTooLarge { p, e }),
        };
        let modulus = match modulus_override {
            Some(m) => {
                validate_modulus(m, p, e)?;
                m.to_vec()
            }
            None => smallest_primitive(p, e),
        };
        let mut ctx = FieldContext {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            trace: Vec::new(),
            prime_generator: primitive_root(p as u64) as u32,
        };
        ctx.build_tables()?;
        Ok(ctx)
    }

    fn build_tables(&mut self) -> Result<()> {
        let (p, e, q) = (self.p, self.e as usize, self.q as usize);
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let mut digits = vec![0u32; e];
        digits[0] = 1;
        for k in 0..q - 1 {
            let idx = self.index_of(&digits);
            if log[idx as usize] != u32::MAX {
                return Err(Error::ModulusNotPrimitive);
            }
            log[idx as usize] = k as u32;
            exp.push(idx);
            // multiply by X and reduce with X^e = -(m_0 + … + m_{e-1} X^{e-1})
            let top = digits[e - 1];
            for i in (1..e).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            if top != 0 {
                for (i, d) in digits.iter_mut().enumerate() {
                    let sub = top * self.modulus[i] % p;
                    *d = (*d + p - sub) % p;
                }
            }
        }
        if self.index_of(&digits) != 1 {
            return Err(Error::ModulusNotPrimitive);
        }
        self.exp = exp;
        self.log = log;

        // Tr is F_p-linear: tabulate it on the basis, then extend digit-wise.
        let mut basis_trace = Vec::with_capacity(e);
        let mut weight = 1u32;
        for _ in 0..e {
            let t = self.trace_by_definition(ExtElement(weight));
            if t.index() >= p {
                return Err(Error::Inconsistent("trace left the prime field".into()));
            }
            basis_trace.push(t.index());
            weight *= p;
        }
        let mut trace = Vec::with_capacity(q);
        for idx in 0..q as u32 {
            let mut rest = idx;
            let mut t = 0;
            for bt in &basis_trace {
                t += (rest % p) * bt;
                rest /= p;
            }
            trace.push(t % p);
        }
        self.trace = trace;
        Ok(())
    }

    fn index_of(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Field order `p^e`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant term first, length `e + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The class of `X`, a generator of `F_q^*`.
    pub fn generator(&self) -> ExtElement {
        ExtElement(self.exp[1 % self.exp.len()])
    }

    pub fn generator_order(&self) -> u32 {
        self.q - 1
    }

    /// Smallest primitive root of `F_p^*`.
    pub fn prime_generator(&self) -> PrimeElement {
        PrimeElement(self.prime_generator)
    }

    /// All field elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> {
        (0..self.q).map(ExtElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = ExtElement> {
        (1..self.q).map(ExtElement)
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<ExtElement> {
        if coeffs.len() > self.e as usize {
            return Err(Error::WrongLength {
                expected: self.e as usize,
                got: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::CoefficientOutOfRange {
                value: bad as u64,
                p: self.p,
            });
        }
        Ok(ExtElement(self.index_of(coeffs)))
    }

    pub fn coeffs(&self, x: ExtElement) -> Vec<u32> {
        let mut rest = x.0;
        (0..self.e)
            .map(|_| {
                let d = rest % self.p;
                rest /= self.p;
                d
            })
            .collect()
    }

    pub fn embed(&self, c: PrimeElement) -> ExtElement {
        ExtElement(c.0 % self.p)
    }

    /// `Some(c)` iff `x` lies in the prime field.
    pub fn as_prime(&self, x: ExtElement) -> Option<PrimeElement> {
        (x.0 < self.p).then_some(PrimeElement(x.0))
    }

    pub fn prime(&self, value: i64) -> PrimeElement {
        PrimeElement::new(value, self.p)
    }

    pub fn add(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0;
        let mut weight = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * weight;
            a /= self.p;
            b /= self.p;
            weight *= self.p;
        }
        ExtElement(out)
    }

    pub fn neg(&self, x: ExtElement) -> ExtElement {
        self.scale(PrimeElement(self.p - 1), x)
    }

    pub fn sub(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        self.add(x, self.neg(y))
    }

    /// `c · x` for `c` in the prime field.
    pub fn scale(&self, c: PrimeElement, x: ExtElement) -> ExtElement {
        let mut a = x.0;
        let mut out = 0;
        let mut weight = 1;
        while a > 0 {
            out += (a % self.p * c.0 % self.p) * weight;
            a /= self.p;
            weight *= self.p;
        }
        ExtElement(out)
    }

    pub fn mul(&self, x: ExtElement, y: ExtElement) -> ExtElement {
        if x.0 == 0 || y.0 == 0 {
            return ExtElement::ZERO;
        }
        let n = self.q - 1;
        let k = (self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64) % n as u64;
        ExtElement(self.exp[k as usize])
    }

    pub fn inv(&self, x: ExtElement) -> Result<ExtElement> {
        if x.is_zero() {
            return Err(Error::ZeroArgument("x"));
        }
        let n = self.q - 1;
        let k = (n - self.log[x.0 as usize]) % n;
        Ok(ExtElement(self.exp[k as usize]))
    }

    /// `x^k` with `0^0 = 1`.
    pub fn pow(&self, x: ExtElement, k: u64) -> ExtElement {
        if k == 0 {
            return ExtElement::ONE;
        }
        if x.is_zero() {
            return ExtElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        let k = (l as u128 * (k % n) as u128 % n as u128) as usize;
        ExtElement(self.exp[k])
    }

    /// Discrete logarithm to base [`generator`](Self::generator).
    pub fn log(&self, x: ExtElement) -> Option<u32> {
        (!x.is_zero()).then(|| self.log[x.0 as usize])
    }

    /// `x^{p^k}`.
    pub fn frobenius(&self, x: ExtElement, k: u32) -> ExtElement {
        let mut y = x;
        for _ in 0..k % self.e {
            y = self.pow(y, self.p as u64);
        }
        y
    }

    /// `x^{p^α + 1}`: `α` Frobenius steps, then one multiplication.
    pub fn power_map(&self, alpha: u32, x: ExtElement) -> ExtElement {
        self.mul(self.frobenius(x, alpha), x)
    }

    /// Absolute trace to `F_p` (table lookup).
    pub fn trace(&self, x: ExtElement) -> PrimeElement {
        PrimeElement(self.trace[x.0 as usize])
    }

    /// `Σ_{i<e} x^{p^i}` evaluated in `F_q`; lands in the prime field.
    pub fn trace_by_definition(&self, x: ExtElement) -> ExtElement {
        let mut acc = ExtElement::ZERO;
        let mut y = x;
        for _ in 0..self.e {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        acc
    }

    /// Quadratic character of `F_q`, `η(0) = 0`.
    pub fn eta(&self, x: ExtElement) -> i32 {
        if x.is_zero() {
            0
        } else if self.pow(x, (self.q as u64 - 1) / 2) == ExtElement::ONE {
            1
        } else {
            -1
        }
    }

    /// Legendre symbol of `t` modulo `p`.
    pub fn legendre(&self, t: PrimeElement) -> i32 {
        legendre(t, self.p)
    }

    /// Matrix of the additive map `X ↦ X^{p^{2α}} + X`.
    pub fn linearized_map(&self, alpha: u32) -> LinearMap {
        LinearMap::from_fn(self, |x| self.add(self.frobenius(x, 2 * alpha), x))
    }

    /// Matrix of `X ↦ a^{p^α} X^{p^{2α}} + a X`.
    pub fn twisted_linearized_map(&self, alpha: u32, a: ExtElement) -> LinearMap {
        let a_frob = self.frobenius(a, alpha);
        LinearMap::from_fn(self, |x| {
            self.add(
                self.mul(a_frob, self.frobenius(x, 2 * alpha)),
                self.mul(a, x),
            )
        })
    }

    /// Solves `X^{p^{2α}} + X = -b^{p^α}`.
    pub fn linearized_solve(&self, alpha: u32, b: ExtElement) -> SolutionSet {
        let rhs = self.neg(self.frobenius(b, alpha));
        self.linearized_map(alpha).solve(self, rhs)
    }

    /// Solves `a^{p^α} X^{p^{2α}} + a X = -b^{p^α}`.
    pub fn twisted_solve(&self, alpha: u32, a: ExtElement, b: ExtElement) -> SolutionSet {
        let rhs = self.neg(self.frobenius(b, alpha));
        self.twisted_linearized_map(alpha, a).solve(self, rhs)
    }

    /// `d = gcd(α, e)`.
    pub fn gcd_alpha(&self, alpha: u32) -> u32 {
        gcd(alpha as u64, self.e as u64) as u32
    }

    /// `gcd(p^d + 1, p^e - 1)` computed directly; asserts the dichotomy
    /// `2` (e/d odd) versus `p^d + 1` (e/d even).
    pub fn gcd_exponent(&self, alpha: u32) -> u64 {
        let d = self.gcd_alpha(alpha);
        let pd1 = (self.p as u64).pow(d) + 1;
        let g = gcd(pd1, self.q as u64 - 1);
        let expected = if (self.e / d) % 2 == 1 { 2 } else { pd1 };
        assert_eq!(g, expected, "gcd dichotomy violated for d = {d}");
        g
    }
}

/// Legendre symbol `(t | p)`, `0` at `t = 0`.
pub fn legendre(t: PrimeElement, p: u32) -> i32 {
    legendre_symbol(t.0 as i64, p as u64)
}

fn validate_modulus(m: &[u32], p: u32, e: u32) -> Result<()> {
    if m.len() != e as usize + 1 {
        return Err(Error::ModulusWrongDegree {
            expected: e,
            got: m.len().saturating_sub(1),
        });
    }
    if let Some(&bad) = m.iter().find(|&&c| c >= p) {
        return Err(Error::CoefficientOutOfRange {
            value: bad as u64,
            p,
        });
    }
    if m[e as usize] != 1 {
        return Err(Error::ModulusNotMonic);
    }
    if !poly::is_irreducible(m, p) {
        return Err(Error::ModulusNotIrreducible);
    }
    if !poly::is_primitive(m, p) {
        return Err(Error::ModulusNotPrimitive);
    }
    Ok(())
}

fn smallest_primitive(p: u32, e: u32) -> Vec<u32> {
    let q = (p as u64).pow(e);
    // rank r encodes (c_0, …, c_{e-1}) with c_0 as the most significant digit
    for rank in 0..q {
        let mut m = vec![0u32; e as usize + 1];
        let mut rest = rank;
        for i in (0..e as usize).rev() {
            m[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        m[e as usize] = 1;
        if m[0] != 0 && poly::is_irreducible(&m, p) && poly::is_primitive(&m, p) {
            return m;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}
