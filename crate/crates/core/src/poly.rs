//! Dense polynomials over `F_p`, constant term first. Only what modulus
//! selection needs: reduction, multiplication mod `f`, gcd, and powering.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{inv_mod, prime_factors};

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `f` (f nonzero).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let df = degree(f).expect("division by zero polynomial");
    let lead_inv = inv_mod(f[df] as u64, p as u64);
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let p64 = p as u64;
    while let Some(dr) = r.iter().rposition(|&c| c % p64 != 0) {
        if dr < df {
            break;
        }
        let factor = (r[dr] % p64) * lead_inv % p64;
        let shift = dr - df;
        for (i, &fc) in f[..=df].iter().enumerate() {
            let sub = factor * fc as u64 % p64;
            r[shift + i] = (r[shift + i] + p64 - sub) % p64;
        }
    }
    trim(r.into_iter().map(|c| (c % p64) as u32).collect())
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    rem(&prod, f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut exp: u64, f: &[u32], p: u32) -> Poly {
    let mut result: Poly = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    result
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or style test: `f` of degree `e` is irreducible iff
/// `gcd(X^{p^i} - X, f) = 1` for every `1 <= i <= e/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(e) = degree(f) else { return false };
    if e == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut frob = rem(&x, f, p);
    for _ in 1..=e / 2 {
        frob = pow_mod(&frob, p as u64, f, p);
        let g = gcd(f, &sub(&frob, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// `X` has multiplicative order exactly `p^e - 1` modulo an irreducible `f`.
pub(crate) fn is_primitive(f: &[u32], p: u32) -> bool {
    let e = degree(f).expect("nonzero modulus") as u32;
    let order = (p as u64).pow(e) - 1;
    let x: Poly = vec![0, 1];
    let one: Poly = rem(&[1], f, p);
    if pow_mod(&x, order, f, p) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| pow_mod(&x, order / r, f, p) != one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_over_f3() {
        // x^2 + 1 irreducible, x^2 + 2 = (x - 1)(x + 1)
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3));
        // x^2 + 1 is irreducible but X has order 4 only
        assert!(!is_primitive(&[1, 0, 1], 3));
        assert!(is_primitive(&[2, 1, 1], 3));
    }

    #[test]
    fn reducible_quartic_without_roots() {
        // (x^2 + 1)^2 = x^4 + 2x^2 + 1 over F_3 has no roots but is reducible
        assert!(!is_irreducible(&[1, 0, 2, 0, 1], 3));
    }
}
