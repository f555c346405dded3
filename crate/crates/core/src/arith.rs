//! Small-integer number theory used by every other module.

use alloc::vec::Vec;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Checked `base^exp`; `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// `base^exp` for the small exponents of this crate; panics on overflow.
pub fn ipow(base: i64, exp: u32) -> i64 {
    base.checked_pow(exp).expect("integer power overflow")
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut result: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative inverse modulo a prime.
pub fn inv_mod(x: u64, p: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x, p - 2, p)
}

/// Smallest primitive root modulo an odd prime.
pub fn primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .unwrap_or(1)
}

/// All primitive roots modulo an odd prime, ascending.
pub fn primitive_roots(p: u64) -> Vec<u64> {
    let factors = prime_factors(p - 1);
    (1..p)
        .filter(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .collect()
}

/// Legendre symbol `(t | p)` with `(0 | p) = 0`, by Euler's criterion.
pub fn legendre(t: i64, p: u64) -> i32 {
    let r = t.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Reduce a signed integer into `[0, p)`.
pub fn residue(t: i64, p: u32) -> u32 {
    t.rem_euclid(p as i64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(9));
    }

    #[test]
    fn legendre_small() {
        assert_eq!(legendre(1, 3), 1);
        assert_eq!(legendre(2, 3), -1);
        assert_eq!(legendre(0, 7), 0);
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(-1, 7), -1);
    }

    #[test]
    fn primitive_roots_small() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_roots(7), [3, 5]);
        assert_eq!(prime_factors(728), [2, 7, 13]);
    }
}
