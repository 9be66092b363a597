//! Word-sized modular arithmetic. Every modulus handled here is below 2^63,
//! so products fit in a `u128` before reduction.

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = i64::MAX as u64;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, m)`.
pub fn normalize(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(normalize(old_s, m))
}

/// `p^level`, rejecting anything that does not fit below [`MAX_MODULUS`].
pub fn checked_power(p: u64, level: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..level {
        acc = match acc.checked_mul(p) {
            Some(v) if v <= MAX_MODULUS => v,
            _ => return Err(Error::LevelOutOfRange { p, level }),
        };
    }
    Ok(acc)
}

/// Prime factorization by trial division, ascending primes with multiplicity.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q.saturating_mul(q) <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    factorize(n) == [(n, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        for m in [3u64, 9, 25, 125, 343] {
            for a in 1..m {
                match inv_mod(a, m) {
                    Some(b) => assert_eq!(mul_mod(a, b, m), 1),
                    None => assert_ne!(gcd(a, m), 1),
                }
            }
        }
    }

    #[test]
    fn power_limits() {
        assert_eq!(checked_power(3, 4).unwrap(), 81);
        assert_eq!(checked_power(7, 0).unwrap(), 1);
        assert!(checked_power(3, 40).is_err());
        assert!(checked_power(3, 39).is_ok());
    }

    #[test]
    fn factors() {
        assert_eq!(factorize(20), vec![(2, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }

    #[test]
    fn negative_normalization() {
        assert_eq!(normalize(-1, 25), 24);
        assert_eq!(normalize(-26, 25), 24);
    }
}
