//! Small integer number theory used for exponent bookkeeping.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime factors of `n`, ascending.
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
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `q` modulo `modulus`: the smallest `s >= 1`
/// with `q^s = 1 (mod modulus)`.
pub fn mult_order_mod(q: u64, modulus: u64) -> Result<u64> {
    if modulus == 0 || gcd(q, modulus) != 1 {
        return Err(Error::NotCoprime { q, modulus });
    }
    if modulus == 1 {
        return Ok(1);
    }
    let mut s = 1;
    let mut x = q % modulus;
    while x != 1 {
        x = (x as u128 * q as u128 % modulus as u128) as u64;
        s += 1;
    }
    Ok(s)
}

/// Splits `n = n' * p^t` with `p` not dividing `n'`; returns `(n', t)`.
pub fn strip_prime(mut n: u64, p: u64) -> (u64, u32) {
    let mut t = 0;
    while n.is_multiple_of(p) {
        n /= p;
        t += 1;
    }
    (n, t)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
