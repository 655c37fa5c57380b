//! Number-theoretic helpers: Möbius function, necklace (Witt) dimensions,
//! primitive roots and small-prime searches. All moduli here are tiny.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::Residue;

/// Default cap for [`find_prime_q`].
pub const PRIME_SEARCH_CAP: u32 = 1 << 20;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Möbius function.
pub fn mobius(d: u64) -> i64 {
    assert!(d >= 1, "mobius is defined for positive integers");
    let mut n = d;
    let mut sign = 1i64;
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Σ_{d|k} μ(d) n^{k/d}`, the number of primitive necklaces times `k`.
pub fn witt_numerator(n: u64, k: u32) -> i128 {
    divisors(k as u64)
        .into_iter()
        .map(|d| mobius(d) as i128 * (n as i128).pow(k / d as u32))
        .sum()
}

/// Dimension of the degree-`k` component of the free Lie algebra of rank `n`.
pub fn witt_dim(n: u64, k: u32) -> u64 {
    assert!(n >= 1 && k >= 1);
    let num = witt_numerator(n, k);
    debug_assert_eq!(num % k as i128, 0);
    (num / k as i128) as u64
}

/// Sum of [`witt_dim`] over degrees `1..=c`.
pub fn witt_total(n: u64, c: u32) -> u64 {
    (1..=c).map(|k| witt_dim(n, k)).sum()
}

/// Multiplicative order of `a` modulo `m` (`a` must be a unit).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
        assert!(k <= m, "{a} is not a unit modulo {m}");
    }
    k
}

/// Smallest generator of `F_p^×`.
pub fn primitive_root(p: u32) -> Result<Residue> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(Residue::new(1, 2));
    }
    let phi = (p - 1) as u64;
    let factors = prime_factors(phi);
    let g = (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&f| Residue::new(g as u64, p).pow(phi / f).value() != 1)
        })
        .expect("every prime has a primitive root");
    Ok(Residue::new(g as u64, p))
}

/// Smallest prime `q > p` with `q ≡ 1 (mod p)`.
pub fn find_prime_q(p: u32) -> Result<u32> {
    find_prime_q_capped(p, PRIME_SEARCH_CAP)
}

pub fn find_prime_q_capped(p: u32, cap: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut q = p as u64 + 1;
    while q <= cap as u64 {
        if q % p as u64 == 1 && is_prime(q as u32) {
            return Ok(q as u32);
        }
        q += 1;
    }
    Err(Error::SearchBoundExceeded { p, cap })
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u32) -> u32 {
    let mut q = n + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}
