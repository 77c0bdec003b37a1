//! Small number-theoretic helpers on machine and big integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Trial-division factorisation. Intended for the small invariant factors
/// that show up in lattice quotients; large prime factors are still found,
/// just slowly.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut n = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of a machine integer.
pub fn prime_divisors_u128(n: u128) -> Vec<u128> {
    factorize(&BigUint::from(n))
        .into_iter()
        .map(|(p, _)| p.to_u128().expect("divisor of a u128"))
        .collect()
}

/// Deterministic Miller-Rabin for anything that fits in 128 bits.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    for q in BASES.map(u128::from) {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let nb = BigUint::from(n);
    let nm1 = &nb - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    // the first twelve prime bases are deterministic below 3.3e24; the
    // extra ones are a cheap margin for the rest of the u128 range
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, &nb);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &nb;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime_u128(n as u128)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_after(n: u128) -> u128 {
    let mut c = n + 1;
    while !is_prime_u128(c) {
        c += 1;
    }
    c
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&m| is_prime_u64(m)).collect()
}

pub fn gcd_u128(a: u128, b: u128) -> u128 {
    a.gcd(&b)
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// `base^exp mod m` on machine words.
pub fn pow_mod(mut base: u64, mut exp: u128, m: u64) -> u64 {
    let mut acc = 1u64 % m;
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

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (a as i128 % m as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u128)
}

/// `v_p(n)` for `n > 0`.
pub fn valuation_u128(mut n: u128, p: u128) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Returns `Some(b)` when `n = p^b`.
pub fn exact_log(n: u128, p: u128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let b = valuation_u128(n, p);
    if p.checked_pow(b) == Some(n) {
        Some(b)
    } else {
        None
    }
}
