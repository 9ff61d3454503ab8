use crate::Natural;
use num_traits::ToPrimitive;
use std::collections::BTreeSet;

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64. The witness set covers every
/// 64-bit composite, so the answer is exact, not probabilistic.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes not in `avoid`, ascending. Used to pad
/// witnesses with prime factors foreign to a given number.
pub fn generate_fresh_primes(count: usize, avoid: &BTreeSet<Natural>) -> Vec<Natural> {
    // Only u64-sized entries of `avoid` can collide with the candidates.
    let avoid_small: BTreeSet<u64> = avoid.iter().filter_map(|p| p.to_u64()).collect();
    let mut out = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while out.len() < count {
        if is_prime_u64(candidate) && !avoid_small.contains(&candidate) {
            out.push(Natural::from(candidate));
        }
        candidate = if candidate == 2 { 3 } else { candidate + 2 };
    }
    out
}
