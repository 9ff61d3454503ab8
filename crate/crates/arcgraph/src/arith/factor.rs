use super::primes::{is_prime_u64, mulmod};
use crate::error::{Error, Result};
use crate::Natural;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Prime factorization with primes strictly ascending. The empty list is
/// the factorization of 1. Exponents are u64 because constructed witnesses
/// carry exponents on the order of the arc target, far beyond u32.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(Natural, u64)>,
}

pub(crate) fn nat_pow(base: &Natural, mut exp: u64) -> Natural {
    let mut acc = Natural::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

impl Factorization {
    /// Validates order, positivity, and primality of every listed prime.
    pub fn new(factors: Vec<(Natural, u64)>) -> Result<Self> {
        for window in factors.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::InvalidFactorization {
                    reason: "primes must be strictly ascending".into(),
                });
            }
        }
        for (p, e) in &factors {
            if *e == 0 {
                return Err(Error::InvalidFactorization {
                    reason: "zero exponent".into(),
                });
            }
            match p.to_u64() {
                Some(v) if is_prime_u64(v) => {}
                _ => {
                    return Err(Error::InvalidFactorization {
                        reason: format!("{p} is not a certified prime"),
                    });
                }
            }
        }
        Ok(Factorization { factors })
    }

    pub fn one() -> Self {
        Factorization {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[(Natural, u64)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factors back together. Panics are impossible but the
    /// result can be astronomically large; see `digit_estimate` first when
    /// the factorization was constructed rather than obtained from a value.
    pub fn value(&self) -> Natural {
        let mut v = Natural::one();
        for (p, e) in &self.factors {
            v *= nat_pow(p, *e);
        }
        v
    }

    /// Upper bound on the decimal digit count of `value()`, cheap to
    /// compute even when the value itself is out of reach.
    pub fn digit_estimate(&self) -> u64 {
        let mut digits: f64 = 0.0;
        for (p, e) in &self.factors {
            let lg = match p.to_f64() {
                Some(v) if v.is_finite() => v.log10(),
                _ => p.bits() as f64 / std::f64::consts::LOG2_10,
            };
            digits += (*e as f64) * lg;
        }
        digits.ceil() as u64 + 1
    }

    pub fn exponent_of(&self, p: &Natural) -> u64 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Whether the number this factorization denotes divides the one
    /// `other` denotes.
    pub fn divides(&self, other: &Factorization) -> bool {
        self.factors.iter().all(|(p, e)| other.exponent_of(p) >= *e)
    }

    /// A copy with `extra` multiplied in (prime must be certified).
    pub fn times_prime_power(&self, p: &Natural, e: u64) -> Result<Self> {
        let mut factors = self.factors.clone();
        match factors.binary_search_by(|(q, _)| q.cmp(p)) {
            Ok(i) => factors[i].1 += e,
            Err(i) => factors.insert(i, (p.clone(), e)),
        }
        Factorization::new(factors)
    }

    /// Count of divisors, tau.
    pub fn tau(&self) -> Natural {
        let mut t = Natural::one();
        for (_, e) in &self.factors {
            t *= Natural::from(e + 1);
        }
        t
    }

    /// Count of distinct prime factors, omega.
    pub fn omega(&self) -> Natural {
        Natural::from(self.factors.len())
    }

    /// Count of prime factors with multiplicity, big omega.
    pub fn big_omega(&self) -> Natural {
        let mut t = Natural::zero();
        for (_, e) in &self.factors {
            t += Natural::from(*e);
        }
        t
    }

    /// Euler's totient. Avoid on factorizations with astronomic exponents.
    pub fn phi(&self) -> Natural {
        let mut t = Natural::one();
        for (p, e) in &self.factors {
            t *= nat_pow(p, e - 1) * (p - 1u32);
        }
        t
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> Natural {
        let mut t = Natural::one();
        for (p, _) in &self.factors {
            t *= p;
        }
        t
    }
}

/// The standard multiplicative statistics of a factorization, bundled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeProfile {
    pub tau: Natural,
    pub omega: Natural,
    pub big_omega: Natural,
    pub phi: Natural,
    pub radical: Natural,
}

/// All five statistics at once. Intended for capped inputs; the totient of
/// a factorization with huge exponents is as large as the value itself.
pub fn multiplicative_profile(f: &Factorization) -> MultiplicativeProfile {
    MultiplicativeProfile {
        tau: f.tau(),
        omega: f.omega(),
        big_omega: f.big_omega(),
        phi: f.phi(),
        radical: f.radical(),
    }
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Brent's variant of Pollard's rho. `n` must be composite, odd, and free
/// of factors below the trial bound; returns a nontrivial divisor.
fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n & 1 == 1 && !is_prime_u64(n));
    for c in 1u64.. {
        let step = |x: u64| {
            let s = mulmod(x, x, n);
            if s >= n - c {
                s + c - n
            } else {
                s + c
            }
        };
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = step(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time from the last checkpoint.
            loop {
                ys = step(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("every composite eventually splits")
}

fn factorize_u64(mut n: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    // Wheel over residues coprime to 30.
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut w = 0usize;
    while p <= TRIAL_BOUND && p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if n > 1 {
        if p * p > n {
            out.push((n, 1));
        } else {
            // No factors below the trial bound remain; split recursively.
            let mut stack = vec![n];
            let mut rest: Vec<u64> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime_u64(m) {
                    rest.push(m);
                } else {
                    let d = pollard_brent(m);
                    stack.push(d);
                    stack.push(m / d);
                }
            }
            rest.sort_unstable();
            let mut i = 0;
            while i < rest.len() {
                let mut j = i;
                while j < rest.len() && rest[j] == rest[i] {
                    j += 1;
                }
                out.push((rest[i], (j - i) as u64));
                i = j;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Complete prime factorization of n. Rejects n = 0 and n above the cap;
/// everything under the cap factors exactly (trial division to one million
/// and deterministic splitting beyond).
pub fn factorize(n: &Natural, cap: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    let small = match n.to_u64() {
        Some(v) if v <= cap => v,
        _ => {
            return Err(Error::CapExceeded {
                what: "n",
                value: n.to_string(),
                cap,
            });
        }
    };
    let factors = factorize_u64(small)
        .into_iter()
        .map(|(p, e)| (Natural::from(p), e))
        .collect();
    Ok(Factorization { factors })
}

/// Shape of a number that is a prime power (or the unit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimePower {
    Unit,
    Power { prime: Natural, exponent: u64 },
}

/// Some(Unit) for 1, Some(Power) for p^k with k >= 1, None otherwise.
pub fn is_prime_power(n: &Natural, cap: u64) -> Result<Option<PrimePower>> {
    let f = factorize(n, cap)?;
    Ok(match f.factors() {
        [] => Some(PrimePower::Unit),
        [(p, e)] => Some(PrimePower::Power {
            prime: p.clone(),
            exponent: *e,
        }),
        _ => None,
    })
}
