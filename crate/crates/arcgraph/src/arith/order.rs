use super::factor::factorize;
use super::primes::powmod;
use crate::error::{Error, Result};
use crate::Natural;
use num_traits::ToPrimitive;

/// Eventual-period data of the sequence b^0, b^1, b^2, ... taken mod n:
/// the powers repeat with period `period` from exponent `preperiod` on,
/// and both values are minimal (preperiod first, then period).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderProfile {
    pub preperiod: u64,
    pub period: u64,
}

/// Multiplicative order of b modulo m, for gcd(b, m) = 1. Starts from the
/// totient and strips prime factors while the power stays 1.
fn multiplicative_order(b: u64, m: u64, cap: u64) -> Result<u64> {
    if m == 1 {
        return Ok(1);
    }
    let phi = factorize(&Natural::from(m), cap)?
        .phi()
        .to_u64()
        .expect("totient of a u64 fits");
    let mut order = phi;
    for (p, _) in factorize(&Natural::from(phi), cap)?.factors() {
        let p = p.to_u64().unwrap();
        while order % p == 0 && powmod(b, order / p, m) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Computes the order profile of b mod n by factoring: the preperiod is
/// governed by the primes n shares with b (p^a exactly dividing b supports
/// p^e in n after ceil(e/a) steps), the period by the order of b modulo
/// the part of n coprime to b.
pub fn order_profile(b: &Natural, n: &Natural, cap: u64) -> Result<OrderProfile> {
    let b64 = b
        .to_u64()
        .filter(|&v| v <= cap)
        .ok_or_else(|| Error::CapExceeded {
            what: "b",
            value: b.to_string(),
            cap,
        })?;
    let n64 = n
        .to_u64()
        .filter(|&v| v <= cap)
        .ok_or_else(|| Error::CapExceeded {
            what: "n",
            value: n.to_string(),
            cap,
        })?;
    if b64 < 2 {
        return Err(Error::BaseTooSmall { base: b64 });
    }
    if n64 == 0 {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    order_profile_u64(b64, n64, cap)
}

pub(crate) fn order_profile_u64(b: u64, n: u64, cap: u64) -> Result<OrderProfile> {
    let mut preperiod = 0u64;
    let mut coprime_part = 1u64;
    for (p, e) in factorize(&Natural::from(n), cap)?.factors() {
        let p = p.to_u64().unwrap();
        if b % p == 0 {
            let mut a = 0u64;
            let mut bb = b;
            while bb % p == 0 {
                bb /= p;
                a += 1;
            }
            preperiod = preperiod.max(e.div_ceil(a));
        } else {
            let mut pe = 1u64;
            for _ in 0..*e {
                pe *= p;
            }
            coprime_part *= pe;
        }
    }
    let period = multiplicative_order(b % coprime_part, coprime_part, cap)?;
    Ok(OrderProfile { preperiod, period })
}
