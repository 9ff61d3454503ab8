use crate::error::{Error, Result};
use crate::Natural;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

/// Base-b positional expansion of a positive integer, least significant
/// digit first. The most significant digit is always nonzero, so the
/// representation is canonical and `digits.len()` is the digit count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    base: u64,
    digits: Vec<u64>,
}

/// Largest power of `base` that fits in u64, as (base^k, k). Conversions
/// move k digits per big-integer division instead of one.
fn chunk_power(base: u64) -> (u64, u32) {
    let mut pow: u64 = base;
    let mut k: u32 = 1;
    while let Some(next) = pow.checked_mul(base) {
        pow = next;
        k += 1;
    }
    (pow, k)
}

impl DigitExpansion {
    /// Wraps an explicit digit vector (least significant first). Rejects
    /// digits outside 0..base, a zero leading digit, and empty input.
    pub fn new(base: u64, digits: Vec<u64>) -> Result<Self> {
        if base < 2 {
            return Err(Error::BaseTooSmall { base });
        }
        if digits.is_empty() {
            return Err(Error::InvalidDigits {
                reason: "empty digit vector".into(),
            });
        }
        if digits.iter().any(|&d| d >= base) {
            return Err(Error::InvalidDigits {
                reason: format!("digit out of range for base {base}"),
            });
        }
        if *digits.last().unwrap() == 0 {
            return Err(Error::InvalidDigits {
                reason: "leading digit is zero".into(),
            });
        }
        Ok(DigitExpansion { base, digits })
    }

    /// Expands n in base b. n must be positive.
    pub fn of(n: &Natural, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::BaseTooSmall { base });
        }
        if n.is_zero() {
            return Err(Error::ZeroNotPositive { what: "n" });
        }
        let (chunk, k) = chunk_power(base);
        let big_chunk = Natural::from(chunk);
        let mut digits = Vec::new();
        let mut rest = n.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&big_chunk);
            let mut part = r.to_u64().expect("remainder below a u64 modulus");
            if q.is_zero() {
                while part > 0 {
                    digits.push(part % base);
                    part /= base;
                }
            } else {
                for _ in 0..k {
                    digits.push(part % base);
                    part /= base;
                }
            }
            rest = q;
        }
        Ok(DigitExpansion { base, digits })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Digits, least significant first.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The integer this expansion denotes. Digits are consumed in blocks of
    /// k from the most significant end, one big multiplication per block.
    pub fn value(&self) -> Natural {
        let (chunk, k) = chunk_power(self.base);
        let k = k as usize;
        let mut value = Natural::zero();
        let mut idx = self.digits.len();
        while idx > 0 {
            let take = if idx % k == 0 { k } else { idx % k };
            let block = &self.digits[idx - take..idx];
            let mut part: u64 = 0;
            for &d in block.iter().rev() {
                part = part * self.base + d;
            }
            let shift = if take == k {
                chunk
            } else {
                self.base.pow(take as u32)
            };
            value = value * shift + part;
            idx -= take;
        }
        value
    }

    /// Sum of e-th powers of the digits.
    pub fn power_digit_sum(&self, e: u32) -> Result<Natural> {
        if e == 0 {
            return Err(Error::ExponentTooSmall);
        }
        if e == 1 {
            let mut acc: u128 = 0;
            let mut total = Natural::zero();
            for &d in &self.digits {
                acc += d as u128;
                if acc > u128::MAX / 2 {
                    total += Natural::from(acc);
                    acc = 0;
                }
            }
            return Ok(total + Natural::from(acc));
        }
        // Group equal digits; bases can be large but distinct digit values
        // appearing in one number are at most its length.
        let mut counts: HashMap<u64, u64> = HashMap::new();
        for &d in &self.digits {
            *counts.entry(d).or_insert(0) += 1;
        }
        let mut total = Natural::zero();
        for (d, c) in counts {
            if d == 0 {
                continue;
            }
            total += Natural::from(d).pow(e) * Natural::from(c);
        }
        Ok(total)
    }

    /// Value of the expansion modulo m, via Horner from the top digit.
    /// m must be positive and small enough that m * base fits in u128.
    pub fn residue(&self, m: u64) -> u64 {
        assert!(m > 0, "modulus must be positive");
        if m == 1 {
            return 0;
        }
        let b = (self.base % m) as u128;
        let mm = m as u128;
        let mut r: u128 = 0;
        for &d in self.digits.iter().rev() {
            r = (r * b + (d % m) as u128) % mm;
        }
        r as u64
    }

    /// Concatenation of expansions, most significant part first.
    /// All parts must share the base.
    pub fn concat(parts: &[DigitExpansion]) -> Result<DigitExpansion> {
        if parts.is_empty() {
            return Err(Error::InvalidDigits {
                reason: "nothing to concatenate".into(),
            });
        }
        let base = parts[0].base;
        if parts.iter().any(|p| p.base != base) {
            return Err(Error::InvalidDigits {
                reason: "mixed bases in concatenation".into(),
            });
        }
        let mut digits = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for part in parts.iter().rev() {
            digits.extend_from_slice(&part.digits);
        }
        DigitExpansion::new(base, digits)
    }

    /// Digits rendered most significant first: compact alphanumerics for
    /// bases up to 36, comma separated otherwise.
    pub fn to_msf_string(&self) -> String {
        const ALPHABET: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";
        if self.base <= 36 {
            self.digits
                .iter()
                .rev()
                .map(|&d| ALPHABET[d as usize] as char)
                .collect()
        } else {
            self.digits
                .iter()
                .rev()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

/// Base-b digits of n, least significant first.
pub fn digit_expansion(n: &Natural, b: u64) -> Result<DigitExpansion> {
    DigitExpansion::of(n, b)
}

/// Sum of e-th powers of the base-b digits of n. With e = 1 this is the
/// plain digit sum.
pub fn power_digit_sum(n: &Natural, b: u64, e: u32) -> Result<Natural> {
    digit_expansion(n, b)?.power_digit_sum(e)
}

/// The integer whose base-b expansion is the expansions of `parts` written
/// one after another, first part most significant. Every part must be
/// positive so no leading digit collapses.
pub fn concat_digits(parts: &[Natural], b: u64) -> Result<Natural> {
    if parts.is_empty() {
        return Err(Error::InvalidDigits {
            reason: "nothing to concatenate".into(),
        });
    }
    let expansions = parts
        .iter()
        .map(|p| DigitExpansion::of(p, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(DigitExpansion::concat(&expansions)?.value())
}
