use crate::arcs::verdict::Witness;
use crate::arith::{factorize, power_digit_sum};
use crate::error::{Error, Result};
use crate::{ExplorationBudget, Natural};
use num_traits::{ToPrimitive, Zero};
use std::fmt;

/// The arithmetic functions arcs are drawn under. `HappySum` with
/// exponent 1 is the plain digit sum; construct through `happy_sum` to get
/// the canonical variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    /// Digit sum in the given base.
    SumDigits { base: u64 },
    /// Sum of e-th powers of digits in the given base, e >= 2.
    HappySum { base: u64, exponent: u32 },
    /// Divisor count.
    Tau,
    /// Distinct prime factors.
    Omega,
    /// Prime factors with multiplicity.
    BigOmega,
}

impl FunctionId {
    /// Digit-power-sum family with exponent canonicalization.
    pub fn happy_sum(base: u64, exponent: u32) -> FunctionId {
        if exponent == 1 {
            FunctionId::SumDigits { base }
        } else {
            FunctionId::HappySum { base, exponent }
        }
    }

    /// Whether evaluation needs the factorization of its argument (and is
    /// therefore subject to the input cap) rather than its digits.
    pub fn needs_factorization(&self) -> bool {
        matches!(
            self,
            FunctionId::Tau | FunctionId::Omega | FunctionId::BigOmega
        )
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionId::SumDigits { base } => write!(out, "digit-sum(base {base})"),
            FunctionId::HappySum { base, exponent } => {
                write!(out, "digit-power-sum(base {base}, exponent {exponent})")
            }
            FunctionId::Tau => write!(out, "divisor-count"),
            FunctionId::Omega => write!(out, "distinct-prime-count"),
            FunctionId::BigOmega => write!(out, "prime-count-with-multiplicity"),
        }
    }
}

pub(crate) fn validate(f: &FunctionId, budget: &ExplorationBudget) -> Result<()> {
    match f {
        FunctionId::SumDigits { base } | FunctionId::HappySum { base, .. } => {
            if *base < 2 {
                return Err(Error::BaseTooSmall { base: *base });
            }
            if *base > budget.input_cap {
                return Err(Error::CapExceeded {
                    what: "base",
                    value: base.to_string(),
                    cap: budget.input_cap,
                });
            }
            if let FunctionId::HappySum { exponent, .. } = f {
                if *exponent == 0 {
                    return Err(Error::ExponentTooSmall);
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Evaluates g(n). Digit functions accept arbitrarily large n (they read
/// digits, not factorizations); the factor-based functions are capped.
pub fn eval(f: &FunctionId, n: &Natural, budget: &ExplorationBudget) -> Result<Natural> {
    validate(f, budget)?;
    if n.is_zero() {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    match f {
        FunctionId::SumDigits { base } => power_digit_sum(n, *base, 1),
        FunctionId::HappySum { base, exponent } => power_digit_sum(n, *base, *exponent),
        FunctionId::Tau => Ok(factorize(n, budget.input_cap)?.tau()),
        FunctionId::Omega => Ok(factorize(n, budget.input_cap)?.omega()),
        FunctionId::BigOmega => Ok(factorize(n, budget.input_cap)?.big_omega()),
    }
}

/// Checks the raw arc statement: w is a positive multiple of n with
/// g(w) = u. No shortcuts; this is the independent checker the deciders'
/// answers are validated against.
pub fn verify_arc_witness(
    f: &FunctionId,
    n: &Natural,
    u: &Natural,
    w: &Natural,
    budget: &ExplorationBudget,
) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    if w.is_zero() {
        return Ok(false);
    }
    if !(w % n).is_zero() {
        return Ok(false);
    }
    Ok(eval(f, w, budget)? == *u)
}

/// Checks a structured witness. Values and matching-base digit expansions
/// go through direct evaluation; factored witnesses are checked by
/// divisibility and divisor arithmetic on the factorization itself, so
/// they stay verifiable even when the product is far beyond the
/// evaluation cap.
pub fn verify_witness(
    f: &FunctionId,
    n: &Natural,
    u: &Natural,
    w: &Witness,
    budget: &ExplorationBudget,
) -> Result<bool> {
    match w {
        Witness::Value(v) => verify_arc_witness(f, n, u, v, budget),
        Witness::Digits(d) => {
            let matching_base = match f {
                FunctionId::SumDigits { base } | FunctionId::HappySum { base, .. } => {
                    d.base() == *base
                }
                _ => false,
            };
            if !matching_base {
                return verify_arc_witness(f, n, u, &d.value(), budget);
            }
            let n64 = budget.checked_input("n", n)?;
            if n64 == 0 {
                return Err(Error::ZeroNotPositive { what: "n" });
            }
            if d.is_empty() || d.residue(n64) != 0 {
                return Ok(false);
            }
            let e = match f {
                FunctionId::HappySum { exponent, .. } => *exponent,
                _ => 1,
            };
            Ok(d.power_digit_sum(e)? == *u)
        }
        Witness::Factored(fac) => {
            if !f.needs_factorization() {
                return verify_arc_witness(f, n, u, &fac.value(), budget);
            }
            if n.is_zero() {
                return Err(Error::ZeroNotPositive { what: "n" });
            }
            let n_fac = factorize(n, budget.input_cap)?;
            if !n_fac.divides(fac) {
                return Ok(false);
            }
            let got = match f {
                FunctionId::Tau => fac.tau(),
                FunctionId::Omega => fac.omega(),
                FunctionId::BigOmega => fac.big_omega(),
                _ => unreachable!("digit functions handled above"),
            };
            Ok(got == *u)
        }
    }
}

fn digit_sum_u128(mut x: u128, base: u128) -> u128 {
    let mut s = 0u128;
    while x > 0 {
        s += x % base;
        x /= base;
    }
    s
}

fn happy_sum_u128(mut x: u128, base: u128, e: u32) -> Option<u128> {
    let mut s = 0u128;
    while x > 0 {
        let d = x % base;
        s = s.checked_add(d.checked_pow(e)?)?;
        x /= base;
    }
    Some(s)
}

/// Scans multiples k*n for k = 1..=oracle_k_max and returns the first with
/// g(k*n) = u, if any. For factor-based functions each step factors the
/// multiple, so the scan errors out if it would cross the input cap.
pub fn oracle_search(
    f: &FunctionId,
    n: &Natural,
    u: &Natural,
    budget: &ExplorationBudget,
) -> Result<Option<Natural>> {
    validate(f, budget)?;
    let n64 = budget.checked_input("n", n)?;
    if n64 == 0 {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    match f {
        FunctionId::SumDigits { base } | FunctionId::HappySum { base, .. } => {
            let e = match f {
                FunctionId::HappySum { exponent, .. } => *exponent,
                _ => 1,
            };
            let target = u.to_u128();
            let base128 = *base as u128;
            for k in 1..=budget.oracle_k_max {
                let cand = n64 as u128 * k as u128;
                let sum = if e == 1 {
                    Some(digit_sum_u128(cand, base128))
                } else {
                    happy_sum_u128(cand, base128, e)
                };
                let hit = match (sum, target) {
                    (Some(s), Some(t)) => s == t,
                    (Some(_), None) => false,
                    (None, _) => {
                        // Overflowed u128; fall back to exact arithmetic.
                        let cand_big = Natural::from(cand);
                        power_digit_sum(&cand_big, *base, e)? == *u
                    }
                };
                if hit {
                    return Ok(Some(Natural::from(cand)));
                }
            }
            Ok(None)
        }
        FunctionId::Tau | FunctionId::Omega | FunctionId::BigOmega => {
            for k in 1..=budget.oracle_k_max {
                let cand = n64
                    .checked_mul(k)
                    .filter(|&c| c <= budget.input_cap)
                    .ok_or(Error::CapExceeded {
                        what: "k*n",
                        value: format!("{n64}*{k}"),
                        cap: budget.input_cap,
                    })?;
                let cand_big = Natural::from(cand);
                if eval(f, &cand_big, budget)? == *u {
                    return Ok(Some(cand_big));
                }
            }
            Ok(None)
        }
    }
}
