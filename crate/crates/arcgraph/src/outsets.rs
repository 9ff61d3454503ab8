//! Whole-out-set structure: for fixed g and n, what does the set of all
//! reachable targets look like? For the supported families this is
//! decidable outright; the only runtime work is the digit-sum Frobenius
//! computation, which sweeps one reachability table.

use crate::arcs::{decide_arc, ArcVerdict, FunctionId};
use crate::arith::{factorize, is_prime_power, PrimePower};
use crate::error::{Error, Result};
use crate::{ExplorationBudget, Natural};
use num_integer::Integer;
use num_traits::ToPrimitive;

/// How the residue-constrained digit-sum case relates to its upper bound
/// (all positive multiples of d = gcd(base-1, n)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqualityStatus {
    /// The out-set is exactly the positive multiples of d: d itself is
    /// reachable, and reachable sums are closed under addition.
    Established,
    /// A multiple of d that is provably unreachable; inclusion is strict.
    StrictWitness { u: Natural },
    /// The deciding computation blew the budget below this horizon.
    UndecidedWithinBound { horizon: Natural },
}

/// Structure of an out-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutCharacterization {
    /// Every positive target is reachable.
    Full { reason: String },
    /// Exactly the targets at or above a minimum.
    ExactTail { minimum: Natural },
    /// Cofinite with an explicitly computed largest absentee; all targets
    /// beyond `proven_bound` are reachable by construction, and the sweep
    /// below it is exact.
    CofiniteComputed {
        frobenius: Natural,
        proven_bound: Natural,
    },
    /// Contained in the positive multiples of d (d > 1), with the
    /// containment's tightness reported alongside.
    ResidueConstrained {
        d: Natural,
        equality: EqualityStatus,
    },
    /// Infinitely many members, infinitely many absentees (divisor counts
    /// over a modulus with two or more prime factors: no prime target is
    /// ever reachable).
    InfiniteNotCofinite { minimum: Natural },
}

fn classify_sum_digits(
    base: u64,
    n: &Natural,
    budget: &ExplorationBudget,
) -> Result<OutCharacterization> {
    if base < 2 {
        return Err(Error::BaseTooSmall { base });
    }
    let n64 = budget.checked_input("n", n)?;
    if n64 == 0 {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    if n64 == 1 {
        return Ok(OutCharacterization::Full {
            reason: "n = 1: the repunit with u ones realizes every target".into(),
        });
    }
    let d = (base - 1).gcd(&n64);
    let fac = factorize(&Natural::from(n64), budget.input_cap)?;
    let radical_divides_base = fac
        .factors()
        .iter()
        .all(|(p, _)| base % p.to_u64().unwrap() == 0);

    if d == 1 {
        if radical_divides_base {
            return Ok(OutCharacterization::Full {
                reason: format!(
                    "gcd({}, {n64}) = 1 and every prime factor of {n64} divides {base}",
                    base - 1
                ),
            });
        }
        // Above (n-1)(n+base-2) every target decomposes over the digit
        // sums n and n-1+base of the two pair blocks; below it, sweep.
        let bound = (n64 as u128 - 1) * (n64 as u128 + base as u128 - 2);
        let bound64 = u64::try_from(bound).map_err(|_| Error::BudgetExceeded {
            detail: format!("Frobenius sweep bound {bound} does not fit the table"),
        })?;
        let members = crate::arcs::sb_members_up_to(base, n64, bound64, budget)?;
        let frobenius = (1..=bound64)
            .rev()
            .find(|&u| !members[u as usize])
            .expect("a digit-sum out-set below its coin bound is never complete");
        return Ok(OutCharacterization::CofiniteComputed {
            frobenius: Natural::from(frobenius),
            proven_bound: Natural::from(bound64),
        });
    }

    // d > 1: all reachable sums are multiples of d. Reachable sums are
    // closed under addition (concatenating multiples of n adds digit
    // sums), so the set is every multiple of d exactly when d itself is
    // reachable.
    let equality = match decide_arc(
        &FunctionId::SumDigits { base },
        n,
        &Natural::from(d),
        budget,
    )? {
        ArcVerdict::Proven { .. } => EqualityStatus::Established,
        ArcVerdict::Refuted { .. } => EqualityStatus::StrictWitness {
            u: Natural::from(d),
        },
        ArcVerdict::Unknown { .. } => EqualityStatus::UndecidedWithinBound {
            horizon: Natural::from(0u32),
        },
    };
    Ok(OutCharacterization::ResidueConstrained {
        d: Natural::from(d),
        equality,
    })
}

/// Classifies the out-set of n under f. Digit sums split by
/// gcd(base-1, n) and the radical test; divisor counts are full only for
/// n = 1, a tail for prime powers, and properly infinite-coinfinite
/// otherwise; the prime counters are always a tail (or full when the
/// threshold is at most 1). Higher digit powers have no exact theory
/// here and return an error rather than a guess.
pub fn classify_out(
    f: &FunctionId,
    n: &Natural,
    budget: &ExplorationBudget,
) -> Result<OutCharacterization> {
    match f {
        FunctionId::SumDigits { base } => classify_sum_digits(*base, n, budget),
        FunctionId::HappySum { .. } => Err(Error::Unclassifiable {
            function: f.to_string(),
        }),
        FunctionId::Tau => {
            let n64 = budget.checked_input("n", n)?;
            if n64 == 0 {
                return Err(Error::ZeroNotPositive { what: "n" });
            }
            match is_prime_power(n, budget.input_cap)? {
                Some(PrimePower::Unit) => Ok(OutCharacterization::Full {
                    reason: "n = 1: a prime to the (u-1)-th power has u divisors".into(),
                }),
                Some(PrimePower::Power { exponent, .. }) => Ok(OutCharacterization::ExactTail {
                    minimum: Natural::from(exponent + 1),
                }),
                None => {
                    let tau = factorize(n, budget.input_cap)?.tau();
                    Ok(OutCharacterization::InfiniteNotCofinite { minimum: tau })
                }
            }
        }
        FunctionId::Omega | FunctionId::BigOmega => {
            let n64 = budget.checked_input("n", n)?;
            if n64 == 0 {
                return Err(Error::ZeroNotPositive { what: "n" });
            }
            let fac = factorize(n, budget.input_cap)?;
            let minimum = if matches!(f, FunctionId::Omega) {
                fac.omega()
            } else {
                fac.big_omega()
            };
            let min64 = minimum.to_u64().expect("prime count of a u64 fits");
            if min64 <= 1 {
                Ok(OutCharacterization::Full {
                    reason: format!(
                        "the least reachable count is {min64}, within one of every positive target"
                    ),
                })
            } else {
                Ok(OutCharacterization::ExactTail { minimum })
            }
        }
    }
}

/// Largest unreachable target, when the complement of the out-set is
/// finite: None when the set is full, the explicit largest absentee for
/// tails and computed-cofinite sets, and an error when infinitely many
/// targets are missing.
pub fn frobenius_of_out(
    f: &FunctionId,
    n: &Natural,
    budget: &ExplorationBudget,
) -> Result<Option<Natural>> {
    match classify_out(f, n, budget)? {
        OutCharacterization::Full { .. } => Ok(None),
        OutCharacterization::ExactTail { minimum } => Ok(Some(minimum - 1u32)),
        OutCharacterization::CofiniteComputed { frobenius, .. } => Ok(Some(frobenius)),
        OutCharacterization::ResidueConstrained { d, .. } => Err(Error::NoFrobeniusNumber {
            reason: format!("every target outside the multiples of {d} is missing"),
        }),
        OutCharacterization::InfiniteNotCofinite { .. } => Err(Error::NoFrobeniusNumber {
            reason: "infinitely many targets are missing (no prime is reachable)".into(),
        }),
    }
}

/// Verdicts for every target 1..=u_max, in order.
pub fn enumerate_out_prefix(
    f: &FunctionId,
    n: &Natural,
    u_max: u64,
    budget: &ExplorationBudget,
) -> Result<Vec<(Natural, ArcVerdict)>> {
    if u_max == 0 {
        return Err(Error::ZeroNotPositive { what: "u_max" });
    }
    let mut out = Vec::with_capacity(u_max as usize);
    for u in 1..=u_max {
        let target = Natural::from(u);
        let verdict = decide_arc(f, n, &target, budget)?;
        out.push((target, verdict));
    }
    Ok(out)
}

/// Which sources m in 1..=m_max have an arc into the fixed target n:
/// the incoming side of the graph, one decision per candidate.
pub fn in_search(
    f: &FunctionId,
    n: &Natural,
    m_max: u64,
    budget: &ExplorationBudget,
) -> Result<Vec<(Natural, ArcVerdict)>> {
    if m_max == 0 {
        return Err(Error::ZeroNotPositive { what: "m_max" });
    }
    let mut out = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let source = Natural::from(m);
        let verdict = decide_arc(f, &source, n, budget)?;
        out.push((source, verdict));
    }
    Ok(out)
}
