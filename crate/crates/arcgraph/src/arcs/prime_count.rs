use super::function::FunctionId;
use super::verdict::{ArcVerdict, RefutationCertificate, Witness};
use crate::arith::{factorize, generate_fresh_primes};
use crate::error::{Error, Result};
use crate::{ExplorationBudget, Natural};
use num_traits::ToPrimitive;
use std::collections::BTreeSet;

/// Arcs under the prime counters are a pure threshold: a multiple of n
/// keeps all of n's primes, and fresh primes raise either count one at a
/// time, so exactly the targets at or above the count of n are reachable.
/// Witnesses: n itself at the threshold; above it, n times a padding of
/// fresh primes (distinct ones for the distinct count, one fresh prime
/// raised to a power for the multiplicity count).
pub fn decide_prime_count_arc(
    f: &FunctionId,
    n: &Natural,
    u: &Natural,
    budget: &ExplorationBudget,
) -> Result<ArcVerdict> {
    let counts_multiplicity = match f {
        FunctionId::Omega => false,
        FunctionId::BigOmega => true,
        other => {
            return Err(Error::Unclassifiable {
                function: other.to_string(),
            });
        }
    };
    let n64 = budget.checked_input("n", n)?;
    if n64 == 0 {
        return Err(Error::ZeroNotPositive { what: "n" });
    }
    let u64v = budget.checked_input("u", u)?;
    if u64v == 0 {
        return Err(Error::ZeroNotPositive { what: "u" });
    }

    let fac = factorize(&Natural::from(n64), budget.input_cap)?;
    let minimum = if counts_multiplicity {
        fac.big_omega().to_u64().expect("count of a u64 fits")
    } else {
        fac.omega().to_u64().expect("count of a u64 fits")
    };

    if u64v < minimum {
        return Ok(ArcVerdict::Refuted {
            certificate: RefutationCertificate::BelowMinimum {
                minimum: Natural::from(minimum),
            },
        });
    }

    let pad = u64v - minimum;
    if pad == 0 {
        return Ok(ArcVerdict::Proven {
            witness: Witness::Factored(fac),
        });
    }

    let avoid: BTreeSet<Natural> = fac.factors().iter().map(|(p, _)| p.clone()).collect();
    let witness = if counts_multiplicity {
        // One fresh prime carries the whole multiplicity bump.
        let q = generate_fresh_primes(1, &avoid)
            .pop()
            .expect("a fresh prime always exists");
        fac.times_prime_power(&q, pad)?
    } else {
        if pad > budget.max_witness_digits {
            return Ok(ArcVerdict::Unknown {
                budget_spent: format!(
                    "witness needs {pad} fresh prime factors, cap is {}",
                    budget.max_witness_digits
                ),
            });
        }
        let mut w = fac;
        for q in generate_fresh_primes(pad as usize, &avoid) {
            w = w.times_prime_power(&q, 1)?;
        }
        w
    };
    Ok(ArcVerdict::Proven {
        witness: Witness::Factored(witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(x: u64) -> Natural {
        Natural::from(x)
    }

    fn budget() -> ExplorationBudget {
        ExplorationBudget::default()
    }

    #[test]
    fn distinct_count_threshold() {
        // omega(12) = 2.
        match decide_prime_count_arc(&FunctionId::Omega, &nat(12), &nat(1), &budget()).unwrap() {
            ArcVerdict::Refuted {
                certificate: RefutationCertificate::BelowMinimum { minimum },
            } => assert_eq!(minimum, nat(2)),
            other => panic!("{other:?}"),
        }
        match decide_prime_count_arc(&FunctionId::Omega, &nat(12), &nat(2), &budget()).unwrap() {
            ArcVerdict::Proven { witness } => assert_eq!(witness.value(), nat(12)),
            other => panic!("{other:?}"),
        }
        match decide_prime_count_arc(&FunctionId::Omega, &nat(12), &nat(4), &budget()).unwrap() {
            ArcVerdict::Proven { witness } => {
                let w = match witness {
                    Witness::Factored(f) => f,
                    other => panic!("{other:?}"),
                };
                assert_eq!(w.omega(), nat(4));
                assert_eq!(w.exponent_of(&nat(2)), 2);
                assert_eq!(w.exponent_of(&nat(3)), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn multiplicity_count_threshold() {
        // big_omega(12) = 3; u = 5 pads one fresh prime squared.
        match decide_prime_count_arc(&FunctionId::BigOmega, &nat(12), &nat(5), &budget()).unwrap() {
            ArcVerdict::Proven { witness } => {
                let w = match witness {
                    Witness::Factored(f) => f,
                    other => panic!("{other:?}"),
                };
                assert_eq!(w.big_omega(), nat(5));
                assert_eq!(w.value(), nat(12 * 25));
            }
            other => panic!("{other:?}"),
        }
        match decide_prime_count_arc(&FunctionId::BigOmega, &nat(8), &nat(2), &budget()).unwrap() {
            ArcVerdict::Refuted {
                certificate: RefutationCertificate::BelowMinimum { minimum },
            } => assert_eq!(minimum, nat(3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unit_modulus() {
        // omega(1) = 0, so every positive target is a pad.
        match decide_prime_count_arc(&FunctionId::Omega, &nat(1), &nat(3), &budget()).unwrap() {
            ArcVerdict::Proven { witness } => assert_eq!(witness.value(), nat(30)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_function_rejected() {
        assert!(decide_prime_count_arc(&FunctionId::Tau, &nat(12), &nat(3), &budget()).is_err());
    }
}
