use super::sb::SbDpParams;
use super::tau::TauSearchCertificate;
use crate::arith::{DigitExpansion, Factorization};
use crate::Natural;

/// An arc witness in whichever representation the construction produced.
/// Digit and factored forms exist because interesting witnesses routinely
/// have more digits than is sensible to materialize eagerly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The number itself.
    Value(Natural),
    /// Base-b expansion, for digit-function witnesses.
    Digits(DigitExpansion),
    /// Prime factorization, for divisor/prime-count witnesses.
    Factored(Factorization),
}

impl Witness {
    /// Materializes the number. Can be enormous for factored witnesses;
    /// check `digit_estimate` first if that matters.
    pub fn value(&self) -> Natural {
        match self {
            Witness::Value(v) => v.clone(),
            Witness::Digits(d) => d.value(),
            Witness::Factored(f) => f.value(),
        }
    }

    /// Upper bound on the decimal length of the witness.
    pub fn digit_estimate(&self) -> u64 {
        match self {
            Witness::Value(v) => v.to_string().len() as u64,
            Witness::Digits(d) => {
                // len digits in base b is about len * log10(b) decimal.
                let b = d.base() as f64;
                (d.len() as f64 * b.log10()).ceil() as u64 + 1
            }
            Witness::Factored(f) => f.digit_estimate(),
        }
    }

    /// The value as a decimal string when it fits `max_digits`.
    pub fn decimal_if_within(&self, max_digits: u64) -> Option<String> {
        if self.digit_estimate() <= max_digits {
            Some(self.value().to_string())
        } else {
            None
        }
    }
}

/// Finite reason an arc cannot exist. Every variant is checkable from its
/// own data plus the (f, n, u) triple it refutes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationCertificate {
    /// Digit sums of multiples of n are fixed modulo d = gcd(b-1, n), and
    /// u is outside the class.
    ResidueClass { d: Natural },
    /// The target is below the least value the function attains on
    /// multiples of n.
    BelowMinimum { minimum: Natural },
    /// The digit-sum reachability table over counts 0..=u and residues
    /// mod n contains no accepting state; the parameters pin down the
    /// table so it can be rebuilt and checked.
    ModularExhaustion { params: SbDpParams },
    /// Exhausted every divisor tuple that could make tau hit u on a
    /// multiple of n.
    TauFactorizationExhaustion { search: TauSearchCertificate },
    /// Every multiple of n up to the limit was evaluated and missed;
    /// refutes only the bounded claim.
    ExhaustiveScan { limit: Natural },
}

/// Outcome of an arc decision. `Unknown` is reserved for questions the
/// library has no exact method for; the note says what was exhausted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcVerdict {
    Proven { witness: Witness },
    Refuted { certificate: RefutationCertificate },
    Unknown { budget_spent: String },
}

impl ArcVerdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, ArcVerdict::Proven { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ArcVerdict::Refuted { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ArcVerdict::Unknown { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ArcVerdict::Proven { .. } => "proven",
            ArcVerdict::Refuted { .. } => "refuted",
            ArcVerdict::Unknown { .. } => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ArcVerdict::Proven { witness } => Some(witness),
            _ => None,
        }
    }
}
