use crate::error::{Error, Result};
use crate::Natural;
use num_traits::ToPrimitive;

/// Resource limits for every search the library runs. All searches are
/// deterministic; the budget only decides where they give up, never what
/// they answer. A blown budget surfaces as `Unknown` (for verdict-shaped
/// ops) or `Error::BudgetExceeded` (for ops that must classify or nothing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplorationBudget {
    /// Multiples of n scanned by oracle searches (k in 1..=oracle_k_max).
    pub oracle_k_max: u64,
    /// Cap on (target_sum + 1) * modulus states in the digit-sum DP.
    /// Work and memory guards are derived from this (see `decide_sb_exact`).
    pub dp_state_cap: u64,
    /// Largest witness the library will materialize, measured in digits
    /// of its positional expansion (or factor entries for factored form).
    pub max_witness_digits: u64,
    /// Inputs (n, u, b) above this are rejected with `CapExceeded` so every
    /// internal fast path can rely on u64/u128 arithmetic.
    pub input_cap: u64,
}

impl Default for ExplorationBudget {
    fn default() -> Self {
        ExplorationBudget {
            oracle_k_max: 100_000,
            dp_state_cap: 10_000_000,
            max_witness_digits: 1_000_000,
            input_cap: 1_000_000_000_000,
        }
    }
}

/// Hard ceiling on `input_cap`: inputs must fit comfortably in u64 with
/// room for one multiplication into u128 in the modular kernels.
pub const INPUT_CAP_MAX: u64 = 1 << 62;

impl ExplorationBudget {
    /// Validates that every limit is positive and the input cap is within
    /// the range the fixed-width kernels were written for.
    pub fn validated(self) -> Result<Self> {
        if self.oracle_k_max == 0
            || self.dp_state_cap == 0
            || self.max_witness_digits == 0
            || self.input_cap == 0
        {
            return Err(Error::BudgetExceeded {
                detail: "budget limits must all be positive".into(),
            });
        }
        if self.input_cap > INPUT_CAP_MAX {
            return Err(Error::CapExceeded {
                what: "input_cap",
                value: self.input_cap.to_string(),
                cap: INPUT_CAP_MAX,
            });
        }
        Ok(self)
    }

    /// Checks `x <= input_cap` and hands back the value as a u64.
    pub fn checked_input(&self, what: &'static str, x: &Natural) -> Result<u64> {
        match x.to_u64() {
            Some(v) if v <= self.input_cap => Ok(v),
            _ => Err(Error::CapExceeded {
                what,
                value: x.to_string(),
                cap: self.input_cap,
            }),
        }
    }
}
