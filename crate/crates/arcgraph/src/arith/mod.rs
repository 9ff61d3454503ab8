//! Integer groundwork: digit expansions, exact factorization, and the
//! eventual-period structure of powers of a base modulo n. Everything here
//! is deterministic; randomized-looking pieces (rho splitting) retry fixed
//! parameter sequences until they succeed, so results are reproducible.

mod digits;
mod factor;
mod order;
mod primes;

pub use digits::{concat_digits, digit_expansion, power_digit_sum, DigitExpansion};
pub use factor::{
    factorize, is_prime_power, multiplicative_profile, Factorization, MultiplicativeProfile,
    PrimePower,
};
pub use order::{order_profile, OrderProfile};
pub use primes::{generate_fresh_primes, is_prime_u64};

pub(crate) use order::order_profile_u64;
