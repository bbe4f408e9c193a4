//! Exact arithmetic for counting sums of squares modulo `n`.
//!
//! The central objects are
//!
//! * `rho(k, lambda, n)`: the number of `k`-tuples over `Z/nZ` whose sum of
//!   squares is congruent to `lambda`, and
//! * `phi_k(k, n)`: the number of `k`-tuples whose sum of squares is a unit
//!   modulo `n` (so `phi_k(1, n)` is Euler's totient).
//!
//! Every closed form is paired with an exhaustive enumeration so the two can
//! be checked against each other. The [`averaging`] module evaluates the
//! partial sums of `phi_k` in bulk and the Euler-product constants of their
//! leading term; [`menon`] explores gcd-sum identities over sums of squares.
//!
//! The crate is `no_std` and needs only `alloc`. Counts are unbounded
//! ([`BigUint`](num_bigint::BigUint)) in pointwise APIs; bulk tables use
//! `u128` with checked arithmetic and report overflow instead of wrapping.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod averaging;
mod error;
pub mod menon;
pub mod phi;
pub mod rho;
pub mod verify;

pub use arith::{
    divisor_count, euler_phi, factorize, gcd, jordan_totient, mod_pow, Factorization, SpfTable,
};
pub use error::{Error, Result};

/// Default budget on the number of tuples an exhaustive enumeration may visit.
pub const DEFAULT_GUARD: u64 = 100_000_000;
