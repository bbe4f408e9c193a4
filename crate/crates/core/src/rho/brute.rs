//! Exhaustive enumeration over `(Z/nZ)^k`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::big_pow;
use crate::error::{Error, Result};

/// Fails with a resource error unless `n^k <= guard`.
pub(crate) fn check_guard(k: u32, n: u64, guard: u64, what: &'static str) -> Result<()> {
    let fits = crate::arith::checked_pow_u128(n, k).is_some_and(|t| t <= guard as u128);
    if fits {
        Ok(())
    } else {
        Err(Error::Resource {
            what,
            required: big_pow(n, k as u64),
            budget: guard,
        })
    }
}

/// Visits the residue `x_1^2 + ... + x_k^2 mod n` of every tuple in
/// `(Z/nZ)^k`, in lexicographic tuple order.
///
/// The caller is responsible for the guard; this walks all `n^k` tuples.
pub(crate) fn for_each_square_sum(k: u32, n: u64, mut visit: impl FnMut(usize)) {
    debug_assert!(k >= 1 && n >= 1);
    let n = n as usize;
    let squares: Vec<usize> = (0..n as u64)
        .map(|x| ((x as u128 * x as u128) % n as u128) as usize)
        .collect();
    let outer = (k - 1) as usize;
    // digits of the outer k-1 coordinates and the running sum of their squares
    let mut digits = vec![0usize; outer];
    let mut prefix = vec![0usize; outer + 1];
    loop {
        let base = prefix[outer];
        for &sq in &squares {
            let mut r = base + sq;
            if r >= n {
                r -= n;
            }
            visit(r);
        }
        // advance the odometer from the last outer coordinate
        let mut i = outer;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
        for j in i..outer {
            let mut r = prefix[j] + squares[digits[j]];
            if r >= n {
                r -= n;
            }
            prefix[j + 1] = r;
        }
    }
}

/// Per-residue tuple counts by exhaustive enumeration.
pub(crate) fn census(k: u32, n: u64) -> Vec<u64> {
    let mut counts = vec![0u64; n as usize];
    for_each_square_sum(k, n, |r| counts[r] += 1);
    counts
}

pub(crate) fn to_big(counts: Vec<u64>) -> Vec<BigUint> {
    counts.into_iter().map(BigUint::from).collect()
}
