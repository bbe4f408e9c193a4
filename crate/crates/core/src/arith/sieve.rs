use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Largest `limit` accepted by [`SpfTable::new`].
///
/// The table stores one `u32` per integer, so this ceiling is 4 GB of memory;
/// desk-scale runs stay well below it.
pub const SPF_LIMIT_MAX: u64 = 1_000_000_000;

/// Smallest-prime-factor table for `2..=limit`, built with a linear sieve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpfTable {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::domain("SpfTable: limit must be at least 2"));
        }
        if limit > SPF_LIMIT_MAX {
            return Err(Error::Resource {
                what: "smallest-prime-factor table",
                required: BigUint::from(limit),
                budget: SPF_LIMIT_MAX,
            });
        }
        let limit = limit as usize;
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                if p > si {
                    break;
                }
                let m = i * p as usize;
                if m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SpfTable { spf, primes })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Smallest prime factor of `i`, for `2 <= i <= limit`.
    pub fn spf(&self, i: u64) -> Option<u64> {
        if i < 2 || i > self.limit() {
            return None;
        }
        Some(self.spf[i as usize] as u64)
    }

    /// All primes up to `limit`, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.spf
    }
}

/// All odd primes `3 <= p <= limit`, ascending, from an odd-only bit sieve.
pub fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    // bit i stands for 2i + 1
    let bits = (limit as usize - 1) / 2 + 1;
    let mut composite = vec![0u64; bits.div_ceil(64)];
    let mut i = 1usize;
    loop {
        let p = 2 * i + 1;
        if p * p > limit as usize {
            break;
        }
        if composite[i / 64] >> (i % 64) & 1 == 0 {
            let mut j = (p * p) / 2;
            while j < bits {
                composite[j / 64] |= 1 << (j % 64);
                j += p;
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(estimate_prime_count(limit));
    for i in 1..bits {
        if composite[i / 64] >> (i % 64) & 1 == 0 {
            out.push(2 * i as u64 + 1);
        }
    }
    out
}

fn estimate_prime_count(limit: u64) -> usize {
    let x = limit as f64;
    (1.26 * x / libm::log(x.max(3.0))) as usize + 16
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_spf(n: u64) -> u64 {
        (2..=n).find(|d| n % d == 0).unwrap()
    }

    #[test]
    fn examples() {
        let t = SpfTable::new(10).unwrap();
        assert_eq!(t.spf(9), Some(3));
        assert_eq!(t.spf(7), Some(7));
        assert_eq!(t.spf(1), None);
        assert_eq!(t.spf(11), None);
        assert_eq!(SpfTable::new(100).unwrap().spf(91), Some(7));
    }

    #[test]
    fn rejects_small_limit() {
        assert!(matches!(SpfTable::new(1), Err(Error::Domain(_))));
        assert!(matches!(SpfTable::new(0), Err(Error::Domain(_))));
        assert!(matches!(
            SpfTable::new(SPF_LIMIT_MAX + 1),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn invariants_match_trial_division() {
        let t = SpfTable::new(5000).unwrap();
        for i in 2..=5000u64 {
            let s = t.spf(i).unwrap();
            assert_eq!(s, trial_spf(i), "i = {i}");
            assert_eq!(i % s, 0);
            assert!(s * s <= i || s == i);
        }
        assert_eq!(t.primes().len(), 669);
    }

    #[test]
    fn odd_prime_sieve() {
        let t = SpfTable::new(100_000).unwrap();
        let expected: Vec<u64> = t.primes()[1..].iter().map(|&p| p as u64).collect();
        assert_eq!(odd_primes_up_to(100_000), expected);
        assert_eq!(odd_primes_up_to(2), Vec::<u64>::new());
        assert_eq!(odd_primes_up_to(3), vec![3]);
        assert_eq!(odd_primes_up_to(9), vec![3, 5, 7]);
        assert_eq!(odd_primes_up_to(11), vec![3, 5, 7, 11]);
    }
}
