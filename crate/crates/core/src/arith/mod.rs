//! Integer substrate: gcd, modular powers, factorization and the classical
//! totients.

mod factor;
mod sieve;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};

pub use factor::{factorize, is_prime};
pub use sieve::{odd_primes_up_to, SpfTable, SPF_LIMIT_MAX};

/// Greatest common divisor, with `gcd(0, 0) = 0`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exponent mod modulus`, always in `[0, modulus)`.
pub fn mod_pow(base: u64, mut exponent: u64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::domain("mod_pow: modulus must be at least 1"));
    }
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exponent > 0 {
        if exponent & 1 == 1 {
            result = mul_mod(result, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exponent >>= 1;
    }
    Ok(result)
}

/// Euler's criterion for an odd prime `p` and `p ∤ a`.
pub(crate) fn is_quadratic_residue(a: u64, p: u64) -> bool {
    debug_assert!(p > 2 && a % p != 0);
    // p odd and >= 3, so the modulus is valid
    mod_pow(a, (p - 1) / 2, p).unwrap() == 1
}

/// Canonical prime-power decomposition of a positive integer.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// factorization of `1` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            n: 1,
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, validating
    /// ordering, primality and that the product fits in a `u64`.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        let mut last = 1;
        for &(p, e) in &factors {
            if p <= last {
                return Err(Error::domain("primes must be strictly increasing"));
            }
            if e == 0 {
                return Err(Error::domain("exponents must be at least 1"));
            }
            if !is_prime(p) {
                return Err(Error::domain(alloc::format!("{p} is not prime")));
            }
            let pe = p
                .checked_pow(e)
                .ok_or(Error::Overflow("Factorization::from_factors"))?;
            n = n
                .checked_mul(pe)
                .ok_or(Error::Overflow("Factorization::from_factors"))?;
            last = p;
        }
        Ok(Factorization { n, factors })
    }

    pub(crate) fn from_raw(n: u64, factors: Vec<(u64, u32)>) -> Self {
        debug_assert_eq!(factors.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        Factorization { n, factors }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Raises `n` to the power `m`, multiplying every exponent.
    pub fn pow(&self, m: u32) -> Result<Self> {
        let n = self
            .n
            .checked_pow(m)
            .ok_or(Error::Overflow("Factorization::pow"))?;
        let factors = if m == 0 {
            Vec::new()
        } else {
            self.factors.iter().map(|&(p, e)| (p, e * m)).collect()
        };
        Ok(Factorization { n, factors })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Euler's totient `φ(n) = ∏ p^(e-1) (p-1)`.
pub fn euler_phi(f: &Factorization) -> u64 {
    f.factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// Jordan's totient `J_k(n) = n^k ∏_{p | n} (1 - p^-k)`, evaluated as
/// `∏ p^(k(e-1)) (p^k - 1)`.
pub fn jordan_totient(k: u32, f: &Factorization) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::domain("jordan_totient: k must be at least 1"));
    }
    let mut acc = BigUint::one();
    for &(p, e) in &f.factors {
        let pk: BigUint = BigUint::from(p).pow(k);
        acc *= BigUint::from(p).pow(k * (e - 1)) * (pk - 1u32);
    }
    Ok(acc)
}

/// Number of divisors, `∏ (e + 1)`.
pub fn divisor_count(f: &Factorization) -> u64 {
    f.factors.iter().map(|&(_, e)| e as u64 + 1).product()
}

/// `n^e` as an unbounded integer.
pub(crate) fn big_pow(n: u64, e: u64) -> BigUint {
    let e = u32::try_from(e).expect("exponent fits in u32");
    BigUint::from(n).pow(e)
}

/// `n^k` as a `u128`, or `None` on overflow.
pub(crate) fn checked_pow_u128(n: u64, k: u32) -> Option<u128> {
    (n as u128).checked_pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(n: u64) -> Factorization {
        factorize(n, None).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(1 << 40, 3u64.pow(20)), 1);
        assert_eq!(gcd(u64::MAX, u64::MAX - 1), 1);
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(2, 10, 1000).unwrap(), 24);
        assert_eq!(mod_pow(5, 0, 7).unwrap(), 1);
        assert_eq!(mod_pow(3, (13 - 1) / 2, 13).unwrap(), 1);
        assert_eq!(mod_pow(5, 0, 1).unwrap(), 0);
        assert!(matches!(mod_pow(2, 3, 0), Err(Error::Domain(_))));
        assert_eq!(
            mod_pow(u64::MAX - 1, u64::MAX, u64::MAX).unwrap(),
            u64::MAX - 1
        );
    }

    #[test]
    fn quadratic_residues_mod_13() {
        let squares: Vec<u64> = (1..13).map(|x| x * x % 13).collect();
        for a in 1..13 {
            assert_eq!(is_quadratic_residue(a, 13), squares.contains(&a), "a = {a}");
        }
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(&fact(1)), 1);
        assert_eq!(euler_phi(&fact(10)), 4);
        assert_eq!(euler_phi(&fact(1 << 10)), 512);
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan_totient(2, &fact(1)).unwrap(), BigUint::from(1u32));
        assert_eq!(jordan_totient(2, &fact(3)).unwrap(), BigUint::from(8u32));
        assert_eq!(jordan_totient(2, &fact(6)).unwrap(), BigUint::from(24u32));
        for n in 1..200 {
            let f = fact(n);
            assert_eq!(jordan_totient(1, &f).unwrap(), BigUint::from(euler_phi(&f)));
        }
        assert!(jordan_totient(0, &fact(5)).is_err());
    }

    #[test]
    fn jordan_divisible_by_phi() {
        for n in 1..=1000 {
            let f = fact(n);
            let phi = BigUint::from(euler_phi(&f));
            for k in 1..=4 {
                let j = jordan_totient(k, &f).unwrap();
                assert_eq!(&j % &phi, BigUint::from(0u32), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(&fact(1)), 1);
        assert_eq!(divisor_count(&fact(12)), 6);
        assert_eq!(divisor_count(&fact(32)), 6);
    }

    #[test]
    fn from_factors_validation() {
        assert_eq!(
            Factorization::from_factors(alloc::vec![(2, 2), (3, 1)]).unwrap(),
            fact(12)
        );
        assert!(Factorization::from_factors(alloc::vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_factors(alloc::vec![(4, 1)]).is_err());
        assert!(Factorization::from_factors(alloc::vec![(2, 0)]).is_err());
        assert!(Factorization::from_factors(alloc::vec![(2, 64)]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", fact(360)), "2^3 * 3^2 * 5");
        assert_eq!(alloc::format!("{}", fact(1)), "1");
    }
}
