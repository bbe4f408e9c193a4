//! `Φ_k(n)`: the number of `k`-tuples over `Z/nZ` whose sum of squares is a
//! unit modulo `n`.
//!
//! The closed form is multiplicative with prime-power values
//!
//! * `Φ_k(2^r) = 2^(kr-1)`,
//! * `Φ_k(p^r) = p^(kr-1) (p-1)` for odd `p` and odd `k`,
//! * `Φ_k(p^r) = p^(kr-k/2-1) (p-1) (p^(k/2) - (-1)^(k(p-1)/4))` for odd `p`
//!   and even `k`.
//!
//! Everything is evaluated in integers; the Euler factor
//! `1 - (-1)^(k(p-1)/4) / p^(k/2)` never appears as a fraction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::{big_pow, euler_phi, factorize, gcd, jordan_totient, Factorization};
use crate::error::{Error, Result};
use crate::rho::{check_guard, even_k_sign, for_each_square_sum, rho_with_guard};
use crate::DEFAULT_GUARD;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhiQuery {
    k: u32,
    n: u64,
}

impl PhiQuery {
    pub fn new(k: u32, n: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        if n == 0 {
            return Err(Error::domain("n must be at least 1"));
        }
        Ok(PhiQuery { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

/// Exhaustive count over `(Z/nZ)^k`; needs `n^k <= guard`.
pub fn phi_k_brute(q: PhiQuery, guard: u64) -> Result<u64> {
    let PhiQuery { k, n } = q;
    check_guard(k, n, guard, "exhaustive enumeration of (Z/nZ)^k")?;
    let unit: alloc::vec::Vec<bool> = (0..n).map(|r| gcd(r, n) == 1).collect();
    let mut count = 0u64;
    for_each_square_sum(k, n, |r| count += unit[r] as u64);
    Ok(count)
}

/// `Σ rho(k, lambda, n)` over `1 <= lambda <= n` coprime to `n`.
pub fn phi_k_via_rho(q: PhiQuery) -> Result<BigUint> {
    let PhiQuery { k, n } = q;
    let mut total = BigUint::zero();
    for lambda in 1..=n {
        if gcd(lambda, n) == 1 {
            total += rho_with_guard(k, lambda, n, DEFAULT_GUARD)?.value;
        }
    }
    Ok(total)
}

/// `Φ_k(p^r)` for a prime `p` and `r >= 1`.
pub fn phi_k_prime_power(k: u32, p: u64, r: u32) -> Result<BigUint> {
    if k == 0 || r == 0 {
        return Err(Error::domain("k and r must be at least 1"));
    }
    if !crate::arith::is_prime(p) {
        return Err(Error::domain(alloc::format!("{p} is not prime")));
    }
    Ok(prime_power_block(k, p, r))
}

fn prime_power_block(k: u32, p: u64, r: u32) -> BigUint {
    let kr = k as u64 * r as u64;
    if p == 2 {
        return big_pow(2, kr - 1);
    }
    if k % 2 == 1 {
        return big_pow(p, kr - 1) * (p - 1);
    }
    let half = k as u64 / 2;
    let mut tail = BigInt::from(big_pow(p, half));
    tail -= even_k_sign(k, p);
    // p^(k/2) ± 1 >= 2
    let tail = tail.to_biguint().expect("p^(k/2) - sign is positive");
    big_pow(p, kr - half - 1) * (p - 1) * tail
}

/// `Φ_k(n)` from the factorization of `n`.
pub fn phi_k(k: u32, f: &Factorization) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    Ok(f.factors()
        .iter()
        .map(|&(p, r)| prime_power_block(k, p, r))
        .product())
}

/// `Φ_k(n)`, factorizing `n` first.
pub fn phi_k_of(k: u32, n: u64) -> Result<BigUint> {
    phi_k(k, &factorize(n, None)?)
}

/// `2^(k/2) / (2^(k/2) - 1 + (n mod 2))` as an exact ratio.
fn parity_factor(k: u32, n: u64) -> Ratio<BigUint> {
    let pow = BigUint::one() << (k / 2);
    let den = &pow - 1u32 + (n % 2);
    Ratio::new(pow, den)
}

/// `Φ_k(n) = n^(k/2-1) J_(k/2)(n) φ(n) 2^(k/2) / (2^(k/2) - 1 + n mod 2)` for
/// `k ≡ 0 (mod 4)`.
pub fn phi_k_via_jordan(k: u32, f: &Factorization) -> Result<BigUint> {
    if k == 0 || k % 4 != 0 {
        return Err(Error::domain("phi_k_via_jordan: k must be a multiple of 4"));
    }
    let n = f.n();
    let num = big_pow(n, (k / 2 - 1) as u64)
        * jordan_totient(k / 2, f)?
        * euler_phi(f)
        * (BigUint::one() << (k / 2));
    let den = (BigUint::one() << (k / 2)) - 1u32 + (n % 2);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(alloc::format!(
            "Jordan form for k = {k}, n = {n} is not divisible by {den}"
        )));
    }
    Ok(q)
}

/// Both sides of `Φ_k(n) / Φ_(k/4)(n) = n^(k/4) J_(k/2)(n) 2^(k/2) / (2^(k/2) - 1 + n mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCheck {
    pub lhs: Ratio<BigUint>,
    pub rhs: Ratio<BigUint>,
}

impl RatioCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates the ratio identity for `k ≡ 4 (mod 8)`.
pub fn phi_ratio_check(k: u32, f: &Factorization) -> Result<RatioCheck> {
    if k % 8 != 4 {
        return Err(Error::domain("phi_ratio_check: k must be 4 mod 8"));
    }
    let lhs = Ratio::new(phi_k(k, f)?, phi_k(k / 4, f)?);
    let rhs = Ratio::from_integer(big_pow(f.n(), (k / 4) as u64) * jordan_totient(k / 2, f)?)
        * parity_factor(k, f.n());
    Ok(RatioCheck { lhs, rhs })
}
