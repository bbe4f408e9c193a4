//! Counting solutions of `x_1^2 + ... + x_k^2 ≡ lambda (mod n)`.
//!
//! For `gcd(lambda, n) = 1` the count is multiplicative in `n` and reduces to
//! prime powers:
//!
//! * odd `p`: `rho(p^s) = p^((s-1)(k-1)) rho(p)`, with `rho(p)` given by
//!   Lebesgue's formula ([`rho_odd_prime`]);
//! * `p = 2`: moduli 2, 4 and 8 come from the integer matrix recurrence
//!   `R_k = M R_(k-1)` ([`rho_base_vector`]), and for `s > 3`
//!   `rho(2^s) = 2^((s-3)(k-1)) rho(8)`.
//!
//! When `gcd(lambda, n) > 1` no closed form is used: [`rho`] falls back to
//! exhaustive enumeration under a tuple budget.

mod brute;
mod closed_form;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{big_pow, factorize, gcd, is_prime, is_quadratic_residue};
use crate::error::{Error, Result};
use crate::DEFAULT_GUARD;

pub use closed_form::{closed_form_pow2, trig_closed_form_rho8};

pub(crate) use brute::{check_guard, for_each_square_sum};

/// Largest modulus accepted by the matrix recurrence.
pub const RECURRENCE_MAX_MODULUS: u64 = 4096;

/// `R_k(n)`: entry `lambda` is `rho(k, lambda, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueVector {
    n: u64,
    k: u32,
    counts: Vec<BigUint>,
}

impl ResidueVector {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, lambda: u64) -> &BigUint {
        &self.counts[(lambda % self.n) as usize]
    }

    /// Sum of all entries; always `n^k`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// `M(n)`, with entry `(i, j)` equal to `rho(1, i - j, n)`.
///
/// Only the first column (the census of squares) is stored; every row is a
/// cyclic shift of row 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    column: Vec<u64>,
}

impl CountMatrix {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("CountMatrix: modulus must be at least 1"));
        }
        if n > RECURRENCE_MAX_MODULUS {
            return Err(Error::Resource {
                what: "matrix recurrence modulus",
                required: BigUint::from(n),
                budget: RECURRENCE_MAX_MODULUS,
            });
        }
        let mut column = vec![0u64; n as usize];
        for x in 0..n {
            column[(x * x % n) as usize] += 1;
        }
        Ok(CountMatrix { column })
    }

    pub fn n(&self) -> u64 {
        self.column.len() as u64
    }

    pub fn entry(&self, i: u64, j: u64) -> u64 {
        let n = self.n();
        self.column[((i % n + n - j % n) % n) as usize]
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// `R_1(n)`, the census of squares.
    pub fn base(&self) -> ResidueVector {
        ResidueVector {
            n: self.n(),
            k: 1,
            counts: self.column.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    /// One step of the recurrence: `R_(k+1) = M R_k`.
    pub fn apply(&self, r: &ResidueVector) -> ResidueVector {
        assert_eq!(r.n, self.n(), "modulus mismatch");
        let n = self.column.len();
        let mut out = vec![BigUint::zero(); n];
        for (d, &c) in self.column.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, rj) in r.counts.iter().enumerate() {
                if rj.is_zero() {
                    continue;
                }
                let i = (d + j) % n;
                out[i] += rj * c;
            }
        }
        ResidueVector {
            n: r.n,
            k: r.k + 1,
            counts: out,
        }
    }
}

/// Lebesgue's correction terms for an odd prime `p`.
///
/// `t = (-1)^((p-1)(k-1)/4) p^((k-1)/2)` exists only for odd `k`;
/// `ell = (-1)^(k(p-1)/4) p^((k-2)/2)` only for even `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LebesgueTerms {
    pub p: u64,
    pub k: u32,
    pub t: Option<BigInt>,
    pub ell: Option<BigInt>,
}

impl LebesgueTerms {
    pub fn new(k: u32, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        let (k128, p128) = (k as u128, p as u128);
        let (t, ell) = if k % 2 == 1 {
            let sign = minus_one_pow((p128 - 1) * (k128 - 1))?;
            (
                Some(sign * BigInt::from(big_pow(p, (k as u64 - 1) / 2))),
                None,
            )
        } else {
            let sign = minus_one_pow(k128 * (p128 - 1))?;
            (
                None,
                Some(sign * BigInt::from(big_pow(p, (k as u64 - 2) / 2))),
            )
        };
        Ok(LebesgueTerms { p, k, t, ell })
    }
}

/// `(-1)^(numerator / 4)`, refusing non-integral exponents.
fn minus_one_pow(numerator: u128) -> Result<BigInt> {
    if numerator % 4 != 0 {
        return Err(Error::Internal(alloc::format!(
            "sign exponent {numerator}/4 is not an integer"
        )));
    }
    Ok(if (numerator / 4) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    })
}

/// `(-1)^(k(p-1)/4)` for even `k` and odd prime `p`, as `±1`.
pub(crate) fn even_k_sign(k: u32, p: u64) -> i64 {
    debug_assert!(k % 2 == 0 && p % 2 == 1);
    let e = (k as u128 / 2) * ((p as u128 - 1) / 2);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 0 {
        return Err(Error::domain(alloc::format!("{p} is not an odd prime")));
    }
    if !is_prime(p) {
        return Err(Error::domain(alloc::format!("{p} is not prime")));
    }
    Ok(())
}

/// Number of `k`-tuples with `x_1^2 + ... + x_k^2 ≡ lambda (mod n)` by
/// exhaustive enumeration. Valid for every `lambda`, coprime or not.
pub fn rho_brute(k: u32, lambda: u64, n: u64, guard: u64) -> Result<u64> {
    validate(k, n)?;
    check_guard(k, n, guard, "exhaustive enumeration of (Z/nZ)^k")?;
    let target = (lambda % n) as usize;
    let mut count = 0u64;
    for_each_square_sum(k, n, |r| count += (r == target) as u64);
    Ok(count)
}

/// The full vector `R_k(n)` by exhaustive enumeration.
pub fn residue_census(k: u32, n: u64, guard: u64) -> Result<ResidueVector> {
    validate(k, n)?;
    check_guard(k, n, guard, "exhaustive enumeration of (Z/nZ)^k")?;
    Ok(ResidueVector {
        n,
        k,
        counts: brute::to_big(brute::census(k, n)),
    })
}

fn validate(k: u32, n: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if n == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    Ok(())
}

/// Lebesgue's formula for `rho(k, lambda, p)`, `p` an odd prime, `p ∤ lambda`.
pub fn rho_odd_prime(k: u32, lambda: u64, p: u64) -> Result<BigUint> {
    let terms = LebesgueTerms::new(k, p)?;
    if lambda % p == 0 {
        return Err(Error::domain(alloc::format!(
            "{p} divides lambda = {lambda}"
        )));
    }
    let main = BigInt::from(big_pow(p, k as u64 - 1));
    let value = match (terms.t, terms.ell) {
        (Some(t), None) => {
            if is_quadratic_residue(lambda % p, p) {
                main + t
            } else {
                main - t
            }
        }
        (None, Some(ell)) => main - ell,
        _ => unreachable!("exactly one Lebesgue term is defined"),
    };
    value
        .to_biguint()
        .ok_or_else(|| Error::Internal(alloc::format!("negative count for p = {p}, k = {k}")))
}

/// `rho(k, lambda, p^s) = p^((s-1)(k-1)) rho(k, lambda, p)` for odd `p`.
pub fn rho_odd_prime_power(k: u32, lambda: u64, p: u64, s: u32) -> Result<BigUint> {
    if s == 0 {
        return Err(Error::domain("exponent must be at least 1"));
    }
    let base = rho_odd_prime(k, lambda % p, p)?;
    Ok(big_pow(p, (s as u64 - 1) * (k as u64 - 1)) * base)
}

/// `R_k(n)` by exact iteration of `R_j = M(n) R_(j-1)` from the census of
/// squares.
pub fn rho_base_vector(k: u32, n: u64) -> Result<ResidueVector> {
    validate(k, n)?;
    let m = CountMatrix::new(n)?;
    let mut r = m.base();
    for _ in 1..k {
        r = m.apply(&r);
    }
    Ok(r)
}

/// `rho(k, lambda, 2^s)` for odd `lambda`.
pub fn rho_pow2(k: u32, lambda: u64, s: u32) -> Result<BigUint> {
    if lambda % 2 == 0 {
        return Err(Error::domain("rho_pow2: lambda must be odd"));
    }
    if s == 0 {
        return Err(Error::domain("exponent must be at least 1"));
    }
    let small = s.min(3);
    let modulus = 1u64 << small;
    let base = rho_base_vector(k, modulus)?.get(lambda).clone();
    if s <= 3 {
        Ok(base)
    } else {
        Ok(big_pow(2, (s as u64 - 3) * (k as u64 - 1)) * base)
    }
}

/// Which route produced a value of [`rho`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoPath {
    /// Product of prime-power closed forms (`gcd(lambda, n) = 1`).
    Formula,
    /// Exhaustive enumeration (`gcd(lambda, n) > 1`).
    Oracle,
}

impl RhoPath {
    pub fn as_str(self) -> &'static str {
        match self {
            RhoPath::Formula => "formula",
            RhoPath::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoValue {
    pub value: BigUint,
    pub path: RhoPath,
}

/// `rho(k, lambda, n)` with the default enumeration budget for the
/// non-coprime fallback.
pub fn rho(k: u32, lambda: u64, n: u64) -> Result<RhoValue> {
    rho_with_guard(k, lambda, n, DEFAULT_GUARD)
}

/// `rho(k, lambda, n)`.
///
/// Coprime `lambda` multiplies the prime-power closed forms. Otherwise no
/// formula applies and the count is enumerated, provided `n^k <= guard`.
pub fn rho_with_guard(k: u32, lambda: u64, n: u64, guard: u64) -> Result<RhoValue> {
    validate(k, n)?;
    if gcd(lambda % n, n) != 1 {
        check_guard(
            k,
            n,
            guard,
            "no closed form applies when gcd(lambda, n) > 1; exhaustive enumeration",
        )?;
        let value = rho_brute(k, lambda, n, guard)?;
        return Ok(RhoValue {
            value: BigUint::from(value),
            path: RhoPath::Oracle,
        });
    }
    Ok(RhoValue {
        value: CoprimeRho::new(k, n)?.eval(lambda)?,
        path: RhoPath::Formula,
    })
}

/// `rho(k, ·, n)` on residues coprime to `n`, with the prime-power factors
/// prepared once.
#[derive(Debug, Clone)]
pub struct CoprimeRho {
    k: u32,
    n: u64,
    blocks: Vec<Block>,
}

#[derive(Debug, Clone)]
enum Block {
    /// `2^s ∥ n`: the values at `2^min(s,3)` and the lift factor.
    Two { base: ResidueVector, lift: BigUint },
    /// `p^s ∥ n`, `p` odd: values for residues and non-residues mod `p`.
    Odd {
        p: u64,
        residue: BigUint,
        nonresidue: BigUint,
    },
}

impl CoprimeRho {
    pub fn new(k: u32, n: u64) -> Result<Self> {
        validate(k, n)?;
        let f = factorize(n, None)?;
        let mut blocks = Vec::with_capacity(f.factors().len());
        for &(p, s) in f.factors() {
            if p == 2 {
                let base = rho_base_vector(k, 1 << s.min(3))?;
                let lift = big_pow(2, (s.max(3) as u64 - 3) * (k as u64 - 1));
                blocks.push(Block::Two { base, lift });
            } else {
                let nonres = (2..p)
                    .find(|&a| !is_quadratic_residue(a, p))
                    .expect("odd primes have a non-residue");
                blocks.push(Block::Odd {
                    p,
                    residue: rho_odd_prime_power(k, 1, p, s)?,
                    nonresidue: rho_odd_prime_power(k, nonres, p, s)?,
                });
            }
        }
        Ok(CoprimeRho { k, n, blocks })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `rho(k, lambda, n)`; `lambda` must be coprime to `n`.
    pub fn eval(&self, lambda: u64) -> Result<BigUint> {
        if gcd(lambda % self.n, self.n) != 1 {
            return Err(Error::domain(alloc::format!(
                "lambda = {lambda} is not coprime to n = {}",
                self.n
            )));
        }
        let mut value = BigUint::one();
        for b in &self.blocks {
            match b {
                Block::Two { base, lift } => value *= base.get(lambda) * lift,
                Block::Odd {
                    p,
                    residue,
                    nonresidue,
                } => {
                    value *= if is_quadratic_residue(lambda % p, *p) {
                        residue
                    } else {
                        nonresidue
                    }
                }
            }
        }
        Ok(value)
    }
}
