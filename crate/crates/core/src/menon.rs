//! Menon-type gcd sums over invertible sums of squares.
//!
//! Menon's identity `Σ_{gcd(j,n)=1} gcd(j-1, n) = φ(n) d(n)` suggests the
//! analogue
//!
//! ```text
//! Σ gcd(x_1² + ... + x_k² - 1, n) = Φ_k(n) Ψ_k(n)
//! ```
//!
//! over tuples with `gcd(x_1² + ... + x_k², n) = 1`. Nothing is known about
//! `Ψ_k`; this module computes it exactly (as a rational) so that its
//! integrality and multiplicativity can be inspected.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::{divisor_count, euler_phi, factorize, gcd};
use crate::error::{Error, Result};
use crate::phi::phi_k;
use crate::rho::{check_guard, for_each_square_sum, CoprimeRho};

/// Both sides of Menon's identity for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MenonClassic {
    pub n: u64,
    /// `Σ_{1<=j<=n, gcd(j,n)=1} gcd(j-1, n)`, summed directly.
    pub lhs: u128,
    /// `φ(n) d(n)`.
    pub rhs: u128,
}

impl MenonClassic {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn menon_classic(n: u64) -> Result<MenonClassic> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let lhs = (1..=n)
        .filter(|&j| gcd(j, n) == 1)
        .map(|j| gcd(j - 1, n) as u128)
        .sum();
    let f = factorize(n, None)?;
    let rhs = euler_phi(&f) as u128 * divisor_count(&f) as u128;
    Ok(MenonClassic { n, lhs, rhs })
}

/// `Σ_{1<=j<=n, gcd(j,n)=1} gcd(j² - 1, n)`, summed directly.
pub fn menon_square_sum(n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    Ok((1..=n)
        .filter(|&j| gcd(j, n) == 1)
        .map(|j| {
            let sq = ((j as u128 * j as u128) % n as u128) as u64;
            gcd((sq + n - 1) % n, n) as u128
        })
        .sum())
}

/// The gcd sum over invertible sums of squares, grouped by residue class:
/// `Σ_{gcd(λ,n)=1} rho(k, λ, n) gcd(λ - 1, n)`.
///
/// Costs `n` evaluations of the closed form rather than `n^k` tuples.
pub fn menon_lhs(k: u32, n: u64) -> Result<BigUint> {
    let rho = CoprimeRho::new(k, n)?;
    let mut total = BigUint::zero();
    for lambda in 1..=n {
        if gcd(lambda, n) != 1 {
            continue;
        }
        let weight = gcd(lambda - 1, n);
        total += rho.eval(lambda)? * weight;
    }
    Ok(total)
}

/// The same sum by walking every tuple in `(Z/nZ)^k`; needs `n^k <= guard`.
pub fn menon_lhs_brute(k: u32, n: u64, guard: u64) -> Result<u128> {
    if k == 0 || n == 0 {
        return Err(Error::domain("k and n must be at least 1"));
    }
    check_guard(k, n, guard, "exhaustive enumeration of (Z/nZ)^k")?;
    let weight: Vec<u64> = (0..n)
        .map(|r| {
            if gcd(r, n) == 1 {
                gcd((r + n - 1) % n, n)
            } else {
                0
            }
        })
        .collect();
    let mut total = 0u128;
    for_each_square_sum(k, n, |r| total += weight[r] as u128);
    Ok(total)
}

/// One row of a `Ψ_k` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MenonRow {
    pub k: u32,
    pub n: u64,
    pub lhs: BigUint,
    pub phi_k: BigUint,
    /// `lhs / phi_k` in lowest terms.
    pub psi: Ratio<BigUint>,
    pub integral: bool,
}

pub fn menon_row(k: u32, n: u64) -> Result<MenonRow> {
    let lhs = menon_lhs(k, n)?;
    let phi = phi_k(k, &factorize(n, None)?)?;
    let integral = lhs.is_multiple_of(&phi);
    let psi = Ratio::new(lhs.clone(), phi.clone());
    Ok(MenonRow {
        k,
        n,
        lhs,
        phi_k: phi,
        psi,
        integral,
    })
}

/// `Ψ_k(n)` for `n = 1..=n_max`.
pub fn psi_table(k: u32, n_max: u64) -> Result<Vec<MenonRow>> {
    (1..=n_max).map(|n| menon_row(k, n)).collect()
}

/// One coprime pair in a multiplicativity scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub m: u64,
    pub n: u64,
    /// `Ψ(m) Ψ(n)`.
    pub product: Ratio<BigUint>,
    /// `Ψ(mn)`.
    pub psi_mn: Ratio<BigUint>,
    pub equal: bool,
}

/// Compares `Ψ_k(m) Ψ_k(n)` with `Ψ_k(mn)` for every coprime pair
/// `1 <= m <= n` with `mn <= bound`, in lexicographic order.
///
/// For `k >= 2` this only reports. For `k = 1`, where `Ψ_1` is the cofactor
/// of the classical `Σ gcd(j² - 1, n)` identity, each `lhs` is also checked
/// against direct summation and any inequality is an error.
pub fn psi_multiplicativity_scan(k: u32, bound: u64) -> Result<Vec<ScanRow>> {
    if bound == 0 {
        return Err(Error::domain("bound must be at least 1"));
    }
    let table = psi_table(k, bound)?;
    if k == 1 {
        for row in &table {
            let direct = menon_square_sum(row.n)?;
            if row.lhs != BigUint::from(direct) {
                return Err(Error::Internal(alloc::format!(
                    "residue-class sum {} differs from direct sum {direct} at n = {}",
                    row.lhs,
                    row.n
                )));
            }
        }
    }
    let psi = |n: u64| &table[n as usize - 1].psi;
    let mut rows = Vec::new();
    for m in 1..=bound {
        for n in m..=bound / m {
            if gcd(m, n) != 1 {
                continue;
            }
            let product = psi(m) * psi(n);
            let psi_mn = psi(m * n).clone();
            let equal = product == psi_mn;
            if k == 1 && !equal {
                return Err(Error::Internal(alloc::format!(
                    "Ψ_1 is not multiplicative at ({m}, {n})"
                )));
            }
            rows.push(ScanRow {
                m,
                n,
                product,
                psi_mn,
                equal,
            });
        }
    }
    Ok(rows)
}

/// `Ψ_k(n) = 1` exactly when the gcd sum equals `Φ_k(n)`.
pub fn psi_is_one(row: &MenonRow) -> bool {
    row.psi.is_one()
}
