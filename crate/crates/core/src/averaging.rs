//! Partial sums of `Φ_k` and the constant of their leading term.
//!
//! `Σ_{n<=x} Φ_k(n) ~ C_k x^(k+1) / (k+1)` with `C_k = 6/π²` for odd `k` and,
//! for even `k`,
//!
//! ```text
//! C_k = 3/4 ∏_{p>2} (1 - 1/p² - (-1)^(k(p-1)/4) (p-1) / p^(k/2+2)).
//! ```
//!
//! Two independent evaluations of the even-`k` constant are provided:
//! [`euler_constant`] factors out `∏ (1 - 1/p²) = 6/π²` (and for `k = 2` also
//! the Dirichlet `L(2, χ_4)`, Catalan's constant) so the remaining product
//! converges like `Σ p^-3`; [`corollary_constant`] multiplies the
//! residue-class factors for `k ∈ {2, 4}` directly and bounds the slower
//! `Σ p^-2` tail with an explicit prime-counting estimate.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{odd_primes_up_to, SpfTable};
use crate::error::{Error, Result};
use crate::rho::even_k_sign;

/// Largest range end accepted by the bulk table (16 bytes per entry plus the
/// sieve).
pub const TABLE_LIMIT_MAX: u64 = 100_000_000;

/// Catalan's constant `G = L(2, χ_4) = Σ (-1)^n / (2n+1)²`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

// π(x) < 1.25506 x / ln x for x > 1 (Rosser-Schoenfeld).
const PRIME_COUNT_UPPER: f64 = 1.25506;

/// Smallest tolerance [`euler_constant`] and [`corollary_constant`] accept;
/// below this the double-precision rounding of the partial product dominates.
pub const MIN_TOLERANCE: f64 = 1e-14;

/// `Φ_k(n)` for `n = 1..=x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTable {
    k: u32,
    start: u64,
    values: Vec<u128>,
}

impl PhiTable {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// First `n` in the table.
    pub fn start(&self) -> u64 {
        self.start
    }

    /// Values in order of `n`, starting at [`start`](Self::start).
    pub fn values(&self) -> &[u128] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<u128> {
        n.checked_sub(self.start)
            .and_then(|i| self.values.get(i as usize).copied())
    }

    pub fn into_values(self) -> Vec<u128> {
        self.values
    }
}

fn check_table_budget(x: u64) -> Result<()> {
    if x > TABLE_LIMIT_MAX {
        return Err(Error::Resource {
            what: "bulk table of Φ_k",
            required: BigUint::from(x),
            budget: TABLE_LIMIT_MAX,
        });
    }
    Ok(())
}

/// `Φ_k(p^r)` in checked `u128`.
fn block_u128(k: u32, p: u64, r: u32) -> Option<u128> {
    let kr = k.checked_mul(r)?;
    let p128 = p as u128;
    if p == 2 {
        return 1u128.checked_shl(kr - 1);
    }
    if k % 2 == 1 {
        return p128.checked_pow(kr - 1)?.checked_mul(p128 - 1);
    }
    let half = k / 2;
    let sign = even_k_sign(k, p);
    let ph = p128.checked_pow(half)?;
    let tail = if sign > 0 { ph - 1 } else { ph.checked_add(1)? };
    p128.checked_pow(kr - half - 1)?
        .checked_mul(p128 - 1)?
        .checked_mul(tail)
}

/// `Φ_k(n)` for `n` in `lo..=hi`, factoring each `n` through `spf`.
///
/// Each entry depends only on the sieve, so disjoint ranges can be computed
/// independently and concatenated.
pub fn phi_k_table_range(k: u32, spf: &SpfTable, lo: u64, hi: u64) -> Result<PhiTable> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if lo == 0 || lo > hi {
        return Err(Error::domain("range must satisfy 1 <= lo <= hi"));
    }
    if hi > spf.limit().max(1) {
        return Err(Error::domain("range end exceeds the sieve limit"));
    }
    check_table_budget(hi)?;
    let raw = spf.raw();
    let mut values = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        let mut m = n;
        let mut acc: u128 = 1;
        while m > 1 {
            let p = raw[m as usize] as u64;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            acc = block_u128(k, p, e)
                .and_then(|b| acc.checked_mul(b))
                .ok_or(Error::Overflow("Φ_k table (u128)"))?;
        }
        values.push(acc);
    }
    Ok(PhiTable {
        k,
        start: lo,
        values,
    })
}

/// `Φ_k(1), ..., Φ_k(x)` from a single smallest-prime-factor sieve.
pub fn phi_k_table(k: u32, x: u64) -> Result<PhiTable> {
    if x == 0 {
        return Err(Error::domain("x must be at least 1"));
    }
    check_table_budget(x)?;
    let spf = SpfTable::new(x.max(2))?;
    phi_k_table_range(k, &spf, 1, x)
}

/// Exact sum of a slice of table values.
pub fn sum_values(values: &[u128]) -> BigUint {
    let mut total = BigUint::zero();
    let mut acc: u128 = 0;
    for &v in values {
        match acc.checked_add(v) {
            Some(s) => acc = s,
            None => {
                total += acc;
                acc = v;
            }
        }
    }
    total + acc
}

/// `S(x) = Σ_{n<=x} Φ_k(n)`, exactly.
pub fn partial_sum(k: u32, x: u64) -> Result<BigUint> {
    Ok(sum_values(phi_k_table(k, x)?.values()))
}

/// A truncated Euler product with a certified bound on the truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerConstant {
    pub k: u32,
    pub value: f64,
    /// Largest prime whose factor is included; `0` when no product was
    /// needed.
    pub prime_bound: u64,
    /// Upper bound on `|value - limit|` from the omitted primes.
    pub tail_bound: f64,
}

/// Compensated (Neumaier) summation.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    if tol < MIN_TOLERANCE {
        return Err(Error::domain(alloc::format!(
            "tolerance {tol:e} is below the double-precision floor {MIN_TOLERANCE:e}"
        )));
    }
    Ok(())
}

// `|log(1 + y)| <= (27/26) p^-3` for every accelerated factor; the tail over
// p > P is at most (27/26) Σ_{n>P} n^-3 <= (27/26) / (2 P²).
fn accelerated_tail(prime_bound: u64) -> f64 {
    let p = prime_bound.max(2) as f64;
    27.0 / 26.0 / (2.0 * p * p)
}

// `|log(1 + y)| <= (18/7) p^-2` for the plain factors; Σ_{p>P} p^-2 is at
// most 2 * 1.25506 / (P ln P) by partial summation against π(x).
fn plain_tail(prime_bound: u64) -> f64 {
    let p = prime_bound.max(3) as f64;
    18.0 / 7.0 * 2.0 * PRIME_COUNT_UPPER / (p * libm::log(p))
}

fn bound_for(tol: f64, magnitude: f64, tail: impl Fn(u64) -> f64) -> u64 {
    let mut p = 100u64;
    while magnitude * libm::expm1(tail(p)) > tol {
        p += p / 4;
    }
    p
}

/// `C_k` with a certified truncation error below `tol`.
pub fn euler_constant(k: u32, tol: f64) -> Result<EulerConstant> {
    check_tolerance(tol)?;
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if k % 2 == 1 {
        return Ok(EulerConstant {
            k,
            value: 6.0 / (PI * PI),
            prime_bound: 0,
            tail_bound: 0.0,
        });
    }
    // C_k < 1 for every even k
    let bound = bound_for(tol, 1.0, accelerated_tail);
    euler_constant_with_bound(k, bound)
}

/// `C_k` for even `k`, multiplying the accelerated factors over
/// `2 < p <= prime_bound`.
pub fn euler_constant_with_bound(k: u32, prime_bound: u64) -> Result<EulerConstant> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::domain("the product form needs an even k"));
    }
    let half = (k / 2) as i32;
    let mut log_sum = Neumaier::default();
    for p in odd_primes_up_to(prime_bound) {
        let pf = p as f64;
        let sign = even_k_sign(k, p) as f64;
        let y = if k == 2 {
            // (1 - χ/(p(p+1))) / (1 - χ/p²) - 1
            sign / ((pf + 1.0) * (pf * pf - sign))
        } else {
            -sign / (libm::pow(pf, half as f64) * (pf + 1.0))
        };
        log_sum.add(libm::log1p(y));
    }
    let mut prefactor = 6.0 / (PI * PI);
    if k == 2 {
        prefactor /= CATALAN;
    }
    let value = prefactor * libm::exp(log_sum.total());
    Ok(EulerConstant {
        k,
        value,
        prime_bound: largest_prime_at_most(prime_bound),
        tail_bound: value * libm::expm1(accelerated_tail(prime_bound)),
    })
}

fn largest_prime_at_most(bound: u64) -> u64 {
    (2..=bound)
        .rev()
        .find(|&p| crate::arith::is_prime(p))
        .unwrap_or(0)
}

/// Exact leading coefficients `1/4` (k = 2) and `3/20` (k = 4) of the
/// residue-class products, as `(numerator, denominator)`.
pub fn corollary_prefactor(k: u32) -> Result<(u64, u64)> {
    match k {
        2 => Ok((1, 4)),
        4 => Ok((3, 20)),
        _ => Err(Error::domain(
            "residue-class constants exist only for k = 2 and k = 4",
        )),
    }
}

/// Coefficient of `x^(k+1)` in the average order for `k ∈ {2, 4}`, from the
/// residue-class products, with certified truncation error below `tol`.
///
/// Equals `C_k / (k+1)`.
pub fn corollary_constant(k: u32, tol: f64) -> Result<EulerConstant> {
    check_tolerance(tol)?;
    let (num, den) = corollary_prefactor(k)?;
    let bound = bound_for(tol, num as f64 / den as f64, plain_tail);
    corollary_constant_with_bound(k, bound)
}

pub fn corollary_constant_with_bound(k: u32, prime_bound: u64) -> Result<EulerConstant> {
    let (num, den) = corollary_prefactor(k)?;
    let mut log_sum = Neumaier::default();
    for p in odd_primes_up_to(prime_bound) {
        let pf = p as f64;
        let (p2, p3) = (pf * pf, pf * pf * pf);
        let y = match (k, p % 4) {
            (2, 1) => -2.0 / p2 + 1.0 / p3,
            (2, _) => -1.0 / p3,
            _ => -1.0 / p2 - 1.0 / p3 + 1.0 / (p2 * p2),
        };
        log_sum.add(libm::log1p(y));
    }
    let value = num as f64 / den as f64 * libm::exp(log_sum.total());
    Ok(EulerConstant {
        k,
        value,
        prime_bound: largest_prime_at_most(prime_bound),
        tail_bound: value * libm::expm1(plain_tail(prime_bound)),
    })
}

/// `g_k(n)` for `n = 1..=limit`, where `Φ_k = id_k * g_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkCoefficient {
    k: u32,
    values: Vec<i128>,
}

impl GkCoefficient {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn limit(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn get(&self, n: u64) -> Option<i128> {
        n.checked_sub(1)
            .and_then(|i| self.values.get(i as usize).copied())
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }
}

fn g_k_prime(k: u32, p: u64) -> Option<i128> {
    let p = p as i128;
    if p == 2 {
        return 1i128.checked_shl(k - 1).filter(|_| k - 1 < 127).map(|v| -v);
    }
    let sign = even_k_sign(k, p as u64) as i128;
    let a = p.checked_pow(k - 1)?;
    let b = p.checked_pow(k / 2 - 1)?.checked_mul(p - 1)?;
    (-a).checked_sub(sign * b)
}

/// The multiplicative `g_k` for even `k`, supported on squarefree `n`.
pub fn g_k_table(k: u32, limit: u64) -> Result<GkCoefficient> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::domain("g_k is defined here for even k"));
    }
    if limit == 0 {
        return Err(Error::domain("limit must be at least 1"));
    }
    check_table_budget(limit)?;
    let spf = SpfTable::new(limit.max(2))?;
    let raw = spf.raw();
    let mut values = vec![0i128; limit as usize];
    values[0] = 1;
    for n in 2..=limit {
        let p = raw[n as usize] as u64;
        let m = n / p;
        if m % p == 0 {
            continue;
        }
        let gp = g_k_prime(k, p).ok_or(Error::Overflow("g_k table (i128)"))?;
        values[n as usize - 1] = values[m as usize - 1]
            .checked_mul(gp)
            .ok_or(Error::Overflow("g_k table (i128)"))?;
    }
    Ok(GkCoefficient { k, values })
}

/// Outcome of [`convolution_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionReport {
    pub k: u32,
    pub limit: u64,
    /// First `(n, Σ_{d|n} g_k(d) (n/d)^k, Φ_k(n))` that disagrees.
    pub counterexample: Option<(u64, i128, u128)>,
}

impl ConvolutionReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `Σ_{d|n} g_k(d) (n/d)^k = Φ_k(n)` for every `n <= limit`.
pub fn convolution_check(k: u32, limit: u64) -> Result<ConvolutionReport> {
    let g = g_k_table(k, limit)?;
    let phi = phi_k_table(k, limit)?;
    let overflow = || Error::Overflow("Dirichlet convolution (i128)");
    let powers: Vec<i128> = (1..=limit)
        .map(|e| (e as i128).checked_pow(k).ok_or_else(overflow))
        .collect::<Result<_>>()?;
    let mut conv = vec![0i128; limit as usize];
    for d in 1..=limit {
        let gd = g.values[d as usize - 1];
        if gd == 0 {
            continue;
        }
        let mut e = 1;
        while d * e <= limit {
            let term = gd
                .checked_mul(powers[e as usize - 1])
                .ok_or_else(overflow)?;
            let slot = &mut conv[(d * e) as usize - 1];
            *slot = slot.checked_add(term).ok_or_else(overflow)?;
            e += 1;
        }
    }
    let counterexample = (1..=limit).find_map(|n| {
        let lhs = conv[n as usize - 1];
        let rhs = phi.values[n as usize - 1];
        (u128::try_from(lhs).ok() != Some(rhs)).then_some((n, lhs, rhs))
    });
    Ok(ConvolutionReport {
        k,
        limit,
        counterexample,
    })
}

/// One line of an average-order report.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragingRow {
    pub x: u64,
    /// `S(x) = Σ_{n<=x} Φ_k(n)`.
    pub partial_sum: BigUint,
    /// `C_k x^(k+1) / (k+1)`.
    pub main_term: f64,
    /// `(S - main) / main`.
    pub rel_error: f64,
    /// `(S - main) / (x^k R_k(x))`.
    pub error_ratio: f64,
}

/// The error scale `R_k(x)`: `(log x)^(2/3) (log log x)^(4/3)` for odd `k`,
/// `log x` for even `k`.
pub fn error_scale(k: u32, x: f64) -> f64 {
    let lx = libm::log(x);
    if k % 2 == 1 {
        libm::pow(lx, 2.0 / 3.0) * libm::pow(libm::log(lx), 4.0 / 3.0)
    } else {
        lx
    }
}

/// Exact partial sums against the main term at each `x` in `xs`.
///
/// `xs` must be ascending with every entry at least 3. The report measures
/// only; the error constant is not asserted.
pub fn averaging_report(k: u32, xs: &[u64], constant: &EulerConstant) -> Result<Vec<AveragingRow>> {
    if constant.k != k {
        return Err(Error::domain("constant was computed for a different k"));
    }
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    if xs.iter().any(|&x| x < 3) {
        return Err(Error::domain("every x must be at least 3"));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("xs must be strictly ascending"));
    }
    let last = *xs.last().unwrap();
    let table = phi_k_table(k, last)?;
    let mut rows = Vec::with_capacity(xs.len());
    let mut running = BigUint::zero();
    let mut from = 1u64;
    for &x in xs {
        running += sum_values(&table.values()[(from - 1) as usize..x as usize]);
        from = x + 1;
        rows.push(averaging_row(k, x, running.clone(), constant.value));
    }
    Ok(rows)
}

/// Builds one row from an exact partial sum and the constant `C_k`.
pub fn averaging_row(k: u32, x: u64, partial_sum: BigUint, c_k: f64) -> AveragingRow {
    let xf = x as f64;
    let main_term = c_k * libm::pow(xf, (k + 1) as f64) / (k + 1) as f64;
    let s = partial_sum.to_f64().unwrap_or(f64::INFINITY);
    let diff = s - main_term;
    AveragingRow {
        x,
        partial_sum,
        main_term,
        rel_error: diff / main_term,
        error_ratio: diff / (libm::pow(xf, k as f64) * error_scale(k, xf)),
    }
}

/// One primorial in a minimal-order scan.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalOrderRow {
    /// Number of primes in the primorial.
    pub primes: u32,
    pub n: u64,
    /// `Φ_k(n) log log n / n^k`.
    pub ratio: f64,
}

/// Largest primorial index whose value fits in a `u64` (`2·3·…·47`).
pub const MAX_PRIMORIAL_PRIMES: u32 = 15;

/// `Φ_k(n) log log n / n^k` along the primorials with 3 to `prime_count`
/// primes (the first is 30, where `log log n > 0`).
///
/// For odd `k` the ratio equals `φ(n) log log n / n` and tends to `e^-γ`.
/// Even `k` has no known limit and is accepted only with `experimental`.
pub fn minimal_order_scan(
    k: u32,
    prime_count: u32,
    experimental: bool,
) -> Result<Vec<MinimalOrderRow>> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if k % 2 == 0 && !experimental {
        return Err(Error::domain(
            "the minimal order for even k is open; enable the experimental mode to scan it",
        ));
    }
    if prime_count > MAX_PRIMORIAL_PRIMES {
        return Err(Error::Resource {
            what: "primorial in 64-bit range",
            required: BigUint::from(prime_count),
            budget: MAX_PRIMORIAL_PRIMES as u64,
        });
    }
    let primes = SpfTable::new(64)?.primes().to_vec();
    let mut rows = Vec::new();
    let mut n = 1u64;
    let mut density = 1.0f64; // Φ_k(n) / n^k
    for (i, &p) in primes.iter().take(prime_count as usize).enumerate() {
        let p = p as u64;
        n *= p;
        let pf = p as f64;
        density *= if p == 2 {
            0.5
        } else if k % 2 == 1 {
            1.0 - 1.0 / pf
        } else {
            let sign = even_k_sign(k, p) as f64;
            (1.0 - 1.0 / pf) * (1.0 - sign / libm::pow(pf, (k / 2) as f64))
        };
        if i >= 2 {
            rows.push(MinimalOrderRow {
                primes: i as u32 + 1,
                n,
                ratio: density * libm::log(libm::log(n as f64)),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;
    use crate::phi::phi_k;

    #[test]
    fn table_examples() {
        assert_eq!(
            phi_k_table(1, 10).unwrap().values(),
            &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
        );
        assert_eq!(phi_k_table(2, 5).unwrap().get(5), Some(16));
        assert_eq!(phi_k_table(3, 1).unwrap().values(), &[1]);
        assert!(phi_k_table(1, 0).is_err());
        assert!(matches!(
            phi_k_table(1, TABLE_LIMIT_MAX + 1),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn table_matches_pointwise() {
        for k in 1..=4 {
            let t = phi_k_table(k, 2000).unwrap();
            for n in 1..=2000u64 {
                let want = phi_k(k, &factorize(n, None).unwrap()).unwrap();
                assert_eq!(BigUint::from(t.get(n).unwrap()), want, "k = {k}, n = {n}");
            }
        }
    }

    #[test]
    fn table_overflow_is_reported() {
        // 2^(k-1) alone exceeds u128 for k = 130
        assert!(matches!(phi_k_table(130, 2), Err(Error::Overflow(_))));
    }

    #[test]
    fn chunked_ranges_concatenate() {
        let spf = SpfTable::new(5000).unwrap();
        let whole = phi_k_table_range(2, &spf, 1, 5000).unwrap();
        let mut parts = Vec::new();
        for (lo, hi) in [(1, 1234), (1235, 1235), (1236, 4999), (5000, 5000)] {
            parts.extend_from_slice(phi_k_table_range(2, &spf, lo, hi).unwrap().values());
        }
        assert_eq!(whole.values(), &parts[..]);
        assert_eq!(sum_values(&parts), partial_sum(2, 5000).unwrap());
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum(1, 10).unwrap(), BigUint::from(32u32));
        assert_eq!(partial_sum(1, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(partial_sum(2, 3).unwrap(), BigUint::from(11u32));
    }

    #[test]
    fn sum_values_spills_into_bigint() {
        let v = [u128::MAX, u128::MAX, 5];
        let want = BigUint::from(u128::MAX) * 2u32 + 5u32;
        assert_eq!(sum_values(&v), want);
    }

    #[test]
    fn odd_constant() {
        let c = euler_constant(1, 1e-9).unwrap();
        assert!((c.value - 0.607_927_101_854_026_6).abs() < 1e-15);
        assert_eq!(c.tail_bound, 0.0);
        assert!(euler_constant(2, 0.0).is_err());
        assert!(euler_constant(2, -1.0).is_err());
        assert!(euler_constant(2, f64::NAN).is_err());
        assert!(euler_constant(2, 1e-20).is_err());
    }

    #[test]
    fn tail_bound_meets_tolerance() {
        for k in [2, 4, 6, 8] {
            let c = euler_constant(k, 1e-9).unwrap();
            assert!(c.tail_bound <= 1e-9 && c.tail_bound > 0.0, "k = {k}");
        }
    }

    #[test]
    fn accelerated_product_matches_plain_factor() {
        // Same truncation of the unaccelerated factor, with 6/π² and (for
        // k = 2) 1/G replaced by the matching finite products: both sides
        // must then agree to rounding.
        let bound = 20_000;
        for k in [2u32, 4, 6] {
            let mut plain = 0.75f64;
            let mut zeta_part = 0.75f64;
            let mut l_part = 1.0f64;
            for p in odd_primes_up_to(bound) {
                let pf = p as f64;
                let sign = even_k_sign(k, p) as f64;
                plain *=
                    1.0 - 1.0 / (pf * pf) - sign * (pf - 1.0) / libm::pow(pf, (k / 2 + 2) as f64);
                zeta_part *= 1.0 - 1.0 / (pf * pf);
                let chi = if p % 4 == 1 { 1.0 } else { -1.0 };
                l_part *= 1.0 - chi / (pf * pf);
            }
            let acc = euler_constant_with_bound(k, bound).unwrap();
            let mut rebuilt = acc.value / (6.0 / (PI * PI)) * zeta_part;
            if k == 2 {
                rebuilt *= CATALAN * l_part;
            }
            assert!(
                (rebuilt - plain).abs() < 1e-13,
                "k = {k}: {rebuilt} vs {plain}"
            );
        }
    }

    #[test]
    fn g_k_examples() {
        let g = g_k_table(2, 100).unwrap();
        assert_eq!(g.get(1), Some(1));
        assert_eq!(g.get(2), Some(-2));
        assert_eq!(g.get(4), Some(0));
        // p = 3, k = 2: -3 - (-1)(1)(2) = -1
        assert_eq!(g.get(3), Some(-1));
        // p = 5, k = 2: -5 - (1)(1)(4) = -9
        assert_eq!(g.get(5), Some(-9));
        assert_eq!(g.get(15), Some(9));
        for n in 1..=100u64 {
            let f = factorize(n, None).unwrap();
            if !f.is_squarefree() {
                assert_eq!(g.get(n), Some(0));
            }
        }
        assert!(g_k_table(3, 10).is_err());
    }

    #[test]
    fn convolution_examples() {
        assert!(convolution_check(2, 500).unwrap().passed());
        assert!(convolution_check(4, 200).unwrap().passed());
        assert!(convolution_check(6, 100).unwrap().passed());
    }

    #[test]
    fn averaging_k1_small() {
        let c = euler_constant(1, 1e-9).unwrap();
        let rows = averaging_report(1, &[10], &c).unwrap();
        assert_eq!(rows[0].partial_sum, BigUint::from(32u32));
        assert!((rows[0].main_term - 300.0 / (PI * PI)).abs() < 1e-9);
        assert!((rows[0].rel_error - 0.052_757).abs() < 1e-4);
    }

    #[test]
    fn averaging_validation() {
        let c = euler_constant(1, 1e-9).unwrap();
        assert!(averaging_report(1, &[2], &c).is_err());
        assert!(averaging_report(1, &[10, 10], &c).is_err());
        assert!(averaging_report(2, &[10], &c).is_err());
        assert!(averaging_report(1, &[], &c).unwrap().is_empty());
    }

    #[test]
    fn minimal_order_examples() {
        let rows = minimal_order_scan(1, 5, false).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.n).collect::<Vec<_>>(),
            vec![30, 210, 2310]
        );
        assert!((rows[0].ratio - 0.3264).abs() < 1e-4);
        assert!((rows[1].ratio - 0.3833).abs() < 1e-4);
        assert!(minimal_order_scan(2, 5, false).is_err());
        assert_eq!(minimal_order_scan(2, 5, true).unwrap().len(), 3);
        assert!(minimal_order_scan(1, 16, false).is_err());
        assert_eq!(
            minimal_order_scan(1, 15, false).unwrap().last().unwrap().n,
            614_889_782_588_491_410
        );
        // odd k gives the same ratio as k = 1
        let r3 = minimal_order_scan(3, 9, false).unwrap();
        for (a, b) in r3.iter().zip(minimal_order_scan(1, 9, false).unwrap()) {
            assert!((a.ratio - b.ratio).abs() < 1e-15);
        }
    }
}
