//! Property suites that cross-check the closed forms against enumeration
//! and against each other. Each suite stops at the first counterexample.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::arith::{big_pow, factorize, gcd, Factorization, SpfTable};
use crate::averaging::convolution_check;
use crate::error::{Error, Result};
use crate::menon::menon_classic;
use crate::phi::{phi_k, phi_k_brute, phi_k_via_jordan, phi_k_via_rho, phi_ratio_check, PhiQuery};
use crate::rho::{residue_census, CoprimeRho};
use crate::DEFAULT_GUARD;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Rho,
    Phi,
    Identities,
    Convolution,
    MenonClassic,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Rho,
        Suite::Phi,
        Suite::Identities,
        Suite::Convolution,
        Suite::MenonClassic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rho => "rho",
            Suite::Phi => "phi",
            Suite::Identities => "identities",
            Suite::Convolution => "convolution",
            Suite::MenonClassic => "menon-classic",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite '{s}'")))
    }
}

/// Result of running one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub suite: Suite,
    pub limit: u64,
    pub cases: u64,
    /// Description of the first failing case.
    pub failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

struct Tally {
    cases: u64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failure: None,
        }
    }

    /// Records one case; returns `false` once a failure has been seen.
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
        self.failure.is_none()
    }

    fn finish(self, suite: Suite, limit: u64) -> Outcome {
        Outcome {
            suite,
            limit,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

pub fn run(suite: Suite, limit: u64) -> Result<Outcome> {
    match suite {
        Suite::Rho => rho_suite(limit, 6, DEFAULT_GUARD),
        Suite::Phi => phi_suite(limit, 4, DEFAULT_GUARD),
        Suite::Identities => identity_suite(&IdentityBounds::uniform(limit)),
        Suite::Convolution => convolution_suite(limit),
        Suite::MenonClassic => menon_classic_suite(limit),
    }
}

/// Formula against enumeration for every `n <= limit`, `k <= max_k` with
/// `n^k <= guard`, and every `lambda` coprime to `n`; also checks that the
/// census sums to `n^k`.
pub fn rho_suite(limit: u64, max_k: u32, guard: u64) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for n in 1..=limit {
        for k in 1..=max_k {
            let Ok(census) = residue_census(k, n, guard) else {
                break;
            };
            if !t.check(census.total() == big_pow(n, k as u64), || {
                format!("census for k = {k}, n = {n} does not sum to n^k")
            }) {
                break 'outer;
            }
            let rho = CoprimeRho::new(k, n)?;
            for lambda in (0..n).filter(|&l| gcd(l, n) == 1) {
                let formula = rho.eval(lambda)?;
                let oracle = census.get(lambda);
                if !t.check(&formula == oracle, || {
                    format!("rho({k}, {lambda}, {n}): formula {formula}, enumeration {oracle}")
                }) {
                    break 'outer;
                }
            }
        }
    }
    Ok(t.finish(Suite::Rho, limit))
}

/// `phi_k = phi_k_via_rho = phi_k_brute` for `n <= limit`, `k <= max_k`,
/// with the brute force skipped where `n^k > guard`.
pub fn phi_suite(limit: u64, max_k: u32, guard: u64) -> Result<Outcome> {
    let mut t = Tally::new();
    'outer: for n in 1..=limit {
        let f = factorize(n, None)?;
        for k in 1..=max_k {
            let q = PhiQuery::new(k, n)?;
            let closed = phi_k(k, &f)?;
            let via_rho = phi_k_via_rho(q)?;
            let brute = match phi_k_brute(q, guard) {
                Ok(v) => Some(BigUint::from(v)),
                Err(e) if e.is_resource() => None,
                Err(e) => return Err(e),
            };
            let ok = closed == via_rho && brute.as_ref().is_none_or(|b| *b == closed);
            if !t.check(ok, || {
                format!(
                    "Φ_{k}({n}): closed form {closed}, via rho {via_rho}, enumeration {brute:?}"
                )
            }) {
                break 'outer;
            }
        }
    }
    Ok(t.finish(Suite::Phi, limit))
}

/// Ranges for the elementary identities of `Φ_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityBounds {
    /// Coprime `m, n` with `mn` up to this, `k <= 4`.
    pub multiplicative: u64,
    /// `n | m` with `m` up to this, `k <= 4`.
    pub divisibility: u64,
    /// `m, n` up to this, `k <= 3`.
    pub gcd: u64,
    /// Base `n` up to this with exponents `m <= 4`, `k <= 3`.
    pub power: u64,
    /// `Φ_k(n)` even for `3 <= n` up to this, `k <= 4`.
    pub parity: u64,
    /// Jordan and ratio forms for `n` up to this.
    pub jordan: u64,
}

impl Default for IdentityBounds {
    fn default() -> Self {
        IdentityBounds {
            multiplicative: 200,
            divisibility: 500,
            gcd: 100,
            power: 50,
            parity: 1000,
            jordan: 1000,
        }
    }
}

impl IdentityBounds {
    pub fn uniform(limit: u64) -> Self {
        IdentityBounds {
            multiplicative: limit,
            divisibility: limit,
            gcd: limit,
            power: limit,
            parity: limit,
            jordan: limit,
        }
    }
}

/// Multiplicativity, divisibility, the gcd identity
/// `Φ_k(mn) Φ_k(d) = d^k Φ_k(m) Φ_k(n)`, the power identity
/// `Φ_k(n^m) = n^(k(m-1)) Φ_k(n)`, parity, and the Jordan and ratio forms.
pub fn identity_suite(b: &IdentityBounds) -> Result<Outcome> {
    let mut t = Tally::new();
    let top = [
        b.multiplicative,
        b.divisibility,
        b.gcd * b.gcd,
        b.parity,
        b.jordan,
    ]
    .into_iter()
    .max()
    .unwrap_or(1)
    .max(2);
    let spf = SpfTable::new(top)?;
    let fact = |n: u64| factorize(n, Some(&spf));
    let phi = |k: u32, n: u64| -> Result<BigUint> { phi_k(k, &fact(n)?) };

    macro_rules! check {
        ($ok:expr, $($msg:tt)+) => {
            if !t.check($ok, || format!($($msg)+)) {
                return Ok(t.finish(Suite::Identities, b.multiplicative));
            }
        };
    }

    for k in 1..=4 {
        for m in 1..=b.multiplicative {
            for n in m..=b.multiplicative / m {
                if gcd(m, n) != 1 {
                    continue;
                }
                let lhs = phi(k, m * n)?;
                let rhs = phi(k, m)? * phi(k, n)?;
                check!(
                    lhs == rhs,
                    "Φ_{k}({m}·{n}) = {lhs} but Φ_{k}({m})Φ_{k}({n}) = {rhs}"
                );
            }
        }
        for m in 1..=b.divisibility {
            let pm = phi(k, m)?;
            for n in divisors(&fact(m)?) {
                let pn = phi(k, n)?;
                check!(
                    pm.is_multiple_of(&pn),
                    "Φ_{k}({n}) does not divide Φ_{k}({m})"
                );
            }
        }
        for n in 3..=b.parity {
            let v = phi(k, n)?;
            check!(v.is_even(), "Φ_{k}({n}) = {v} is odd");
        }
    }
    for k in 1..=3u32 {
        for m in 1..=b.gcd {
            for n in 1..=b.gcd {
                let d = gcd(m, n);
                let lhs = phi(k, m * n)? * phi(k, d)?;
                let rhs = big_pow(d, k as u64) * phi(k, m)? * phi(k, n)?;
                check!(
                    lhs == rhs,
                    "gcd identity fails for k = {k}, m = {m}, n = {n}"
                );
            }
        }
        for n in 1..=b.power {
            let f = fact(n)?;
            let base = phi_k(k, &f)?;
            for m in 1..=4u32 {
                let lhs = phi_k(k, &f.pow(m)?)?;
                let rhs = big_pow(n, (k * (m - 1)) as u64) * &base;
                check!(
                    lhs == rhs,
                    "power identity fails for k = {k}, n = {n}, m = {m}"
                );
            }
        }
    }
    for n in 1..=b.jordan {
        let f = fact(n)?;
        for k in [4u32, 8, 12] {
            let a = phi_k(k, &f)?;
            let j = phi_k_via_jordan(k, &f)?;
            check!(a == j, "Jordan form for k = {k}, n = {n}: {j} vs {a}");
        }
        for k in [4u32, 12] {
            let c = phi_ratio_check(k, &f)?;
            check!(c.holds(), "ratio identity fails for k = {k}, n = {n}");
        }
    }
    Ok(t.finish(Suite::Identities, b.multiplicative))
}

fn divisors(f: &Factorization) -> Vec<u64> {
    let mut out = alloc::vec![1u64];
    for &(p, e) in f.factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out
}

/// `Φ_k = id_k * g_k` for `n <= limit`, `k ∈ {2, 4}`.
pub fn convolution_suite(limit: u64) -> Result<Outcome> {
    let mut t = Tally::new();
    if limit >= 1 {
        for k in [2u32, 4] {
            let r = convolution_check(k, limit)?;
            t.cases += limit - 1;
            if !t.check(r.passed(), || {
                let (n, lhs, rhs) = r.counterexample.unwrap();
                format!("k = {k}, n = {n}: Σ g_k(d)(n/d)^k = {lhs}, Φ_k(n) = {rhs}")
            }) {
                break;
            }
        }
    }
    Ok(t.finish(Suite::Convolution, limit))
}

/// Menon's identity for `n <= limit`.
pub fn menon_classic_suite(limit: u64) -> Result<Outcome> {
    let mut t = Tally::new();
    for n in 1..=limit {
        let c = menon_classic(n)?;
        if !t.check(c.holds(), || {
            format!("n = {n}: Σ gcd(j-1, n) = {}, φ(n)d(n) = {}", c.lhs, c.rhs)
        }) {
            break;
        }
    }
    Ok(t.finish(Suite::MenonClassic, limit))
}
