//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use phik_core::arith::is_prime;
use phik_core::averaging::{
    corollary_constant, euler_constant, minimal_order_scan, partial_sum, EULER_GAMMA,
};
use phik_core::menon::{menon_classic, menon_row, psi_multiplicativity_scan};
use phik_core::phi::{phi_k, phi_k_brute, phi_k_via_rho, PhiQuery};
use phik_core::rho::{
    closed_form_pow2, residue_census, rho, rho_base_vector, rho_brute, rho_odd_prime_power,
    rho_pow2, RhoPath,
};
use phik_core::verify::{identity_suite, IdentityBounds};
use phik_core::{factorize, gcd, DEFAULT_GUARD};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fits_guard(k: u32, n: u64) -> bool {
    (n as u128)
        .checked_pow(k)
        .is_some_and(|v| v <= DEFAULT_GUARD as u128)
}

fn oracle_equivalence() -> Check {
    let mut cases = 0;
    for k in 1..=4u32 {
        for n in 1..=100u64 {
            if !fits_guard(k, n) {
                continue;
            }
            let q = PhiQuery::new(k, n).map_err(|e| e.to_string())?;
            let formula = phi_k(k, &factorize(n, None).unwrap()).unwrap();
            let brute = BigUint::from(phi_k_brute(q, DEFAULT_GUARD).unwrap());
            let via = phi_k_via_rho(q).unwrap();
            ensure(formula == brute && brute == via, || {
                format!("k = {k}, n = {n}: formula {formula}, brute {brute}, via rho {via}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (k, n) pairs"))
}

fn rho_prime_powers() -> Check {
    let mut cases = 0;
    let mut moduli: Vec<(u64, u32)> = Vec::new();
    for p in (3..=729u64).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut s = 1;
        while q <= 729 {
            moduli.push((p, s));
            q *= p;
            s += 1;
        }
    }
    for s in 1..=8 {
        moduli.push((2, s));
    }
    for &(p, s) in &moduli {
        let n = p.pow(s);
        for k in 1..=6u32 {
            if !fits_guard(k, n) {
                continue;
            }
            let census = residue_census(k, n, DEFAULT_GUARD).unwrap();
            for lambda in (1..n).filter(|&l| gcd(l, n) == 1) {
                let formula = if p == 2 {
                    rho_pow2(k, lambda, s).unwrap()
                } else {
                    rho_odd_prime_power(k, lambda, p, s).unwrap()
                };
                let via_dispatch = rho(k, lambda, n).unwrap();
                let oracle = census.get(lambda);
                ensure(
                    &formula == oracle
                        && via_dispatch.value == formula
                        && via_dispatch.path == RhoPath::Formula,
                    || {
                        format!("k = {k}, lambda = {lambda}, n = {p}^{s}: formula {formula}, oracle {oracle}")
                    },
                )?;
                cases += 1;
            }
        }
    }
    for (k, expected) in [(1u32, 2u64), (2, 8), (3, 24)] {
        let v = rho(k, 1, 4).unwrap().value;
        ensure(v == BigUint::from(expected), || {
            format!("rho({k}, 1, 4) = {v}, expected {expected}")
        })?;
        cases += 1;
    }
    Ok(format!("{cases} cases"))
}

fn trig_forms() -> Check {
    let mut cases = 0;
    let mut oracle_cases = 0;
    for modulus in [2u64, 4, 8] {
        for k in 1..=32u32 {
            let recurrence = rho_base_vector(k, modulus).unwrap();
            let census =
                fits_guard(k, modulus).then(|| residue_census(k, modulus, DEFAULT_GUARD).unwrap());
            for lambda in (1..modulus).step_by(2) {
                let trig = closed_form_pow2(k, lambda, modulus).unwrap();
                let rec = recurrence.get(lambda);
                ensure(&trig == rec, || {
                    format!(
                        "k = {k}, lambda = {lambda}, n = {modulus}: trig {trig}, recurrence {rec}"
                    )
                })?;
                if let Some(c) = &census {
                    let o = c.get(lambda);
                    ensure(o == rec, || {
                        format!("k = {k}, lambda = {lambda}, n = {modulus}: oracle {o}, recurrence {rec}")
                    })?;
                    oracle_cases += 1;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, {oracle_cases} also enumerated"))
}

fn identities() -> Check {
    let outcome = identity_suite(&IdentityBounds::default()).map_err(|e| e.to_string())?;
    match outcome.failure {
        None => Ok(format!("{} cases", outcome.cases)),
        Some(f) => Err(f),
    }
}

fn convolution() -> Check {
    for k in [2u32, 4] {
        let r = phik_core::averaging::convolution_check(k, 500).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("k = {k}: {:?}", r.counterexample))?;
    }
    Ok("n <= 500, k = 2, 4".into())
}

fn average_k1() -> Check {
    let s = partial_sum(1, 100_000).unwrap().to_f64().unwrap();
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let dev = (s * pi2 / 3e10 - 1.0).abs();
    ensure(dev <= 1e-3, || format!("relative deviation {dev:e}"))?;
    Ok(format!("S = {s}, deviation {dev:.2e}"))
}

fn average_k2() -> Check {
    let c2 = euler_constant(2, 1e-9).unwrap();
    let s = partial_sum(2, 100_000).unwrap().to_f64().unwrap();
    let dev = (s / (c2.value * 1e15 / 3.0) - 1.0).abs();
    ensure(dev <= 1e-2, || format!("k = 2 relative deviation {dev:e}"))?;
    let mut gaps = Vec::new();
    for k in [2u32, 4] {
        let c = euler_constant(k, 1e-9).unwrap();
        let alt = corollary_constant(k, 1e-9).unwrap();
        let gap = (c.value - (k + 1) as f64 * alt.value).abs();
        ensure(gap <= 1e-8, || {
            format!(
                "k = {k}: C_k = {}, (k+1) * residue-class constant = {}",
                c.value,
                (k + 1) as f64 * alt.value
            )
        })?;
        gaps.push(format!("C_{k} = {:.12} (gap {gap:.1e})", c.value));
    }
    Ok(format!("deviation {dev:.2e}; {}", gaps.join(", ")))
}

fn menon_classic_check() -> Check {
    for n in 1..=2000u64 {
        let c = menon_classic(n).unwrap();
        ensure(c.holds(), || format!("n = {n}: {} != {}", c.lhs, c.rhs))?;
    }
    Ok("n <= 2000".into())
}

fn menon_generalized() -> Check {
    let row = menon_row(2, 3).unwrap();
    ensure(row.psi == BigUint::from(2u32).into(), || {
        format!("Psi_2(3) = {}", row.psi)
    })?;
    let rows = psi_multiplicativity_scan(2, 60).map_err(|e| e.to_string())?;
    let equal = rows.iter().filter(|r| r.equal).count();
    Ok(format!(
        "Psi_2(3) = 2; scan: {} coprime pairs, {equal} multiplicative",
        rows.len()
    ))
}

fn minimal_order() -> Check {
    let rows = minimal_order_scan(1, 9, false).map_err(|e| e.to_string())?;
    ensure(rows.len() == 7, || format!("{} rows", rows.len()))?;
    let ceiling = (-EULER_GAMMA).exp() + 1e-3;
    ensure(rows.windows(2).all(|w| w[0].ratio < w[1].ratio), || {
        "not increasing".into()
    })?;
    ensure(rows.iter().all(|r| r.ratio < ceiling), || {
        "exceeds e^-gamma + 1e-3".into()
    })?;
    for (row, want) in rows.iter().zip([0.326, 0.383, 0.425]) {
        ensure((row.ratio - want).abs() <= 2e-3, || {
            format!("{} primes: {} vs {want}", row.primes, row.ratio)
        })?;
    }
    let shown: Vec<String> = rows.iter().map(|r| format!("{:.4}", r.ratio)).collect();
    Ok(shown.join(" < "))
}

fn main() -> ExitCode {
    // Sanity check that the oracle itself is wired to the right count.
    assert_eq!(rho_brute(2, 1, 4, DEFAULT_GUARD).unwrap(), 8);

    let criteria: [Criterion; 10] = [
        ("oracle equivalence for phi_k", oracle_equivalence),
        (
            "rho formula vs enumeration on prime powers",
            rho_prime_powers,
        ),
        ("trigonometric forms at 2, 4, 8", trig_forms),
        ("identity suite", identities),
        ("Dirichlet convolution", convolution),
        ("average order, k = 1", average_k1),
        ("average order, k = 2 and constant consistency", average_k2),
        ("Menon's identity", menon_classic_check),
        ("Menon-type sums of squares", menon_generalized),
        ("minimal order along primorials", minimal_order),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!(
                "criterion {:>2}: PASS  {name} [{detail}] ({secs:.2}s)",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2}: FAIL  {name} [{detail}] ({secs:.2}s)",
                    i + 1
                );
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
