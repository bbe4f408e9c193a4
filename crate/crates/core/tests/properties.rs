use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use phik_core::averaging::{phi_k_table, sum_values};
use phik_core::menon::menon_lhs;
use phik_core::phi::{phi_k, phi_k_brute, phi_k_of, phi_k_via_jordan, PhiQuery};
use phik_core::rho::{residue_census, rho, CoprimeRho};
use phik_core::{euler_phi, factorize, gcd, jordan_totient, Factorization, DEFAULT_GUARD};

fn fact(n: u64) -> Factorization {
    factorize(n, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn factorization_round_trips(n in 1u64..u64::MAX) {
        let f = fact(n);
        let product: u128 = f.factors().iter().map(|&(p, e)| (p as u128).pow(e)).product();
        prop_assert_eq!(product, n as u128);
        prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(f.primes().all(phik_core::arith::is_prime));
    }

    #[test]
    fn phi_k_is_multiplicative(m in 1u64..5000, n in 1u64..5000, k in 1u32..9) {
        prop_assume!(gcd(m, n) == 1);
        prop_assert_eq!(phi_k_of(k, m * n).unwrap(), phi_k_of(k, m).unwrap() * phi_k_of(k, n).unwrap());
    }

    #[test]
    fn phi_k_divides_along_divisors(n in 1u64..3000, c in 1u64..20, k in 1u32..7) {
        let small = phi_k_of(k, n).unwrap();
        let big = phi_k_of(k, n * c).unwrap();
        prop_assert!(big.is_multiple_of(&small));
    }

    #[test]
    fn phi_1_is_euler_phi(n in 1u64..1_000_000_000) {
        let f = fact(n);
        prop_assert_eq!(phi_k(1, &f).unwrap(), BigUint::from(euler_phi(&f)));
    }

    #[test]
    fn phi_k_bounded_by_units_times_volume(n in 1u64..10_000, k in 1u32..7) {
        // Φ_k(n) <= n^(k-1) φ(n) · 2 and Φ_k(n) > 0
        let f = fact(n);
        let v = phi_k(k, &f).unwrap();
        prop_assert!(!v.is_zero());
        let cap = BigUint::from(n).pow(k - 1) * euler_phi(&f) * 2u32;
        prop_assert!(v <= cap);
    }

    #[test]
    fn jordan_form_agrees(n in 1u64..100_000, j in 1u32..4) {
        let k = 4 * j;
        let f = fact(n);
        prop_assert_eq!(phi_k_via_jordan(k, &f).unwrap(), phi_k(k, &f).unwrap());
    }

    #[test]
    fn jordan_totient_of_prime(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101, 997]), k in 1u32..6) {
        let want = BigUint::from(p).pow(k) - BigUint::one();
        prop_assert_eq!(jordan_totient(k, &fact(p)).unwrap(), want);
    }

    #[test]
    fn small_brute_matches(n in 1u64..40, k in 1u32..4) {
        let q = PhiQuery::new(k, n).unwrap();
        prop_assert_eq!(
            BigUint::from(phi_k_brute(q, DEFAULT_GUARD).unwrap()),
            phi_k_of(k, n).unwrap()
        );
    }

    #[test]
    fn rho_is_multiplicative_in_n(m in 1u64..60, n in 1u64..60, lambda in 0u64..10_000, k in 1u32..6) {
        prop_assume!(gcd(m, n) == 1);
        prop_assume!(gcd(lambda, m * n) == 1);
        let whole = rho(k, lambda, m * n).unwrap().value;
        prop_assert_eq!(whole, rho(k, lambda, m).unwrap().value * rho(k, lambda, n).unwrap().value);
    }

    #[test]
    fn rho_depends_on_residue_only(n in 1u64..500, lambda in 0u64..500, k in 1u32..6) {
        prop_assume!(gcd(lambda, n) == 1);
        let a = rho(k, lambda, n).unwrap().value;
        let b = rho(k, lambda + 7 * n, n).unwrap().value;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rho_is_invariant_under_square_units(n in 2u64..400, lambda in 1u64..400, u in 1u64..400, k in 1u32..6) {
        prop_assume!(gcd(lambda, n) == 1 && gcd(u, n) == 1);
        let scaled = (lambda as u128 * (u as u128 * u as u128 % n as u128) % n as u128) as u64;
        let table = CoprimeRho::new(k, n).unwrap();
        prop_assert_eq!(table.eval(lambda).unwrap(), table.eval(scaled).unwrap());
    }

    #[test]
    fn census_sums_to_volume(n in 1u64..30, k in 1u32..5) {
        let census = residue_census(k, n, DEFAULT_GUARD).unwrap();
        prop_assert_eq!(census.total(), BigUint::from(n).pow(k));
    }

    #[test]
    fn table_matches_pointwise(lo in 1u64..2000, k in 1u32..5) {
        let table = phi_k_table(k, lo + 50).unwrap();
        for n in lo..=lo + 50 {
            prop_assert_eq!(BigUint::from(table.get(n).unwrap()), phi_k_of(k, n).unwrap());
        }
    }

    #[test]
    fn partial_sums_are_additive(a in 1u64..300, b in 1u64..300, k in 1u32..4) {
        let table = phi_k_table(k, a + b).unwrap();
        let v = table.values();
        let whole = sum_values(v);
        let split = sum_values(&v[..a as usize]) + sum_values(&v[a as usize..]);
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn menon_sum_dominates_phi(n in 1u64..300, k in 1u32..5) {
        // every term gcd(λ - 1, n) >= 1
        prop_assert!(menon_lhs(k, n).unwrap() >= phi_k_of(k, n).unwrap());
    }
}
