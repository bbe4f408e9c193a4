use alloc::vec::Vec;

use super::{gcd, mul_mod, Factorization, SpfTable};
use crate::error::{Error, Result};

const TRIAL_BOUND: u64 = 1_000_000;

// Deterministic for every n < 2^64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod_unchecked(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod_unchecked(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Factors `n >= 1` into ascending prime powers.
///
/// Uses the smallest-prime-factor table when `n` is within its range,
/// otherwise trial division up to `10^6` followed by Miller-Rabin and Brent's
/// variant of Pollard's rho on the remaining cofactor.
pub fn factorize(n: u64, table: Option<&SpfTable>) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize: n must be at least 1"));
    }
    if let Some(t) = table {
        if n <= t.limit() {
            return Ok(factor_with_table(n, t));
        }
    }
    let mut primes: Vec<u64> = Vec::new();
    let mut m = n;
    let tz = m.trailing_zeros();
    primes.resize(tz as usize, 2);
    m >>= tz;
    let mut d = 3;
    while d <= TRIAL_BOUND && d * d <= m {
        while m % d == 0 {
            primes.push(d);
            m /= d;
        }
        d += 2;
    }
    if m > 1 {
        if d * d > m {
            primes.push(m);
        } else {
            split(m, &mut primes);
        }
    }
    primes.sort_unstable();
    Ok(Factorization::from_raw(n, group(&primes)))
}

fn factor_with_table(mut n: u64, t: &SpfTable) -> Factorization {
    let orig = n;
    let spf = t.raw();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        factors.push((p, e));
    }
    Factorization::from_raw(orig, factors)
}

fn group(sorted: &[u64]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    for &p in sorted {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = isqrt(n);
    if r * r == n {
        split(r, out);
        split(r, out);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = brent(n, c) {
            break d;
        }
        c += 1;
    };
    split(d, out);
    split(n / d, out);
}

fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

// Brent's cycle detection on x -> x^2 + c with batched gcds.
fn brent(n: u64, c: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
    let mut y = 2u64;
    let mut ys = y;
    let mut q = 1u64;
    let mut g;
    let mut r = 1u64;
    let x = loop {
        let x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        g = 1;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        if g != 1 {
            break x;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    };
    if g == n {
        // the batch overshot; replay it one step at a time
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}
