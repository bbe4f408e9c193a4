//! Chunked, data-parallel versions of the bulk table routines.
//!
//! Chunks are fixed-size ranges of `n` over one shared sieve and are combined
//! in index order with exact arithmetic, so output does not depend on the
//! thread count.

use num_bigint::BigUint;
use phik_core::averaging::{
    averaging_row, phi_k_table_range, sum_values, AveragingRow, EulerConstant, TABLE_LIMIT_MAX,
};
use phik_core::{Error, SpfTable};
use rayon::prelude::*;

pub const CHUNK: u64 = 1 << 16;

fn chunks(x: u64) -> Vec<(u64, u64)> {
    (0..x.div_ceil(CHUNK))
        .map(|i| (i * CHUNK + 1, ((i + 1) * CHUNK).min(x)))
        .collect()
}

fn sieve(x: u64) -> Result<SpfTable, Error> {
    if x > TABLE_LIMIT_MAX {
        return Err(Error::Resource {
            what: "bulk table of Φ_k",
            required: BigUint::from(x),
            budget: TABLE_LIMIT_MAX,
        });
    }
    SpfTable::new(x.max(2))
}

/// `Φ_k(1), ..., Φ_k(x)`.
pub fn phi_table(k: u32, x: u64) -> Result<Vec<u128>, Error> {
    if x == 0 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    let spf = sieve(x)?;
    let parts: Vec<Vec<u128>> = chunks(x)
        .into_par_iter()
        .map(|(lo, hi)| phi_k_table_range(k, &spf, lo, hi).map(|t| t.into_values()))
        .collect::<Result<_, _>>()?;
    Ok(parts.concat())
}

/// Exact `S(x)` at every `x` in `xs` (strictly ascending), without holding the
/// whole table.
pub fn partial_sums(k: u32, xs: &[u64]) -> Result<Vec<BigUint>, Error> {
    let Some(&last) = xs.last() else {
        return Ok(Vec::new());
    };
    if xs[0] == 0 || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(
            "xs must be positive and strictly ascending".into(),
        ));
    }
    let spf = sieve(last)?;
    // per chunk: the sum of Φ_k over each segment (xs[i-1], xs[i]]
    let per_chunk: Vec<Vec<BigUint>> = chunks(last)
        .into_par_iter()
        .map(|(lo, hi)| {
            let table = phi_k_table_range(k, &spf, lo, hi)?;
            let values = table.values();
            let mut segs = vec![BigUint::default(); xs.len()];
            let mut start = lo;
            for (i, &x) in xs.iter().enumerate() {
                if x < start {
                    continue;
                }
                let end = x.min(hi);
                segs[i] = sum_values(&values[(start - lo) as usize..=(end - lo) as usize]);
                start = end + 1;
                if start > hi {
                    break;
                }
            }
            Ok(segs)
        })
        .collect::<Result<_, Error>>()?;
    let mut totals = vec![BigUint::default(); xs.len()];
    for segs in per_chunk {
        for (t, s) in totals.iter_mut().zip(segs) {
            *t += s;
        }
    }
    let mut running = BigUint::default();
    Ok(totals
        .into_iter()
        .map(|t| {
            running += t;
            running.clone()
        })
        .collect())
}

/// Parallel counterpart of `phik_core::averaging::averaging_report`.
pub fn averaging_report(
    k: u32,
    xs: &[u64],
    constant: &EulerConstant,
) -> Result<Vec<AveragingRow>, Error> {
    if constant.k != k {
        return Err(Error::Domain(
            "constant was computed for a different k".into(),
        ));
    }
    if xs.iter().any(|&x| x < 3) {
        return Err(Error::Domain("every x must be at least 3".into()));
    }
    let sums = partial_sums(k, xs)?;
    Ok(xs
        .iter()
        .zip(sums)
        .map(|(&x, s)| averaging_row(k, x, s, constant.value))
        .collect())
}
