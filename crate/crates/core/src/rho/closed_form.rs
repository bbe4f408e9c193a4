//! The trigonometric closed forms for `rho(k, lambda, 2^s)`, `s <= 3`,
//! evaluated exactly in `Q(√2)`.
//!
//! Every sine and cosine argument is an integer multiple of `π/4`, so each
//! term lies in `{0, ±1, ±√2/2}`, and the half-integer powers of two are
//! `2^j` or `2^j √2`. The irrational parts cancel; that cancellation is
//! checked rather than assumed.

use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + b√2` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct QSqrt2 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt2 {
    fn rational(a: BigRational) -> Self {
        QSqrt2 {
            a,
            b: BigRational::zero(),
        }
    }

    fn int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `sin(πm/4)`.
    fn sin_quarter_pi(m: i64) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let root_half = |sign: i64| QSqrt2 {
            a: BigRational::zero(),
            b: &half * BigRational::from_integer(BigInt::from(sign)),
        };
        match m.rem_euclid(8) {
            0 | 4 => Self::int(0),
            1 | 3 => root_half(1),
            2 => Self::int(1),
            5 | 7 => root_half(-1),
            6 => Self::int(-1),
            _ => unreachable!(),
        }
    }

    /// `cos(πm/4) = sin(π(m+2)/4)`.
    fn cos_quarter_pi(m: i64) -> Self {
        Self::sin_quarter_pi(m + 2)
    }

    /// `2^(e/2)` for any integer `e`.
    fn sqrt2_pow(e: i64) -> Self {
        let whole = e.div_euclid(2);
        let p = pow2(whole);
        if e.rem_euclid(2) == 0 {
            Self::rational(p)
        } else {
            QSqrt2 {
                a: BigRational::zero(),
                b: p,
            }
        }
    }

    fn into_natural(self) -> Result<BigUint> {
        if !self.b.is_zero() {
            return Err(Error::Internal(alloc::format!(
                "closed form left an irrational part {}√2",
                self.b
            )));
        }
        if !self.a.is_integer() || self.a.is_negative() {
            return Err(Error::Internal(alloc::format!(
                "closed form evaluated to {}, not a count",
                self.a
            )));
        }
        Ok(self.a.to_integer().magnitude().clone())
    }
}

fn pow2(e: i64) -> BigRational {
    let m = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: QSqrt2) -> QSqrt2 {
        QSqrt2 {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: QSqrt2) -> QSqrt2 {
        self + (-o)
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2 {
            a: &self.a * &o.a + two * (&self.b * &o.b),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

/// Closed form for `rho(k, lambda, modulus)` with `modulus ∈ {2, 4, 8}` and
/// odd `lambda`.
pub fn closed_form_pow2(k: u32, lambda: u64, modulus: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::domain("closed_form_pow2: k must be at least 1"));
    }
    if lambda % 2 == 0 {
        return Err(Error::domain("closed_form_pow2: lambda must be odd"));
    }
    let k = k as i64;
    let s = QSqrt2::sin_quarter_pi;
    let c = QSqrt2::cos_quarter_pi;
    let two = || QSqrt2::int(2);
    let value = match (modulus, lambda % modulus) {
        (2, 1) => QSqrt2::rational(pow2(k - 1)),
        (4, l @ (1 | 3)) => {
            let osc = QSqrt2::sqrt2_pow(3 * k - 2) * s(k);
            let main = QSqrt2::rational(pow2(2 * k - 2));
            if l == 1 {
                main + osc
            } else {
                main - osc
            }
        }
        (8, l @ (1 | 3 | 5 | 7)) => {
            let main = QSqrt2::rational(pow2(k));
            let osc = QSqrt2::sqrt2_pow(k + 2) * s(k);
            let inner = match l {
                1 => main + osc + two() * s(k + 1) - two() * c(3 * k + 1),
                3 => main - osc - two() * (c(k + 1) + c(3 * (k + 1))),
                5 => main + osc - two() * s(k + 1) + two() * c(3 * k + 1),
                7 => main - osc - two() * s(3 * k + 1) + two() * c(k + 1),
                _ => unreachable!(),
            };
            QSqrt2::rational(pow2(2 * k - 3)) * inner
        }
        _ => {
            return Err(Error::domain(alloc::format!(
                "closed_form_pow2: no closed form for modulus {modulus}"
            )))
        }
    };
    value.into_natural()
}

/// `rho(k, lambda, 8)` for `lambda ∈ {1, 3, 5, 7}` from the closed forms.
pub fn trig_closed_form_rho8(k: u32, lambda: u64) -> Result<BigUint> {
    closed_form_pow2(k, lambda, 8)
}
