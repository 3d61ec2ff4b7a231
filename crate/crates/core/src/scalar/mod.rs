//! Exact scalars: big rationals, Laurent polynomials in `q`, and ratios of
//! Laurent polynomials.

mod laurent;
mod qratio;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use laurent::{laurent_eval, LaurentPoly};
pub use qratio::{qratio_eq, QRatio};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// The field-like operations every link and ring value needs.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn checked_div(&self, other: &Self) -> Option<Self>;

    /// `Some(sign)` when nonnegativity is certified either way, `None` when
    /// it cannot be decided exactly.
    fn nonnegative(&self) -> Option<bool>;

    fn parse_scalar(s: &str) -> Result<Self>;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }

    fn nonnegative(&self) -> Option<bool> {
        Some(!self.is_negative())
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

/// Parses `"p/r"`, `"p"` or a finite decimal such as `"0.9"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num: num_bigint::BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        let r = Rational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    s.parse::<Rational>()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: scale both down before converting
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}
