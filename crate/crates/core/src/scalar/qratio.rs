use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Rational, Scalar};
use crate::error::{Error, Result};

/// A ratio of Laurent polynomials. Not reduced by a polynomial gcd; equality
/// is decided by cross-multiplication.
///
/// Construction applies only cheap normalizations: a zero numerator becomes
/// `0/1`, a monomial denominator is divided out, and otherwise the
/// denominator is shifted so that its lowest exponent is `0` with a positive
/// lowest coefficient.
#[derive(Clone, Debug)]
pub struct QRatio {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QRatio {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: LaurentPoly::one(),
            };
        }
        if let Some((c, e)) = den.as_monomial() {
            let inv = c.recip();
            return Self {
                num: num.scale(&inv, -e),
                den: LaurentPoly::one(),
            };
        }
        if num == den {
            return Self::one();
        }
        let lo = den.min_exp().unwrap_or(0);
        let lead = den.coeff(lo);
        let unit = if lead.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        Self {
            num: num.scale(&unit, -lo),
            den: den.scale(&unit, -lo),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    /// The polynomial this ratio equals, when the denominator is `1`.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(q0)? / d)
    }

    pub fn invert_q(&self) -> Self {
        Self::normalized(self.num.invert_q(), self.den.invert_q())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

/// Cross-multiplication equality of two ratios.
pub fn qratio_eq(a: &QRatio, b: &QRatio) -> bool {
    a == b
}

impl PartialEq for QRatio {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Zero for QRatio {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRatio {
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
}

impl Add for &QRatio {
    type Output = QRatio;

    fn add(self, rhs: &QRatio) -> QRatio {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRatio::normalized(&self.num + &rhs.num, self.den.clone());
        }
        QRatio::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &QRatio {
    type Output = QRatio;

    fn sub(self, rhs: &QRatio) -> QRatio {
        self + &(-rhs)
    }
}

impl Mul for &QRatio {
    type Output = QRatio;

    fn mul(self, rhs: &QRatio) -> QRatio {
        if self.num.is_zero() || rhs.num.is_zero() {
            return QRatio::zero();
        }
        QRatio::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &QRatio {
    type Output = QRatio;

    fn neg(self) -> QRatio {
        QRatio {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRatio {
            type Output = QRatio;
            fn $m(self, rhs: QRatio) -> QRatio {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QRatio {
    type Output = QRatio;
    fn neg(self) -> QRatio {
        -&self
    }
}

impl From<LaurentPoly> for QRatio {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Scalar for QRatio {
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(r.clone()))
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        let inv = other.recip()?;
        Some(self * &inv)
    }

    /// Certified only when numerator and denominator each have coefficients
    /// of a single sign (then the sign is constant on `q > 0`).
    fn nonnegative(&self) -> Option<bool> {
        let n = self.num.nonnegative()?;
        let d = self.den.nonnegative()?;
        Some(self.num.is_zero() || n == d)
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        s.parse()
    }
}

fn fmt_part(f: &mut fmt::Formatter<'_>, p: &LaurentPoly) -> fmt::Result {
    if p.len() > 1 {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

impl fmt::Display for QRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        fmt_part(f, &self.num)?;
        write!(f, "/")?;
        fmt_part(f, &self.den)
    }
}

/// Accepts a plain Laurent polynomial or `A/B` where at least one side is
/// parenthesized, e.g. `1/(1 + q^2)` or `(q^-1 + q)/(1 + q)`.
impl FromStr for QRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.contains('(') {
            return Ok(Self::from_poly(s.parse()?));
        }
        let bytes = s.as_bytes();
        let mut depth = 0i32;
        let mut split = None;
        for (i, b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'/' if depth == 0 => {
                    let before = s[..i].trim_end();
                    let after = s[i + 1..].trim_start();
                    if before.ends_with(')') || after.starts_with('(') {
                        split = Some(i);
                    }
                }
                _ => {}
            }
        }
        let strip = |t: &str| -> Result<LaurentPoly> {
            let t = t.trim();
            let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
            t.parse()
        };
        match split {
            Some(i) => Self::new(strip(&s[..i])?, strip(&s[i + 1..])?),
            None => Ok(Self::from_poly(strip(s)?)),
        }
    }
}
