use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{parse_rational, Rational, Scalar};
use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with rational coefficients.
///
/// Stored sparsely as exponent -> coefficient; zero coefficients are never
/// stored, so the empty map is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, e))` if the polynomial is the single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// Multiplies by `c q^exp`.
    pub fn scale(&self, c: &Rational, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (e + exp, a * c)).collect(),
        }
    }

    /// The substitution `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_q()
    }

    pub fn coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if q0.is_zero() {
            if self.min_exp().unwrap_or(0) < 0 {
                return Err(Error::ZeroBase);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * q0.pow(*e as i32);
        }
        Ok(acc)
    }
}

/// Exact substitution `q = q0`.
pub fn laurent_eval(a: &LaurentPoly, q0: &Rational) -> Result<Rational> {
    a.eval(q0)
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::q_pow(0)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Scalar for LaurentPoly {
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    /// Division is only exact by a monomial.
    fn checked_div(&self, other: &Self) -> Option<Self> {
        let (c, e) = other.as_monomial()?;
        Some(self.scale(&c.recip(), -e))
    }

    fn nonnegative(&self) -> Option<bool> {
        if self.coeffs_nonnegative() {
            Some(true)
        } else if self.terms.values().all(|c| c.is_negative()) {
            Some(false)
        } else {
            None
        }
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        s.parse()
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &Rational, e: i64) -> fmt::Result {
    if e == 0 {
        return write!(f, "{c}");
    }
    if c.is_one() {
        // bare q
    } else if *c == -Rational::one() {
        write!(f, "-")?;
    } else {
        write!(f, "{c}*")?;
    }
    if e == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{e}")
    }
}

/// Canonical text: ascending exponents, e.g. `q^-1 + q`, `3/2*q^2`, `1 - q^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                fmt_term(f, c, *e)?;
            } else if c.is_negative() {
                write!(f, " - ")?;
                fmt_term(f, &-c.clone(), *e)?;
            } else {
                write!(f, " + ")?;
                fmt_term(f, c, *e)?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        // split into signed terms; a sign directly after '^' belongs to the exponent
        let mut chunks: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('{')) {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        chunks.push(cur);

        let mut poly = LaurentPoly::zero();
        for chunk in chunks {
            let (coeff, exp) = parse_term(&chunk)?;
            poly.add_term(exp, coeff);
        }
        Ok(poly)
    }
}

fn parse_term(term: &str) -> Result<(Rational, i64)> {
    let bad = || Error::Parse(format!("bad Laurent term {term:?}"));
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-Rational::one(), rest),
        None => (Rational::one(), term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    match body.find('q') {
        None => Ok((sign * parse_rational(body)?, 0)),
        Some(pos) => {
            let coeff_part = body[..pos].trim_end_matches('*');
            let coeff = if coeff_part.is_empty() {
                Rational::one()
            } else {
                parse_rational(coeff_part)?
            };
            let rest = &body[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                let e = rest.strip_prefix('^').ok_or_else(bad)?;
                let e = e.trim_start_matches('{').trim_end_matches('}');
                e.parse::<i64>().map_err(|_| bad())?
            };
            Ok((sign * coeff, exp))
        }
    }
}
