//! Torus restrictions of quantized character functions, i.e. normalized
//! q-Schur generating functions of level distributions, and the coherence,
//! multiplicativity and adjoint checks built on them.

use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;

use crate::branching::{AtQ, GtGraph, L1Vector};
use crate::error::{Error, Result};
use crate::harmonic::{adjoint_system, character_product, CoherentSystem};
use crate::scalar::{to_f64, Rational};
use crate::signature::Signature;
use crate::symfunc::schur_eval;

/// Modulus tolerance for torus coordinates.
pub const MODULUS_TOL: f64 = 1e-12;

/// Default tolerance of the floating-point checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// A point of the diagonal torus. Points whose coordinates are all `±1`
/// also carry an exact form.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    coords: Vec<Complex64>,
    signs: Option<Vec<i8>>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        for (i, t) in coords.iter().enumerate() {
            if (t.norm() - 1.0).abs() > MODULUS_TOL {
                return Err(Error::Invalid(format!(
                    "coordinate {i} = {t} is not on the unit circle"
                )));
            }
        }
        let signs = coords
            .iter()
            .map(|t| match (t.re, t.im) {
                (re, im) if re == 1.0 && im == 0.0 => Some(1),
                (re, im) if re == -1.0 && im == 0.0 => Some(-1),
                _ => None,
            })
            .collect();
        Ok(Self { coords, signs })
    }

    /// An exact point with coordinates in `{1, -1}`.
    pub fn signs(signs: Vec<i8>) -> Result<Self> {
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::Invalid(format!("exact torus coordinates must be ±1, got {s}")));
        }
        let coords = signs.iter().map(|&s| Complex64::new(f64::from(s), 0.0)).collect();
        Ok(Self {
            coords,
            signs: Some(signs),
        })
    }

    pub fn ones(n: usize) -> Self {
        Self::signs(vec![1; n]).expect("ones are signs")
    }

    pub fn from_angles(angles: &[f64]) -> Self {
        Self {
            coords: angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect(),
            signs: None,
        }
    }

    /// Independent uniform angles.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let angles: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * std::f64::consts::TAU).collect();
        Self::from_angles(&angles)
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn exact_signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    /// `(t_1, ..., t_n, 1)`.
    pub fn extended_by_one(&self) -> Self {
        let mut coords = self.coords.clone();
        coords.push(Complex64::one());
        let signs = self.signs.clone().map(|mut s| {
            s.push(1);
            s
        });
        Self { coords, signs }
    }

    pub fn conj(&self) -> Self {
        Self {
            coords: self.coords.iter().map(Complex64::conj).collect(),
            signs: self.signs.clone(),
        }
    }
}

/// Comma-separated complex numbers such as `1,0.6+0.8i`.
impl FromStr for TorusPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(Vec::new());
        }
        let coords = s
            .split(',')
            .map(|c| {
                let c = c.trim();
                Complex64::from_str(c).map_err(|_| Error::Parse(format!("bad complex number {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }
}

fn check_q(g: &AtQ<GtGraph>) -> Result<()> {
    let q = g.q_value();
    if *q <= Rational::zero() || *q > Rational::one() {
        return Err(Error::Invalid(format!("q must lie in (0,1], got {q}")));
    }
    Ok(())
}

fn check_input(g: &AtQ<GtGraph>, nu: &L1Vector<Signature, Rational>, len: usize) -> Result<()> {
    check_q(g)?;
    if !nu.is_probability() {
        return Err(Error::NotProbability(format!(
            "level-{} vector has mass {}",
            nu.level(),
            nu.mass()
        )));
    }
    if len != nu.level() {
        return Err(Error::LengthMismatch(format!(
            "point of length {len} for level {}",
            nu.level()
        )));
    }
    Ok(())
}

/// `(1, Q, ..., Q^{n-1})` with `Q = q^2` for the graph's effective `q`.
fn principal_geometric(g: &AtQ<GtGraph>, n: usize) -> Vec<Rational> {
    let big_q = g.effective_q() * g.effective_q();
    let mut out = Vec::with_capacity(n);
    let mut cur = Rational::one();
    for _ in 0..n {
        out.push(cur.clone());
        cur *= &big_q;
    }
    out
}

fn normalizer(lam: &Signature, geometric: &[Rational]) -> Result<Rational> {
    schur_eval(lam, geometric)
}

/// `sum_lam nu(lam) s_lam(t_1, Q t_2, ..., Q^{n-1} t_n) / s_lam(1, Q, ..., Q^{n-1})`
/// with `Q = q^2` (`q^{-2}` on the graph with the opposite sign).
pub fn char_restriction(g: &AtQ<GtGraph>, nu: &L1Vector<Signature, Rational>, t: &TorusPoint) -> Result<Complex64> {
    check_input(g, nu, t.len())?;
    let geometric = principal_geometric(g, t.len());
    let points: Vec<Complex64> = t.coords.iter().zip(&geometric).map(|(ti, w)| ti * to_f64(w)).collect();
    let mut acc = Complex64::zero();
    for (lam, w) in nu.iter() {
        let num: Complex64 = schur_eval(lam, &points)?;
        let den = to_f64(&normalizer(lam, &geometric)?);
        acc += num * (to_f64(w) / den);
    }
    Ok(acc)
}

/// The same sum in exact arithmetic at a point with `±1` coordinates.
pub fn char_restriction_exact(
    g: &AtQ<GtGraph>,
    nu: &L1Vector<Signature, Rational>,
    t: &TorusPoint,
) -> Result<Rational> {
    let signs = t
        .exact_signs()
        .ok_or_else(|| Error::Invalid("exact evaluation needs a point with ±1 coordinates".into()))?;
    check_input(g, nu, t.len())?;
    let geometric = principal_geometric(g, t.len());
    let points: Vec<Rational> = signs
        .iter()
        .zip(&geometric)
        .map(|(&s, w)| w * Rational::from_integer(i64::from(s).into()))
        .collect();
    let mut acc = Rational::zero();
    for (lam, w) in nu.iter() {
        acc += w * schur_eval(lam, &points)? / normalizer(lam, &geometric)?;
    }
    Ok(acc)
}

/// Gorin's generating function `sum_lam nu(lam) s_lam(x) / s_lam(1, Q, ..., Q^{n-1})`,
/// `Q = q^2`. Its value at `(t_1, Q t_2, ..., Q^{n-1} t_n)` is the torus
/// restriction; it equals one at the normalization point `(1, Q, ..., Q^{n-1})`.
pub fn gorin_generating_function(
    g: &AtQ<GtGraph>,
    nu: &L1Vector<Signature, Rational>,
    x: &[Complex64],
) -> Result<Complex64> {
    check_input(g, nu, x.len())?;
    let geometric = principal_geometric(g, x.len());
    let mut acc = Complex64::zero();
    for (lam, w) in nu.iter() {
        let num: Complex64 = schur_eval(lam, x)?;
        acc += num * (to_f64(w) / to_f64(&normalizer(lam, &geometric)?));
    }
    Ok(acc)
}

/// The normalization point `(1, Q, ..., Q^{n-1})` of [`gorin_generating_function`].
pub fn gorin_normalization_point(g: &AtQ<GtGraph>, n: usize) -> Vec<Complex64> {
    principal_geometric(g, n)
        .iter()
        .map(|w| Complex64::new(to_f64(w), 0.0))
        .collect()
}

/// `(t_1, Q t_2, ..., Q^{n-1} t_n)`.
pub fn gorin_substitution(g: &AtQ<GtGraph>, t: &TorusPoint) -> Vec<Complex64> {
    let geometric = principal_geometric(g, t.len());
    t.coords.iter().zip(&geometric).map(|(ti, w)| ti * to_f64(w)).collect()
}

/// Outcome of a floating-point identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct CharVerdict {
    pub left: Complex64,
    pub right: Complex64,
    pub defect: f64,
    pub tol: f64,
    /// Set when both sides were also compared in exact arithmetic.
    pub exact_equal: Option<bool>,
}

impl CharVerdict {
    fn new(left: Complex64, right: Complex64, tol: f64) -> Self {
        Self {
            left,
            right,
            defect: (left - right).norm(),
            tol,
            exact_equal: None,
        }
    }

    pub fn passes(&self) -> bool {
        self.exact_equal.unwrap_or(true) && self.defect <= self.tol
    }
}

fn exact_pair(left: Rational, right: Rational, tol: f64) -> CharVerdict {
    let mut v = CharVerdict::new(
        Complex64::new(to_f64(&left), 0.0),
        Complex64::new(to_f64(&right), 0.0),
        tol,
    );
    v.exact_equal = Some(left == right);
    v
}

/// Compares the restriction of level `n+1` at `(t, 1)` with level `n` at `t`.
pub fn coherence_check(nu: &CoherentSystem<AtQ<GtGraph>>, n: usize, t: &TorusPoint, tol: f64) -> Result<CharVerdict> {
    let g = nu.graph();
    let (upper, lower) = (nu.level(n + 1)?, nu.level(n)?);
    let up = t.extended_by_one();
    if t.exact_signs().is_some() {
        return Ok(exact_pair(
            char_restriction_exact(g, upper, &up)?,
            char_restriction_exact(g, lower, t)?,
            tol,
        ));
    }
    Ok(CharVerdict::new(
        char_restriction(g, upper, &up)?,
        char_restriction(g, lower, t)?,
        tol,
    ))
}

/// Compares the restriction of the product system with the product of the
/// restrictions at level `n`.
pub fn multiplicativity_check(
    nu1: &CoherentSystem<AtQ<GtGraph>>,
    nu2: &CoherentSystem<AtQ<GtGraph>>,
    n: usize,
    t: &TorusPoint,
    tol: f64,
) -> Result<CharVerdict> {
    let prod = character_product(nu1, nu2, n)?;
    let g = nu1.graph();
    let (a, b) = (nu1.level(n)?, nu2.level(n)?);
    if t.exact_signs().is_some() {
        return Ok(exact_pair(
            char_restriction_exact(g, &prod, t)?,
            char_restriction_exact(g, a, t)? * char_restriction_exact(g, b, t)?,
            tol,
        ));
    }
    Ok(CharVerdict::new(
        char_restriction(g, &prod, t)?,
        char_restriction(g, a, t)? * char_restriction(g, b, t)?,
        tol,
    ))
}

/// Compares the restriction of the adjoint system (on the graph with the
/// opposite sign, hence `q^{-1}` specializations) at `t` with the complex
/// conjugate of the original restriction at `t`.
pub fn adjoint_check(nu: &CoherentSystem<AtQ<GtGraph>>, n: usize, t: &TorusPoint, tol: f64) -> Result<CharVerdict> {
    let adj = adjoint_system(nu)?;
    let (g, ga) = (nu.graph(), adj.graph());
    let (v, va) = (nu.level(n)?, adj.level(n)?);
    if t.exact_signs().is_some() {
        return Ok(exact_pair(
            char_restriction_exact(ga, va, t)?,
            char_restriction_exact(g, v, t)?,
            tol,
        ));
    }
    Ok(CharVerdict::new(
        char_restriction(ga, va, t)?,
        char_restriction(g, v, t)?.conj(),
        tol,
    ))
}
