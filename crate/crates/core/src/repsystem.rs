//! The graded representation ring: products in the normalized basis
//! `zhat_lam = qdim(lam)^{-1} z_lam`, pointwise products of graded central
//! functions, the module action on representatives, and bounded equality and
//! positivity checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::branching::{theta_chain, AtQ, BetaSign, CentralFunction, GraphKind, GtGraph, GtLike};
use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, QRatio, Rational, Scalar};
use crate::signature::{bracket, Signature};
use crate::symfunc::{splice_products_above, splice_terms};

/// How the ring product is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingConfig {
    pub kind: GraphKind,
    /// Products are computed modulo the span of signatures with a part below
    /// this floor. `None` uses `min(0, smallest part of either factor)`.
    pub floor: Option<i64>,
}

impl RingConfig {
    pub fn quantum() -> Self {
        Self {
            kind: GraphKind::GtQ(BetaSign::Minus),
            floor: None,
        }
    }

    pub fn classical() -> Self {
        Self {
            kind: GraphKind::GtClassical,
            floor: None,
        }
    }

    pub fn with_floor(self, floor: i64) -> Self {
        Self {
            floor: Some(floor),
            ..self
        }
    }

    fn phase(&self, e: i64) -> Result<i64> {
        match self.kind {
            GraphKind::GtQ(BetaSign::Minus) => Ok(e),
            GraphKind::GtQ(BetaSign::Plus) => Ok(-e),
            GraphKind::GtClassical => Ok(0),
            GraphKind::Young => Err(Error::Unsupported("ring product on the Young graph".into())),
        }
    }
}

/// A finite combination of normalized basis vectors `zhat_lam`; the level of
/// each vector is the length of its signature.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZhatElement {
    terms: BTreeMap<Signature, LaurentPoly>,
}

impl ZhatElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `zhat_∅` at level 0.
    pub fn one() -> Self {
        Self::basis(Signature::empty())
    }

    pub fn basis(lam: Signature) -> Self {
        Self::from_terms([(lam, LaurentPoly::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Signature, LaurentPoly)>) -> Self {
        let mut out = Self::zero();
        for (lam, c) in terms {
            out.add_term(lam, c);
        }
        out
    }

    pub fn add_term(&mut self, lam: Signature, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&lam) {
            Some(cur) => &cur + &c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(lam, next);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Signature, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, lam: &Signature) -> LaurentPoly {
        self.terms.get(lam).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, a)| (l.clone(), a * c)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn min_part(&self) -> Option<i64> {
        self.terms.keys().filter_map(Signature::min_part).min()
    }

    /// Coefficients evaluated at `q = 1`.
    pub fn at_q_one(&self) -> Result<BTreeMap<Signature, Rational>> {
        self.terms
            .iter()
            .map(|(l, c)| Ok((l.clone(), c.eval(&Rational::one())?)))
            .collect()
    }
}

impl fmt::Display for ZhatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*zhat{lam}")?;
        }
        Ok(())
    }
}

/// `zhat_mu * zhat_nu = sum_lam c(lam|mu,nu) q^{[mu,nu]} zhat_lam`, extended
/// bilinearly.
pub fn zhat_mul(x: &ZhatElement, y: &ZhatElement, cfg: &RingConfig) -> Result<ZhatElement> {
    let floor = cfg
        .floor
        .unwrap_or_else(|| x.min_part().into_iter().chain(y.min_part()).fold(0, i64::min));
    let mut out = ZhatElement::zero();
    for (mu, a) in &x.terms {
        for (nu, b) in &y.terms {
            let ab = a * b;
            let phase = cfg.phase(bracket(mu, nu))?;
            for (lam, c) in splice_products_above(mu, nu, floor) {
                out.add_term(lam, ab.scale(&Rational::from_integer(c.into()), phase));
            }
        }
    }
    Ok(out)
}

type SpliceKey = (Signature, usize);
type SpliceList = Arc<Vec<(Signature, Signature, u64)>>;

fn cached_splice_terms(lam: &Signature, m: usize) -> Result<SpliceList> {
    static CACHE: OnceLock<Mutex<HashMap<SpliceKey, SpliceList>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lam.clone(), m);
    if let Some(hit) = cache.lock().expect("splice cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let terms = Arc::new(splice_terms(lam, m)?);
    cache.lock().expect("splice cache poisoned").insert(key, terms.clone());
    Ok(terms)
}

/// A graded central function: finitely many levels, each a central function.
#[derive(Clone, Debug)]
pub struct SigmaElement<S> {
    parts: BTreeMap<usize, CentralFunction<Signature, S>>,
}

impl<S: Scalar> SigmaElement<S> {
    pub fn zero() -> Self {
        Self { parts: BTreeMap::new() }
    }

    /// The unit `1_0`.
    pub fn one() -> Self {
        Self::single(CentralFunction::constant(0, S::one()))
    }

    /// The constant function `1_n` at level `n`.
    pub fn unit_at(level: usize) -> Self {
        Self::single(CentralFunction::constant(level, S::one()))
    }

    pub fn single(f: CentralFunction<Signature, S>) -> Self {
        Self {
            parts: BTreeMap::from([(f.level(), f)]),
        }
    }

    pub fn with(mut self, f: CentralFunction<Signature, S>) -> Result<Self> {
        let level = f.level();
        let next = match self.parts.remove(&level) {
            Some(cur) => cur.plus(&f)?,
            None => f,
        };
        self.parts.insert(level, next);
        Ok(self)
    }

    pub fn component(&self, level: usize) -> Option<&CentralFunction<Signature, S>> {
        self.parts.get(&level)
    }

    pub fn levels(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.keys().copied()
    }

    /// Value of the level-`lam.level()` component at `lam`.
    pub fn eval(&self, lam: &Signature) -> S {
        self.parts.get(&lam.level()).map_or_else(S::zero, |f| f.eval(lam))
    }
}

fn splice_sum<G, F, H>(g: &G, lam: &Signature, m: usize, f: F, h: H) -> Result<G::Scalar>
where
    G: GtLike,
    F: Fn(&Signature) -> G::Scalar,
    H: Fn(&Signature) -> G::Scalar,
{
    let mut acc = G::Scalar::zero();
    for (mu, nu, c) in cached_splice_terms(lam, m)?.iter() {
        let a = f(mu);
        if a.is_zero() {
            continue;
        }
        let b = h(nu);
        if b.is_zero() {
            continue;
        }
        let c = G::Scalar::from_rational(&Rational::from_integer((*c).into()));
        acc = acc + c * g.splice_weight(lam, mu, nu) * a * b;
    }
    Ok(acc)
}

/// Value at `lam` of the product `x * y`: the sum over `k + l = level(lam)`
/// of the spliced products of the level-`k` part of `x` and the level-`l`
/// part of `y`.
pub fn sigma_eval_product<G: GtLike>(
    g: &G,
    x: &SigmaElement<G::Scalar>,
    y: &SigmaElement<G::Scalar>,
    lam: &Signature,
) -> Result<G::Scalar> {
    let n = lam.level();
    let mut acc = G::Scalar::zero();
    for (&k, f) in &x.parts {
        if k > n {
            continue;
        }
        if let Some(h) = y.parts.get(&(n - k)) {
            acc = acc + splice_sum(g, lam, k, |mu| f.eval(mu), |nu| h.eval(nu))?;
        }
    }
    Ok(acc)
}

/// The product `x * y` restricted to `level`, as a lazy central function.
pub fn sigma_product_at<G: GtLike>(
    g: &G,
    x: &SigmaElement<G::Scalar>,
    y: &SigmaElement<G::Scalar>,
    level: usize,
) -> CentralFunction<Signature, G::Scalar> {
    let (g, x, y) = (g.clone(), x.clone(), y.clone());
    CentralFunction::new(level, move |lam| {
        sigma_eval_product(&g, &x, &y, lam).unwrap_or_else(|_| G::Scalar::zero())
    })
}

/// A representative `(n, f)` of a class in the representation system: `f`
/// at level `n`, identified with every `Theta`-push of itself.
#[derive(Clone, Debug)]
pub struct SystemElement<S> {
    pub f: CentralFunction<Signature, S>,
}

impl<S: Scalar> SystemElement<S> {
    pub fn new(f: CentralFunction<Signature, S>) -> Self {
        Self { f }
    }

    /// The unit class, represented by `1` at level 0.
    pub fn unit() -> Self {
        Self::new(CentralFunction::constant(0, S::one()))
    }

    pub fn level(&self) -> usize {
        self.f.level()
    }

    pub fn eval(&self, lam: &Signature) -> S {
        self.f.eval(lam)
    }

    pub fn negated(&self) -> Self {
        Self::new(self.f.scaled(-S::one()))
    }
}

/// `f . s`: the representative at level `m + n` whose value at `lam` is the
/// splice of `f` (level `m`) and `s.f` (level `n`).
pub fn module_action<G: GtLike>(
    g: &G,
    f: &CentralFunction<Signature, G::Scalar>,
    s: &SystemElement<G::Scalar>,
) -> SystemElement<G::Scalar> {
    let level = f.level() + s.level();
    let m = f.level();
    let (g, f, h) = (g.clone(), f.clone(), s.f.clone());
    SystemElement::new(CentralFunction::new(level, move |lam| {
        splice_sum(&g, lam, m, |mu| f.eval(mu), |nu| h.eval(nu)).unwrap_or_else(|_| G::Scalar::zero())
    }))
}

/// Representative of the same class at level `target` via iterated `Theta`.
pub fn push_to_level<G: GtLike>(
    g: &G,
    s: &SystemElement<G::Scalar>,
    target: usize,
) -> Result<SystemElement<G::Scalar>> {
    Ok(SystemElement::new(theta_chain(g, &s.f, target)?))
}

/// Result of a bounded comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum WindowVerdict<S> {
    AgreeOnWindow,
    Differ { witness: Signature, left: S, right: S },
}

impl<S> WindowVerdict<S> {
    pub fn agrees(&self) -> bool {
        matches!(self, WindowVerdict::AgreeOnWindow)
    }
}

/// Compares the level-`target` pushes of `x` and `y` at every window vertex.
/// A `Differ` verdict refutes equality of the classes.
pub fn equal_on_window<G: GtLike>(
    g: &G,
    x: &SystemElement<G::Scalar>,
    y: &SystemElement<G::Scalar>,
    target: usize,
    window: &[Signature],
) -> Result<WindowVerdict<G::Scalar>> {
    let px = push_to_level(g, x, target)?;
    let py = push_to_level(g, y, target)?;
    for lam in window {
        if lam.level() != target {
            return Err(Error::LevelMismatch {
                expected: target,
                got: lam.level(),
            });
        }
        let (a, b) = (px.eval(lam), py.eval(lam));
        if a != b {
            return Ok(WindowVerdict::Differ {
                witness: lam.clone(),
                left: a,
                right: b,
            });
        }
    }
    Ok(WindowVerdict::AgreeOnWindow)
}

/// Result of a bounded positivity check.
#[derive(Clone, Debug, PartialEq)]
pub enum PositivityVerdict {
    NonnegativeOnWindow,
    Negative { witness: Signature, value: Rational },
}

impl PositivityVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, PositivityVerdict::NonnegativeOnWindow)
    }
}

/// Checks that the level-`target` push of `s` is nonnegative on the window
/// at the graph's numeric `q`, which must lie in `(0, 1]`.
pub fn nonneg_on_window(
    g: &AtQ<GtGraph>,
    s: &SystemElement<Rational>,
    target: usize,
    window: &[Signature],
) -> Result<PositivityVerdict> {
    let q = g.q_value();
    if *q <= Rational::zero() || *q > Rational::one() {
        return Err(Error::Invalid(format!("q must lie in (0,1], got {q}")));
    }
    let pushed = push_to_level(g, s, target)?;
    for lam in window {
        let v = pushed.eval(lam);
        if v < Rational::zero() {
            return Ok(PositivityVerdict::Negative {
                witness: lam.clone(),
                value: v,
            });
        }
    }
    Ok(PositivityVerdict::NonnegativeOnWindow)
}

/// Central function of `x` on the symbolic graph: `zhat_lam` is the
/// indicator of `lam` divided by `dim(lam)`.
pub fn zhat_to_sigma(g: &GtGraph, x: &ZhatElement) -> Result<SigmaElement<QRatio>> {
    let mut levels: BTreeMap<usize, BTreeMap<Signature, QRatio>> = BTreeMap::new();
    for (lam, c) in x.terms() {
        let v = QRatio::new(c.clone(), g.dim(lam))?;
        levels.entry(lam.level()).or_default().insert(lam.clone(), v);
    }
    let mut out = SigmaElement::zero();
    for (level, values) in levels {
        out = out.with(CentralFunction::from_map(level, values))?;
    }
    Ok(out)
}
