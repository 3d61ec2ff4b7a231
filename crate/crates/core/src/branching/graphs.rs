use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{BranchingGraph, GtLike};
use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, QRatio, Rational};
use crate::signature::{bracket, covers_below, interlace, partitions_of, signatures_in_box, Partition, Signature};
use crate::symfunc::{dim_classical, qdim, syt_count};

/// Sign of the inverse temperature. `Minus` is the link of the quantum
/// unitary groups; `Plus` is the same link with `q` replaced by `q^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BetaSign {
    Minus,
    Plus,
}

impl BetaSign {
    pub fn flip(self) -> Self {
        match self {
            BetaSign::Minus => BetaSign::Plus,
            BetaSign::Plus => BetaSign::Minus,
        }
    }
}

/// Descriptor of the three graph instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    GtQ(BetaSign),
    GtClassical,
    Young,
}

impl GraphKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GraphKind::GtQ(BetaSign::Minus) => "gtq",
            GraphKind::GtQ(BetaSign::Plus) => "gtq-plus",
            GraphKind::GtClassical => "gt",
            GraphKind::Young => "young",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gtq" | "gtq-minus" => Ok(GraphKind::GtQ(BetaSign::Minus)),
            "gtq-plus" => Ok(GraphKind::GtQ(BetaSign::Plus)),
            "gt" | "gt-classical" => Ok(GraphKind::GtClassical),
            "young" => Ok(GraphKind::Young),
            other => Err(Error::Parse(format!("unknown graph kind {other:?}"))),
        }
    }
}

/// The Gelfand-Tsetlin graph with symbolic-`q` link values.
///
/// For `lam ≻ mu` with `mu` of length `n`, the quantum link is
/// `q^{n|lam| - (n+1)|mu|} qdim(mu) / qdim(lam)` (`q -> q^{-1}` for
/// `BetaSign::Plus`); the classical link is `dim(mu) / dim(lam)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GtGraph {
    kind: GraphKind,
}

impl GtGraph {
    pub fn quantum(beta: BetaSign) -> Self {
        Self {
            kind: GraphKind::GtQ(beta),
        }
    }

    pub fn classical() -> Self {
        Self {
            kind: GraphKind::GtClassical,
        }
    }

    pub fn from_kind(kind: GraphKind) -> Result<Self> {
        match kind {
            GraphKind::Young => Err(Error::GraphMismatch("the Young graph has no GT link".into())),
            kind => Ok(Self { kind }),
        }
    }

    pub fn beta(&self) -> Option<BetaSign> {
        match self.kind {
            GraphKind::GtQ(b) => Some(b),
            _ => None,
        }
    }

    /// The same graph with the opposite inverse-temperature sign.
    pub fn reversed(&self) -> Self {
        match self.kind {
            GraphKind::GtQ(b) => Self::quantum(b.flip()),
            _ => *self,
        }
    }

    /// Exponent of `q` in the link from `lam` (length `n+1`) to `mu`.
    pub fn link_exponent(&self, lam: &Signature, mu: &Signature) -> i64 {
        let n = mu.level() as i64;
        self.phase(n * lam.size() - (n + 1) * mu.size())
    }

    /// `qdim(lam)`, or the Weyl dimension as a constant on the classical graph.
    pub fn dim(&self, lam: &Signature) -> LaurentPoly {
        match self.kind {
            GraphKind::GtClassical => LaurentPoly::constant(Rational::from_integer(dim_classical(lam))),
            _ => qdim(lam),
        }
    }

    /// `q^{[mu,nu]} dim(mu) dim(nu) / dim(lam)`: the weight of the pair
    /// `(mu, nu)` in the product of central functions evaluated at `lam`.
    pub fn splice_weight(&self, lam: &Signature, mu: &Signature, nu: &Signature) -> QRatio {
        let num = &self.dim(mu) * &self.dim(nu);
        let num = num.scale(&Rational::one(), self.phase(bracket(mu, nu)));
        QRatio::new(num, self.dim(lam)).expect("dimensions are nonzero")
    }

    /// `q^e` read through the sign convention of this graph.
    pub fn phase(&self, e: i64) -> i64 {
        match self.kind {
            GraphKind::GtQ(BetaSign::Minus) => e,
            GraphKind::GtQ(BetaSign::Plus) => -e,
            _ => 0,
        }
    }

    /// `sum_{mu ≺ lam} q^{e(lam,mu)} qdim(mu) - qdim(lam)`: the row-sum defect
    /// with denominators cleared. Zero iff the row is stochastic for every `q`.
    pub fn row_defect(&self, lam: &Signature) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for mu in covers_below(lam) {
            let term = self.dim(&mu).scale(&Rational::one(), self.link_exponent(lam, &mu));
            acc = &acc + &term;
        }
        &acc - &self.dim(lam)
    }

    /// Specializes the link at a rational `q`.
    pub fn at(self, q: Rational) -> AtQ<GtGraph> {
        AtQ { graph: self, q }
    }
}

fn level_check(upper: usize, lower: usize) -> Result<()> {
    if upper != lower + 1 {
        return Err(Error::LevelMismatch {
            expected: lower + 1,
            got: upper,
        });
    }
    Ok(())
}

impl BranchingGraph for GtGraph {
    type Vertex = Signature;
    type Scalar = QRatio;

    fn kind(&self) -> GraphKind {
        self.kind
    }

    fn level_of(&self, v: &Signature) -> usize {
        v.level()
    }

    fn covers_below(&self, v: &Signature) -> Vec<Signature> {
        covers_below(v)
    }

    fn link(&self, upper: &Signature, lower: &Signature) -> Result<QRatio> {
        level_check(upper.level(), lower.level())?;
        if !interlace(upper, lower)? {
            return Ok(QRatio::zero());
        }
        let num = self
            .dim(lower)
            .scale(&Rational::one(), self.link_exponent(upper, lower));
        QRatio::new(num, self.dim(upper))
    }

    fn root(&self, level: usize) -> Option<Signature> {
        Some(Signature::zero(level))
    }

    fn window(&self, level: usize, part_bound: i64) -> Vec<Signature> {
        signatures_in_box(level, -part_bound, part_bound)
    }

    fn q(&self) -> Option<Rational> {
        None
    }
}

/// A symbolic graph with its link evaluated at a fixed rational `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtQ<G> {
    graph: G,
    q: Rational,
}

impl<G> AtQ<G> {
    pub fn inner(&self) -> &G {
        &self.graph
    }

    pub fn q_value(&self) -> &Rational {
        &self.q
    }
}

impl AtQ<GtGraph> {
    pub fn new(graph: GtGraph, q: Rational) -> Result<Self> {
        if q <= Rational::zero() {
            return Err(Error::Invalid(format!("q must be positive, got {q}")));
        }
        Ok(Self { graph, q })
    }

    pub fn reversed(&self) -> Self {
        Self {
            graph: self.graph.reversed(),
            q: self.q.clone(),
        }
    }

    /// Quantum (or classical) dimension at this `q`.
    pub fn dim_at(&self, lam: &Signature) -> Rational {
        self.graph.dim(lam).eval(&self.q).expect("q is nonzero")
    }

    pub fn splice_weight(&self, lam: &Signature, mu: &Signature, nu: &Signature) -> Rational {
        self.graph
            .splice_weight(lam, mu, nu)
            .eval(&self.q)
            .expect("q is nonzero")
    }

    /// The `q` that enters torus evaluations: `q` for `BetaSign::Minus`,
    /// `1/q` for `BetaSign::Plus`, `1` for the classical graph.
    pub fn effective_q(&self) -> Rational {
        match self.graph.kind {
            GraphKind::GtQ(BetaSign::Minus) => self.q.clone(),
            GraphKind::GtQ(BetaSign::Plus) => self.q.recip(),
            _ => Rational::one(),
        }
    }
}

impl<G> BranchingGraph for AtQ<G>
where
    G: BranchingGraph<Scalar = QRatio>,
{
    type Vertex = G::Vertex;
    type Scalar = Rational;

    fn kind(&self) -> GraphKind {
        self.graph.kind()
    }

    fn level_of(&self, v: &G::Vertex) -> usize {
        self.graph.level_of(v)
    }

    fn covers_below(&self, v: &G::Vertex) -> Vec<G::Vertex> {
        self.graph.covers_below(v)
    }

    fn link(&self, upper: &G::Vertex, lower: &G::Vertex) -> Result<Rational> {
        self.graph.link(upper, lower)?.eval(&self.q)
    }

    fn root(&self, level: usize) -> Option<G::Vertex> {
        self.graph.root(level)
    }

    fn window(&self, level: usize, part_bound: i64) -> Vec<G::Vertex> {
        self.graph.window(level, part_bound)
    }

    fn q(&self) -> Option<Rational> {
        Some(self.q.clone())
    }
}

/// The Young graph: partitions graded by size, with link
/// `dim(mu)/dim(lam)` (standard-tableau counts) for `mu ⊂ lam`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct YoungGraph;

impl BranchingGraph for YoungGraph {
    type Vertex = Partition;
    type Scalar = Rational;

    fn kind(&self) -> GraphKind {
        GraphKind::Young
    }

    fn level_of(&self, v: &Partition) -> usize {
        v.size()
    }

    fn covers_below(&self, v: &Partition) -> Vec<Partition> {
        v.remove_box()
    }

    fn link(&self, upper: &Partition, lower: &Partition) -> Result<Rational> {
        level_check(upper.size(), lower.size())?;
        if !upper.contains(lower) {
            return Ok(Rational::zero());
        }
        Ok(Rational::new(syt_count(lower), syt_count(upper)))
    }

    fn root(&self, level: usize) -> Option<Partition> {
        (level == 0).then(Partition::empty)
    }

    fn window(&self, level: usize, part_bound: i64) -> Vec<Partition> {
        partitions_of(level)
            .into_iter()
            .filter(|p| p.part(0) <= part_bound)
            .collect()
    }

    fn q(&self) -> Option<Rational> {
        None
    }
}

impl GtLike for GtGraph {
    fn symbolic(&self) -> &GtGraph {
        self
    }

    fn dim_value(&self, lam: &Signature) -> QRatio {
        QRatio::from_poly(self.dim(lam))
    }

    fn splice_weight(&self, lam: &Signature, mu: &Signature, nu: &Signature) -> QRatio {
        GtGraph::splice_weight(self, lam, mu, nu)
    }

    fn reversed(&self) -> Self {
        GtGraph::reversed(self)
    }
}

impl GtLike for AtQ<GtGraph> {
    fn symbolic(&self) -> &GtGraph {
        &self.graph
    }

    fn dim_value(&self, lam: &Signature) -> Rational {
        self.dim_at(lam)
    }

    fn splice_weight(&self, lam: &Signature, mu: &Signature, nu: &Signature) -> Rational {
        AtQ::splice_weight(self, lam, mu, nu)
    }

    fn reversed(&self) -> Self {
        AtQ::reversed(self)
    }
}
