//! Level-graded branching graphs with exact stochastic links, and the dual
//! maps they induce on bounded functions (`theta`) and summable vectors
//! (`phi_pushdown`).

mod dot;
mod functions;
mod graphs;

use std::fmt;
use std::hash::Hash;

use num_traits::{One, Zero};

pub use dot::{export_dot, DEFAULT_VERTEX_CAP};
pub use functions::{CentralFunction, L1Vector};
pub use graphs::{AtQ, BetaSign, GraphKind, GtGraph, YoungGraph};

use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, Rational, Scalar};
use crate::signature::Signature;

/// A vertex type usable in every graph-generic routine.
pub trait Vertex: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<T: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static> Vertex for T {}

/// A level-graded graph whose downward edges carry an exact stochastic link.
pub trait BranchingGraph: Clone + Send + Sync + 'static {
    type Vertex: Vertex;
    type Scalar: Scalar;

    fn kind(&self) -> GraphKind;

    fn level_of(&self, v: &Self::Vertex) -> usize;

    /// All vertices one level down joined to `v` by an edge, sorted.
    fn covers_below(&self, v: &Self::Vertex) -> Vec<Self::Vertex>;

    /// Link value from `upper` (level `n+1`) to `lower` (level `n`); zero off
    /// the edge set.
    fn link(&self, upper: &Self::Vertex, lower: &Self::Vertex) -> Result<Self::Scalar>;

    /// The distinguished vertex at `level` that has a single cover below it
    /// (zero signature; empty partition at level 0 for Young).
    fn root(&self, level: usize) -> Option<Self::Vertex>;

    /// Vertices at `level` whose parts are bounded by `part_bound` in
    /// absolute value, sorted.
    fn window(&self, level: usize, part_bound: i64) -> Vec<Self::Vertex>;

    /// The numeric `q` the link is specialized at, if any.
    fn q(&self) -> Option<Rational>;

    /// Edge multiplicity. All instances here are multiplicity-free.
    fn multiplicity(&self, upper: &Self::Vertex, lower: &Self::Vertex) -> u32 {
        u32::from(self.covers_below(upper).contains(lower))
    }
}

/// A GT graph, symbolic or specialized, together with its dimension
/// function.
pub trait GtLike: BranchingGraph<Vertex = Signature> {
    fn symbolic(&self) -> &GtGraph;

    /// `qdim(lam)` (Weyl dimension on the classical graph) as a scalar.
    fn dim_value(&self, lam: &Signature) -> Self::Scalar;

    /// `q^{[mu,nu]} dim(mu) dim(nu) / dim(lam)`.
    fn splice_weight(&self, lam: &Signature, mu: &Signature, nu: &Signature) -> Self::Scalar;

    /// The same graph with the opposite inverse-temperature sign.
    fn reversed(&self) -> Self;
}

/// Link value `kappa(upper, lower)`.
pub fn link<G: BranchingGraph>(g: &G, upper: &G::Vertex, lower: &G::Vertex) -> Result<G::Scalar> {
    g.link(upper, lower)
}

/// Outcome of a row-sum check.
#[derive(Clone, Debug, PartialEq)]
pub struct RowVerdict<S> {
    pub row_sum: S,
    pub defect: S,
}

impl<S: Scalar> RowVerdict<S> {
    pub fn pass(&self) -> bool {
        self.defect.is_zero()
    }
}

/// Checks that the row of `lam` sums to one.
pub fn check_stochastic_row<G: BranchingGraph>(g: &G, lam: &G::Vertex) -> Result<RowVerdict<G::Scalar>> {
    if g.level_of(lam) == 0 {
        return Err(Error::Invalid("level-0 vertices have no row".into()));
    }
    let mut sum = G::Scalar::zero();
    for mu in g.covers_below(lam) {
        sum = sum + g.link(lam, &mu)?;
    }
    let defect = sum.clone() - G::Scalar::one();
    Ok(RowVerdict { row_sum: sum, defect })
}

/// Row check on a GT graph as a Laurent-polynomial identity with cleared
/// denominators. Returns the defect polynomial, zero on success.
pub fn check_stochastic_row_laurent(g: &GtGraph, lam: &Signature) -> Result<LaurentPoly> {
    if lam.level() == 0 {
        return Err(Error::Invalid("level-0 vertices have no row".into()));
    }
    Ok(g.row_defect(lam))
}

/// `Theta(f)(lam) = sum_{mu} kappa(lam, mu) f(mu)`.
pub fn theta_eval<G: BranchingGraph>(
    g: &G,
    f: &CentralFunction<G::Vertex, G::Scalar>,
    lam: &G::Vertex,
) -> Result<G::Scalar> {
    let n = g.level_of(lam);
    if n != f.level() + 1 {
        return Err(Error::LevelMismatch {
            expected: f.level() + 1,
            got: n,
        });
    }
    let mut acc = G::Scalar::zero();
    for mu in g.covers_below(lam) {
        if let Some(s) = f.support() {
            if !s.contains(&mu) {
                continue;
            }
        }
        let v = f.eval(&mu);
        if v.is_zero() {
            continue;
        }
        acc = acc + g.link(lam, &mu)? * v;
    }
    Ok(acc)
}

/// `Theta(f)` as a lazily evaluated function one level up. Evaluation at a
/// vertex of the wrong level yields zero.
pub fn theta<G: BranchingGraph>(
    g: &G,
    f: &CentralFunction<G::Vertex, G::Scalar>,
) -> CentralFunction<G::Vertex, G::Scalar> {
    let (g, f) = (g.clone(), f.clone());
    let level = f.level() + 1;
    CentralFunction::new(level, move |lam| {
        theta_eval(&g, &f, lam).unwrap_or_else(|_| G::Scalar::zero())
    })
}

/// Iterates `theta` from the level of `f` up to `target`.
pub fn theta_chain<G: BranchingGraph>(
    g: &G,
    f: &CentralFunction<G::Vertex, G::Scalar>,
    target: usize,
) -> Result<CentralFunction<G::Vertex, G::Scalar>> {
    if target < f.level() {
        return Err(Error::LevelMismatch {
            expected: f.level(),
            got: target,
        });
    }
    let mut cur = f.clone();
    while cur.level() < target {
        cur = theta(g, &cur);
    }
    Ok(cur)
}

/// `Phi(omega)(mu) = sum_{lam} omega(lam) kappa(lam, mu)`.
pub fn phi_pushdown<G: BranchingGraph>(
    g: &G,
    omega: &L1Vector<G::Vertex, G::Scalar>,
) -> Result<L1Vector<G::Vertex, G::Scalar>> {
    if omega.level() == 0 {
        return Err(Error::Invalid("cannot push below level 0".into()));
    }
    let mut out = L1Vector::zero(omega.level() - 1);
    for (lam, w) in omega.iter() {
        if g.level_of(lam) != omega.level() {
            return Err(Error::LevelMismatch {
                expected: omega.level(),
                got: g.level_of(lam),
            });
        }
        for mu in g.covers_below(lam) {
            out.add_at(mu.clone(), w.clone() * g.link(lam, &mu)?);
        }
    }
    Ok(out)
}

/// Iterated `phi_pushdown` down to level `target`.
pub fn pushdown_chain<G: BranchingGraph>(
    g: &G,
    omega: &L1Vector<G::Vertex, G::Scalar>,
    target: usize,
) -> Result<L1Vector<G::Vertex, G::Scalar>> {
    if target > omega.level() {
        return Err(Error::LevelMismatch {
            expected: omega.level(),
            got: target,
        });
    }
    let mut cur = omega.clone();
    while cur.level() > target {
        cur = phi_pushdown(g, &cur)?;
    }
    Ok(cur)
}

/// `<omega, f> = sum_z omega(z) f(z)`.
pub fn pairing<V: Vertex, S: Scalar>(omega: &L1Vector<V, S>, f: &CentralFunction<V, S>) -> Result<S> {
    if omega.level() != f.level() {
        return Err(Error::LevelMismatch {
            expected: omega.level(),
            got: f.level(),
        });
    }
    Ok(omega.iter().fold(S::zero(), |acc, (v, w)| acc + w.clone() * f.eval(v)))
}
