//! Finite-range coherent systems: level probability vectors compatible under
//! the pushdown `Phi`, with their verification, construction, products and
//! adjoints.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::branching::{phi_pushdown, pushdown_chain, BranchingGraph, GtLike, L1Vector};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::signature::{conjugate_signature, Signature};
use crate::symfunc::tensor_terms;

/// Levels `0..=N` of a harmonic family on one graph.
#[derive(Clone, Debug)]
pub struct CoherentSystem<G: BranchingGraph> {
    graph: G,
    levels: Vec<L1Vector<G::Vertex, G::Scalar>>,
}

impl<G: BranchingGraph> CoherentSystem<G> {
    /// Wraps the given levels without verifying them; see
    /// [`check_harmonic`]. Level `n` of the vector list must be `n`.
    pub fn new(graph: G, levels: Vec<L1Vector<G::Vertex, G::Scalar>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Invalid("a coherent system needs at least level 0".into()));
        }
        for (n, v) in levels.iter().enumerate() {
            if v.level() != n {
                return Err(Error::LevelMismatch {
                    expected: n,
                    got: v.level(),
                });
            }
        }
        Ok(Self { graph, levels })
    }

    pub fn graph(&self) -> &G {
        &self.graph
    }

    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> Result<&L1Vector<G::Vertex, G::Scalar>> {
        self.levels
            .get(n)
            .ok_or_else(|| Error::Invalid(format!("level {n} is above the top level {}", self.top_level())))
    }

    pub fn levels(&self) -> &[L1Vector<G::Vertex, G::Scalar>] {
        &self.levels
    }

    /// The state value `omega(z_lam) = nu_n(lam)`.
    pub fn value(&self, lam: &G::Vertex) -> G::Scalar {
        let n = self.graph.level_of(lam);
        self.levels.get(n).map_or_else(G::Scalar::zero, |v| v.get(lam))
    }

    /// `t * self + (1 - t) * other`, levelwise.
    pub fn convex_combination(&self, other: &Self, t: &G::Scalar) -> Result<Self> {
        same_graph(&self.graph, &other.graph)?;
        if self.top_level() != other.top_level() {
            return Err(Error::LevelMismatch {
                expected: self.top_level(),
                got: other.top_level(),
            });
        }
        let s = G::Scalar::one() - t.clone();
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.scaled(t).plus(&b.scaled(&s)))
            .collect::<Result<_>>()?;
        Ok(Self {
            graph: self.graph.clone(),
            levels,
        })
    }

    /// Replaces the value at `lam`; used to build deliberately broken
    /// families in tests.
    pub fn with_value(&self, lam: G::Vertex, value: G::Scalar) -> Result<Self> {
        let n = self.graph.level_of(&lam);
        let cur = self.level(n)?;
        let mut levels = self.levels.clone();
        let mut next = cur.clone();
        let old = cur.get(&lam);
        next.add_at(lam, value - old);
        levels[n] = next;
        Ok(Self {
            graph: self.graph.clone(),
            levels,
        })
    }
}

fn same_graph<G: BranchingGraph>(a: &G, b: &G) -> Result<()> {
    if a.kind() != b.kind() || a.q() != b.q() {
        return Err(Error::GraphMismatch(format!(
            "{} at q={:?} vs {} at q={:?}",
            a.kind(),
            a.q(),
            b.kind(),
            b.q()
        )));
    }
    Ok(())
}

/// Outcome of [`check_harmonic`].
#[derive(Clone, Debug, PartialEq)]
pub enum HarmonicVerdict<V> {
    Pass,
    Fail {
        level: usize,
        vertex: Option<V>,
        reason: String,
    },
}

impl<V> HarmonicVerdict<V> {
    pub fn passes(&self) -> bool {
        matches!(self, HarmonicVerdict::Pass)
    }
}

/// Verifies normalization, nonnegativity and `nu_n = Phi(nu_{n+1})` exactly
/// at every level, reporting the first failure.
pub fn check_harmonic<G: BranchingGraph>(nu: &CoherentSystem<G>) -> Result<HarmonicVerdict<G::Vertex>> {
    let fail = |level, vertex, reason: &str| HarmonicVerdict::Fail {
        level,
        vertex,
        reason: reason.to_string(),
    };
    for (n, v) in nu.levels.iter().enumerate() {
        if let Some((lam, _)) = v.iter().find(|(_, s)| s.nonnegative() != Some(true)) {
            return Ok(fail(n, Some(lam.clone()), "entry not certified nonnegative"));
        }
        if v.mass() != G::Scalar::one() {
            return Ok(fail(n, None, "mass is not 1"));
        }
    }
    for n in 0..nu.top_level() {
        let pushed = phi_pushdown(&nu.graph, &nu.levels[n + 1])?;
        let here = &nu.levels[n];
        let keys: Vec<_> = pushed.entries().keys().chain(here.entries().keys()).cloned().collect();
        for lam in keys {
            if pushed.get(&lam) != here.get(&lam) {
                return Ok(fail(n, Some(lam), "differs from the pushdown of the level above"));
            }
        }
    }
    Ok(HarmonicVerdict::Pass)
}

/// The system `nu_n = Phi^{N-n}(P)` generated by a probability vector `P` at
/// level `N`.
pub fn from_top<G: BranchingGraph>(graph: &G, p: &L1Vector<G::Vertex, G::Scalar>) -> Result<CoherentSystem<G>> {
    if let Some((lam, s)) = p.iter().find(|(_, s)| s.nonnegative() != Some(true)) {
        return Err(Error::NotProbability(format!("entry {s} at {lam} is not nonnegative")));
    }
    if p.mass() != G::Scalar::one() {
        return Err(Error::NotProbability(format!("mass is {}", p.mass())));
    }
    for lam in p.entries().keys() {
        if graph.level_of(lam) != p.level() {
            return Err(Error::LevelMismatch {
                expected: p.level(),
                got: graph.level_of(lam),
            });
        }
    }
    let mut levels = vec![p.clone()];
    while levels.last().expect("nonempty").level() > 0 {
        let next = phi_pushdown(graph, levels.last().expect("nonempty"))?;
        levels.push(next);
    }
    levels.reverse();
    CoherentSystem::new(graph.clone(), levels)
}

/// `nu_n = delta` at the root of every level.
pub fn counit_system<G: BranchingGraph>(graph: &G, top: usize) -> Result<CoherentSystem<G>> {
    let levels = (0..=top)
        .map(|n| {
            graph
                .root(n)
                .map(|r| L1Vector::delta(n, r))
                .ok_or_else(|| Error::Unsupported(format!("{} has no distinguished vertex at level {n}", graph.kind())))
        })
        .collect::<Result<_>>()?;
    CoherentSystem::new(graph.clone(), levels)
}

/// The row `kappa^{(N -> n)}(lam_top, .)` of the composed link.
pub fn ergodic_estimate<G: BranchingGraph>(
    graph: &G,
    lam_top: &G::Vertex,
    n: usize,
) -> Result<L1Vector<G::Vertex, G::Scalar>> {
    pushdown_chain(graph, &L1Vector::delta(graph.level_of(lam_top), lam_top.clone()), n)
}

/// Level-`n` vector of the product of two systems:
/// `sum nu1(mu) nu2(nu) c^lam_{mu,nu} dim(lam) / (dim(mu) dim(nu))`.
pub fn character_product<G: GtLike>(
    nu1: &CoherentSystem<G>,
    nu2: &CoherentSystem<G>,
    n: usize,
) -> Result<L1Vector<Signature, G::Scalar>> {
    same_graph(&nu1.graph, &nu2.graph)?;
    let g = &nu1.graph;
    let (a, b) = (nu1.level(n)?, nu2.level(n)?);
    let mut out = L1Vector::zero(n);
    for (mu, x) in a.iter() {
        for (nu, y) in b.iter() {
            let denom = g.dim_value(mu) * g.dim_value(nu);
            let w = x.clone() * y.clone();
            for (lam, c) in tensor_terms(mu, nu)? {
                let c = G::Scalar::from_rational(&Rational::from_integer(c.into()));
                let ratio = (g.dim_value(&lam) * c)
                    .checked_div(&denom)
                    .ok_or(Error::DivisionByZero)?;
                out.add_at(lam, w.clone() * ratio);
            }
        }
    }
    Ok(out)
}

/// The levelwise products up to the smaller top level. The result is not
/// assumed harmonic; run [`check_harmonic`] on it.
pub fn product_system<G: GtLike>(nu1: &CoherentSystem<G>, nu2: &CoherentSystem<G>) -> Result<CoherentSystem<G>> {
    let top = nu1.top_level().min(nu2.top_level());
    let levels = (0..=top)
        .map(|n| character_product(nu1, nu2, n))
        .collect::<Result<_>>()?;
    CoherentSystem::new(nu1.graph.clone(), levels)
}

/// The system `nu*(lam) = nu(conj(lam))` on the graph with the opposite sign.
pub fn adjoint_system<G: GtLike>(nu: &CoherentSystem<G>) -> Result<CoherentSystem<G>> {
    let levels = nu
        .levels
        .iter()
        .map(|v| {
            let entries: BTreeMap<_, _> = v.iter().map(|(l, s)| (conjugate_signature(l), s.clone())).collect();
            L1Vector::from_entries(v.level(), entries)
        })
        .collect();
    CoherentSystem::new(nu.graph.reversed(), levels)
}
