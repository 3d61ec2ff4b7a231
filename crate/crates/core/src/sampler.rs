//! Monte Carlo walks on branching graphs with exact transition
//! probabilities.
//!
//! The generator is `rand_chacha::ChaCha8Rng` (crate version 0.9) seeded
//! with `seed_from_u64`; chain `i` of a multi-chain run uses stream `i`.
//! Each step draws one `u64` `k` and picks the first target whose exact
//! cumulative threshold `ceil(cum * 2^64)` exceeds `k`, so no probability is
//! ever accumulated in floating point.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::branching::{BranchingGraph, L1Vector};
use crate::error::{Error, Result};
use crate::harmonic::CoherentSystem;
use crate::scalar::Rational;

/// The pinned generator for `seed`.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent generator for chain `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A finite distribution prepared for inversion sampling.
#[derive(Clone, Debug)]
struct Table<V> {
    targets: Vec<V>,
    thresholds: Vec<u128>,
}

impl<V: Clone> Table<V> {
    fn new(weights: Vec<(V, Rational)>) -> Result<Self> {
        let total: Rational = weights.iter().map(|(_, w)| w.clone()).sum();
        if total.is_zero() {
            return Err(Error::NotProbability("no mass to sample from".into()));
        }
        let scale: BigInt = BigInt::one() << 64usize;
        let mut cum = Rational::zero();
        let mut targets = Vec::new();
        let mut thresholds = Vec::new();
        for (v, w) in weights {
            if w.is_negative() {
                return Err(Error::NotProbability(format!("negative transition weight {w}")));
            }
            if w.is_zero() {
                continue;
            }
            cum += w / &total;
            let t = (&cum * Rational::from_integer(scale.clone())).ceil().to_integer();
            targets.push(v);
            thresholds.push(t.to_u128().expect("threshold fits in 65 bits"));
        }
        Ok(Self { targets, thresholds })
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> &V {
        let k = u128::from(rng.random::<u64>());
        let i = self.thresholds.partition_point(|&t| t <= k);
        &self.targets[i.min(self.targets.len() - 1)]
    }
}

/// Down-walks along the link with cached transition tables.
#[derive(Debug)]
pub struct DownSampler<G: BranchingGraph<Scalar = Rational>> {
    graph: G,
    tables: HashMap<G::Vertex, Table<G::Vertex>>,
}

impl<G: BranchingGraph<Scalar = Rational>> DownSampler<G> {
    /// The graph's `q`, when it has one, must lie in `(0, 1]`.
    pub fn new(graph: G) -> Result<Self> {
        if let Some(q) = graph.q() {
            if q <= Rational::zero() || q > Rational::one() {
                return Err(Error::Invalid(format!("q must lie in (0,1], got {q}")));
            }
        }
        Ok(Self {
            graph,
            tables: HashMap::new(),
        })
    }

    fn step<R: Rng + ?Sized>(&mut self, lam: &G::Vertex, rng: &mut R) -> Result<G::Vertex> {
        if !self.tables.contains_key(lam) {
            let weights = self
                .graph
                .covers_below(lam)
                .into_iter()
                .map(|mu| {
                    let k = self.graph.link(lam, &mu)?;
                    Ok((mu, k))
                })
                .collect::<Result<Vec<_>>>()?;
            self.tables.insert(lam.clone(), Table::new(weights)?);
        }
        Ok(self.tables[lam].draw(rng).clone())
    }

    /// A path `(lam_N, ..., lam_0)`.
    pub fn path<R: Rng + ?Sized>(&mut self, top: &G::Vertex, rng: &mut R) -> Result<Vec<G::Vertex>> {
        let mut path = vec![top.clone()];
        while self.graph.level_of(path.last().expect("nonempty")) > 0 {
            let next = self.step(path.last().expect("nonempty"), rng)?;
            path.push(next);
        }
        Ok(path)
    }

    /// The vertex reached at `level` from `top`.
    pub fn walk_to<R: Rng + ?Sized>(&mut self, top: &G::Vertex, level: usize, rng: &mut R) -> Result<G::Vertex> {
        let n = self.graph.level_of(top);
        if level > n {
            return Err(Error::LevelMismatch {
                expected: n,
                got: level,
            });
        }
        let mut cur = top.clone();
        for _ in level..n {
            cur = self.step(&cur, rng)?;
        }
        Ok(cur)
    }
}

/// One down path from `top` under `seed`.
pub fn sample_down<G: BranchingGraph<Scalar = Rational>>(g: &G, top: &G::Vertex, seed: u64) -> Result<Vec<G::Vertex>> {
    DownSampler::new(g.clone())?.path(top, &mut rng_from_seed(seed))
}

/// Histogram at `level` of `count` down walks from `top`, all drawn from
/// one stream seeded by `seed`.
pub fn down_histogram<G: BranchingGraph<Scalar = Rational>>(
    g: &G,
    top: &G::Vertex,
    level: usize,
    count: usize,
    seed: u64,
) -> Result<BTreeMap<G::Vertex, u64>> {
    let mut sampler = DownSampler::new(g.clone())?;
    let mut rng = rng_from_seed(seed);
    let mut hist = BTreeMap::new();
    for _ in 0..count {
        *hist.entry(sampler.walk_to(top, level, &mut rng)?).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Up-walks driven by a coherent system: from `mu` at level `k` the walk
/// moves to `lam` with probability `nu(lam) kappa(lam, mu) / nu(mu)`.
#[derive(Debug)]
pub struct UpSampler<'a, G: BranchingGraph<Scalar = Rational>> {
    nu: &'a CoherentSystem<G>,
    tables: HashMap<G::Vertex, Table<G::Vertex>>,
}

impl<'a, G: BranchingGraph<Scalar = Rational>> UpSampler<'a, G> {
    pub fn new(nu: &'a CoherentSystem<G>) -> Self {
        Self {
            nu,
            tables: HashMap::new(),
        }
    }

    fn step<R: Rng + ?Sized>(&mut self, mu: &G::Vertex, rng: &mut R) -> Result<G::Vertex> {
        if !self.tables.contains_key(mu) {
            let g = self.nu.graph();
            let k = g.level_of(mu);
            let here = self.nu.value(mu);
            if here.is_zero() {
                return Err(Error::ZeroMass(k));
            }
            let mut weights = Vec::new();
            for (lam, w) in self.nu.level(k + 1)?.iter() {
                let link = g.link(lam, mu)?;
                if !link.is_zero() {
                    weights.push((lam.clone(), w * link / &here));
                }
            }
            let total: Rational = weights.iter().map(|(_, w)| w.clone()).sum();
            if !total.is_one() {
                return Err(Error::Invalid(format!(
                    "up transitions from {mu} sum to {total}; the system is not harmonic"
                )));
            }
            self.tables.insert(mu.clone(), Table::new(weights)?);
        }
        Ok(self.tables[mu].draw(rng).clone())
    }

    /// The vertex reached at `target`, starting from the level-0 vertex of
    /// the system.
    pub fn walk<R: Rng + ?Sized>(&mut self, target: usize, rng: &mut R) -> Result<G::Vertex> {
        if target > self.nu.top_level() {
            return Err(Error::LevelMismatch {
                expected: self.nu.top_level(),
                got: target,
            });
        }
        let start = self.nu.level(0)?;
        let mut cur = match start.iter().next() {
            Some((v, _)) if start.support_len() == 1 => v.clone(),
            _ => return Err(Error::ZeroMass(0)),
        };
        for _ in 0..target {
            cur = self.step(&cur, rng)?;
        }
        Ok(cur)
    }
}

/// One up walk to `target` under `seed`.
pub fn sample_up<G: BranchingGraph<Scalar = Rational>>(
    nu: &CoherentSystem<G>,
    target: usize,
    seed: u64,
) -> Result<G::Vertex> {
    UpSampler::new(nu).walk(target, &mut rng_from_seed(seed))
}

/// Histogram of `count` up walks to `target` from one stream.
pub fn up_histogram<G: BranchingGraph<Scalar = Rational>>(
    nu: &CoherentSystem<G>,
    target: usize,
    count: usize,
    seed: u64,
) -> Result<BTreeMap<G::Vertex, u64>> {
    let mut sampler = UpSampler::new(nu);
    let mut rng = rng_from_seed(seed);
    let mut hist = BTreeMap::new();
    for _ in 0..count {
        *hist.entry(sampler.walk(target, &mut rng)?).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Total-variation distance `(1/2) sum |empirical - exact|`, exactly.
pub fn empirical_tv<V: Clone + Ord>(hist: &BTreeMap<V, u64>, exact: &L1Vector<V, Rational>) -> Rational {
    let total: u64 = hist.values().sum();
    let mut acc = Rational::zero();
    for (v, &c) in hist {
        let emp = if total == 0 {
            Rational::zero()
        } else {
            Rational::new(c.into(), total.into())
        };
        acc += (emp - exact.get(v)).abs();
    }
    for (v, w) in exact.iter() {
        if !hist.contains_key(v) {
            acc += w.abs();
        }
    }
    acc / Rational::from_integer(2.into())
}
