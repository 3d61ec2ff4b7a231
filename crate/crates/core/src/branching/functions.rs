use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

type Evaluator<V, S> = Arc<dyn Fn(&V) -> S + Send + Sync>;

/// A bounded function on the vertices of one level, given as an evaluation
/// procedure. An optional support set certifies that the function vanishes
/// off it.
#[derive(Clone)]
pub struct CentralFunction<V, S> {
    level: usize,
    eval: Evaluator<V, S>,
    support: Option<BTreeSet<V>>,
}

impl<V, S> CentralFunction<V, S>
where
    V: Clone + Ord + Send + Sync + 'static,
    S: Scalar,
{
    pub fn new(level: usize, f: impl Fn(&V) -> S + Send + Sync + 'static) -> Self {
        Self {
            level,
            eval: Arc::new(f),
            support: None,
        }
    }

    pub fn constant(level: usize, c: S) -> Self {
        Self::new(level, move |_| c.clone())
    }

    pub fn zero(level: usize) -> Self {
        Self::from_map(level, BTreeMap::new())
    }

    pub fn indicator(level: usize, v: V) -> Self {
        Self::from_map(level, BTreeMap::from([(v, S::one())]))
    }

    /// Finitely supported function given by its nonzero values.
    pub fn from_map(level: usize, values: BTreeMap<V, S>) -> Self {
        let values: BTreeMap<V, S> = values.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        let support = values.keys().cloned().collect();
        let values = Arc::new(values);
        Self {
            level,
            eval: Arc::new(move |v| values.get(v).cloned().unwrap_or_else(S::zero)),
            support: Some(support),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn eval(&self, v: &V) -> S {
        (self.eval)(v)
    }

    pub fn support(&self) -> Option<&BTreeSet<V>> {
        self.support.as_ref()
    }

    pub fn scaled(&self, c: S) -> Self {
        let inner = self.eval.clone();
        let support = if c.is_zero() {
            Some(BTreeSet::new())
        } else {
            self.support.clone()
        };
        Self {
            level: self.level,
            eval: Arc::new(move |v| c.clone() * inner(v)),
            support,
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                got: other.level,
            });
        }
        let (a, b) = (self.eval.clone(), other.eval.clone());
        let support = match (&self.support, &other.support) {
            (Some(x), Some(y)) => Some(x.union(y).cloned().collect()),
            _ => None,
        };
        Ok(Self {
            level: self.level,
            eval: Arc::new(move |v| a(v) + b(v)),
            support,
        })
    }
}

impl<V: fmt::Debug, S> fmt::Debug for CentralFunction<V, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CentralFunction")
            .field("level", &self.level)
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

/// A finitely supported summable function on one level.
#[derive(Clone, Debug, PartialEq)]
pub struct L1Vector<V: Ord, S> {
    level: usize,
    entries: BTreeMap<V, S>,
}

impl<V: Clone + Ord, S: Scalar> L1Vector<V, S> {
    pub fn zero(level: usize) -> Self {
        Self {
            level,
            entries: BTreeMap::new(),
        }
    }

    pub fn delta(level: usize, v: V) -> Self {
        Self {
            level,
            entries: BTreeMap::from([(v, S::one())]),
        }
    }

    pub fn from_entries(level: usize, entries: impl IntoIterator<Item = (V, S)>) -> Self {
        let mut out = Self::zero(level);
        for (v, s) in entries {
            out.add_at(v, s);
        }
        out
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn get(&self, v: &V) -> S {
        self.entries.get(v).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> &BTreeMap<V, S> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&V, &S)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_at(&mut self, v: V, s: S) {
        if s.is_zero() {
            return;
        }
        let cur = self.entries.remove(&v).unwrap_or_else(S::zero);
        let next = cur + s;
        if !next.is_zero() {
            self.entries.insert(v, next);
        }
    }

    pub fn mass(&self) -> S {
        self.entries.values().cloned().fold(S::zero(), |a, b| a + b)
    }

    pub fn scaled(&self, c: &S) -> Self {
        Self::from_entries(
            self.level,
            self.entries.iter().map(|(v, s)| (v.clone(), c.clone() * s.clone())),
        )
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                got: other.level,
            });
        }
        let mut out = self.clone();
        for (v, s) in &other.entries {
            out.add_at(v.clone(), s.clone());
        }
        Ok(out)
    }

    /// Whether every entry is certified nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|s| s.nonnegative() == Some(true))
    }

    /// Nonnegative with total mass exactly one.
    pub fn is_probability(&self) -> bool {
        self.is_nonnegative() && self.mass() == S::one()
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<L1Vector<V, T>> {
        let mut out = L1Vector::zero(self.level);
        for (v, s) in &self.entries {
            out.add_at(v.clone(), f(s)?);
        }
        Ok(out)
    }

    pub fn map_vertices<W: Clone + Ord>(&self, f: impl Fn(&V) -> W) -> L1Vector<W, S> {
        L1Vector::from_entries(self.level, self.entries.iter().map(|(v, s)| (f(v), s.clone())))
    }

    /// The function `v -> self(v)` with its support as a hint.
    pub fn to_function(&self) -> CentralFunction<V, S>
    where
        V: Send + Sync + 'static,
    {
        CentralFunction::from_map(self.level, self.entries.clone())
    }
}

impl<V: Clone + Ord> L1Vector<V, Rational> {
    pub fn l1_norm(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |a, b| a + b.abs())
    }
}
