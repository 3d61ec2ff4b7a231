//! Signatures (highest weights of `U(n)`), interlacing, Gelfand-Tsetlin
//! patterns, partitions for the Young graph, and the bracket `[mu, nu]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing integer tuple. Its length is the level; negative
/// parts are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Signature(Vec<i64>);

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Self(parts))
    }

    /// The unique level-0 signature.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn zero(level: usize) -> Self {
        Self(vec![0; level])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    /// `|lambda|`, the sum of parts.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn min_part(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn max_part(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    /// The partition obtained when all parts are nonnegative.
    pub fn to_partition(&self) -> Option<Partition> {
        Partition::new(self.0.clone()).ok()
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<i64>::deserialize(d)?;
        Signature::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for literal signatures in tests and examples; panics on a
/// non-decreasing tuple.
pub fn sig(parts: &[i64]) -> Signature {
    Signature::new(parts.to_vec()).expect("weakly decreasing parts")
}

/// A partition: weakly decreasing nonnegative parts with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.0.iter().sum::<i64>() as usize
    }

    pub fn part(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Partitions obtained by removing one corner box, sorted.
    pub fn remove_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            if self.part(i) > self.part(i + 1) {
                let mut p = self.0.clone();
                p[i] -= 1;
                out.push(Partition::new(p).expect("still a partition"));
            }
        }
        out.sort();
        out
    }

    /// Partitions obtained by adding one box, sorted.
    pub fn add_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.0.len() {
            if i == 0 || self.part(i - 1) > self.part(i) {
                let mut p = self.0.clone();
                if i == p.len() {
                    p.push(0);
                }
                p[i] += 1;
                out.push(Partition::new(p).expect("still a partition"));
            }
        }
        out.sort();
        out
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// The signature of the given length with these parts, padded by zeros.
    pub fn to_signature(&self, level: usize) -> Option<Signature> {
        if self.0.len() > level {
            return None;
        }
        let mut p = self.0.clone();
        p.resize(level, 0);
        Some(Signature(p))
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<i64>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, in lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in 1..=max.min(rem) {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as i64, n as i64, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `lam ≻ mu`: `lam_i >= mu_i >= lam_{i+1}` for every `i`.
pub fn interlace(lam: &Signature, mu: &Signature) -> Result<bool> {
    if lam.level() != mu.level() + 1 {
        return Err(Error::LengthMismatch(format!(
            "interlace needs lengths n+1 and n, got {} and {}",
            lam.level(),
            mu.level()
        )));
    }
    let l = lam.parts();
    Ok(mu.parts().iter().enumerate().all(|(i, &m)| l[i] >= m && m >= l[i + 1]))
}

/// Every `mu` with `lam ≻ mu`, lexicographically sorted. Empty for the
/// level-0 signature.
pub fn covers_below(lam: &Signature) -> Vec<Signature> {
    let l = lam.parts();
    if l.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l.len() - 1);
    fn rec(l: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        let i = cur.len();
        if i + 1 == l.len() {
            out.push(Signature(cur.clone()));
            return;
        }
        for m in l[i + 1]..=l[i] {
            cur.push(m);
            rec(l, cur, out);
            cur.pop();
        }
    }
    rec(l, &mut cur, &mut out);
    out
}

/// Every signature `lam` of length `mu.level() + 1` with `lam ≻ mu` and all
/// parts inside `[lo, hi]`.
pub fn covers_above_in_window(mu: &Signature, lo: i64, hi: i64) -> Vec<Signature> {
    let m = mu.parts();
    let n = m.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn rec(m: &[i64], lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        let i = cur.len();
        if i == m.len() + 1 {
            out.push(Signature(cur.clone()));
            return;
        }
        let lower = if i < m.len() { m[i] } else { lo };
        let upper = if i == 0 { hi } else { m[i - 1] };
        for v in lower.max(lo)..=upper.min(hi) {
            cur.push(v);
            rec(m, lo, hi, cur, out);
            cur.pop();
        }
    }
    rec(m, lo, hi, &mut cur, &mut out);
    out
}

/// All signatures of length `level` with parts in `[lo, hi]`, sorted.
pub fn signatures_in_box(level: usize, lo: i64, hi: i64) -> Vec<Signature> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(level);
    fn rec(level: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Signature>) {
        if cur.len() == level {
            out.push(Signature(cur.clone()));
            return;
        }
        let upper = cur.last().copied().unwrap_or(hi);
        for v in lo..=upper {
            cur.push(v);
            rec(level, lo, hi, cur, out);
            cur.pop();
        }
    }
    if lo <= hi || level == 0 {
        rec(level, lo, hi, &mut cur, &mut out);
    }
    out.sort();
    out
}

/// Adds `c` to every part.
pub fn shift(lam: &Signature, c: i64) -> Signature {
    Signature(lam.0.iter().map(|p| p + c).collect())
}

/// `[mu, nu] = det [[l(mu), l(nu)], [|mu|, |nu|]] = l(mu)|nu| - l(nu)|mu|`.
pub fn bracket(mu: &Signature, nu: &Signature) -> i64 {
    mu.level() as i64 * nu.size() - nu.level() as i64 * mu.size()
}

/// The dual highest weight `(-lam_n, ..., -lam_1)`.
pub fn conjugate_signature(lam: &Signature) -> Signature {
    Signature(lam.0.iter().rev().map(|p| -p).collect())
}

/// A Gelfand-Tsetlin pattern; `rows[k]` has length `k + 1` and consecutive
/// rows interlace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtPattern {
    rows: Vec<Signature>,
}

impl GtPattern {
    pub fn new(rows: Vec<Signature>) -> Result<Self> {
        for (k, row) in rows.iter().enumerate() {
            if row.level() != k + 1 {
                return Err(Error::LengthMismatch(format!("row {k} has length {}", row.level())));
            }
            if k > 0 && !interlace(row, &rows[k - 1])? {
                return Err(Error::Invalid(format!("rows {k} and {} do not interlace", k - 1)));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Signature] {
        &self.rows
    }

    pub fn top(&self) -> &Signature {
        self.rows.last().expect("nonempty pattern")
    }

    /// `w_i = |row_i| - |row_{i-1}|` for `i = 1..=n`.
    pub fn weight(&self) -> Vec<i64> {
        let mut prev = 0;
        self.rows
            .iter()
            .map(|r| {
                let s = r.size();
                let w = s - prev;
                prev = s;
                w
            })
            .collect()
    }
}

/// All GT patterns with top row `lam`.
pub fn enumerate_gt_patterns(lam: &Signature) -> Result<Vec<GtPattern>> {
    if lam.level() == 0 {
        return Err(Error::Invalid("GT patterns need a signature of length >= 1".into()));
    }
    fn rec(top: &Signature) -> Vec<Vec<Signature>> {
        if top.level() == 1 {
            return vec![vec![top.clone()]];
        }
        let mut out = Vec::new();
        for mu in covers_below(top) {
            for mut chain in rec(&mu) {
                chain.push(top.clone());
                out.push(chain);
            }
        }
        out
    }
    Ok(rec(lam).into_iter().map(|rows| GtPattern { rows }).collect())
}
