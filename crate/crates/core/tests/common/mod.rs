//! Independent reference computations. None of these call into the
//! library's symmetric-function or link code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qbranch::{Rational, Signature};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn pow(x: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let pivot_row = m[c].clone();
        d *= &pivot_row[c];
        for row in m.iter_mut().skip(c + 1) {
            let f = &row[c] / &pivot_row[c];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= p * &f;
            }
        }
    }
    d
}

/// `s_lam(xs)` as a ratio of alternants; the points must be distinct and nonzero.
pub fn bialternant(lam: &[i64], xs: &[Rational]) -> Rational {
    let n = xs.len();
    let alt = |exps: Vec<i64>| det(xs.iter().map(|x| exps.iter().map(|&e| pow(x, e)).collect()).collect());
    let top = alt((0..n).map(|j| lam[j] + (n - 1 - j) as i64).collect());
    let bottom = alt((0..n).map(|j| (n - 1 - j) as i64).collect());
    top / bottom
}

/// Symmetric q-integer `[k] = (q^k - q^-k) / (q - q^-1)` at a rational point.
pub fn q_int(k: i64, q0: &Rational) -> Rational {
    if q0.is_one() {
        return Rational::from_integer(k.into());
    }
    (pow(q0, k) - pow(q0, -k)) / (q0 - q0.recip())
}

/// Quantum Weyl dimension formula at `q0`.
pub fn weyl_qdim(lam: &[i64], q0: &Rational) -> Rational {
    let n = lam.len();
    let mut acc = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i) as i64;
            acc *= q_int(lam[i] - lam[j] + gap, q0) / q_int(gap, q0);
        }
    }
    acc
}

/// Cotransition link on GTQ(-1) at `q0`, from the Weyl formula.
pub fn gtq_link(lam: &[i64], mu: &[i64], q0: &Rational) -> Rational {
    let n = mu.len() as i64;
    let (sl, sm): (i64, i64) = (lam.iter().sum(), mu.iter().sum());
    pow(q0, n * sl - (n + 1) * sm) * weyl_qdim(mu, q0) / weyl_qdim(lam, q0)
}

/// Every `mu` with `lam_{i+1} <= mu_i <= lam_i`.
pub fn interlacing_below(lam: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for i in 0..lam.len().saturating_sub(1) {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lam[i + 1]..=lam[i]).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Monomial expansion of `s_shape(x_1..x_n)` by enumerating semistandard
/// tableaux cell by cell. `shape` must be a partition.
pub fn ssyt_monomials(shape: &[i64], n: usize) -> HashMap<Vec<i64>, u64> {
    let shape: Vec<usize> = shape.iter().copied().filter(|&r| r > 0).map(|r| r as usize).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = HashMap::new();
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        n: usize,
        out: &mut HashMap<Vec<i64>, u64>,
    ) {
        if k == cells.len() {
            let mut content = vec![0i64; n];
            for row in grid.iter() {
                for &v in row {
                    content[v] += 1;
                }
            }
            *out.entry(content).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            grid[r][c] = v;
            fill(k + 1, cells, grid, n, out);
        }
    }
    if n > 0 || cells.is_empty() {
        fill(0, &cells, &mut grid, n, &mut out);
    }
    out
}

/// All permutations of `0..n` paired with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in signed_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // Inserting the largest element before `len - pos` others adds that many inversions.
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

fn staircase(n: usize) -> Vec<i64> {
    (0..n).map(|i| (n - 1 - i) as i64).collect()
}

/// `c^lam_{mu,nu}` for partitions padded to `n` parts, from the coefficient of
/// `x^{lam+delta}` in `a_{mu+delta} s_nu`.
pub fn lr_tensor_oracle(lam: &[i64], mu: &[i64], nu: &[i64], n: usize, cache: &mut MonomialCache) -> i64 {
    let pad = |p: &[i64]| -> Vec<i64> { (0..n).map(|i| p.get(i).copied().unwrap_or(0)).collect() };
    let (lam, mu) = (pad(lam), pad(mu));
    let delta = staircase(n);
    let s_nu = cache.get(nu, n);
    let mut total = 0i64;
    for (w, sign) in signed_permutations(n) {
        let exp: Vec<i64> = (0..n).map(|i| lam[i] + delta[i] - mu[w[i]] - delta[w[i]]).collect();
        if let Some(&c) = s_nu.get(&exp) {
            total += sign * c as i64;
        }
    }
    total
}

/// `c(lam | mu, nu)` for `GL(m) x GL(n)` inside `GL(m+n)`, from the coefficient
/// of `x^{mu+delta_m} y^{nu+delta_n}` in `a_delta(x) a_delta(y) s_lam(x, y)`.
pub fn lr_splice_oracle(lam: &Signature, mu: &Signature, nu: &Signature, cache: &mut MonomialCache) -> i64 {
    let (m, n) = (mu.level(), nu.level());
    let low = [lam, mu, nu]
        .iter()
        .flat_map(|s| s.parts().iter().copied())
        .min()
        .unwrap_or(0)
        .min(0);
    let shift = |s: &Signature| -> Vec<i64> { s.parts().iter().map(|p| p - low).collect() };
    let (lam, mu, nu) = (shift(lam), shift(mu), shift(nu));
    let s_lam = cache.get(&lam, m + n);
    let (dm, dn) = (staircase(m), staircase(n));
    let mut total = 0i64;
    for (w, sw) in signed_permutations(m) {
        for (v, sv) in signed_permutations(n) {
            let exp: Vec<i64> = (0..m)
                .map(|i| mu[i] + dm[i] - dm[w[i]])
                .chain((0..n).map(|i| nu[i] + dn[i] - dn[v[i]]))
                .collect();
            if let Some(&c) = s_lam.get(&exp) {
                total += sw * sv * c as i64;
            }
        }
    }
    total
}

#[derive(Default)]
pub struct MonomialCache(HashMap<(Vec<i64>, usize), HashMap<Vec<i64>, u64>>);

impl MonomialCache {
    pub fn get(&mut self, shape: &[i64], n: usize) -> &HashMap<Vec<i64>, u64> {
        self.0
            .entry((shape.to_vec(), n))
            .or_insert_with(|| ssyt_monomials(shape, n))
    }
}

/// Number of standard tableaux from the recursion over removable corners.
pub fn syt_recursive(shape: &[i64], memo: &mut BTreeMap<Vec<i64>, BigInt>) -> BigInt {
    let shape: Vec<i64> = shape.iter().copied().filter(|&r| r > 0).collect();
    if shape.is_empty() {
        return BigInt::one();
    }
    if let Some(v) = memo.get(&shape) {
        return v.clone();
    }
    let mut acc = BigInt::zero();
    for i in 0..shape.len() {
        if i + 1 == shape.len() || shape[i] > shape[i + 1] {
            let mut smaller = shape.clone();
            smaller[i] -= 1;
            acc += syt_recursive(&smaller, memo);
        }
    }
    memo.insert(shape, acc.clone());
    acc
}

/// Classical dimension as the number of semistandard tableaux.
pub fn dim_by_tableaux(lam: &[i64]) -> u64 {
    let low = lam.iter().copied().min().unwrap_or(0);
    let shape: Vec<i64> = lam.iter().map(|p| p - low).collect();
    ssyt_monomials(&shape, lam.len()).values().sum()
}

/// Exact level distributions below `top`, by multiplying dense link matrices
/// built from `link(upper, lower)`.
pub fn matrix_pushdown(top: &[i64], link: impl Fn(&[i64], &[i64]) -> Rational) -> Vec<BTreeMap<Vec<i64>, Rational>> {
    let mut levels = vec![BTreeMap::from([(top.to_vec(), Rational::one())])];
    for _ in 0..top.len() {
        let upper: Vec<Vec<i64>> = levels.last().unwrap().keys().cloned().collect();
        let mut lower: Vec<Vec<i64>> = upper.iter().flat_map(|u| interlacing_below(u)).collect();
        lower.sort();
        lower.dedup();
        let matrix: Vec<Vec<Rational>> = upper
            .iter()
            .map(|u| {
                lower
                    .iter()
                    .map(|l| if interlaces(u, l) { link(u, l) } else { Rational::zero() })
                    .collect()
            })
            .collect();
        let weights: Vec<Rational> = upper.iter().map(|u| levels.last().unwrap()[u].clone()).collect();
        let mut next = BTreeMap::new();
        for (j, l) in lower.iter().enumerate() {
            let v: Rational = (0..upper.len()).map(|i| &weights[i] * &matrix[i][j]).sum();
            if !v.is_zero() {
                next.insert(l.clone(), v);
            }
        }
        levels.push(next);
    }
    levels.reverse();
    levels
}

pub fn interlaces(lam: &[i64], mu: &[i64]) -> bool {
    mu.len() + 1 == lam.len() && (0..mu.len()).all(|i| lam[i] >= mu[i] && mu[i] >= lam[i + 1])
}

/// Total variation distance between two finitely supported distributions.
pub fn tv_distance(a: &BTreeMap<Vec<i64>, f64>, b: &BTreeMap<Vec<i64>, f64>) -> f64 {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    keys.into_iter()
        .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
        / 2.0
}

/// Integer partitions of `n`, largest parts first.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn go(n: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![], &mut out);
    out
}

/// Every signature of length `n` with parts in `[lo, hi]`.
pub fn signature_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, lo: i64, hi: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let top = prefix.last().copied().unwrap_or(hi);
        for v in lo..=top {
            prefix.push(v);
            go(n, lo, hi, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, lo, hi, &mut vec![], &mut out);
    out
}
