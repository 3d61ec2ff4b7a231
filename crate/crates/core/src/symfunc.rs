//! Schur polynomials, classical and quantum dimensions,
//! Littlewood-Richardson coefficients and Cartan-moment traces.
//!
//! Schur polynomials are evaluated by summing over Gelfand-Tsetlin patterns
//! (organized as the branching recursion
//! `s_lam(x_1..x_n) = sum_{mu ≺ lam} s_mu(x_1..x_{n-1}) x_n^{|lam|-|mu|}`),
//! which is defined at every point, including repeated ones.
//!
//! LR coefficients for signatures are reduced to partitions by a common
//! shift and then counted as LR skew tableaux.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, QRatio, Rational};
use crate::signature::{covers_below, shift, Partition, Signature};

/// A commutative ring in which Schur polynomials can be evaluated.
pub trait SchurPoint: Clone + Zero + One {
    /// Integer power; `None` if the element is not invertible and `e < 0`.
    fn powi(&self, e: i64) -> Option<Self>;
}

fn pow_by_squaring<T: SchurPoint>(base: &T, mut e: u64) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    acc
}

impl SchurPoint for Rational {
    fn powi(&self, e: i64) -> Option<Self> {
        if e < 0 && self.is_zero() {
            return None;
        }
        Some(self.pow(e as i32))
    }
}

impl SchurPoint for LaurentPoly {
    fn powi(&self, e: i64) -> Option<Self> {
        if let Some((c, x)) = self.as_monomial() {
            let c = c.powi(e)?;
            return Some(LaurentPoly::monomial(c, x * e));
        }
        if e < 0 {
            return None;
        }
        Some(pow_by_squaring(self, e as u64))
    }
}

impl SchurPoint for QRatio {
    fn powi(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Some(pow_by_squaring(&base, e.unsigned_abs()))
    }
}

impl SchurPoint for Complex64 {
    fn powi(&self, e: i64) -> Option<Self> {
        if e < 0 && self.is_zero() {
            return None;
        }
        Some(Complex64::powi(self, e as i32))
    }
}

/// `s_lam(points)` as a sum over GT patterns with top row `lam`.
pub fn schur_eval<T: SchurPoint>(lam: &Signature, points: &[T]) -> Result<T> {
    if points.len() != lam.level() {
        return Err(Error::LengthMismatch(format!(
            "{} points for a signature of length {}",
            points.len(),
            lam.level()
        )));
    }
    if lam.min_part().is_some_and(|m| m < 0) && points.iter().any(Zero::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let mut memo: HashMap<Signature, T> = HashMap::new();
    schur_rec(lam, points, &mut memo)
}

fn schur_rec<T: SchurPoint>(lam: &Signature, points: &[T], memo: &mut HashMap<Signature, T>) -> Result<T> {
    let n = lam.level();
    if n == 0 {
        return Ok(T::one());
    }
    if let Some(v) = memo.get(lam) {
        return Ok(v.clone());
    }
    let x = &points[n - 1];
    let mut acc = T::zero();
    for mu in covers_below(lam) {
        let inner = schur_rec(&mu, &points[..n - 1], memo)?;
        let w = x.powi(lam.size() - mu.size()).ok_or(Error::ZeroPoint)?;
        acc = acc + inner * w;
    }
    memo.insert(lam.clone(), acc.clone());
    Ok(acc)
}

/// The principal specialization points `q^{-n+1}, q^{-n+3}, ..., q^{n-1}`.
pub fn principal_points(n: usize) -> Vec<LaurentPoly> {
    let n = n as i64;
    (0..n).map(|i| LaurentPoly::q_pow(2 * i - n + 1)).collect()
}

fn qdim_cache() -> &'static Mutex<HashMap<Signature, LaurentPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<Signature, LaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Quantum dimension `s_lam(q^{-n+1}, ..., q^{n-1})`.
///
/// Memoized in a process-wide table; values do not depend on call order.
pub fn qdim(lam: &Signature) -> LaurentPoly {
    if let Some(v) = qdim_cache().lock().expect("qdim cache").get(lam) {
        return v.clone();
    }
    let v = schur_eval(lam, &principal_points(lam.level())).expect("monomial points are invertible");
    qdim_cache().lock().expect("qdim cache").insert(lam.clone(), v.clone());
    v
}

/// Weyl dimension `prod_{i<j} (lam_i - lam_j + j - i) / (j - i)`.
pub fn dim_classical(lam: &Signature) -> BigInt {
    let p = lam.parts();
    let mut acc = Rational::one();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let gap = (j - i) as i64;
            acc *= Rational::new((p[i] - p[j] + gap).into(), gap.into());
        }
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
}

/// Number of standard Young tableaux of shape `p` (hook length formula).
pub fn syt_count(p: &Partition) -> BigInt {
    let n = p.size();
    let mut hooks = BigInt::one();
    let parts = p.parts();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().filter(|&&r| r > j).count() as i64;
            hooks *= BigInt::from(arm + leg + 1);
        }
    }
    let mut fact = BigInt::one();
    for k in 2..=n {
        fact *= BigInt::from(k);
    }
    fact / hooks
}

/// Trace of `rho_n * K_1^{m_1} ... K_n^{m_n}` on the irreducible module of
/// highest weight `lam`: `sum_{GT patterns} q^{sum_i (2i-n-1+m_i) w_i}`.
pub fn cartan_moment(lam: &Signature, exponents: &[i64]) -> Result<LaurentPoly> {
    let n = lam.level();
    if exponents.len() != n {
        return Err(Error::LengthMismatch(format!(
            "{} exponents for a signature of length {n}",
            exponents.len()
        )));
    }
    let points: Vec<LaurentPoly> = exponents
        .iter()
        .enumerate()
        .map(|(i, m)| LaurentPoly::q_pow(2 * i as i64 + 1 - n as i64 + m))
        .collect();
    schur_eval(lam, &points)
}

fn trimmed(p: &[i64]) -> &[i64] {
    let mut end = p.len();
    while end > 0 && p[end - 1] == 0 {
        end -= 1;
    }
    &p[..end]
}

/// The LR coefficient `c^lam_{mu,nu}` for partitions (trailing zeros
/// allowed), counted as LR skew tableaux of shape `lam/mu` and content `nu`.
pub fn lr_partition(lam: &[i64], mu: &[i64], nu: &[i64]) -> u64 {
    let lam = trimmed(lam);
    let mu = trimmed(mu);
    let nu = trimmed(nu);
    if [lam, mu, nu].iter().any(|p| p.iter().any(|&x| x < 0)) {
        return 0;
    }
    let size = |p: &[i64]| p.iter().sum::<i64>();
    if size(lam) != size(mu) + size(nu) || mu.len() > lam.len() || nu.len() > lam.len() {
        return 0;
    }
    let mu_at = |r: usize| mu.get(r).copied().unwrap_or(0);
    if (0..lam.len()).any(|r| mu_at(r) > lam[r]) || nu.iter().zip(lam).any(|(a, b)| a > b) {
        return 0;
    }
    if nu.is_empty() {
        return 1;
    }
    // cells in reading order: top row first, each row right to left
    let mut cells = Vec::new();
    for (r, &len) in lam.iter().enumerate() {
        for c in (mu_at(r)..len).rev() {
            cells.push((r, c as usize));
        }
    }
    let width = lam[0] as usize;
    let mut grid = vec![vec![0usize; width]; lam.len()];
    let mut counts = vec![0i64; nu.len() + 1];
    let ctx = LrContext {
        lam,
        mu,
        nu,
        cells: &cells,
    };
    ctx.fill(0, &mut grid, &mut counts)
}

struct LrContext<'a> {
    lam: &'a [i64],
    mu: &'a [i64],
    nu: &'a [i64],
    cells: &'a [(usize, usize)],
}

impl LrContext<'_> {
    fn fill(&self, idx: usize, grid: &mut [Vec<usize>], counts: &mut [i64]) -> u64 {
        if idx == self.cells.len() {
            return 1;
        }
        let (r, c) = self.cells[idx];
        // weakly increasing along the row: bounded by the right neighbour
        let hi = if (c as i64) + 1 < self.lam[r] {
            grid[r][c + 1]
        } else {
            self.nu.len()
        };
        // strictly increasing down the column
        let above_in_shape = r > 0 && (c as i64) >= self.mu.get(r - 1).copied().unwrap_or(0);
        let lo = if above_in_shape { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in lo..=hi.min(r + 1) {
            if counts[v] >= self.nu[v - 1] {
                continue;
            }
            // lattice word condition on the reading word
            if v > 1 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            counts[v] += 1;
            grid[r][c] = v;
            total += self.fill(idx + 1, grid, counts);
            counts[v] -= 1;
        }
        grid[r][c] = 0;
        total
    }
}

fn lengths_error(what: &str, got: &[usize]) -> Error {
    Error::LengthMismatch(format!("{what}: lengths {got:?}"))
}

/// `c(lam | mu, nu)`: multiplicity of `mu ⊗ nu` in the restriction of `lam`
/// from `GL(m+n)` to `GL(m) x GL(n)`.
pub fn lr_splice(lam: &Signature, mu: &Signature, nu: &Signature) -> Result<u64> {
    if lam.level() != mu.level() + nu.level() {
        return Err(lengths_error("lr_splice", &[lam.level(), mu.level(), nu.level()]));
    }
    if lam.size() != mu.size() + nu.size() {
        return Ok(0);
    }
    let low = [lam, mu, nu]
        .iter()
        .filter_map(|s| s.min_part())
        .min()
        .unwrap_or(0)
        .min(0);
    Ok(lr_partition(
        shift(lam, -low).parts(),
        shift(mu, -low).parts(),
        shift(nu, -low).parts(),
    ))
}

/// Multiplicity of `lam` in `mu ⊗ nu` for `GL(n)`.
pub fn lr_tensor(lam: &Signature, mu: &Signature, nu: &Signature) -> Result<u64> {
    let n = lam.level();
    if mu.level() != n || nu.level() != n {
        return Err(lengths_error("lr_tensor", &[n, mu.level(), nu.level()]));
    }
    if lam.size() != mu.size() + nu.size() {
        return Ok(0);
    }
    if n == 0 {
        return Ok(1);
    }
    let a = mu.min_part().unwrap_or(0);
    let b = nu.min_part().unwrap_or(0);
    let lam_t = shift(lam, -(a + b));
    if lam_t.min_part().unwrap_or(0) < 0 {
        return Ok(0);
    }
    Ok(lr_partition(
        lam_t.parts(),
        shift(mu, -a).parts(),
        shift(nu, -b).parts(),
    ))
}

/// Partitions (as length-`len` tuples) that contain `base`, have `size`
/// boxes and first part at most `max_first`.
fn supersets(base: &[i64], len: usize, size: i64, max_first: i64) -> Vec<Vec<i64>> {
    fn rec(base: &[i64], len: usize, rem: i64, upper: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let i = cur.len();
        if i == len {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = base.get(i).copied().unwrap_or(0);
        for v in lo..=upper.min(rem) {
            // the remaining rows need at least their base entries
            let need: i64 = base.iter().skip(i + 1).sum();
            if rem - v < need {
                break;
            }
            cur.push(v);
            rec(base, len, rem - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(base, len, size, max_first, &mut Vec::new(), &mut out);
    out
}

/// Partitions of length `len` with every part bounded by `bound[i]`.
fn sub_partitions(bound: &[i64], len: usize) -> Vec<Vec<i64>> {
    fn rec(bound: &[i64], len: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let i = cur.len();
        if i == len {
            out.push(cur.clone());
            return;
        }
        let cap = bound.get(i).copied().unwrap_or(0);
        let upper = cur.last().copied().unwrap_or(cap).min(cap);
        for v in 0..=upper {
            cur.push(v);
            rec(bound, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(bound, len, &mut Vec::new(), &mut out);
    out
}

fn to_sig(parts: Vec<i64>, c: i64) -> Signature {
    Signature::new(parts.into_iter().map(|p| p + c).collect()).expect("shifted partition")
}

/// Every `(mu, nu, c(lam|mu,nu))` with `mu` of length `m` and a nonzero
/// coefficient, sorted. The list is finite for every `lam`.
pub fn splice_terms(lam: &Signature, m: usize) -> Result<Vec<(Signature, Signature, u64)>> {
    let total = lam.level();
    if m > total {
        return Err(lengths_error("splice_terms", &[total, m]));
    }
    let n = total - m;
    if total == 0 {
        return Ok(vec![(Signature::empty(), Signature::empty(), 1)]);
    }
    let s = lam.min_part().unwrap_or(0);
    let lam_t = shift(lam, -s);
    let lt = lam_t.parts();
    let mut out = Vec::new();
    for mu_t in sub_partitions(lt, m) {
        let rest = lam_t.size() - mu_t.iter().sum::<i64>();
        for nu_t in supersets(&[], n, rest, lt[0]) {
            if nu_t.iter().zip(lt).any(|(a, b)| a > b) {
                continue;
            }
            let c = lr_partition(lt, &mu_t, &nu_t);
            if c > 0 {
                out.push((to_sig(mu_t.clone(), s), to_sig(nu_t, s), c));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every `(lam, c)` with `lam` in the decomposition of `mu ⊗ nu` for `GL(n)`.
pub fn tensor_terms(mu: &Signature, nu: &Signature) -> Result<Vec<(Signature, u64)>> {
    let n = mu.level();
    if nu.level() != n {
        return Err(lengths_error("tensor_terms", &[n, nu.level()]));
    }
    if n == 0 {
        return Ok(vec![(Signature::empty(), 1)]);
    }
    let a = mu.min_part().unwrap_or(0);
    let b = nu.min_part().unwrap_or(0);
    let mu_t = shift(mu, -a);
    let nu_t = shift(nu, -b);
    let size = mu_t.size() + nu_t.size();
    let max_first = mu_t.parts()[0] + nu_t.parts()[0];
    let mut out = Vec::new();
    for lam_t in supersets(mu_t.parts(), n, size, max_first) {
        let c = lr_partition(&lam_t, mu_t.parts(), nu_t.parts());
        if c > 0 {
            out.push((to_sig(lam_t, a + b), c));
        }
    }
    out.sort();
    Ok(out)
}

/// Every `(lam, c(lam|mu,nu))` with all parts of `lam` at least `floor`.
///
/// Signatures with a part below `floor` span an ideal of the representation
/// ring, so this is the product computed in the quotient by that ideal. If
/// `mu` or `nu` has a part below `floor` the result is empty.
pub fn splice_products_above(mu: &Signature, nu: &Signature, floor: i64) -> Vec<(Signature, u64)> {
    let below = |s: &Signature| s.min_part().is_some_and(|p| p < floor);
    if below(mu) || below(nu) {
        return Vec::new();
    }
    let mu_t = shift(mu, -floor);
    let nu_t = shift(nu, -floor);
    let len = mu.level() + nu.level();
    let size = mu_t.size() + nu_t.size();
    let max_first = mu_t.max_part().unwrap_or(0) + nu_t.max_part().unwrap_or(0);
    let mut out = Vec::new();
    for lam_t in supersets(mu_t.parts(), len, size, max_first) {
        let c = lr_partition(&lam_t, mu_t.parts(), nu_t.parts());
        if c > 0 {
            out.push((to_sig(lam_t, floor), c));
        }
    }
    out.sort();
    out
}
