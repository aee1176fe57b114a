//! Weights, multi-indices and row-semistandard tableau combinatorics.
//!
//! Weights are compositions of `r` into `n` parts, listed lexicographically
//! decreasing from `(r, 0, ..., 0)`. Multi-indices have entries in `1..=n`.
//! Where a row number or value appears in an API it is 1-based, as in the
//! mathematical notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{floor_log, p_adic_digits};

/// A composition `λ = (λ_1, ..., λ_n)` of `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        Ok(Self { parts })
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn r(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_ν` with 1-based `ν`.
    pub fn part(&self, nu: usize) -> usize {
        self.parts[nu - 1]
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// `(r, 0, ..., 0)`, the dominance-maximal weight.
    pub fn top(n: usize, r: usize) -> Self {
        let mut parts = vec![0; n];
        parts[0] = r;
        Self { parts }
    }

    pub fn is_top(&self) -> bool {
        self.parts[1..].iter().all(|&x| x == 0)
    }

    fn prefix_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All compositions of `r` into `n` parts, lexicographically decreasing.
pub fn enumerate_weights(n: usize, r: usize) -> Vec<Composition> {
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(Composition { parts: cur.clone() });
            cur.pop();
            return;
        }
        for first in (0..=left).rev() {
            cur.push(first);
            rec(n, left - first, cur, out);
            cur.pop();
        }
    }
    assert!(n >= 1, "n must be positive");
    let mut out = Vec::new();
    rec(n, r, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `α ⊴ β`: every prefix sum of `α` is at most the matching prefix sum of `β`.
pub fn dominates(alpha: &Composition, beta: &Composition) -> Result<bool> {
    if alpha.n() != beta.n() || alpha.r() != beta.r() {
        return Err(Error::MismatchedShape(format!("{alpha} vs {beta}")));
    }
    Ok(alpha.prefix_sums().iter().zip(beta.prefix_sums()).all(|(a, b)| *a <= b))
}

/// `λ(ν, m)`: move `m` from part `ν + 1` to part `ν` (1-based `ν`).
pub fn shift_weight(lambda: &Composition, nu: usize, m: usize) -> Result<Composition> {
    let n = lambda.n();
    if nu == 0 || nu >= n {
        return Err(Error::OutOfRange(format!("ν = {nu} with n = {n}")));
    }
    if m > lambda.part(nu + 1) {
        return Err(Error::OutOfRange(format!("m = {m} exceeds λ_{} = {}", nu + 1, lambda.part(nu + 1))));
    }
    let mut parts = lambda.parts.clone();
    parts[nu - 1] += m;
    parts[nu] -= m;
    Ok(Composition { parts })
}

/// A multi-index `i = (i_1, ..., i_r)` with entries in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex {
    entries: Vec<usize>,
    n: usize,
}

impl MultiIndex {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::OutOfRange(format!("entry {bad} not in 1..={n}")));
        }
        Ok(Self { entries, n })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }

    /// Pointwise order `i ≤ j`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.entries.len() == other.entries.len() && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// The content of `i`: `α_k = #{ρ : i_ρ = k}`.
    pub fn weight(&self) -> Composition {
        let mut parts = vec![0; self.n];
        for &e in &self.entries {
            parts[e - 1] += 1;
        }
        Composition { parts }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `l(λ)`: `λ_1` ones, then `λ_2` twos, and so on.
pub fn canonical_index(lambda: &Composition) -> MultiIndex {
    let mut entries = Vec::with_capacity(lambda.r());
    for (k, &c) in lambda.parts.iter().enumerate() {
        entries.extend(std::iter::repeat(k + 1).take(c));
    }
    MultiIndex { entries, n: lambda.n() }
}

/// A filling read in rows of lengths `λ_1, ..., λ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauView {
    pub shape: Composition,
    pub filling: MultiIndex,
}

impl TableauView {
    pub fn new(shape: Composition, filling: MultiIndex) -> Result<Self> {
        if shape.r() != filling.r() || shape.n() != filling.n() {
            return Err(Error::MismatchedShape(format!("shape {shape} vs filling {filling}")));
        }
        Ok(Self { shape, filling })
    }

    /// Row `k` (1-based).
    pub fn row(&self, k: usize) -> &[usize] {
        let start: usize = self.shape.parts[..k - 1].iter().sum();
        &self.filling.entries[start..start + self.shape.part(k)]
    }

    pub fn is_row_semistandard(&self) -> bool {
        (1..=self.shape.n()).all(|k| self.row(k).windows(2).all(|w| w[0] <= w[1]))
    }

    /// Number of entries equal to `value` in row `row` (both 1-based).
    pub fn count(&self, row: usize, value: usize) -> usize {
        self.row(row).iter().filter(|&&e| e == value).count()
    }
}

/// Weakly increasing sequences of length `len` with entries in `lo..=hi`,
/// in lexicographic order.
fn monotone_rows(len: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for v in start..=hi {
            cur.push(v);
            rec(len, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, lo, hi, &mut Vec::with_capacity(len), &mut out);
    out
}

fn product_of_rows(n: usize, rows: Vec<Vec<Vec<usize>>>) -> Vec<MultiIndex> {
    let mut out = vec![Vec::new()];
    for choices in rows {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in &choices {
                let mut v: Vec<usize> = prefix.clone();
                v.extend_from_slice(c);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(|entries| MultiIndex { entries, n }).collect()
}

/// `I(λ)`: row-semistandard `i ≤ l(λ)`; row `k` takes values in `1..=k`.
pub fn i_set(lambda: &Composition) -> Vec<MultiIndex> {
    let n = lambda.n();
    let rows = (1..=n).map(|k| monotone_rows(lambda.part(k), 1, k)).collect();
    product_of_rows(n, rows)
}

/// `J(λ)`: row-semistandard `j ≥ l(λ)`; row `k` takes values in `k..=n`.
pub fn j_set(lambda: &Composition) -> Vec<MultiIndex> {
    let n = lambda.n();
    let rows = (1..=n).map(|k| monotone_rows(lambda.part(k), k, n)).collect();
    product_of_rows(n, rows)
}

pub fn semistandard_sets(lambda: &Composition) -> (Vec<MultiIndex>, Vec<MultiIndex>) {
    (i_set(lambda), j_set(lambda))
}

/// Counts and base-`p` digit data of `j ∈ J(λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowStats {
    /// Number of entries `n` in row `n - 1`.
    pub a: usize,
    /// Numbers of 2's and 3's in row 1 (only for `n = 3`).
    pub t2: Option<usize>,
    pub t3: Option<usize>,
    pub p: Option<u64>,
    /// `d` with `p^d ≤ λ_n < p^{d+1}`, when `λ_n > 0`.
    pub d: Option<u32>,
    /// Base-`p` digits of `a`, least significant first.
    pub digits: Vec<u64>,
    /// Least `t ≤ d` with digit `a_t < p - 1`.
    pub m: Option<u32>,
    /// Least `d' ≤ d + 1` at which the row-1 product does not vanish
    /// (`n = 3` with `a = p^{d+1} - 1` or `2p^{d+1} - 1` only).
    pub b: Option<u32>,
    /// Digits `0..=d` of `a` all equal `p - 1`.
    pub critical_digits: bool,
}

/// Row statistics of `j ∈ J(λ)`, with digit data when `p` is given.
pub fn row_stats(lambda: &Composition, j: &MultiIndex, p: Option<u64>) -> Result<RowStats> {
    let n = lambda.n();
    let t = TableauView::new(lambda.clone(), j.clone())?;
    if !t.is_row_semistandard() || !canonical_index(lambda).le(j) {
        return Err(Error::NotInJ(format!("{j} for λ = {lambda}")));
    }
    let a = if n >= 2 { t.count(n - 1, n) } else { 0 };
    let (t2, t3) = if n == 3 { (Some(t.count(1, 2)), Some(t.count(1, 3))) } else { (None, None) };
    let mut stats = RowStats { a, t2, t3, p, d: None, digits: Vec::new(), m: None, b: None, critical_digits: false };
    let Some(p) = p else {
        return Ok(stats);
    };
    stats.digits = p_adic_digits(a as u64, p);
    let lam_n = lambda.part(n);
    if lam_n == 0 {
        return Ok(stats);
    }
    let d = floor_log(lam_n as u64, p);
    stats.d = Some(d);
    let dig = |x: usize, k: u32| crate::scalars::digit(x as u64, p, k);
    stats.m = (0..=d).find(|&k| dig(a, k) < p - 1);
    stats.critical_digits = stats.m.is_none();
    if let (Some(t2), Some(t3)) = (t2, t3) {
        let big = (p as usize).pow(d + 1);
        if stats.critical_digits && (a == big - 1 || a == 2 * big - 1) {
            stats.b = if a == big - 1 {
                (0..=d).find(|&k| dig(t2, k) != p - 1 || dig(t3, k) != p - 1).or_else(|| {
                    (dig(t2, d + 1) != p - 1).then_some(d + 1)
                })
            } else {
                (0..=d + 1).find(|&k| dig(t3, k) != p - 1)
            };
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn mi(n: usize, e: &[usize]) -> MultiIndex {
        MultiIndex::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_weights(2, 2), vec![c(&[2, 0]), c(&[1, 1]), c(&[0, 2])]);
        assert_eq!(enumerate_weights(1, 5), vec![c(&[5])]);
        assert_eq!(enumerate_weights(3, 3).len(), 10);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=4 {
            for r in 0..=6 {
                let mut brute = Vec::new();
                let total = (r + 1usize).pow(n as u32);
                for code in 0..total {
                    let mut x = code;
                    let parts: Vec<usize> = (0..n)
                        .map(|_| {
                            let v = x % (r + 1);
                            x /= r + 1;
                            v
                        })
                        .collect();
                    if parts.iter().sum::<usize>() == r {
                        brute.push(c(&parts));
                    }
                }
                brute.sort();
                brute.reverse();
                assert_eq!(enumerate_weights(n, r), brute);
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&c(&[1, 1]), &c(&[2, 0])).unwrap());
        assert!(!dominates(&c(&[2, 0]), &c(&[1, 1])).unwrap());
        assert!(!dominates(&c(&[1, 0, 2]), &c(&[0, 2, 1])).unwrap());
        assert!(!dominates(&c(&[0, 2, 1]), &c(&[1, 0, 2])).unwrap());
        assert!(dominates(&c(&[1, 1]), &c(&[1, 1, 0])).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_weight(&c(&[1, 1]), 1, 1).unwrap(), c(&[2, 0]));
        assert_eq!(shift_weight(&c(&[2, 3, 1]), 2, 1).unwrap(), c(&[2, 4, 0]));
        assert_eq!(shift_weight(&c(&[2, 3, 1]), 1, 0).unwrap(), c(&[2, 3, 1]));
        assert!(shift_weight(&c(&[2, 3, 1]), 2, 2).is_err());
        assert!(shift_weight(&c(&[2, 3, 1]), 3, 0).is_err());
    }

    #[test]
    fn shifted_index_is_below() {
        for lam in enumerate_weights(3, 5) {
            for nu in 1..3 {
                for m in 0..=lam.part(nu + 1) {
                    let mu = shift_weight(&lam, nu, m).unwrap();
                    assert!(canonical_index(&mu).le(&canonical_index(&lam)));
                }
            }
        }
    }

    #[test]
    fn canonical_index_examples() {
        assert_eq!(canonical_index(&c(&[1, 1])), mi(2, &[1, 2]));
        assert_eq!(canonical_index(&c(&[2, 0, 1])), mi(3, &[1, 1, 3]));
        assert_eq!(canonical_index(&c(&[0, 3])), mi(2, &[2, 2, 2]));
        for lam in enumerate_weights(3, 4) {
            assert_eq!(canonical_index(&lam).weight(), lam);
        }
    }

    #[test]
    fn semistandard_examples() {
        let (i, j) = semistandard_sets(&c(&[1, 1]));
        assert_eq!(i, vec![mi(2, &[1, 1]), mi(2, &[1, 2])]);
        assert_eq!(j, vec![mi(2, &[1, 2]), mi(2, &[2, 2])]);
        for n in 1..=3 {
            for r in 1..=4 {
                for lam in enumerate_weights(n, r) {
                    assert_eq!(i_set(&lam).len() == 1, lam.is_top(), "{lam}");
                }
            }
        }
        assert_eq!(j_set(&c(&[3, 1])).len(), 4);
        assert_eq!(i_set(&c(&[0, 3])).len(), 4);
    }

    /// Brute force over all of `I(n, r)`.
    fn brute_sets(lam: &Composition) -> (Vec<MultiIndex>, Vec<MultiIndex>) {
        let n = lam.n();
        let r = lam.r();
        let l = canonical_index(lam);
        let (mut is, mut js) = (Vec::new(), Vec::new());
        for code in 0..n.pow(r as u32) {
            let mut x = code;
            let e: Vec<usize> = (0..r)
                .map(|_| {
                    let v = x % n + 1;
                    x /= n;
                    v
                })
                .collect();
            let m = mi(n, &e);
            let t = TableauView::new(lam.clone(), m.clone()).unwrap();
            if !t.is_row_semistandard() {
                continue;
            }
            if m.le(&l) {
                is.push(m.clone());
            }
            if l.le(&m) {
                js.push(m);
            }
        }
        is.sort();
        js.sort();
        (is, js)
    }

    #[test]
    fn semistandard_sets_match_brute_force() {
        for n in 1..=3 {
            for r in 1..=5 {
                for lam in enumerate_weights(n, r) {
                    let (mut i, mut j) = semistandard_sets(&lam);
                    i.sort();
                    j.sort();
                    assert_eq!((i, j), brute_sets(&lam), "{lam}");
                }
            }
        }
    }

    #[test]
    fn j_set_restriction_property() {
        for n in 2..=3 {
            for r in 1..=6 {
                for lam in enumerate_weights(n, r) {
                    let l = canonical_index(&lam);
                    for m in 0..=lam.part(n) {
                        let mu = shift_weight(&lam, n - 1, m).unwrap();
                        let mut filtered: Vec<_> = j_set(&mu).into_iter().filter(|j| l.le(j)).collect();
                        let mut direct = j_set(&lam);
                        filtered.sort();
                        direct.sort();
                        assert_eq!(filtered, direct, "λ={lam} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn weight_monotonicity() {
        for lam in enumerate_weights(3, 4) {
            let (is, js) = semistandard_sets(&lam);
            for i in &is {
                for j in &js {
                    if i.le(j) {
                        assert!(dominates(&j.weight(), &i.weight()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn row_stats_examples() {
        let s = row_stats(&c(&[3, 1]), &mi(2, &[1, 2, 2, 2]), Some(2)).unwrap();
        assert_eq!((s.a, s.digits.clone(), s.m), (2, vec![0, 1], Some(0)));
        let s = row_stats(&c(&[1, 1]), &mi(2, &[2, 2]), Some(3)).unwrap();
        assert_eq!((s.a, s.m), (1, Some(0)));
        let s = row_stats(&c(&[3, 1]), &mi(2, &[2, 2, 2, 2]), Some(2)).unwrap();
        assert_eq!((s.a, s.digits.clone(), s.d, s.m), (3, vec![1, 1], Some(0), None));
        assert!(s.critical_digits);
        assert!(row_stats(&c(&[3, 1]), &mi(2, &[2, 1, 2, 2]), Some(2)).is_err());
    }
}
