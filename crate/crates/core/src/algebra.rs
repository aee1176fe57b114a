//! The Borel-Schur algebra `S(B⁺, n, r)` and its idempotent truncations.
//!
//! A basis element `ξ_{i,j}` (with `i ≤ j`) is stored as the multiset of its
//! columns `(i_ρ, j_ρ)`, i.e. a count for each admissible column `(a, b)`
//! with `a ≤ b`. Two pairs give the same element iff they are related by a
//! simultaneous permutation, so the multiset is the canonical form.
//!
//! Products are computed from three-way contingency tables: for `x·y` the
//! right columns of `x` are matched against the left columns of `y` value by
//! value, and each matching `N(a, b, c)` contributes the element with column
//! counts `M(a, c) = Σ_b N(a, b, c)` with coefficient
//! `Π M(a, c)! / Π N(a, b, c)!`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::scalars::{binomial_u128, Field};
use crate::weights::{dominates, enumerate_weights, Composition, MultiIndex};

/// Largest `n^r` for which the tensor-space oracle may run.
pub const TENSOR_BUDGET: u64 = 1_000_000;

fn column_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Index of the column `(a, b)`, `1 ≤ a ≤ b ≤ n`, in lexicographic order.
fn column_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(1 <= a && a <= b && b <= n);
    (1..a).map(|k| n - k + 1).sum::<usize>() + (b - a)
}

fn columns_of(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(column_count(n));
    for a in 1..=n {
        for b in a..=n {
            out.push((a, b));
        }
    }
    out
}

/// Canonical form of `ξ_{i,j}`: column multiplicities, indexed as in
/// [`columns_of`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    n: usize,
    counts: Vec<u16>,
}

impl BasisElement {
    /// The element from its column multiplicities (lexicographic column order).
    pub fn from_counts(n: usize, counts: Vec<u16>) -> Self {
        assert_eq!(counts.len(), column_count(n));
        Self { n, counts }
    }

    /// Canonicalizes an arbitrary pair with `i ≤ j` pointwise.
    pub fn canonicalize_pair(i: &MultiIndex, j: &MultiIndex) -> Result<Self> {
        if i.r() != j.r() || i.n() != j.n() {
            return Err(Error::MismatchedShape(format!("{i} vs {j}")));
        }
        let n = i.n();
        let mut counts = vec![0u16; column_count(n)];
        for (pos, (&a, &b)) in i.entries().iter().zip(j.entries()).enumerate() {
            if a > b {
                return Err(Error::NotUpperTriangular(pos + 1));
            }
            counts[column_index(n, a, b)] += 1;
        }
        Ok(Self { n, counts })
    }

    /// `ξ_α`, the idempotent of weight `α`.
    pub fn idempotent(alpha: &Composition) -> Self {
        let n = alpha.n();
        let mut counts = vec![0u16; column_count(n)];
        for (k, &c) in alpha.parts().iter().enumerate() {
            counts[column_index(n, k + 1, k + 1)] = c as u16;
        }
        Self { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn counts(&self) -> &[u16] {
        &self.counts
    }

    pub fn count(&self, a: usize, b: usize) -> usize {
        self.counts[column_index(self.n, a, b)] as usize
    }

    /// Columns in lexicographic order, with repetition.
    pub fn columns(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.r());
        for (k, (a, b)) in columns_of(self.n).into_iter().enumerate() {
            for _ in 0..self.counts[k] {
                out.push((a, b));
            }
        }
        out
    }

    /// Canonical `(i, j)`: the sorted columns read off row by row.
    pub fn pair(&self) -> (MultiIndex, MultiIndex) {
        let cols = self.columns();
        let i = cols.iter().map(|c| c.0).collect();
        let j = cols.iter().map(|c| c.1).collect();
        (MultiIndex::new(self.n, i).expect("valid"), MultiIndex::new(self.n, j).expect("valid"))
    }

    /// Weight of `i`.
    pub fn left_weight(&self) -> Composition {
        let mut parts = vec![0; self.n];
        for (k, (a, _)) in columns_of(self.n).into_iter().enumerate() {
            parts[a - 1] += self.counts[k] as usize;
        }
        Composition::new(parts).expect("n ≥ 1")
    }

    /// Weight of `j`.
    pub fn right_weight(&self) -> Composition {
        let mut parts = vec![0; self.n];
        for (k, (_, b)) in columns_of(self.n).into_iter().enumerate() {
            parts[b - 1] += self.counts[k] as usize;
        }
        Composition::new(parts).expect("n ≥ 1")
    }

    pub fn is_idempotent(&self) -> bool {
        columns_of(self.n).iter().zip(&self.counts).all(|((a, b), &c)| a == b || c == 0)
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.pair();
        write!(f, "ξ[{i},{j}]")
    }
}

impl Serialize for BasisElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (i, j) = self.pair();
        let mut st = s.serialize_struct("BasisElement", 2)?;
        st.serialize_field("i", i.entries())?;
        st.serialize_field("j", j.entries())?;
        st.end()
    }
}

/// All basis elements of `S(B⁺, n, r)` in lexicographically decreasing
/// order of column counts (so `(r,0,...)`-heavy elements come first).
pub fn enumerate_basis(n: usize, r: usize) -> Vec<BasisElement> {
    let k = column_count(n);
    let mut out = Vec::new();
    for counts in enumerate_weights(k, r) {
        let counts = counts.parts().iter().map(|&c| c as u16).collect();
        out.push(BasisElement { n, counts });
    }
    out
}

/// Nonnegative integer matrices with the given row and column sums.
fn contingency_tables(rows: &[u16], cols: &[u16]) -> Vec<Vec<u16>> {
    fn rec(rows: &[u16], cols: &mut Vec<u16>, r: usize, c: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        let nc = cols.len();
        if r == rows.len() {
            if cols.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        if c == nc - 1 {
            if left > cols[c] {
                return;
            }
            cols[c] -= left;
            cur.push(left);
            let next_left = rows.get(r + 1).copied().unwrap_or(0);
            rec(rows, cols, r + 1, 0, next_left, cur, out);
            cur.pop();
            cols[c] += left;
            return;
        }
        let hi = left.min(cols[c]);
        for v in 0..=hi {
            cols[c] -= v;
            cur.push(v);
            rec(rows, cols, r, c + 1, left - v, cur, out);
            cur.pop();
            cols[c] += v;
        }
    }
    let mut out = Vec::new();
    if rows.is_empty() || cols.is_empty() {
        if rows.iter().all(|&x| x == 0) && cols.iter().all(|&x| x == 0) {
            out.push(Vec::new());
        }
        return out;
    }
    if rows.iter().map(|&x| x as u32).sum::<u32>() != cols.iter().map(|&x| x as u32).sum::<u32>() {
        return out;
    }
    let mut cols = cols.to_vec();
    rec(rows, &mut cols, 0, 0, rows[0], &mut Vec::new(), &mut out);
    out
}

fn multinomial(parts: &[u16]) -> u128 {
    let mut total = 0u64;
    let mut acc = 1u128;
    for &p in parts {
        total += p as u64;
        acc = acc
            .checked_mul(binomial_u128(total, p as u64).expect("binomial overflow"))
            .expect("structure constant exceeds u128");
    }
    acc
}

/// Integer structure constants of `x·y` in `S(B⁺, n, r)` over `Z`.
pub fn structure_constants(x: &BasisElement, y: &BasisElement) -> Vec<(BasisElement, u128)> {
    assert_eq!(x.n, y.n);
    let n = x.n;
    if x.right_weight() != y.left_weight() {
        return Vec::new();
    }
    // For each middle value b: tables N_b(a, c) with a ≤ b ≤ c.
    let mut per_b: Vec<(Vec<usize>, Vec<usize>, Vec<Vec<u16>>)> = Vec::with_capacity(n);
    for b in 1..=n {
        let avals: Vec<usize> = (1..=b).filter(|&a| x.count(a, b) > 0).collect();
        let cvals: Vec<usize> = (b..=n).filter(|&c| y.count(b, c) > 0).collect();
        let rows: Vec<u16> = avals.iter().map(|&a| x.count(a, b) as u16).collect();
        let cols: Vec<u16> = cvals.iter().map(|&c| y.count(b, c) as u16).collect();
        per_b.push((avals, cvals, contingency_tables(&rows, &cols)));
    }
    let k = column_count(n);
    let mut acc: BTreeMap<Vec<u16>, u128> = BTreeMap::new();
    let mut choice = vec![0usize; n];
    loop {
        let mut m = vec![0u16; k];
        // entries N(a, b, c) grouped per output column (a, c)
        let mut blocks: Vec<Vec<u16>> = vec![Vec::new(); k];
        for (b, (avals, cvals, tables)) in per_b.iter().enumerate() {
            let t = &tables[choice[b]];
            for (ia, &a) in avals.iter().enumerate() {
                for (ic, &c) in cvals.iter().enumerate() {
                    let v = t[ia * cvals.len() + ic];
                    if v > 0 {
                        let col = column_index(n, a, c);
                        m[col] += v;
                        blocks[col].push(v);
                    }
                }
            }
        }
        let mut coeff = 1u128;
        for blk in &blocks {
            coeff = coeff.checked_mul(multinomial(blk)).expect("structure constant exceeds u128");
        }
        *acc.entry(m).or_insert(0) += coeff;
        // next choice
        let mut pos = 0;
        loop {
            if pos == n {
                return acc.into_iter().map(|(counts, c)| (BasisElement { n, counts }, c)).collect();
            }
            choice[pos] += 1;
            if choice[pos] < per_b[pos].2.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Sparse element of an algebra: sorted `(basis index, coefficient)` pairs
/// with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCombination<E> {
    terms: Vec<(usize, E)>,
}

impl<E: Clone> LinearCombination<E> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn basis<F: Field<Elem = E>>(field: &F, idx: usize) -> Self {
        Self { terms: vec![(idx, field.one())] }
    }

    /// From arbitrary terms; merges duplicates and drops zeros.
    pub fn from_terms<F: Field<Elem = E>>(field: &F, terms: impl IntoIterator<Item = (usize, E)>) -> Self {
        let mut map: BTreeMap<usize, E> = BTreeMap::new();
        for (k, v) in terms {
            let e = map.entry(k).or_insert_with(|| field.zero());
            *e = field.add(e, &v);
        }
        Self { terms: map.into_iter().filter(|(_, v)| !field.is_zero(v)).collect() }
    }

    pub fn terms(&self) -> &[(usize, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient<F: Field<Elem = E>>(&self, field: &F, idx: usize) -> E {
        match self.terms.binary_search_by_key(&idx, |t| t.0) {
            Ok(p) => self.terms[p].1.clone(),
            Err(_) => field.zero(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        Self::from_terms(field, self.terms.iter().map(|(k, v)| (*k, field.mul(v, s))))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        Self::from_terms(field, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, dim: usize) -> Vec<E> {
        let mut v = vec![field.zero(); dim];
        for (k, c) in &self.terms {
            v[*k] = c.clone();
        }
        v
    }
}

/// One arrow of the algebra's quiver: an element of `ξ_target A ξ_source`
/// spanning a complement of `rad²` in `rad` together with its siblings.
#[derive(Debug, Clone)]
pub struct ArrowElement {
    pub source: usize,
    pub target: usize,
    pub basis_index: usize,
}

/// `S(B⁺, n, r)` or an idempotent truncation `eAe` of it, over a field.
///
/// The truncation by a weight set `S` keeps the basis elements whose left
/// and right weights both lie in `S`; its unit is `e = Σ_{α∈S} ξ_α`.
pub struct Algebra<F: Field> {
    field: F,
    n: usize,
    r: usize,
    weights: Vec<Composition>,
    weight_index: HashMap<Composition, usize>,
    basis: Vec<BasisElement>,
    index: HashMap<BasisElement, usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    blocks: HashMap<(usize, usize), Vec<usize>>,
    idempotents: Vec<usize>,
    truncated: bool,
    cache: RwLock<HashMap<(u32, u32), Arc<[(usize, F::Elem)]>>>,
    arrows: OnceLock<Vec<ArrowElement>>,
}

impl<F: Field> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(n={}, r={}, char={}, dim={}, weights={})", self.n, self.r, self.field.characteristic(), self.basis.len(), self.weights.len())
    }
}

impl<F: Field> Algebra<F> {
    /// `S(B⁺, n, r)`.
    pub fn new(field: F, n: usize, r: usize) -> Result<Self> {
        if n == 0 || r == 0 {
            return Err(Error::OutOfRange(format!("need n ≥ 1 and r ≥ 1, got n={n}, r={r}")));
        }
        let weights = enumerate_weights(n, r);
        let basis = enumerate_basis(n, r);
        Ok(Self::assemble(field, n, r, weights, basis, false))
    }

    fn assemble(field: F, n: usize, r: usize, weights: Vec<Composition>, basis: Vec<BasisElement>, truncated: bool) -> Self {
        let weight_index: HashMap<Composition, usize> = weights.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let index: HashMap<BasisElement, usize> = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        let left: Vec<usize> = basis.iter().map(|b| weight_index[&b.left_weight()]).collect();
        let right: Vec<usize> = basis.iter().map(|b| weight_index[&b.right_weight()]).collect();
        let mut blocks: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for k in 0..basis.len() {
            blocks.entry((left[k], right[k])).or_default().push(k);
        }
        let idempotents = weights.iter().map(|w| index[&BasisElement::idempotent(w)]).collect();
        Self {
            field,
            n,
            r,
            weights,
            weight_index,
            basis,
            index,
            left,
            right,
            blocks,
            idempotents,
            truncated,
            cache: RwLock::new(HashMap::new()),
            arrows: OnceLock::new(),
        }
    }

    /// `eAe` for `e = Σ_{α∈S} ξ_α`, any weight subset `S` (order of `S` kept).
    pub fn truncate_weights(&self, subset: &[Composition]) -> Result<Self> {
        for w in subset {
            if !self.weight_index.contains_key(w) {
                return Err(Error::OutOfRange(format!("weight {w} not a vertex of this algebra")));
            }
        }
        let keep: std::collections::HashSet<&Composition> = subset.iter().collect();
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(k, _)| keep.contains(&self.weights[self.left[*k]]) && keep.contains(&self.weights[self.right[*k]]))
            .map(|(_, b)| b.clone())
            .collect();
        Ok(Self::assemble(self.field.clone(), self.n, self.r, subset.to_vec(), basis, true))
    }

    /// `eAe` for a dominance coideal `S`.
    pub fn truncate_idempotent(&self, coideal: &[Composition]) -> Result<Self> {
        check_coideal(&self.weights, coideal)?;
        let ordered: Vec<Composition> = self.weights.iter().filter(|w| coideal.contains(w)).cloned().collect();
        self.truncate_weights(&ordered)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn weights(&self) -> &[Composition] {
        &self.weights
    }

    pub fn weight(&self, id: usize) -> &Composition {
        &self.weights[id]
    }

    pub fn weight_id(&self, w: &Composition) -> Option<usize> {
        self.weight_index.get(w).copied()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, k: usize) -> &BasisElement {
        &self.basis[k]
    }

    pub fn index_of(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Weight id of `ξ_β` with `x ∈ ξ_β A`.
    pub fn left_of(&self, k: usize) -> usize {
        self.left[k]
    }

    /// Weight id of `ξ_α` with `x ∈ A ξ_α`.
    pub fn right_of(&self, k: usize) -> usize {
        self.right[k]
    }

    /// Basis of `ξ_left A ξ_right`.
    pub fn block(&self, left: usize, right: usize) -> &[usize] {
        self.blocks.get(&(left, right)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Basis index of `ξ_α`.
    pub fn idempotent(&self, weight_id: usize) -> usize {
        self.idempotents[weight_id]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Basis of `A ξ_α` (elements with right weight `α`).
    pub fn right_ideal_basis(&self, weight_id: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.right[k] == weight_id).collect()
    }

    /// Basis of `ξ_α A` (elements with left weight `α`).
    pub fn left_ideal_basis(&self, weight_id: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.left[k] == weight_id).collect()
    }

    pub fn unit(&self) -> LinearCombination<F::Elem> {
        LinearCombination::from_terms(&self.field, self.idempotents.iter().map(|&k| (k, self.field.one())))
    }

    /// Product of two basis elements by basis index.
    pub fn mul_basis(&self, x: usize, y: usize) -> Arc<[(usize, F::Elem)]> {
        if self.right[x] != self.left[y] {
            return Arc::from(Vec::new());
        }
        let key = (x as u32, y as u32);
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return v.clone();
        }
        let terms: Vec<(usize, F::Elem)> = structure_constants(&self.basis[x], &self.basis[y])
            .into_iter()
            .filter_map(|(b, c)| {
                let v = self.field.from_u128(c);
                if self.field.is_zero(&v) {
                    return None;
                }
                let k = self.index.get(&b).copied().expect("product stays in the truncation");
                Some((k, v))
            })
            .collect();
        let arc: Arc<[(usize, F::Elem)]> = Arc::from(terms);
        self.cache.write().expect("cache lock").insert(key, arc.clone());
        arc
    }

    /// `multiply(x, y)` on canonical elements.
    pub fn multiply(&self, x: &BasisElement, y: &BasisElement) -> Result<LinearCombination<F::Elem>> {
        let xi = self.index_of(x).ok_or(Error::MismatchedAlgebra)?;
        let yi = self.index_of(y).ok_or(Error::MismatchedAlgebra)?;
        Ok(LinearCombination { terms: self.mul_basis(xi, yi).to_vec() })
    }

    pub fn mul(&self, a: &LinearCombination<F::Elem>, b: &LinearCombination<F::Elem>) -> LinearCombination<F::Elem> {
        let f = &self.field;
        let mut terms = Vec::new();
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                let c = f.mul(cx, cy);
                for (z, cz) in self.mul_basis(*x, *y).iter() {
                    terms.push((*z, f.mul(&c, cz)));
                }
            }
        }
        LinearCombination::from_terms(f, terms)
    }

    /// Product computed by composing endomorphisms of `(Kⁿ)^{⊗r}`.
    ///
    /// `ξ_{i,j}` sends `e_k` to the sum of `e_h` over `(h, k)` in the orbit of
    /// `(i, j)`; the coefficient of `ξ_z` is read at the canonical pair of `z`
    /// and checked to be constant on the orbit.
    pub fn tensor_oracle_multiply(&self, x: usize, y: usize) -> Result<LinearCombination<F::Elem>> {
        let needed = (self.n as u64).saturating_pow(self.r as u32);
        if needed > TENSOR_BUDGET {
            return Err(Error::DimensionBudgetExceeded { needed, budget: TENSOR_BUDGET });
        }
        let terms = tensor_product_counts(&self.basis[x], &self.basis[y]);
        let terms = terms.into_iter().map(|(b, c)| {
            let k = self.index.get(&b).copied().expect("oracle product stays in the algebra");
            (k, self.field.from_u128(c))
        });
        Ok(LinearCombination::from_terms(&self.field, terms))
    }

    /// Radical basis (non-idempotent elements) and the top idempotents.
    pub fn radical_split(&self) -> (Vec<usize>, Vec<usize>) {
        let rad = (0..self.dim()).filter(|&k| !self.basis[k].is_idempotent()).collect();
        (rad, self.idempotents.clone())
    }

    /// Least `k` with `rad^k = 0`, computed by repeated multiplication.
    pub fn radical_nilpotency_index(&self) -> usize {
        let f = &self.field;
        let (rad, _) = self.radical_split();
        let dim = self.dim();
        let rad_space: Vec<Vec<F::Elem>> = rad.iter().map(|&k| LinearCombination::basis(f, k).to_dense(f, dim)).collect();
        let mut power = Subspace::span(f, dim, &rad_space);
        let mut k = 1;
        while power.dim() > 0 {
            let mut next = Vec::new();
            for v in power.basis() {
                let a = dense_to_lc(f, v);
                for &y in &rad {
                    let prod = self.mul(&a, &LinearCombination::basis(f, y));
                    if !prod.is_zero() {
                        next.push(prod.to_dense(f, dim));
                    }
                }
            }
            power = Subspace::span(f, dim, &next);
            k += 1;
        }
        k
    }

    /// Arrow elements: for each pair of distinct weights, basis elements of
    /// `ξ_μ rad ξ_λ` independent modulo `ξ_μ rad² ξ_λ`.
    pub fn arrows(&self) -> &[ArrowElement] {
        self.arrows.get_or_init(|| self.compute_arrows())
    }

    fn compute_arrows(&self) -> Vec<ArrowElement> {
        let f = &self.field;
        let (rad, _) = self.radical_split();
        let mut by_left: HashMap<usize, Vec<usize>> = HashMap::new();
        for &y in &rad {
            by_left.entry(self.left[y]).or_default().push(y);
        }
        // rad² per block, as vectors in block coordinates.
        let mut sq: HashMap<(usize, usize), Vec<LinearCombination<F::Elem>>> = HashMap::new();
        for &x in &rad {
            if let Some(ys) = by_left.get(&self.right[x]) {
                for &y in ys {
                    let prod = self.mul_basis(x, y);
                    if !prod.is_empty() {
                        sq.entry((self.left[x], self.right[y])).or_default().push(LinearCombination { terms: prod.to_vec() });
                    }
                }
            }
        }
        let mut keys: Vec<(usize, usize)> = self.blocks.keys().copied().filter(|(a, b)| a != b).collect();
        keys.sort_by_key(|&(t, s)| (s, t));
        let mut out = Vec::new();
        for (target, source) in keys {
            let blk = &self.blocks[&(target, source)];
            let pos: HashMap<usize, usize> = blk.iter().enumerate().map(|(p, &k)| (k, p)).collect();
            let to_block = |lc: &LinearCombination<F::Elem>| {
                let mut v = vec![f.zero(); blk.len()];
                for (k, c) in lc.terms() {
                    v[pos[k]] = c.clone();
                }
                v
            };
            let mut space = Subspace::zero(blk.len());
            for lc in sq.get(&(target, source)).map(|v| v.as_slice()).unwrap_or(&[]) {
                space.push(f, &to_block(lc));
            }
            for &k in blk {
                let v = to_block(&LinearCombination::basis(f, k));
                if space.push(f, &v) {
                    out.push(ArrowElement { source, target, basis_index: k });
                }
            }
        }
        out
    }

    /// Checks `(xy)z = x(yz)` on the given triples.
    pub fn check_associativity(&self, triples: &[(usize, usize, usize)]) -> bool {
        let f = &self.field;
        triples.iter().all(|&(x, y, z)| {
            let xy = LinearCombination { terms: self.mul_basis(x, y).to_vec() };
            let yz = LinearCombination { terms: self.mul_basis(y, z).to_vec() };
            self.mul(&xy, &LinearCombination::basis(f, z)) == self.mul(&LinearCombination::basis(f, x), &yz)
        })
    }
}

fn dense_to_lc<F: Field>(f: &F, v: &[F::Elem]) -> LinearCombination<F::Elem> {
    LinearCombination::from_terms(f, v.iter().cloned().enumerate())
}

/// Validates that `subset` is upward closed under dominance in `all`.
pub fn check_coideal(all: &[Composition], subset: &[Composition]) -> Result<()> {
    for lam in subset {
        if !all.contains(lam) {
            return Err(Error::NotACoideal(format!("{lam} is not a weight")));
        }
        for mu in all {
            if dominates(lam, mu)? && !subset.contains(mu) {
                return Err(Error::NotACoideal(format!("{lam} ⊴ {mu} but {mu} is missing")));
            }
        }
    }
    Ok(())
}

/// The upward closure of `generators` under dominance.
pub fn coideal_closure(all: &[Composition], generators: &[Composition]) -> Vec<Composition> {
    all.iter()
        .filter(|mu| generators.iter().any(|g| dominates(g, mu).unwrap_or(false)))
        .cloned()
        .collect()
}

/// Base-`n` code of a multi-index, most significant entry first.
pub fn encode(entries: &[usize], n: usize) -> u64 {
    entries.iter().fold(0u64, |acc, &e| acc * n as u64 + (e - 1) as u64)
}

/// Distinct arrangements of a column multiset as `(i, j)` pairs: the
/// nonzero entries of the tensor-space operator of `x`.
pub fn arrangements(x: &BasisElement) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn rec(cols: &[(usize, usize)], counts: &mut [u16], len: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        if cur.len() == len {
            out.push((cur.iter().map(|c| c.0).collect(), cur.iter().map(|c| c.1).collect()));
            return;
        }
        for k in 0..cols.len() {
            if counts[k] == 0 {
                continue;
            }
            counts[k] -= 1;
            cur.push(cols[k]);
            rec(cols, counts, len, cur, out);
            cur.pop();
            counts[k] += 1;
        }
    }
    let cols = columns_of(x.n);
    let mut counts = x.counts.clone();
    let mut out = Vec::new();
    rec(&cols, &mut counts, x.r(), &mut Vec::new(), &mut out);
    out
}

/// Integer structure constants by composing tensor-space operators.
pub fn tensor_product_counts(x: &BasisElement, y: &BasisElement) -> Vec<(BasisElement, u128)> {
    let n = x.n;
    let mut x_by_m: HashMap<u64, Vec<Vec<usize>>> = HashMap::new();
    for (h, m) in arrangements(x) {
        x_by_m.entry(encode(&m, n)).or_default().push(h);
    }
    let mut entries: HashMap<(u64, u64), (u128, Vec<usize>, Vec<usize>)> = HashMap::new();
    for (m, k) in arrangements(y) {
        if let Some(hs) = x_by_m.get(&encode(&m, n)) {
            for h in hs {
                let key = (encode(h, n), encode(&k, n));
                let e = entries.entry(key).or_insert_with(|| (0, h.clone(), k.clone()));
                e.0 += 1;
            }
        }
    }
    let mut by_element: BTreeMap<BasisElement, (u128, usize)> = BTreeMap::new();
    for (_, (c, h, k)) in entries {
        let hi = MultiIndex::new(n, h).expect("valid");
        let ki = MultiIndex::new(n, k).expect("valid");
        let z = BasisElement::canonicalize_pair(&hi, &ki).expect("Borel product");
        let e = by_element.entry(z).or_insert((c, 0));
        assert_eq!(e.0, c, "operator entries differ within one orbit");
        e.1 += 1;
    }
    by_element
        .into_iter()
        .map(|(z, (c, seen))| {
            assert_eq!(seen, arrangements(&z).len(), "orbit only partially covered");
            (z, c)
        })
        .collect()
}

/// True iff `basis_map` is a bijection `A → B` transporting every structure
/// constant exactly.
pub fn structure_iso_check<F: Field>(a: &Algebra<F>, b: &Algebra<F>, basis_map: &dyn Fn(&BasisElement) -> Option<BasisElement>) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", a.dim(), b.dim())));
    }
    let mut image = Vec::with_capacity(a.dim());
    let mut seen = vec![false; b.dim()];
    for x in a.basis() {
        let Some(y) = basis_map(x).and_then(|y| b.index_of(&y)) else {
            return Ok(false);
        };
        if seen[y] {
            return Ok(false);
        }
        seen[y] = true;
        image.push(y);
    }
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let lhs: Vec<(usize, F::Elem)> = a.mul_basis(x, y).iter().map(|(z, c)| (image[*z], c.clone())).collect();
            let lhs = LinearCombination::from_terms(a.field(), lhs);
            let rhs = LinearCombination { terms: b.mul_basis(image[x], image[y]).to_vec() };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Basis bijection induced by a vertex map when every block of `a` is at
/// most one-dimensional (as for `n = 2`).
pub fn basis_map_from_vertices<F: Field>(
    a: &Algebra<F>,
    b: &Algebra<F>,
    vertex_map: &dyn Fn(&Composition) -> Composition,
) -> Option<HashMap<BasisElement, BasisElement>> {
    let mut out = HashMap::new();
    for (k, x) in a.basis().iter().enumerate() {
        if a.block(a.left_of(k), a.right_of(k)).len() != 1 {
            return None;
        }
        let l = b.weight_id(&vertex_map(&x.left_weight()))?;
        let r = b.weight_id(&vertex_map(&x.right_weight()))?;
        let blk = b.block(l, r);
        if blk.len() != 1 {
            return None;
        }
        out.insert(x.clone(), b.element(blk[0]).clone());
    }
    Some(out)
}

/// Embeds `S(B⁺, m, r)` basis elements into `S(B⁺, n, r)`, `m ≤ n`, by
/// reading the same columns in the larger alphabet.
pub fn embed_columns(x: &BasisElement, n: usize) -> BasisElement {
    let (i, j) = x.pair();
    let i = MultiIndex::new(n, i.entries().to_vec()).expect("m ≤ n");
    let j = MultiIndex::new(n, j.entries().to_vec()).expect("m ≤ n");
    BasisElement::canonicalize_pair(&i, &j).expect("upper triangular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use crate::weights::canonical_index;

    fn mi(n: usize, e: &[usize]) -> MultiIndex {
        MultiIndex::new(n, e.to_vec()).unwrap()
    }

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let x = BasisElement::canonicalize_pair(&mi(2, &[2, 1]), &mi(2, &[2, 1])).unwrap();
        assert_eq!(x.columns(), vec![(1, 1), (2, 2)]);
        assert_eq!(x.pair(), (mi(2, &[1, 2]), mi(2, &[1, 2])));
        let y = BasisElement::canonicalize_pair(&mi(2, &[1, 2]), &mi(2, &[2, 2])).unwrap();
        assert_eq!(y.columns(), vec![(1, 2), (2, 2)]);
        assert_eq!(BasisElement::canonicalize_pair(&mi(2, &[1, 2]), &mi(2, &[2, 1])), Err(Error::NotUpperTriangular(2)));
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(enumerate_basis(2, 1).len(), 3);
        assert_eq!(enumerate_basis(2, 2).len(), 6);
        assert_eq!(enumerate_basis(3, 2).len(), 21);
        for r in 1..=8 {
            assert_eq!(enumerate_basis(2, r).len(), (r + 1) * (r + 2) / 2);
        }
    }

    #[test]
    fn contingency_table_counts() {
        // 2x2 tables with margins (2,1)/(1,2): two tables.
        assert_eq!(contingency_tables(&[2, 1], &[1, 2]).len(), 2);
        assert_eq!(contingency_tables(&[3], &[1, 2]), vec![vec![1, 2]]);
        assert!(contingency_tables(&[1], &[2]).is_empty());
    }

    #[test]
    fn binomial_product_vanishes_in_char2() {
        let x = BasisElement::canonicalize_pair(&mi(2, &[1, 1]), &mi(2, &[1, 2])).unwrap();
        let y = BasisElement::canonicalize_pair(&mi(2, &[1, 2]), &mi(2, &[2, 2])).unwrap();
        let z = BasisElement::canonicalize_pair(&mi(2, &[1, 1]), &mi(2, &[2, 2])).unwrap();
        assert_eq!(structure_constants(&x, &y), vec![(z.clone(), 2)]);
        assert_eq!(tensor_product_counts(&x, &y), vec![(z.clone(), 2)]);
        let a2 = Algebra::new(PrimeField::new(2).unwrap(), 2, 2).unwrap();
        assert!(a2.multiply(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn idempotent_action() {
        let a = Algebra::new(Rationals, 3, 3).unwrap();
        for w in 0..a.weights().len() {
            let e = a.idempotent(w);
            for k in 0..a.dim() {
                let prod = a.mul_basis(e, k);
                if a.left_of(k) == w {
                    assert_eq!(prod.to_vec(), vec![(k, Rationals.one())]);
                } else {
                    assert!(prod.is_empty());
                }
            }
        }
    }

    #[test]
    fn mismatched_middle_is_zero() {
        let a = Algebra::new(Rationals, 2, 3).unwrap();
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                if a.right_of(x) != a.left_of(y) {
                    assert!(a.mul_basis(x, y).is_empty());
                    assert!(a.tensor_oracle_multiply(x, y).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn radical_examples() {
        let a = Algebra::new(Rationals, 2, 1).unwrap();
        let (rad, top) = a.radical_split();
        assert_eq!((rad.len(), top.len()), (1, 2));
        let a = Algebra::new(Rationals, 1, 4).unwrap();
        assert!(a.radical_split().0.is_empty());
        let a = Algebra::new(Rationals, 2, 2).unwrap();
        let (rad, top) = a.radical_split();
        assert_eq!((rad.len(), top.len()), (3, 3));
        // rad is nilpotent with index at most the number of weights
        assert!(a.radical_nilpotency_index() <= a.weights().len());
    }

    #[test]
    fn coideal_validation() {
        let a = Algebra::new(Rationals, 3, 3).unwrap();
        let gen = c(&[1, 2, 0]);
        let closure = coideal_closure(a.weights(), &[gen.clone()]);
        assert!(a.truncate_idempotent(&closure).is_ok());
        let complement: Vec<Composition> = a.weights().iter().filter(|w| !closure.contains(w)).cloned().collect();
        assert!(matches!(a.truncate_idempotent(&complement), Err(Error::NotACoideal(_))));
        let full = a.truncate_idempotent(a.weights()).unwrap();
        assert_eq!(full.dim(), a.dim());
    }

    #[test]
    fn arrows_for_n2_char0_are_linear() {
        let a = Algebra::new(Rationals, 2, 3).unwrap();
        let arrows = a.arrows();
        assert_eq!(arrows.len(), 3);
        for arr in arrows {
            // (r-i, i) -> (r-i+1, i-1)
            assert_eq!(a.weight(arr.target).part(1), a.weight(arr.source).part(1) + 1);
            let lam = a.weight(arr.source);
            let mu = a.weight(arr.target);
            let expect = BasisElement::canonicalize_pair(&canonical_index(mu), &canonical_index(lam)).unwrap();
            assert_eq!(a.element(arr.basis_index), &expect);
        }
    }

    #[test]
    fn embedding_identity_check() {
        let a = Algebra::new(Rationals, 2, 3).unwrap();
        let b = Algebra::new(Rationals, 2, 3).unwrap();
        assert!(structure_iso_check(&a, &b, &|x| Some(x.clone())).unwrap());
    }
}
