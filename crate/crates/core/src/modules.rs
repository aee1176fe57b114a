//! Finite-dimensional modules over an [`Algebra`].
//!
//! Every module is weight graded: each basis vector lies in `ξ_α M` for a
//! single weight `α`, and the action of every algebra basis element is stored
//! as a column-sparse matrix. A left module stores `ρ(x)` with `x·v = ρ(x)v`;
//! a right module stores `R(x)` with `v·x = R(x)v`, so `R(xy) = R(y)R(x)`.
//!
//! Homomorphisms are solved weight block by weight block against the arrow
//! elements of the algebra, which together with the idempotents generate it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{arrangements, encode, Algebra, LinearCombination, TENSOR_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::{inverse, is_invertible, kernel, rank, solve, Matrix, Subspace};
use crate::scalars::Field;
use crate::weights::MultiIndex;

/// Largest module dimension the indecomposability test accepts.
pub const MODULE_DIM_BUDGET: usize = 4096;
/// Largest `|End(M)|` searched exhaustively for idempotents.
pub const IDEMPOTENT_ENUMERATION_BUDGET: u64 = 1 << 20;
/// Random endomorphisms tried for a Fitting splitting.
pub const FITTING_SAMPLES: usize = 64;
/// Largest `|Hom(M, N)|` searched exhaustively for an isomorphism.
pub const ISO_ENUMERATION_BUDGET: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Column-sparse matrix: `columns[c]` lists the nonzero `(row, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    columns: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, E)>>) -> Self {
        Self { rows, columns }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, m: &Matrix<E>) -> Self {
        let mut columns = vec![Vec::new(); m.cols()];
        for r in 0..m.rows() {
            for (c, v) in m.row(r).iter().enumerate() {
                if !field.is_zero(v) {
                    columns[c].push((r, v.clone()));
                }
            }
        }
        Self { rows: m.rows(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, E)] {
        &self.columns[c]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut out = vec![field.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if field.is_zero(x) {
                continue;
            }
            for (r, a) in &self.columns[c] {
                out[*r] = field.mul_add(a, x, &out[*r]);
            }
        }
        out
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Matrix<E> {
        let mut m = Matrix::zeros(field, self.rows, self.cols());
        for (r, c, v) in self.entries() {
            m.set(r, c, v.clone());
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            columns[r].push((c, v.clone()));
        }
        Self { rows: self.cols(), columns }
    }
}

/// A weight-graded module over an algebra, stored by the action of every
/// basis element.
#[derive(Clone)]
pub struct Representation<F: Field> {
    algebra: Arc<Algebra<F>>,
    side: Side,
    weights: Vec<usize>,
    action: Vec<SparseMatrix<F::Elem>>,
    labels: Vec<String>,
}

impl<F: Field> fmt::Debug for Representation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation({:?}, dim={}, weight dims={:?})", self.side, self.dim(), self.weight_dims())
    }
}

/// `(source weight, target weight)` of the operator of basis element `x`.
fn operator_weights<F: Field>(alg: &Algebra<F>, side: Side, x: usize) -> (usize, usize) {
    match side {
        Side::Left => (alg.right_of(x), alg.left_of(x)),
        Side::Right => (alg.left_of(x), alg.right_of(x)),
    }
}

fn positions_by_weight(weights: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); count];
    for (k, &w) in weights.iter().enumerate() {
        out[w].push(k);
    }
    out
}

impl<F: Field> Representation<F> {
    /// Validates shapes and weight compatibility of the given action.
    pub fn new(
        algebra: Arc<Algebra<F>>,
        side: Side,
        weights: Vec<usize>,
        action: Vec<SparseMatrix<F::Elem>>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let dim = weights.len();
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!("{} action matrices for an algebra of dimension {}", action.len(), algebra.dim())));
        }
        if labels.len() != dim {
            return Err(Error::DimensionMismatch(format!("{} labels for dimension {dim}", labels.len())));
        }
        if let Some(&w) = weights.iter().find(|&&w| w >= algebra.weights().len()) {
            return Err(Error::OutOfRange(format!("weight id {w}")));
        }
        for (x, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!("action of basis element {x} is {}x{}", m.rows(), m.cols())));
            }
            let (s, t) = operator_weights(&algebra, side, x);
            for (r, c, _) in m.entries() {
                if weights[c] != s || weights[r] != t {
                    return Err(Error::Verification(format!("action of {} leaves its weight block", algebra.element(x))));
                }
            }
        }
        let rep = Self { algebra, side, weights, action, labels };
        if !rep.unit_acts_as_identity() {
            return Err(Error::Verification("Σ ξ_α does not act as the identity".into()));
        }
        Ok(rep)
    }

    /// Builds the action from `column(x, c)`, the image of basis vector `c`
    /// under basis element `x`; only called when `c` has the right weight.
    pub fn from_fn(
        algebra: Arc<Algebra<F>>,
        side: Side,
        weights: Vec<usize>,
        labels: Vec<String>,
        column: impl Fn(usize, usize) -> Vec<(usize, F::Elem)>,
    ) -> Result<Self> {
        let dim = weights.len();
        let by_weight = positions_by_weight(&weights, algebra.weights().len());
        let action = (0..algebra.dim())
            .map(|x| {
                let (s, _) = operator_weights(&algebra, side, x);
                let mut cols = vec![Vec::new(); dim];
                for &c in &by_weight[s] {
                    cols[c] = column(x, c);
                }
                SparseMatrix::from_columns(dim, cols)
            })
            .collect();
        Self::new(algebra, side, weights, action, labels)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Weight id of each basis vector.
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn action(&self, x: usize) -> &SparseMatrix<F::Elem> {
        &self.action[x]
    }

    pub fn operator_weights(&self, x: usize) -> (usize, usize) {
        operator_weights(&self.algebra, self.side, x)
    }

    /// Basis positions spanning `ξ_α M`.
    pub fn weight_space(&self, weight_id: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.weights[k] == weight_id).collect()
    }

    /// `dim ξ_α M` for every weight id.
    pub fn weight_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.algebra.weights().len()];
        for &w in &self.weights {
            out[w] += 1;
        }
        out
    }

    fn by_weight(&self) -> Vec<Vec<usize>> {
        positions_by_weight(&self.weights, self.algebra.weights().len())
    }

    /// Action of a linear combination of basis elements on a vector.
    pub fn act(&self, a: &LinearCombination<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (x, c) in a.terms() {
            let w = self.action[*x].apply(f, v);
            for (o, y) in out.iter_mut().zip(&w) {
                if !f.is_zero(y) {
                    *o = f.mul_add(c, y, o);
                }
            }
        }
        out
    }

    fn unit_acts_as_identity(&self) -> bool {
        let f = self.field();
        self.algebra.idempotents().iter().enumerate().all(|(w, &e)| {
            let m = &self.action[e];
            (0..self.dim()).all(|c| {
                let col = m.column(c);
                if self.weights[c] == w {
                    col.len() == 1 && col[0].0 == c && f.is_one(&col[0].1)
                } else {
                    col.is_empty()
                }
            })
        })
    }

    /// Checks the module axiom on `samples` random composable pairs, or on
    /// every pair when `samples` is `None`.
    pub fn verify_action(&self, samples: Option<usize>, seed: u64) -> Result<()> {
        let alg = &self.algebra;
        if !self.unit_acts_as_identity() {
            return Err(Error::Verification("Σ ξ_α does not act as the identity".into()));
        }
        let by_right: Vec<Vec<usize>> = (0..alg.weights().len()).map(|w| alg.right_ideal_basis(w)).collect();
        let pairs: Vec<(usize, usize)> = match samples {
            None => (0..alg.dim()).flat_map(|y| by_right[alg.left_of(y)].iter().map(move |&x| (x, y))).collect(),
            Some(k) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..k)
                    .map(|_| {
                        let y = rng.gen_range(0..alg.dim());
                        let xs = &by_right[alg.left_of(y)];
                        (xs[rng.gen_range(0..xs.len())], y)
                    })
                    .collect()
            }
        };
        for (x, y) in pairs {
            if !self.check_pair(x, y) {
                return Err(Error::Verification(format!("action fails on {} · {}", alg.element(x), alg.element(y))));
            }
        }
        Ok(())
    }

    fn check_pair(&self, x: usize, y: usize) -> bool {
        let f = self.field();
        let prod = LinearCombination::from_terms(f, self.algebra.mul_basis(x, y).iter().cloned());
        let (first, second) = match self.side {
            Side::Left => (y, x),
            Side::Right => (x, y),
        };
        let (s, _) = self.operator_weights(first);
        (0..self.dim()).filter(|&c| self.weights[c] == s).all(|c| {
            let mut e = vec![f.zero(); self.dim()];
            e[c] = f.one();
            let lhs = self.action[second].apply(f, &self.action[first].apply(f, &e));
            lhs == self.act(&prod, &e)
        })
    }

    /// Splits a vector into its weight components.
    pub fn weight_components(&self, v: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let mut out: BTreeMap<usize, Vec<F::Elem>> = BTreeMap::new();
        for (k, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            out.entry(self.weights[k]).or_insert_with(|| vec![f.zero(); v.len()])[k] = x.clone();
        }
        out.into_values().collect()
    }

    /// `D(M) = Hom_K(M, K)` on the opposite side, in the dual basis.
    pub fn dualize(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            side: self.side.opposite(),
            weights: self.weights.clone(),
            action: self.action.iter().map(|m| m.transpose()).collect(),
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) {
            return Err(Error::MismatchedAlgebra);
        }
        if self.side != other.side {
            return Err(Error::Verification("direct sum of modules on different sides".into()));
        }
        let d = self.dim();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut cols = a.columns.clone();
                cols.extend(b.columns.iter().map(|col| col.iter().map(|(r, v)| (r + d, v.clone())).collect()));
                SparseMatrix::from_columns(d + other.dim(), cols)
            })
            .collect();
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Ok(Self { algebra: self.algebra.clone(), side: self.side, weights, action, labels })
    }

    /// Weight-homogeneous basis of the span of `vectors`, which must be a
    /// submodule (closed under the idempotents at least).
    fn homogeneous_span(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F::Elem> {
        let f = self.field();
        let mut sub = Subspace::zero(self.dim());
        for v in vectors {
            for part in self.weight_components(v) {
                sub.push(f, &part);
            }
        }
        sub
    }

    /// The submodule spanned by `vectors`, with its inclusion matrix
    /// (`dim M × dim U`, columns are the chosen basis).
    pub fn submodule(&self, vectors: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F::Elem>)> {
        let f = self.field();
        let sub = self.homogeneous_span(vectors);
        let basis = sub.basis().to_vec();
        let weights: Vec<usize> = basis.iter().map(|v| self.weights[v.iter().position(|x| !f.is_zero(x)).expect("nonzero")]).collect();
        let labels = (0..basis.len()).map(|k| format!("u{k}")).collect();
        for x in 0..self.algebra.dim() {
            for v in &basis {
                if !sub.contains(f, &self.action[x].apply(f, v)) {
                    return Err(Error::Verification(format!("span is not closed under {}", self.algebra.element(x))));
                }
            }
        }
        let rep = Self::from_fn(self.algebra.clone(), self.side, weights, labels, |x, c| {
            let img = self.action[x].apply(f, &basis[c]);
            let co = sub.coordinates(f, &img).expect("closure checked");
            co.into_iter().enumerate().filter(|(_, v)| !f.is_zero(v)).collect()
        })?;
        let inclusion = Matrix::from_columns(f, self.dim(), &basis);
        Ok((rep, inclusion))
    }

    /// `M / U` for the submodule spanned by `vectors`, with the projection
    /// matrix (`dim(M/U) × dim M`). The quotient basis is the images of the
    /// standard basis vectors outside the pivots of `U`.
    pub fn quotient(&self, vectors: &[Vec<F::Elem>]) -> Result<(Self, Matrix<F::Elem>)> {
        let f = self.field();
        let sub = self.homogeneous_span(vectors);
        for x in 0..self.algebra.dim() {
            for v in sub.basis() {
                if !sub.contains(f, &self.action[x].apply(f, v)) {
                    return Err(Error::Verification(format!("span is not closed under {}", self.algebra.element(x))));
                }
            }
        }
        let keep = sub.complement_coordinates();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let reduce = |v: &[F::Elem]| -> Vec<(usize, F::Elem)> {
            let (rem, _) = sub.reduce(f, v);
            rem.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(k, x)| (pos[&k], x)).collect()
        };
        let weights: Vec<usize> = keep.iter().map(|&c| self.weights[c]).collect();
        let labels = keep.iter().map(|&c| self.labels[c].clone()).collect();
        let rep = Self::from_fn(self.algebra.clone(), self.side, weights, labels, |x, c| {
            let mut e = vec![f.zero(); self.dim()];
            e[keep[c]] = f.one();
            reduce(&self.action[x].apply(f, &e))
        })?;
        let mut proj = Matrix::zeros(f, keep.len(), self.dim());
        for c in 0..self.dim() {
            let mut e = vec![f.zero(); self.dim()];
            e[c] = f.one();
            for (r, v) in reduce(&e) {
                proj.set(r, c, v);
            }
        }
        Ok((rep, proj))
    }

    /// Basis of the submodule generated by `vectors`.
    pub fn generated_submodule(&self, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let mut span = Subspace::zero(self.dim());
        for v in vectors {
            for x in 0..self.algebra.dim() {
                let w = self.action[x].apply(f, v);
                if w.iter().any(|c| !f.is_zero(c)) {
                    span.push(f, &w);
                }
            }
        }
        span.basis().to_vec()
    }

    /// `eM` as a module over the truncation `sub = eAe`.
    pub fn restrict(&self, sub: &Arc<Algebra<F>>) -> Result<Self> {
        let alg = &self.algebra;
        let wmap: Vec<Option<usize>> = alg.weights().iter().map(|w| sub.weight_id(w)).collect();
        let keep: Vec<usize> = (0..self.dim()).filter(|&k| wmap[self.weights[k]].is_some()).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut parent = Vec::with_capacity(sub.dim());
        for y in sub.basis() {
            parent.push(alg.index_of(y).ok_or(Error::MismatchedAlgebra)?);
        }
        let weights = keep.iter().map(|&c| wmap[self.weights[c]].expect("kept")).collect();
        let labels = keep.iter().map(|&c| self.labels[c].clone()).collect();
        Self::from_fn(sub.clone(), self.side, weights, labels, |y, c| {
            self.action[parent[y]].column(keep[c]).iter().filter_map(|(r, v)| pos.get(r).map(|&p| (p, v.clone()))).collect()
        })
    }

    /// JSON export: `{dim, side, weights, labels, action}` with the action
    /// keyed by basis element and given as `[row, col, value]` triples.
    pub fn to_json(&self) -> Value {
        let f = self.field();
        let mut action = serde_json::Map::new();
        for (x, m) in self.action.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let entries: Vec<Value> = m.entries().map(|(r, c, v)| json!([r, c, f.to_scalar(v).to_string()])).collect();
            action.insert(self.algebra.element(x).to_string(), Value::Array(entries));
        }
        json!({
            "dim": self.dim(),
            "side": self.side,
            "weights": self.weights.iter().map(|&w| self.algebra.weight(w).to_string()).collect::<Vec<_>>(),
            "labels": self.labels,
            "action": action,
        })
    }
}

/// The one-dimensional module `K_λ`.
pub fn simple_module<F: Field>(alg: &Arc<Algebra<F>>, weight_id: usize, side: Side) -> Representation<F> {
    let f = alg.field().clone();
    let e = alg.idempotent(weight_id);
    let label = format!("K{}", alg.weight(weight_id));
    Representation::from_fn(alg.clone(), side, vec![weight_id], vec![label], |x, _| if x == e { vec![(0, f.one())] } else { Vec::new() })
        .expect("simple module is well formed")
}

/// `Aξ_λ` as a left module, basis `{ξ_{i,l(λ)}}` in algebra order.
pub fn projective_cover<F: Field>(alg: &Arc<Algebra<F>>, weight_id: usize) -> Representation<F> {
    ideal_module(alg, weight_id, Side::Left)
}

/// `ξ_λA` as a right module, basis `{ξ_{l(λ),j}}` in algebra order.
pub fn transpose_module<F: Field>(alg: &Arc<Algebra<F>>, weight_id: usize) -> Representation<F> {
    ideal_module(alg, weight_id, Side::Right)
}

/// Indecomposable projective for `side`: `Aξ_λ` (left) or `ξ_λA` (right).
pub fn ideal_module<F: Field>(alg: &Arc<Algebra<F>>, weight_id: usize, side: Side) -> Representation<F> {
    let basis = match side {
        Side::Left => alg.right_ideal_basis(weight_id),
        Side::Right => alg.left_ideal_basis(weight_id),
    };
    let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let weights = basis
        .iter()
        .map(|&b| match side {
            Side::Left => alg.left_of(b),
            Side::Right => alg.right_of(b),
        })
        .collect();
    let labels = basis.iter().map(|&b| alg.element(b).to_string()).collect();
    Representation::from_fn(alg.clone(), side, weights, labels, |x, c| {
        let prod = match side {
            Side::Left => alg.mul_basis(x, basis[c]),
            Side::Right => alg.mul_basis(basis[c], x),
        };
        prod.iter().map(|(z, v)| (pos[z], v.clone())).collect()
    })
    .expect("ideal module is well formed")
}

/// The algebra as a module over itself.
pub fn regular_module<F: Field>(alg: &Arc<Algebra<F>>, side: Side) -> Representation<F> {
    let basis: Vec<usize> = (0..alg.dim()).collect();
    let weights = basis
        .iter()
        .map(|&b| match side {
            Side::Left => alg.left_of(b),
            Side::Right => alg.right_of(b),
        })
        .collect();
    let labels = basis.iter().map(|&b| alg.element(b).to_string()).collect();
    Representation::from_fn(alg.clone(), side, weights, labels, |x, c| {
        let prod = match side {
            Side::Left => alg.mul_basis(x, c),
            Side::Right => alg.mul_basis(c, x),
        };
        prod.to_vec()
    })
    .expect("regular module is well formed")
}

/// `(Kⁿ)^{⊗r}` restricted from `S(n, r)`: `ξ_{i,j}` sends `e_k` to the sum
/// of `e_h` over the pairs `(h, k)` in the orbit of `(i, j)`.
pub fn tensor_space_module<F: Field>(alg: &Arc<Algebra<F>>) -> Result<Representation<F>> {
    if alg.is_truncated() {
        return Err(Error::MismatchedAlgebra);
    }
    let (n, r) = (alg.n(), alg.r());
    let needed = (n as u64).saturating_pow(r as u32);
    if needed > TENSOR_BUDGET {
        return Err(Error::DimensionBudgetExceeded { needed, budget: TENSOR_BUDGET });
    }
    let dim = needed as usize;
    let mut indices = Vec::with_capacity(dim);
    for code in 0..dim {
        let mut e = vec![0; r];
        let mut c = code;
        for slot in e.iter_mut().rev() {
            *slot = c % n + 1;
            c /= n;
        }
        indices.push(MultiIndex::new(n, e).expect("valid"));
    }
    let weights = indices.iter().map(|i| alg.weight_id(&i.weight()).expect("weight of a multi-index")).collect();
    let labels = indices.iter().map(|i| format!("e{i}")).collect();
    let f = alg.field().clone();
    let ops: Vec<HashMap<u64, Vec<u64>>> = alg
        .basis()
        .iter()
        .map(|x| {
            let mut m: HashMap<u64, Vec<u64>> = HashMap::new();
            for (h, k) in arrangements(x) {
                m.entry(encode(&k, n)).or_default().push(encode(&h, n));
            }
            m
        })
        .collect();
    Representation::from_fn(alg.clone(), Side::Left, weights, labels, |x, c| {
        ops[x].get(&(c as u64)).map(|hs| hs.iter().map(|&h| (h as usize, f.one())).collect()).unwrap_or_default()
    })
}

/// A module homomorphism given by its matrix (`dim target × dim source`).
#[derive(Clone)]
pub struct ModuleMap<F: Field> {
    source: Arc<Representation<F>>,
    target: Arc<Representation<F>>,
    matrix: Matrix<F::Elem>,
}

impl<F: Field> fmt::Debug for ModuleMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {})", self.source.dim(), self.target.dim())
    }
}

impl<F: Field> ModuleMap<F> {
    /// Checks shape and that the matrix intertwines every basis element.
    pub fn new(source: Arc<Representation<F>>, target: Arc<Representation<F>>, matrix: Matrix<F::Elem>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, matrix)?;
        if !m.is_homomorphism() {
            return Err(Error::Verification("matrix does not intertwine the actions".into()));
        }
        Ok(m)
    }

    /// Checks shape only.
    pub fn new_unchecked(source: Arc<Representation<F>>, target: Arc<Representation<F>>, matrix: Matrix<F::Elem>) -> Result<Self> {
        if !Arc::ptr_eq(source.algebra(), target.algebra()) {
            return Err(Error::MismatchedAlgebra);
        }
        if source.side() != target.side() {
            return Err(Error::Verification("map between modules on different sides".into()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} for a map {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn source(&self) -> &Arc<Representation<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Representation<F>> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.matrix
    }

    pub fn is_homomorphism(&self) -> bool {
        let f = self.source.field();
        let alg = self.source.algebra();
        (0..alg.dim()).all(|x| {
            let (s, _) = self.source.operator_weights(x);
            (0..self.source.dim()).filter(|&c| self.source.weights()[c] == s).all(|c| {
                let mut e = vec![f.zero(); self.source.dim()];
                e[c] = f.one();
                let lhs = self.matrix.apply(f, &self.source.action(x).apply(f, &e));
                let rhs = self.target.action(x).apply(f, &self.matrix.column(c));
                lhs == rhs
            })
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&other.target, &self.source) && other.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        let f = self.source.field();
        Self::new_unchecked(other.source.clone(), self.target.clone(), self.matrix.mul(f, &other.matrix))
    }

    pub fn rank(&self) -> usize {
        rank(self.source.field(), &self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        kernel(self.source.field(), &self.matrix)
    }

    pub fn image(&self) -> Vec<Vec<F::Elem>> {
        let f = self.source.field();
        let cols: Vec<Vec<F::Elem>> = (0..self.matrix.cols()).map(|c| self.matrix.column(c)).collect();
        Subspace::span(f, self.target.dim(), &cols).basis().to_vec()
    }
}

fn check_compatible<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<()> {
    if !Arc::ptr_eq(m.algebra(), n.algebra()) {
        return Err(Error::MismatchedAlgebra);
    }
    if m.side() != n.side() {
        return Err(Error::Verification("modules on different sides".into()));
    }
    Ok(())
}

/// Linear system for `Hom(M, N)`: unknowns are the weight blocks of `X`.
struct HomSystem {
    /// `(weight, offset)` for each block; block `w` is `|N_w| × |M_w|`.
    offsets: Vec<usize>,
    m_pos: Vec<Vec<usize>>,
    n_pos: Vec<Vec<usize>>,
    unknowns: usize,
}

impl HomSystem {
    fn new<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Self {
        let m_pos = m.by_weight();
        let n_pos = n.by_weight();
        let mut offsets = Vec::with_capacity(m_pos.len());
        let mut total = 0;
        for w in 0..m_pos.len() {
            offsets.push(total);
            total += m_pos[w].len() * n_pos[w].len();
        }
        Self { offsets, m_pos, n_pos, unknowns: total }
    }

    fn var(&self, w: usize, a: usize, b: usize) -> usize {
        self.offsets[w] + a * self.m_pos[w].len() + b
    }

    /// Echelon space of the equations `X_t Op_M(x) = Op_N(x) X_s` over all
    /// arrows `x`.
    fn equations<F: Field>(&self, m: &Representation<F>, n: &Representation<F>) -> Subspace<F::Elem> {
        let f = m.field();
        let alg = m.algebra();
        let m_index: Vec<usize> = index_within(&self.m_pos, m.dim());
        let n_index: Vec<usize> = index_within(&self.n_pos, n.dim());
        let mut space = Subspace::zero(self.unknowns);
        for arrow in alg.arrows() {
            if space.dim() == self.unknowns {
                break;
            }
            let x = arrow.basis_index;
            let (s, t) = m.operator_weights(x);
            if self.n_pos[t].is_empty() || self.m_pos[s].is_empty() {
                continue;
            }
            for (b, &mc) in self.m_pos[s].iter().enumerate() {
                // one equation per (row of N_t, column mc)
                let mut eqs: Vec<HashMap<usize, F::Elem>> = vec![HashMap::new(); self.n_pos[t].len()];
                for (mr, c) in m.action(x).column(mc) {
                    let bb = m_index[*mr];
                    for (a, eq) in eqs.iter_mut().enumerate() {
                        let v = self.var(t, a, bb);
                        let cur = eq.remove(&v).unwrap_or_else(|| f.zero());
                        eq.insert(v, f.add(&cur, c));
                    }
                }
                for (a2, &nc) in self.n_pos[s].iter().enumerate() {
                    for (nr, c) in n.action(x).column(nc) {
                        let a = n_index[*nr];
                        let v = self.var(s, a2, b);
                        let eq = &mut eqs[a];
                        let cur = eq.remove(&v).unwrap_or_else(|| f.zero());
                        eq.insert(v, f.sub(&cur, c));
                    }
                }
                for eq in eqs {
                    if eq.values().all(|c| f.is_zero(c)) {
                        continue;
                    }
                    let mut row = vec![f.zero(); self.unknowns];
                    for (v, c) in eq {
                        row[v] = c;
                    }
                    space.push(f, &row);
                }
            }
        }
        space
    }

    fn to_matrix<F: Field>(&self, f: &F, sol: &[F::Elem], m_dim: usize, n_dim: usize) -> Matrix<F::Elem> {
        let mut out = Matrix::zeros(f, n_dim, m_dim);
        for w in 0..self.m_pos.len() {
            for (a, &r) in self.n_pos[w].iter().enumerate() {
                for (b, &c) in self.m_pos[w].iter().enumerate() {
                    out.set(r, c, sol[self.var(w, a, b)].clone());
                }
            }
        }
        out
    }
}

fn index_within(pos: &[Vec<usize>], dim: usize) -> Vec<usize> {
    let mut out = vec![0; dim];
    for p in pos {
        for (k, &c) in p.iter().enumerate() {
            out[c] = k;
        }
    }
    out
}

/// Basis of `Hom_A(M, N)` as `dim N × dim M` matrices.
pub fn hom_basis<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<Vec<Matrix<F::Elem>>> {
    check_compatible(m, n)?;
    let f = m.field();
    let sys = HomSystem::new(m, n);
    let eqs = sys.equations(m, n);
    let mat = if eqs.dim() == 0 {
        Matrix::zeros(f, 0, sys.unknowns)
    } else {
        Matrix::from_rows(eqs.dim(), sys.unknowns, eqs.basis().concat())
    };
    Ok(kernel(f, &mat).iter().map(|s| sys.to_matrix(f, s, m.dim(), n.dim())).collect())
}

pub fn hom_dim<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<usize> {
    check_compatible(m, n)?;
    let sys = HomSystem::new(m, n);
    Ok(sys.unknowns - sys.equations(m, n).dim())
}

/// Socle, radical submodule and top of a module, with simple
/// multiplicities keyed by weight id.
#[derive(Debug, Clone)]
pub struct SocleRadicalTop<E> {
    pub socle: Vec<Vec<E>>,
    pub radical: Vec<Vec<E>>,
    pub socle_multiplicities: BTreeMap<usize, usize>,
    pub top_multiplicities: BTreeMap<usize, usize>,
}

impl<E> SocleRadicalTop<E> {
    pub fn socle_dim(&self) -> usize {
        self.socle.len()
    }

    pub fn top_dim(&self) -> usize {
        self.top_multiplicities.values().sum()
    }
}

/// `soc M` is the common kernel of the arrows, `rad M` the span of their
/// images, `top M = M / rad M`.
pub fn socle_radical_top<F: Field>(m: &Representation<F>) -> SocleRadicalTop<F::Elem> {
    let f = m.field();
    let alg = m.algebra();
    let pos = m.by_weight();
    let mut socle = Vec::new();
    let mut socle_multiplicities = BTreeMap::new();
    let mut radical_space = Subspace::zero(m.dim());
    for (w, cols) in pos.iter().enumerate() {
        if cols.is_empty() {
            continue;
        }
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for arrow in alg.arrows() {
            let x = arrow.basis_index;
            if m.operator_weights(x).0 != w {
                continue;
            }
            let op = m.action(x);
            let mut block: BTreeMap<usize, Vec<F::Elem>> = BTreeMap::new();
            for (b, &c) in cols.iter().enumerate() {
                for (r, v) in op.column(c) {
                    block.entry(*r).or_insert_with(|| vec![f.zero(); cols.len()])[b] = v.clone();
                }
                let img = op.apply(f, &unit(f, m.dim(), c));
                radical_space.push(f, &img);
            }
            rows.extend(block.into_values());
        }
        let mat = Matrix::from_rows(rows.len(), cols.len(), rows.concat());
        let ker = kernel(f, &mat);
        if !ker.is_empty() {
            socle_multiplicities.insert(w, ker.len());
        }
        for v in ker {
            let mut full = vec![f.zero(); m.dim()];
            for (b, &c) in cols.iter().enumerate() {
                full[c] = v[b].clone();
            }
            socle.push(full);
        }
    }
    let radical = radical_space.basis().to_vec();
    let mut rad_dims = vec![0usize; pos.len()];
    for v in &radical {
        let k = v.iter().position(|x| !f.is_zero(x)).expect("nonzero");
        rad_dims[m.weights()[k]] += 1;
    }
    let top_multiplicities = pos
        .iter()
        .enumerate()
        .filter(|(w, cols)| cols.len() > rad_dims[*w])
        .map(|(w, cols)| (w, cols.len() - rad_dims[w]))
        .collect();
    SocleRadicalTop { socle, radical, socle_multiplicities, top_multiplicities }
}

fn unit<F: Field>(f: &F, dim: usize, k: usize) -> Vec<F::Elem> {
    let mut e = vec![f.zero(); dim];
    e[k] = f.one();
    e
}

/// Evidence for an indecomposability verdict.
#[derive(Debug, Clone)]
pub enum Certificate<E> {
    ZeroModule,
    SimpleSocle,
    SimpleTop,
    /// `End(M) = K·1 ⊕ N` with `N` a nilpotent ideal.
    LocalEndomorphismRing { end_dim: usize },
    /// A nontrivial idempotent endomorphism.
    Idempotent(Matrix<E>),
    /// No nontrivial idempotent among all `count` endomorphisms.
    ExhaustiveSearch { count: u64 },
    Inconclusive { reason: String },
}

#[derive(Debug, Clone)]
pub struct Indecomposability<E> {
    /// `None` when the test was inconclusive.
    pub verdict: Option<bool>,
    pub certificate: Certificate<E>,
}

fn matrix_power_stable<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut p = a.clone();
    let mut e = 1usize;
    while e < a.rows() {
        p = p.mul(f, &p);
        e *= 2;
    }
    p
}

/// Projection onto `im ψ^N` along `ker ψ^N`.
fn fitting_idempotent<F: Field>(f: &F, psi_n: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let dim = psi_n.rows();
    let cols: Vec<Vec<F::Elem>> = (0..dim).map(|c| psi_n.column(c)).collect();
    let image = Subspace::span(f, dim, &cols).basis().to_vec();
    let ker = kernel(f, psi_n);
    let k = image.len();
    let mut basis = image;
    basis.extend(ker);
    let p = Matrix::from_columns(f, dim, &basis);
    let p_inv = inverse(f, &p).expect("Fitting decomposition");
    let mut d = Matrix::zeros(f, dim, dim);
    for i in 0..k {
        d.set(i, i, f.one());
    }
    p.mul(f, &d).mul(f, &p_inv)
}

enum Shift<E> {
    Nilpotent(Matrix<E>),
    Split(Matrix<E>),
    Unresolved,
}

/// Looks for `c` with `φ - c` nilpotent, or a `c` exposing a Fitting split.
fn classify_endomorphism<F: Field>(f: &F, weights: &[usize], phi: &Matrix<F::Elem>) -> Shift<F::Elem> {
    let dim = phi.rows();
    let mut candidates: Vec<F::Elem> = Vec::new();
    let mut push = |c: F::Elem| {
        if !candidates.contains(&c) {
            candidates.push(c);
        }
    };
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &w) in weights.iter().enumerate() {
        blocks.entry(w).or_default().push(k);
    }
    for idx in blocks.values() {
        let mut tr = f.zero();
        for &k in idx {
            tr = f.add(&tr, phi.get(k, k));
        }
        if let Some(inv) = f.inv(&f.from_i64(idx.len() as i64)) {
            push(f.mul(&tr, &inv));
        }
    }
    for k in 0..dim {
        push(phi.get(k, k).clone());
    }
    if let Some(all) = f.elements().filter(|e| e.len() <= 64) {
        for c in all {
            push(c);
        }
    }
    let id = Matrix::identity(f, dim);
    for c in candidates {
        let psi = phi.sub(f, &id.scale(f, &c));
        let psi_n = matrix_power_stable(f, &psi);
        let r = rank(f, &psi_n);
        if r == 0 {
            return Shift::Nilpotent(psi);
        }
        if r < dim {
            return Shift::Split(fitting_idempotent(f, &psi_n));
        }
    }
    Shift::Unresolved
}

fn flatten<E: Clone>(m: &Matrix<E>) -> Vec<E> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

fn unflatten<E: Clone>(v: &[E], dim: usize) -> Matrix<E> {
    Matrix::from_rows(dim, dim, v.to_vec())
}

/// True iff `S` is closed under products and nilpotent.
fn is_nilpotent_ideal<F: Field>(f: &F, s: &[Matrix<F::Elem>], dim: usize) -> bool {
    let space = Subspace::span(f, dim * dim, &s.iter().map(flatten).collect::<Vec<_>>());
    let gens = space.basis().to_vec();
    for a in &gens {
        for b in &gens {
            if !space.contains(f, &flatten(&unflatten(a, dim).mul(f, &unflatten(b, dim)))) {
                return false;
            }
        }
    }
    let mut power = gens.clone();
    for _ in 0..=gens.len() {
        if power.is_empty() {
            return true;
        }
        let mut prods = Vec::new();
        for a in &power {
            for b in &gens {
                prods.push(flatten(&unflatten(a, dim).mul(f, &unflatten(b, dim))));
            }
        }
        power = Subspace::span(f, dim * dim, &prods).basis().to_vec();
    }
    power.is_empty()
}

/// Decides whether `M` is indecomposable.
///
/// Cheap sufficient conditions (simple socle or top) are tried first, then
/// `End(M)` is computed and each basis endomorphism `φ` is shifted by a
/// scalar: a shift that is singular but not nilpotent yields a Fitting
/// splitting; if every basis element is scalar plus nilpotent and those
/// nilpotent parts form a nilpotent ideal, `End(M)` is local.
pub fn is_indecomposable<F: Field>(m: &Representation<F>, seed: u64) -> Indecomposability<F::Elem> {
    let f = m.field();
    let dim = m.dim();
    if dim == 0 {
        return Indecomposability { verdict: Some(false), certificate: Certificate::ZeroModule };
    }
    if dim > MODULE_DIM_BUDGET {
        return Indecomposability {
            verdict: None,
            certificate: Certificate::Inconclusive { reason: format!("dimension {dim} exceeds budget {MODULE_DIM_BUDGET}") },
        };
    }
    let srt = socle_radical_top(m);
    if srt.socle_dim() == 1 {
        return Indecomposability { verdict: Some(true), certificate: Certificate::SimpleSocle };
    }
    if srt.top_dim() == 1 {
        return Indecomposability { verdict: Some(true), certificate: Certificate::SimpleTop };
    }
    let end = hom_basis(m, m).expect("same module");
    indecomposability_from_endomorphisms(f, m.weights(), &end, seed)
}

/// The endomorphism-ring part of [`is_indecomposable`]: `end` is a basis of
/// `End(M)` as matrices, `weights` labels the coordinates so that scalar
/// candidates can be read off per block.
pub fn indecomposability_from_endomorphisms<F: Field>(
    f: &F,
    weights: &[usize],
    end: &[Matrix<F::Elem>],
    seed: u64,
) -> Indecomposability<F::Elem> {
    let dim = weights.len();
    if dim == 0 {
        return Indecomposability { verdict: Some(false), certificate: Certificate::ZeroModule };
    }
    if end.len() == 1 {
        return Indecomposability { verdict: Some(true), certificate: Certificate::LocalEndomorphismRing { end_dim: 1 } };
    }
    let mut nilpotent_parts = Vec::new();
    let mut resolved = true;
    for phi in end {
        match classify_endomorphism(f, weights, phi) {
            Shift::Nilpotent(n) => nilpotent_parts.push(n),
            Shift::Split(e) => return Indecomposability { verdict: Some(false), certificate: Certificate::Idempotent(e) },
            Shift::Unresolved => resolved = false,
        }
    }
    if resolved {
        let s = Subspace::span(f, dim * dim, &nilpotent_parts.iter().map(flatten).collect::<Vec<_>>());
        let id = flatten(&Matrix::identity(f, dim));
        if s.dim() + 1 == end.len() && !s.contains(f, &id) && is_nilpotent_ideal(f, &nilpotent_parts, dim) {
            return Indecomposability { verdict: Some(true), certificate: Certificate::LocalEndomorphismRing { end_dim: end.len() } };
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..FITTING_SAMPLES {
        let mut phi = Matrix::zeros(f, dim, dim);
        for b in end {
            phi = phi.add(f, &b.scale(f, &f.random(&mut rng, 1000)));
        }
        if let Shift::Split(e) = classify_endomorphism(f, weights, &phi) {
            return Indecomposability { verdict: Some(false), certificate: Certificate::Idempotent(e) };
        }
    }
    if let Some(q) = f.order() {
        let count = (q as u128).checked_pow(end.len() as u32).filter(|&c| c <= IDEMPOTENT_ENUMERATION_BUDGET as u128);
        if let Some(count) = count {
            let elems = f.elements().expect("finite field");
            let id = Matrix::identity(f, dim);
            for code in 0..count {
                let mut phi = Matrix::zeros(f, dim, dim);
                let mut c = code;
                for b in end {
                    let d = (c % q as u128) as usize;
                    c /= q as u128;
                    if d != 0 {
                        phi = phi.add(f, &b.scale(f, &elems[d]));
                    }
                }
                if !phi.is_zero(f) && phi != id && phi.mul(f, &phi) == phi {
                    return Indecomposability { verdict: Some(false), certificate: Certificate::Idempotent(phi) };
                }
            }
            return Indecomposability { verdict: Some(true), certificate: Certificate::ExhaustiveSearch { count: count as u64 } };
        }
    }
    Indecomposability {
        verdict: None,
        certificate: Certificate::Inconclusive { reason: "no splitting found and no local-End witness".into() },
    }
}

#[derive(Debug, Clone)]
pub enum IsoResult<E> {
    /// An invertible homomorphism `M → N`.
    Isomorphic(Matrix<E>),
    NotIsomorphic,
    Inconclusive,
}

impl<E> IsoResult<E> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

/// Searches `Hom(M, N)` for an invertible element: basis elements, then
/// random combinations, then all elements when the space is small.
pub fn find_isomorphism<F: Field>(m: &Representation<F>, n: &Representation<F>, seed: u64) -> Result<IsoResult<F::Elem>> {
    check_compatible(m, n)?;
    if m.weight_dims() != n.weight_dims() {
        return Ok(IsoResult::NotIsomorphic);
    }
    let f = m.field();
    if m.dim() == 0 {
        return Ok(IsoResult::Isomorphic(Matrix::zeros(f, 0, 0)));
    }
    let hom = hom_basis(m, n)?;
    if hom.is_empty() {
        return Ok(IsoResult::NotIsomorphic);
    }
    for h in &hom {
        if is_invertible(f, h) {
            return Ok(IsoResult::Isomorphic(h.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let mut phi = Matrix::zeros(f, n.dim(), m.dim());
        for b in &hom {
            phi = phi.add(f, &b.scale(f, &f.random(&mut rng, 1_000_000)));
        }
        if is_invertible(f, &phi) {
            return Ok(IsoResult::Isomorphic(phi));
        }
    }
    if let Some(q) = f.order() {
        if let Some(count) = (q as u128).checked_pow(hom.len() as u32).filter(|&c| c <= ISO_ENUMERATION_BUDGET as u128) {
            let elems = f.elements().expect("finite field");
            for code in 0..count {
                let mut phi = Matrix::zeros(f, n.dim(), m.dim());
                let mut c = code;
                for b in &hom {
                    let d = (c % q as u128) as usize;
                    c /= q as u128;
                    if d != 0 {
                        phi = phi.add(f, &b.scale(f, &elems[d]));
                    }
                }
                if is_invertible(f, &phi) {
                    return Ok(IsoResult::Isomorphic(phi));
                }
            }
            return Ok(IsoResult::NotIsomorphic);
        }
    }
    Ok(IsoResult::Inconclusive)
}

/// `dim Ext¹(K_λ, M)` from `0 → Ω → P₀ → K_λ → 0` with `Ω = rad P₀`:
/// `dim Hom(Ω, M) − dim Hom(P₀, M) + dim Hom(K_λ, M)`.
pub fn ext1_dim<F: Field>(weight_id: usize, m: &Representation<F>) -> Result<usize> {
    let alg = m.algebra();
    let p0 = ideal_module(alg, weight_id, m.side());
    let srt = socle_radical_top(&p0);
    let (omega, _) = p0.submodule(&srt.radical)?;
    let k = simple_module(alg, weight_id, m.side());
    let hom_omega = hom_dim(&omega, m)?;
    let hom_p0 = hom_dim(&p0, m)?;
    let hom_k = hom_dim(&k, m)?;
    Ok(hom_omega + hom_k - hom_p0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    /// `ker g = im f`.
    pub exact: bool,
    pub injective: bool,
    pub surjective: bool,
    /// Some module map `s` has `g ∘ s = id`.
    pub split: bool,
}

impl SequenceReport {
    pub fn short_exact(&self) -> bool {
        self.exact && self.injective && self.surjective
    }
}

/// Exactness and splitness of `A --f--> B --g--> C`.
pub fn sequence_checks<F: Field>(f_map: &ModuleMap<F>, g_map: &ModuleMap<F>) -> Result<SequenceReport> {
    if f_map.target().dim() != g_map.source().dim() {
        return Err(Error::DimensionMismatch("maps are not composable".into()));
    }
    let f = f_map.source().field();
    let gf = g_map.matrix().mul(f, f_map.matrix());
    let rank_f = f_map.rank();
    let ker_g = g_map.source().dim() - g_map.rank();
    let exact = gf.is_zero(f) && ker_g == rank_f;
    let (b, c) = (g_map.source(), g_map.target());
    let sections = hom_basis(c, b)?;
    let split = if sections.is_empty() {
        c.dim() == 0
    } else {
        let cols: Vec<Vec<F::Elem>> = sections.iter().map(|s| flatten(&g_map.matrix().mul(f, s))).collect();
        let sys = Matrix::from_columns(f, c.dim() * c.dim(), &cols);
        solve(f, &sys, &flatten(&Matrix::identity(f, c.dim()))).is_some()
    };
    Ok(SequenceReport { exact, injective: f_map.is_injective(), surjective: g_map.is_surjective(), split })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use crate::weights::Composition;

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn alg<F: Field>(f: F, n: usize, r: usize) -> Arc<Algebra<F>> {
        Arc::new(Algebra::new(f, n, r).unwrap())
    }

    #[test]
    fn simple_modules_act_correctly() {
        let a = alg(Rationals, 2, 3);
        for w in 0..a.weights().len() {
            let k = simple_module(&a, w, Side::Left);
            k.verify_action(None, 0).unwrap();
            assert_eq!(socle_radical_top(&k).socle_dim(), 1);
        }
    }

    #[test]
    fn projective_dimensions() {
        let a = alg(Rationals, 2, 3);
        let p = projective_cover(&a, a.weight_id(&c(&[0, 3])).unwrap());
        assert_eq!(p.dim(), 4);
        p.verify_action(None, 0).unwrap();
        let t = transpose_module(&a, a.weight_id(&c(&[3, 0])).unwrap());
        assert_eq!(t.dim(), 4);
        t.verify_action(None, 0).unwrap();
        let top = projective_cover(&a, a.weight_id(&c(&[3, 0])).unwrap());
        assert_eq!(top.dim(), 1);
    }

    #[test]
    fn uniserial_projective_socle() {
        let a = alg(Rationals, 2, 2);
        let lam = a.weight_id(&c(&[1, 1])).unwrap();
        let p = projective_cover(&a, lam);
        assert_eq!(p.dim(), 2);
        let srt = socle_radical_top(&p);
        let top_id = a.weight_id(&c(&[2, 0])).unwrap();
        assert_eq!(srt.socle_multiplicities, BTreeMap::from([(top_id, 1)]));
        assert_eq!(srt.top_multiplicities, BTreeMap::from([(lam, 1)]));
    }

    #[test]
    fn hom_between_simples() {
        let a = alg(PrimeField::new(3).unwrap(), 2, 3);
        for x in 0..a.weights().len() {
            for y in 0..a.weights().len() {
                let d = hom_dim(&simple_module(&a, x, Side::Left), &simple_module(&a, y, Side::Left)).unwrap();
                assert_eq!(d, usize::from(x == y));
            }
        }
    }

    #[test]
    fn double_dual_is_isomorphic() {
        let a = alg(Rationals, 2, 3);
        let p = projective_cover(&a, 2);
        let dd = p.dualize().dualize();
        assert!(find_isomorphism(&p, &dd, 1).unwrap().is_isomorphic());
        let d = p.dualize();
        d.verify_action(None, 0).unwrap();
        assert_eq!(d.side(), Side::Right);
    }

    #[test]
    fn indecomposability_of_sums() {
        let a = alg(Rationals, 2, 2);
        let k0 = simple_module(&a, 0, Side::Left);
        let k1 = simple_module(&a, 1, Side::Left);
        let s = k0.direct_sum(&k1).unwrap();
        let res = is_indecomposable(&s, 0);
        assert_eq!(res.verdict, Some(false));
        assert!(matches!(res.certificate, Certificate::Idempotent(_)));
        let kk = k0.direct_sum(&k0).unwrap();
        assert_eq!(is_indecomposable(&kk, 0).verdict, Some(false));
        assert_eq!(is_indecomposable(&k0, 0).verdict, Some(true));
    }

    #[test]
    fn ext_between_simples_n2() {
        let a = alg(Rationals, 2, 2);
        let lam = a.weight_id(&c(&[1, 1])).unwrap();
        let mu = a.weight_id(&c(&[2, 0])).unwrap();
        assert_eq!(ext1_dim(lam, &simple_module(&a, mu, Side::Left)).unwrap(), 1);
        assert_eq!(ext1_dim(mu, &simple_module(&a, lam, Side::Left)).unwrap(), 0);
        assert_eq!(ext1_dim(mu, &regular_module(&a, Side::Left)).unwrap(), 0);
    }

    #[test]
    fn tensor_space_is_a_module() {
        let a = alg(PrimeField::new(2).unwrap(), 2, 3);
        let t = tensor_space_module(&a).unwrap();
        assert_eq!(t.dim(), 8);
        t.verify_action(None, 0).unwrap();
        for w in 0..a.weights().len() {
            if !a.weight(w).is_partition() {
                assert_eq!(hom_dim(&simple_module(&a, w, Side::Left), &t).unwrap(), 0);
            }
        }
    }

    #[test]
    fn split_sequence_checks() {
        let a = alg(Rationals, 2, 2);
        let f = a.field();
        let n = Arc::new(simple_module(&a, 0, Side::Left));
        let s = Arc::new(simple_module(&a, 1, Side::Left));
        let b = Arc::new(n.direct_sum(&s).unwrap());
        let inc = Matrix::from_rows(2, 1, vec![f.one(), f.zero()]);
        let proj = Matrix::from_rows(1, 2, vec![f.zero(), f.one()]);
        let fm = ModuleMap::new(n.clone(), b.clone(), inc).unwrap();
        let gm = ModuleMap::new(b.clone(), s.clone(), proj).unwrap();
        let rep = sequence_checks(&fm, &gm).unwrap();
        assert!(rep.short_exact() && rep.split);
        let zf = ModuleMap::new(n.clone(), b.clone(), Matrix::zeros(f, 2, 1)).unwrap();
        let zg = ModuleMap::new(b, s, Matrix::zeros(f, 1, 2)).unwrap();
        assert!(!sequence_checks(&zf, &zg).unwrap().exact);
    }

    #[test]
    fn quotient_and_submodule() {
        let a = alg(Rationals, 2, 3);
        let p = projective_cover(&a, a.weight_id(&c(&[0, 3])).unwrap());
        let srt = socle_radical_top(&p);
        let (rad, inc) = p.submodule(&srt.radical).unwrap();
        rad.verify_action(None, 0).unwrap();
        assert_eq!(inc.cols(), rad.dim());
        let (top, proj) = p.quotient(&srt.radical).unwrap();
        top.verify_action(None, 0).unwrap();
        assert_eq!(top.dim(), 1);
        assert_eq!(proj.rows(), 1);
    }
}
