//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are columns. Matrices are row-major; `rows x cols`.

use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns<F: Field<Elem = E>>(field: &F, rows: usize, columns: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Self { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.rows, cols: idx.len(), data }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Self { rows: self.rows, cols, data }
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|v| field.is_zero(v))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if field.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if field.is_zero(b) {
                        continue;
                    }
                    let v = field.mul_add(a, b, out.get(r, c));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !field.is_zero(a) && !field.is_zero(b) {
                        acc = field.mul_add(a, b, &acc);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| field.add(a, b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| field.sub(a, b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        let data = self.data.iter().map(|a| field.mul(a, s)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace<F: Field<Elem = E>>(&self, field: &F) -> E {
        let mut acc = field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = field.add(&acc, self.get(i, i));
        }
        acc
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
            continue;
        };
        if pr != row {
            for c in 0..m.cols {
                m.data.swap(pr * m.cols + c, row * m.cols + c);
            }
        }
        let inv = field.inv(m.get(row, col)).expect("nonzero pivot");
        for c in col..m.cols {
            let v = field.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row || field.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in col..m.cols {
                if field.is_zero(m.get(row, c)) {
                    continue;
                }
                let v = field.sub(m.get(r, c), &field.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut w = m.clone();
    rref(field, &mut w).len()
}

/// Basis of `{ x : m x = 0 }`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut w = m.clone();
    let pivots = rref(field, &mut w);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(w.get(r, free));
        }
        out.push(v);
    }
    out
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut w = m.hstack(&Matrix::identity(field, n));
    let pivots = rref(field, &mut w);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let idx: Vec<usize> = (n..2 * n).collect();
    Some(w.select_columns(&idx))
}

pub fn is_invertible<F: Field>(field: &F, m: &Matrix<F::Elem>) -> bool {
    m.rows == m.cols && rank(field, m) == m.rows
}

/// One solution of `m x = b`, if any.
pub fn solve<F: Field>(field: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(b.len(), m.rows);
    let bcol = Matrix::from_columns(field, m.rows, &[b.to_vec()]);
    let mut w = m.hstack(&bcol);
    let pivots = rref(field, &mut w);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![field.zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = w.get(r, m.cols).clone();
    }
    Some(x)
}

/// A subspace of `F^dim` with a fixed basis and fast coordinate extraction.
#[derive(Debug, Clone)]
pub struct Subspace<E> {
    dim: usize,
    basis: Vec<Vec<E>>,
    /// Reduced echelon rows spanning the same space, with their pivot columns.
    echelon: Vec<Vec<E>>,
    pivots: Vec<usize>,
    /// `basis_coords[k]` expresses echelon row `k` in terms of `basis`.
    echelon_in_basis: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    /// Subspace spanned by `vectors`; a basis is extracted greedily so the
    /// returned basis is a subsequence of the input.
    pub fn span<F: Field<Elem = E>>(field: &F, dim: usize, vectors: &[Vec<E>]) -> Self {
        let mut s = Self { dim, basis: Vec::new(), echelon: Vec::new(), pivots: Vec::new(), echelon_in_basis: Vec::new() };
        for v in vectors {
            s.push(field, v);
        }
        s
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: Vec::new(), echelon: Vec::new(), pivots: Vec::new(), echelon_in_basis: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    /// Reduces `v` against the echelon rows; returns the remainder and the
    /// coefficients (in echelon terms) that were subtracted.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> (Vec<E>, Vec<E>) {
        let mut rem = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.echelon.len());
        for (row, &p) in self.echelon.iter().zip(&self.pivots) {
            let c = rem[p].clone();
            if !field.is_zero(&c) {
                for (x, y) in rem.iter_mut().zip(row) {
                    if !field.is_zero(y) {
                        *x = field.sub(x, &field.mul(&c, y));
                    }
                }
            }
            coeffs.push(c);
        }
        (rem, coeffs)
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn push<F: Field<Elem = E>>(&mut self, field: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.dim);
        let (mut rem, coeffs) = self.reduce(field, v);
        let Some(p) = rem.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&rem[p]).expect("nonzero");
        for x in rem.iter_mut() {
            *x = field.mul(x, &inv);
        }
        // new echelon row = (v - sum coeffs_k echelon_k) * inv, in basis terms.
        let k = self.basis.len();
        let mut in_basis = vec![field.zero(); k + 1];
        in_basis[k] = inv.clone();
        for (c, row) in coeffs.iter().zip(&self.echelon_in_basis) {
            if field.is_zero(c) {
                continue;
            }
            let s = field.mul(c, &inv);
            for (t, y) in in_basis.iter_mut().zip(row) {
                *t = field.sub(t, &field.mul(&s, y));
            }
        }
        // keep existing echelon rows reduced at the new pivot
        for (row, inb) in self.echelon.iter_mut().zip(self.echelon_in_basis.iter_mut()) {
            let c = row[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&rem) {
                *x = field.sub(x, &field.mul(&c, y));
            }
            inb.push(field.zero());
            for (t, y) in inb.iter_mut().zip(&in_basis) {
                *t = field.sub(t, &field.mul(&c, y));
            }
        }
        for inb in self.echelon_in_basis.iter_mut() {
            if inb.len() < k + 1 {
                inb.push(field.zero());
            }
        }
        self.echelon.push(rem);
        self.pivots.push(p);
        self.echelon_in_basis.push(in_basis);
        self.basis.push(v.to_vec());
        true
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        let (rem, _) = self.reduce(field, v);
        rem.iter().all(|x| field.is_zero(x))
    }

    /// Coordinates of `v` in the stored basis, `None` if `v` is outside.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Option<Vec<E>> {
        let (rem, coeffs) = self.reduce(field, v);
        if !rem.iter().all(|x| field.is_zero(x)) {
            return None;
        }
        let mut out = vec![field.zero(); self.basis.len()];
        for (c, row) in coeffs.iter().zip(&self.echelon_in_basis) {
            if field.is_zero(c) {
                continue;
            }
            for (t, y) in out.iter_mut().zip(row) {
                *t = field.add(t, &field.mul(c, y));
            }
        }
        Some(out)
    }

    pub fn contains_subspace<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(field, v))
    }

    pub fn equals<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains_subspace(field, other)
    }

    /// Pivot coordinate of each echelon row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Indices of coordinates completing this subspace to the whole space
    /// (standard basis vectors outside the pivot set).
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut used = vec![false; self.dim];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.dim).filter(|&i| !used[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix<F: Field>(f: &F, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix<F::Elem> {
        let data = (0..r * c).map(|_| f.random(rng, 3)).collect();
        Matrix::from_rows(r, c, data)
    }

    #[test]
    fn kernel_and_rank_agree() {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(&f, &mut rng, 4, 7);
            let k = kernel(&f, &m);
            assert_eq!(k.len() + rank(&f, &m), 7);
            for v in &k {
                assert!(m.apply(&f, v).iter().all(|x| *x == 0));
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = random_matrix(&f, &mut rng, 4, 4);
            match inverse(&f, &m) {
                Some(inv) => assert_eq!(m.mul(&f, &inv), Matrix::identity(&f, 4)),
                None => assert!(rank(&f, &m) < 4),
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(2, 2, vec![1, 2, 2, 4]);
        assert!(solve(&f, &m, &[1, 3]).is_none());
        let x = solve(&f, &m, &[1, 2]).unwrap();
        assert_eq!(m.apply(&f, &x), vec![1, 2]);
    }

    #[test]
    fn subspace_coordinates() {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let vecs: Vec<Vec<u64>> = (0..4).map(|_| (0..6).map(|_| f.random(&mut rng, 0)).collect()).collect();
            let s = Subspace::span(&f, 6, &vecs);
            for v in &vecs {
                let c = s.coordinates(&f, v).expect("inside");
                let mut back = vec![0; 6];
                for (ci, b) in c.iter().zip(s.basis()) {
                    for (x, y) in back.iter_mut().zip(b) {
                        *x = f.add(x, &f.mul(ci, y));
                    }
                }
                assert_eq!(&back, v);
            }
            assert_eq!(s.complement_coordinates().len() + s.dim(), 6);
        }
    }
}
