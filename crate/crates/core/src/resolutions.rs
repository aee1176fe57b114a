//! Minimal presentations of simple modules, the transposed map `p₁ᵗ`,
//! Auslander-Reiten sequences ending in simples, socle tables and the
//! truncation functors `F = e(-)` and `G` (inflation).
//!
//! The generic construction works for any weight of any (truncated)
//! algebra: `τK_λ = ker Dp₁ᵗ` and the middle term is the pullback of `Dp₁ᵗ`
//! along `θ: K_λ → DP₀ᵗ`. For weights in the closed-form regimes the basis
//! of `P₁ᵗ` is rebuilt by replacing selected elements with images
//! `p₁ᵗ(ξ_{l,j})`, and the sequence is read off the dual basis.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, BasisElement, LinearCombination};
use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel, rank, Matrix, Subspace};
use crate::modules::{
    ext1_dim, find_isomorphism, hom_basis, ideal_module, is_indecomposable, sequence_checks, simple_module, socle_radical_top,
    ModuleMap, Representation, SequenceReport, Side, SparseMatrix,
};
use crate::scalars::{binomial_exact, digit, floor_log, Field};
use crate::weights::{canonical_index, j_set, row_stats, shift_weight, Composition, MultiIndex};

/// One indecomposable summand `Aξ_μ` of `P₁`, with the image `ω ∈ ξ_μAξ_λ`
/// of its generator.
#[derive(Debug, Clone)]
pub struct PresentationSummand<E> {
    pub weight: usize,
    /// `(ν, m)` with `μ = λ(ν, m)`, for the closed-form presentation.
    pub shift: Option<(usize, usize)>,
    pub generator: LinearCombination<E>,
}

/// `P₁ --p₁--> P₀ --p₀--> K_λ → 0`.
pub struct MinimalPresentation<F: Field> {
    pub lambda: usize,
    pub summands: Vec<PresentationSummand<F::Elem>>,
    pub p0: Arc<Representation<F>>,
    pub p1: Arc<Representation<F>>,
    pub simple: Arc<Representation<F>>,
    pub p1_map: ModuleMap<F>,
    pub p0_map: ModuleMap<F>,
}

impl<F: Field> fmt::Debug for MinimalPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MinimalPresentation(λ={}, summands={})", self.p0.algebra().weight(self.lambda), self.summands.len())
    }
}

impl<F: Field> MinimalPresentation<F> {
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        self.p0.algebra()
    }

    /// Summand weights of `P₁`, in order.
    pub fn summand_weights(&self) -> Vec<Composition> {
        self.summands.iter().map(|s| self.algebra().weight(s.weight).clone()).collect()
    }

    /// `p₀ ∘ p₁ = 0`, `im p₁ = ker p₀` and `p₀` onto.
    pub fn verify(&self) -> Result<()> {
        let report = sequence_checks(&self.p1_map, &self.p0_map)?;
        if !report.exact || !report.surjective {
            return Err(Error::Verification(format!("presentation of {} is not exact", self.algebra().weight(self.lambda))));
        }
        Ok(())
    }
}

fn lc_of_element<F: Field>(alg: &Algebra<F>, x: &BasisElement) -> LinearCombination<F::Elem> {
    LinearCombination::basis(alg.field(), alg.index_of(x).expect("element of the algebra"))
}

/// The element `ξ_{l(μ), l(λ)}`.
fn canonical_element(mu: &Composition, lambda: &Composition) -> BasisElement {
    BasisElement::canonicalize_pair(&canonical_index(mu), &canonical_index(lambda)).expect("l(μ) ≤ l(λ)")
}

/// The `(ν, m)` list for `P₁`: `m = 1` in characteristic 0, `m = p^{d'} ≤ λ_{ν+1}`
/// in characteristic `p`.
pub fn presentation_shifts(lambda: &Composition, characteristic: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for nu in 1..lambda.n() {
        let room = lambda.part(nu + 1);
        if characteristic == 0 {
            if room >= 1 {
                out.push((nu, 1));
            }
        } else {
            let mut m = 1;
            while m <= room {
                out.push((nu, m));
                m *= characteristic as usize;
            }
        }
    }
    out
}

/// Minimal presentation of `K_λ`. Full algebras use the closed-form
/// summands `Aξ_{λ(ν,m)}` with `p₁(ξ_{λ(ν,m)}) = ξ_{l(ν,m),l}`; truncations
/// use [`generic_presentation`].
pub fn minimal_presentation<F: Field>(alg: &Arc<Algebra<F>>, lambda: usize) -> Result<MinimalPresentation<F>> {
    if alg.is_truncated() {
        return generic_presentation(alg, lambda);
    }
    let lam = alg.weight(lambda).clone();
    let mut summands = Vec::new();
    for (nu, m) in presentation_shifts(&lam, alg.field().characteristic()) {
        let mu = shift_weight(&lam, nu, m)?;
        let weight = alg.weight_id(&mu).expect("shifted weight");
        summands.push(PresentationSummand { weight, shift: Some((nu, m)), generator: lc_of_element(alg, &canonical_element(&mu, &lam)) });
    }
    assemble_presentation(alg, lambda, summands)
}

/// Presentation read off the module structure: `P₁` covers `Ω = rad P₀`,
/// with generators lifting a basis of `top Ω`.
pub fn generic_presentation<F: Field>(alg: &Arc<Algebra<F>>, lambda: usize) -> Result<MinimalPresentation<F>> {
    let f = alg.field();
    let p0 = ideal_module(alg, lambda, Side::Left);
    let omega = socle_radical_top(&p0).radical;
    let mut rad_omega = Subspace::zero(p0.dim());
    for v in &omega {
        for arrow in alg.arrows() {
            let w = p0.action(arrow.basis_index).apply(f, v);
            if w.iter().any(|c| !f.is_zero(c)) {
                rad_omega.push(f, &w);
            }
        }
    }
    let p0_basis = alg.right_ideal_basis(lambda);
    let mut gens: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    for v in &omega {
        if rad_omega.push(f, v) {
            let k = v.iter().position(|c| !f.is_zero(c)).expect("nonzero");
            gens.push((p0.weights()[k], v.clone()));
        }
    }
    gens.sort_by_key(|(w, _)| *w);
    let summands = gens
        .into_iter()
        .map(|(weight, v)| PresentationSummand {
            weight,
            shift: None,
            generator: LinearCombination::from_terms(f, v.into_iter().enumerate().map(|(k, c)| (p0_basis[k], c))),
        })
        .collect();
    assemble_presentation(alg, lambda, summands)
}

fn assemble_presentation<F: Field>(
    alg: &Arc<Algebra<F>>,
    lambda: usize,
    summands: Vec<PresentationSummand<F::Elem>>,
) -> Result<MinimalPresentation<F>> {
    let f = alg.field();
    let p0 = Arc::new(ideal_module(alg, lambda, Side::Left));
    let p0_basis = alg.right_ideal_basis(lambda);
    let p0_pos: BTreeMap<usize, usize> = p0_basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let mut p1: Option<Representation<F>> = None;
    let mut columns: Vec<Vec<F::Elem>> = Vec::new();
    for s in &summands {
        let part = ideal_module(alg, s.weight, Side::Left);
        for &y in &alg.right_ideal_basis(s.weight) {
            let img = alg.mul(&LinearCombination::basis(f, y), &s.generator);
            let mut col = vec![f.zero(); p0.dim()];
            for (z, c) in img.terms() {
                col[p0_pos[z]] = c.clone();
            }
            columns.push(col);
        }
        p1 = Some(match p1 {
            None => part,
            Some(acc) => acc.direct_sum(&part)?,
        });
    }
    let p1 = Arc::new(match p1 {
        Some(p) => p,
        None => Representation::new(alg.clone(), Side::Left, Vec::new(), vec![SparseMatrix::zero(0, 0); alg.dim()], Vec::new())?,
    });
    let simple = Arc::new(simple_module(alg, lambda, Side::Left));
    let p1_matrix = Matrix::from_columns(f, p0.dim(), &columns);
    let p1_map = ModuleMap::new(p1.clone(), p0.clone(), p1_matrix)?;
    let mut p0_matrix = Matrix::zeros(f, 1, p0.dim());
    p0_matrix.set(0, p0_pos[&alg.idempotent(lambda)], f.one());
    let p0_map = ModuleMap::new(p0.clone(), simple.clone(), p0_matrix)?;
    Ok(MinimalPresentation { lambda, summands, p0, p1, simple, p1_map, p0_map })
}

/// Which closed-form replacement scheme applies to a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Characteristic 0 with `λ_n ≠ 0`.
    CharZero,
    /// Characteristic `p`, `λ_n ≠ 0` and `λ_{n-1} < p^{d+1} - 1`.
    Injective,
    /// `n = 2`, characteristic `p`, `λ₂ ≠ 0`.
    TwoRows,
    /// `n = 3`, characteristic `p`, `λ₃ ≠ 0`, `λ₂ = 2p^{d+1} - 1`.
    ThreeRowsCritical,
}

/// `d` with `p^d ≤ x < p^{d+1}`.
fn level(x: usize, p: u64) -> u32 {
    floor_log(x as u64, p)
}

/// The closed-form regime of `λ`, if any.
pub fn regime_of(lambda: &Composition, characteristic: u64) -> Option<Regime> {
    let n = lambda.n();
    if n < 2 || lambda.part(n) == 0 {
        return None;
    }
    if characteristic == 0 {
        return Some(Regime::CharZero);
    }
    let p = characteristic;
    let big = (p as usize).pow(level(lambda.part(n), p) + 1);
    if lambda.part(n - 1) + 1 < big {
        return Some(Regime::Injective);
    }
    if n == 2 {
        return Some(Regime::TwoRows);
    }
    if n == 3 && lambda.part(2) == 2 * big - 1 {
        return Some(Regime::ThreeRowsCritical);
    }
    None
}

/// One element of `B₂` (or `B₁`) swapped for an image of `p₁ᵗ`.
#[derive(Debug, Clone, Serialize)]
pub struct Replacement {
    /// `j` with `p₁ᵗ(ξ_{l,j})` entering the basis.
    pub j: MultiIndex,
    /// Summand `(ν, m)` and the basis element that left.
    pub summand: (usize, usize),
    pub replaced: BasisElement,
    /// Case label of the rule used.
    pub case: String,
    /// Every element the rule designates had coefficient zero, so another
    /// free row was taken.
    pub fallback: bool,
}

/// `p₁ᵗ: P₀ᵗ → P₁ᵗ` with `P₀ᵗ = ξ_λA` (basis `ξ_{l,j}`, `j ∈ J(λ)`) and
/// `P₁ᵗ = ⊕ ξ_μA` over the summands of `P₁`.
pub struct TransposedPresentation<F: Field> {
    pub lambda: usize,
    pub p0t: Arc<Representation<F>>,
    pub p1t: Arc<Representation<F>>,
    pub map: ModuleMap<F>,
    /// Start of each summand block in `P₁ᵗ` coordinates.
    pub offsets: Vec<usize>,
    pub shifts: Vec<Option<(usize, usize)>>,
    /// Basis of `ker p₁ᵗ` in `P₀ᵗ` coordinates.
    pub kernel: Vec<Vec<F::Elem>>,
    pub closed_form: Option<ClosedForm<F::Elem>>,
}

/// The replaced basis `B̄₁`, `B̄₂` or `B̂₂` and the kernel it predicts.
#[derive(Debug, Clone)]
pub struct ClosedForm<E> {
    pub regime: Regime,
    pub replacements: Vec<Replacement>,
    /// Columns are the new basis in `P₁ᵗ` coordinates.
    pub basis: Matrix<E>,
    /// Columns of `basis` holding an image of `p₁ᵗ`, and the `P₀ᵗ`
    /// coordinate vector mapped there.
    pub image_columns: Vec<(usize, Vec<E>)>,
    /// Column holding `p₁ᵗ(ξ_{l,l})`.
    pub identity_column: usize,
    pub kernel: Vec<Vec<E>>,
}

impl<F: Field> fmt::Debug for TransposedPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransposedPresentation(dim P0t={}, dim P1t={}, kernel={})", self.p0t.dim(), self.p1t.dim(), self.kernel.len())
    }
}

impl<F: Field> TransposedPresentation<F> {
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        self.p0t.algebra()
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        self.map.matrix()
    }

    /// `rank p₁ᵗ + dim ker p₁ᵗ = |J(λ)|`.
    pub fn rank(&self) -> usize {
        self.map.rank()
    }

    /// Position of `ξ_{l,j}` in the `P₀ᵗ` basis.
    pub fn p0t_position(&self, j: &MultiIndex) -> Option<usize> {
        let alg = self.algebra();
        let lam = alg.weight(self.lambda);
        let x = BasisElement::canonicalize_pair(&canonical_index(lam), j).ok()?;
        let k = alg.index_of(&x)?;
        alg.left_ideal_basis(self.lambda).iter().position(|&b| b == k)
    }

    /// Row of `ξ_{l(ν,m), j}` in `P₁ᵗ` coordinates.
    pub fn p1t_position(&self, shift: (usize, usize), j: &MultiIndex) -> Option<usize> {
        let alg = self.algebra();
        let g = self.shifts.iter().position(|s| *s == Some(shift))?;
        let mu = shift_weight(alg.weight(self.lambda), shift.0, shift.1).ok()?;
        let x = BasisElement::canonicalize_pair(&canonical_index(&mu), j).ok()?;
        self.element_position(g, &x)
    }

    fn element_position(&self, summand: usize, x: &BasisElement) -> Option<usize> {
        let alg = self.algebra();
        let k = alg.index_of(x)?;
        let mu = alg.weight_id(&x.left_weight())?;
        let idx = alg.left_ideal_basis(mu).iter().position(|&b| b == k)?;
        Some(self.offsets[summand] + idx)
    }
}

/// `p₁ᵗ` and its kernel by exact elimination.
pub fn p1t_matrix<F: Field>(pres: &MinimalPresentation<F>) -> Result<TransposedPresentation<F>> {
    let alg = pres.algebra();
    let f = alg.field();
    let lambda = pres.lambda;
    let p0t = Arc::new(ideal_module(alg, lambda, Side::Right));
    let p0t_basis = alg.left_ideal_basis(lambda);
    let mut offsets = Vec::new();
    let mut p1t: Option<Representation<F>> = None;
    let mut positions: Vec<BTreeMap<usize, usize>> = Vec::new();
    let mut total = 0;
    for s in &pres.summands {
        offsets.push(total);
        let basis = alg.left_ideal_basis(s.weight);
        positions.push(basis.iter().enumerate().map(|(k, &b)| (b, total + k)).collect());
        total += basis.len();
        let part = ideal_module(alg, s.weight, Side::Right);
        p1t = Some(match p1t {
            None => part,
            Some(acc) => acc.direct_sum(&part)?,
        });
    }
    let p1t = Arc::new(match p1t {
        Some(p) => p,
        None => Representation::new(alg.clone(), Side::Right, Vec::new(), vec![SparseMatrix::zero(0, 0); alg.dim()], Vec::new())?,
    });
    let mut mat = Matrix::zeros(f, total, p0t.dim());
    for (c, &x) in p0t_basis.iter().enumerate() {
        for (g, s) in pres.summands.iter().enumerate() {
            let img = alg.mul(&s.generator, &LinearCombination::basis(f, x));
            for (z, v) in img.terms() {
                mat.set(positions[g][z], c, v.clone());
            }
        }
    }
    let map = ModuleMap::new(p0t.clone(), p1t.clone(), mat)?;
    let kernel = map.kernel();
    Ok(TransposedPresentation {
        lambda,
        p0t,
        p1t,
        map,
        offsets,
        shifts: pres.summands.iter().map(|s| s.shift).collect(),
        kernel,
        closed_form: None,
    })
}

struct ReplacementBuilder<'a, F: Field> {
    tp: &'a TransposedPresentation<F>,
    columns: Vec<Option<Vec<F::Elem>>>,
    record: Vec<Replacement>,
    image_columns: Vec<(usize, Vec<F::Elem>)>,
    kernel: Vec<Vec<F::Elem>>,
}

impl<'a, F: Field> ReplacementBuilder<'a, F> {
    fn new(tp: &'a TransposedPresentation<F>) -> Self {
        Self { tp, columns: vec![None; tp.p1t.dim()], record: Vec::new(), image_columns: Vec::new(), kernel: Vec::new() }
    }

    fn unit(&self, j: &MultiIndex) -> Result<Vec<F::Elem>> {
        let f = self.tp.algebra().field();
        let pos = self.tp.p0t_position(j).ok_or_else(|| Error::NotInJ(j.to_string()))?;
        let mut e = vec![f.zero(); self.tp.p0t.dim()];
        e[pos] = f.one();
        Ok(e)
    }

    fn kernel_unit(&mut self, j: &MultiIndex) -> Result<()> {
        let e = self.unit(j)?;
        self.kernel.push(e);
        Ok(())
    }

    /// Puts `p₁ᵗ(η)` in place of the first designated element with a
    /// nonzero coefficient; any other nonzero free row is the last resort.
    fn replace(&mut self, j: &MultiIndex, eta: Vec<F::Elem>, designated: &[((usize, usize), BasisElement)], case: &str) -> Result<()> {
        let f = self.tp.algebra().field();
        let image = self.tp.matrix().apply(f, &eta);
        let mut chosen = None;
        for (shift, x) in designated {
            let g = self.tp.shifts.iter().position(|s| *s == Some(*shift));
            if let Some(row) = g.and_then(|g| self.tp.element_position(g, x)) {
                if !f.is_zero(&image[row]) && self.columns[row].is_none() {
                    chosen = Some((row, *shift, x.clone(), false));
                    break;
                }
            }
        }
        if chosen.is_none() {
            if let Some(row) = (0..image.len()).find(|&r| !f.is_zero(&image[r]) && self.columns[r].is_none()) {
                let g = self.tp.offsets.iter().rposition(|&o| o <= row).expect("row in a summand");
                let shift = self.tp.shifts[g].expect("closed-form summand");
                let alg = self.tp.algebra();
                let mu = alg.weight(self.tp.lambda);
                let x = alg.element(alg.left_ideal_basis(alg.weight_id(&shift_weight(mu, shift.0, shift.1)?).expect("weight"))[row - self.tp.offsets[g]]).clone();
                chosen = Some((row, shift, x, true));
            }
        }
        let (row, summand, replaced, fallback) =
            chosen.ok_or_else(|| Error::Verification(format!("p₁ᵗ(ξ_(l,{j})) has no free nonzero coordinate ({case})")))?;
        self.columns[row] = Some(image);
        self.image_columns.push((row, eta));
        self.record.push(Replacement { j: j.clone(), summand, replaced, case: case.to_string(), fallback });
        Ok(())
    }

    fn finish(self, regime: Regime) -> Result<ClosedForm<F::Elem>> {
        let tp = self.tp;
        let f = tp.algebra().field();
        let dim = tp.p1t.dim();
        let mut basis = Matrix::identity(f, dim);
        for (c, col) in self.columns.iter().enumerate() {
            if let Some(col) = col {
                for (r, v) in col.iter().enumerate() {
                    basis.set(r, c, v.clone());
                }
            }
        }
        if rank(f, &basis) != dim {
            return Err(Error::Verification(format!("replaced basis is singular ({regime:?})")));
        }
        let l = canonical_index(tp.algebra().weight(tp.lambda));
        let l_pos = tp.p0t_position(&l).expect("l ∈ J(λ)");
        let identity_column = self
            .image_columns
            .iter()
            .find(|(_, eta)| eta.iter().enumerate().all(|(k, v)| if k == l_pos { f.is_one(v) } else { f.is_zero(v) }))
            .map(|(c, _)| *c)
            .ok_or_else(|| Error::Verification("p₁ᵗ(ξ_(l,l)) is not in the replaced basis".into()))?;
        Ok(ClosedForm { regime, replacements: self.record, basis, image_columns: self.image_columns, identity_column, kernel: self.kernel })
    }
}

fn row_entries(lambda: &Composition, rows: &[Vec<usize>]) -> MultiIndex {
    let entries: Vec<usize> = rows.concat();
    debug_assert_eq!(entries.len(), lambda.r());
    MultiIndex::new(lambda.n(), entries).expect("valid entries")
}

fn repeat(value: usize, count: usize) -> Vec<usize> {
    vec![value; count]
}

/// The replaced basis for `λ` in a closed-form regime, certified by rank.
pub fn replaced_basis<F: Field>(pres: &MinimalPresentation<F>) -> Result<TransposedPresentation<F>> {
    let alg = pres.algebra();
    if alg.is_truncated() {
        return Err(Error::RegimeNotCovered("closed forms apply to the full algebra".into()));
    }
    let lam = alg.weight(pres.lambda).clone();
    let characteristic = alg.field().characteristic();
    let regime = regime_of(&lam, characteristic).ok_or_else(|| Error::RegimeNotCovered(lam.to_string()))?;
    let mut tp = p1t_matrix(pres)?;
    let n = lam.n();
    let p = (characteristic != 0).then_some(characteristic);
    let mut b = ReplacementBuilder::new(&tp);
    let js = j_set(&lam);
    let l_of = |mu: &Composition, j: &MultiIndex| BasisElement::canonicalize_pair(&canonical_index(mu), j).expect("l(μ) ≤ j");
    let shifted = |nu: usize, m: usize| shift_weight(&lam, nu, m).expect("shift within λ");
    match regime {
        Regime::CharZero => {
            for j in &js {
                let e = b.unit(j)?;
                b.replace(j, e, &[((n - 1, 1), l_of(&shifted(n - 1, 1), j))], "char 0")?;
            }
        }
        Regime::Injective | Regime::TwoRows => {
            let p = p.expect("prime");
            for j in &js {
                let st = row_stats(&lam, j, Some(p))?;
                match st.m {
                    Some(m) => {
                        let q = (p as usize).pow(m);
                        let e = b.unit(j)?;
                        b.replace(j, e, &[((n - 1, q), l_of(&shifted(n - 1, q), j))], "m(j)")?;
                    }
                    None => b.kernel_unit(j)?,
                }
            }
        }
        Regime::ThreeRowsCritical => {
            let p = p.expect("prime");
            let pu = p as usize;
            let d = level(lam.part(3), p);
            let big = pu.pow(d + 1);
            let all_top = |x: usize, upto: u32| (0..=upto).all(|k| digit(x as u64, p, k) == p - 1);
            for j in &js {
                let st = row_stats(&lam, j, Some(p))?;
                let (t2, t3) = (st.t2.expect("n = 3"), st.t3.expect("n = 3"));
                if let Some(m) = st.m {
                    let q = pu.pow(m);
                    let e = b.unit(j)?;
                    b.replace(j, e, &[((2, q), l_of(&shifted(2, q), j))], "(a)")?;
                    continue;
                }
                let ones = lam.part(1) - t2 - t3;
                if st.a == 2 * big - 1 {
                    if t2 >= big {
                        // partner of a critical j with a(j) = p^{d+1} - 1
                        continue;
                    }
                    match (0..=d + 1).find(|&k| digit(t3 as u64, p, k) != p - 1) {
                        Some(bb) => {
                            let q = pu.pow(bb);
                            let e = b.unit(j)?;
                            b.replace(j, e, &[((1, q), l_of(&shifted(1, q), j))], "(c)(i)")?;
                        }
                        None => b.kernel_unit(j)?,
                    }
                    continue;
                }
                // a(j) = p^{d+1} - 1: j is critical with partner j'
                let partner = (t3 >= big).then(|| {
                    row_entries(&lam, &[
                        [repeat(1, ones), repeat(2, t2 + big), repeat(3, t3 - big)].concat(),
                        repeat(3, lam.part(2)),
                        repeat(3, lam.part(3)),
                    ])
                });
                let zero_j = all_top(t2, d + 1) && all_top(t3, d);
                let zero_partner = all_top(t3, d) && digit(t3 as u64, p, d + 1) == 0;
                match st.b.filter(|&bb| bb < d + 1) {
                    Some(bb) => {
                        let q = pu.pow(bb);
                        let i = row_entries(&lam, &[
                            repeat(1, lam.part(1)),
                            [repeat(2, big), repeat(1, q), repeat(2, lam.part(2) - big - q)].concat(),
                            repeat(3, lam.part(3)),
                        ]);
                        let designated = [
                            ((1, q), l_of(&shifted(1, q), j)),
                            ((1, q), BasisElement::canonicalize_pair(&i, j).expect("i ≤ j")),
                        ];
                        let case = if zero_partner { "(b)(ii)" } else { "(b)(i)" };
                        let e = b.unit(j)?;
                        b.replace(j, e, &designated, case)?;
                        if let Some(jp) = &partner {
                            if zero_partner {
                                b.kernel_unit(jp)?;
                            } else {
                                let e = b.unit(jp)?;
                                b.replace(jp, e, &[((1, big), l_of(&shifted(1, big), jp))], "(b)(i)")?;
                            }
                        }
                    }
                    None => {
                        let target = ((1, big), l_of(&shifted(1, big), j));
                        if digit(t3 as u64, p, d + 1) != 0 {
                            let jp = partner.as_ref().expect("t₃ ≥ p^{d+1}");
                            let e = b.unit(jp)?;
                            b.replace(jp, e, &[target], "(b)(iii)")?;
                            let f = alg.field();
                            let c3 = f.from_biguint(&binomial_exact(t3 as u64, big as u64));
                            let c2 = f.from_biguint(&binomial_exact((t2 + big) as u64, big as u64));
                            let mut v = b.unit(j)?;
                            let pos_jp = tp.p0t_position(jp).expect("j' ∈ J(λ)");
                            let pos_j = tp.p0t_position(j).expect("j ∈ J(λ)");
                            v[pos_j] = c3;
                            v[pos_jp] = f.neg(&c2);
                            b.kernel.push(v);
                        } else {
                            if zero_j {
                                b.kernel_unit(j)?;
                            } else {
                                let e = b.unit(j)?;
                                b.replace(j, e, &[target], "(b)(iv)")?;
                            }
                            if let Some(jp) = &partner {
                                b.kernel_unit(jp)?;
                            }
                        }
                    }
                }
            }
        }
    }
    let closed = b.finish(regime)?;
    tp.closed_form = Some(closed);
    Ok(tp)
}

/// Whether the closed-form kernel spans exactly the eliminated kernel.
pub fn closed_form_kernel_matches<F: Field>(tp: &TransposedPresentation<F>) -> bool {
    let Some(cf) = &tp.closed_form else {
        return false;
    };
    let f = tp.algebra().field();
    let dim = tp.p0t.dim();
    let closed = Subspace::span(f, dim, &cf.kernel);
    let generic = Subspace::span(f, dim, &tp.kernel);
    closed.dim() == cf.kernel.len() && closed.equals(f, &generic)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// Kernel of `Dp₁ᵗ` and pullback along `θ`.
    Generic,
    /// Dual basis of a replaced basis.
    ClosedForm(Regime),
}

/// `0 → τK_λ --f--> E --g--> K_λ → 0` inside `DP₁ᵗ ⊕ K_λ`.
pub struct ARSequence<F: Field> {
    pub lambda: usize,
    pub construction: Construction,
    /// `DP₁ᵗ`, a left module.
    pub ambient: Arc<Representation<F>>,
    /// `Dp₁ᵗ: DP₁ᵗ → DP₀ᵗ`.
    pub dp1t: Matrix<F::Elem>,
    pub tau_basis: Vec<Vec<F::Elem>>,
    pub middle_basis: Vec<Vec<F::Elem>>,
    pub tau: Arc<Representation<F>>,
    pub middle: Arc<Representation<F>>,
    pub simple: Arc<Representation<F>>,
    pub f: ModuleMap<F>,
    pub g: ModuleMap<F>,
}

impl<F: Field> fmt::Debug for ARSequence<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ARSequence(λ={}, dim τ={}, dim E={})", self.tau.algebra().weight(self.lambda), self.tau.dim(), self.middle.dim())
    }
}

fn projective_simple_check<F: Field>(alg: &Algebra<F>, lambda: usize) -> Result<()> {
    let p0 = alg.right_ideal_basis(lambda);
    if p0.len() == 1 {
        return Err(Error::ProjectiveSimple(alg.weight(lambda).to_string()));
    }
    Ok(())
}

fn assemble_sequence<F: Field>(
    lambda: usize,
    construction: Construction,
    ambient: Arc<Representation<F>>,
    dp1t: Matrix<F::Elem>,
    tau_vectors: &[Vec<F::Elem>],
    middle_vectors: &[Vec<F::Elem>],
) -> Result<ARSequence<F>> {
    let alg = ambient.algebra().clone();
    let f = alg.field();
    let simple = Arc::new(simple_module(&alg, lambda, Side::Left));
    let (tau, tau_inc) = ambient.submodule(tau_vectors)?;
    let total = ambient.direct_sum(&simple)?;
    let (middle, mid_inc) = total.submodule(middle_vectors)?;
    let tau_basis: Vec<Vec<F::Elem>> = (0..tau_inc.cols()).map(|c| tau_inc.column(c)).collect();
    let middle_basis: Vec<Vec<F::Elem>> = (0..mid_inc.cols()).map(|c| mid_inc.column(c)).collect();
    let mid_space = Subspace::span(f, total.dim(), &middle_basis);
    let mut f_matrix = Matrix::zeros(f, middle.dim(), tau.dim());
    for (c, u) in tau_basis.iter().enumerate() {
        let mut v = u.clone();
        v.push(f.zero());
        let co = mid_space.coordinates(f, &v).ok_or_else(|| Error::Verification("τK_λ ⊄ E".into()))?;
        for (r, x) in co.into_iter().enumerate() {
            f_matrix.set(r, c, x);
        }
    }
    let mut g_matrix = Matrix::zeros(f, 1, middle.dim());
    for (c, v) in middle_basis.iter().enumerate() {
        g_matrix.set(0, c, v[ambient.dim()].clone());
    }
    let tau = Arc::new(tau);
    let middle = Arc::new(middle);
    let f_map = ModuleMap::new(tau.clone(), middle.clone(), f_matrix)?;
    let g_map = ModuleMap::new(middle.clone(), simple.clone(), g_matrix)?;
    Ok(ARSequence { lambda, construction, ambient, dp1t, tau_basis, middle_basis, tau, middle, simple, f: f_map, g: g_map })
}

/// `θ(1) = ξ_{l,l}^*` as a vector of `DP₀ᵗ`.
fn theta_vector<F: Field>(alg: &Algebra<F>, lambda: usize) -> Vec<F::Elem> {
    let f = alg.field();
    let basis = alg.left_ideal_basis(lambda);
    let e = alg.idempotent(lambda);
    basis.iter().map(|&b| if b == e { f.one() } else { f.zero() }).collect()
}

/// The generic construction from any presentation.
pub fn ar_sequence_from<F: Field>(tp: &TransposedPresentation<F>) -> Result<ARSequence<F>> {
    let alg = tp.algebra().clone();
    let f = alg.field();
    projective_simple_check(&alg, tp.lambda)?;
    let ambient = Arc::new(tp.p1t.dualize());
    let dp0t = Arc::new(tp.p0t.dualize());
    let dp1t = tp.matrix().transpose();
    let simple = Arc::new(simple_module(&alg, tp.lambda, Side::Left));
    let theta = theta_vector(&alg, tp.lambda);
    ModuleMap::new(simple, dp0t, Matrix::from_columns(f, theta.len(), &[theta.clone()]))?;
    let tau_vectors = kernel(f, &dp1t);
    let neg_theta: Vec<F::Elem> = theta.iter().map(|x| f.neg(x)).collect();
    let augmented = dp1t.hstack(&Matrix::from_columns(f, theta.len(), &[neg_theta]));
    let middle_vectors = kernel(f, &augmented);
    assemble_sequence(tp.lambda, Construction::Generic, ambient, dp1t, &tau_vectors, &middle_vectors)
}

/// Auslander-Reiten sequence ending in `K_λ` by the generic construction.
pub fn ar_sequence<F: Field>(alg: &Arc<Algebra<F>>, lambda: usize) -> Result<ARSequence<F>> {
    projective_simple_check(alg, lambda)?;
    let pres = minimal_presentation(alg, lambda)?;
    ar_sequence_from(&p1t_matrix(&pres)?)
}

/// The sequence read off the dual of the replaced basis: `U_λ` is spanned
/// by the dual vectors of the columns not holding an image of `p₁ᵗ`, and
/// `E(λ) = {(z, c) : z ∈ U_λ + c·z_{l,l}}`.
pub fn ar_sequence_closed_form<F: Field>(alg: &Arc<Algebra<F>>, lambda: usize) -> Result<ARSequence<F>> {
    projective_simple_check(alg, lambda)?;
    let pres = minimal_presentation(alg, lambda)?;
    let tp = replaced_basis(&pres)?;
    let cf = tp.closed_form.as_ref().expect("closed form");
    let f = alg.field();
    let dual = inverse(f, &cf.basis).expect("certified basis");
    let images: Vec<usize> = cf.image_columns.iter().map(|(c, _)| *c).collect();
    let dim = tp.p1t.dim();
    let tau_vectors: Vec<Vec<F::Elem>> = (0..dim).filter(|c| !images.contains(c)).map(|c| dual.row(c).to_vec()).collect();
    let mut middle_vectors: Vec<Vec<F::Elem>> = tau_vectors
        .iter()
        .map(|u| {
            let mut v = u.clone();
            v.push(f.zero());
            v
        })
        .collect();
    let mut z = dual.row(cf.identity_column).to_vec();
    z.push(f.one());
    middle_vectors.push(z);
    let ambient = Arc::new(tp.p1t.dualize());
    assemble_sequence(lambda, Construction::ClosedForm(cf.regime), ambient, tp.matrix().transpose(), &tau_vectors, &middle_vectors)
}

/// Outcome of the Auslander-Reiten checks on a constructed sequence.
#[derive(Debug, Clone, Serialize)]
pub struct ARReport {
    pub lambda: Composition,
    pub dim_tau: usize,
    pub dim_middle: usize,
    pub exact: bool,
    pub nonsplit: bool,
    pub ends_indecomposable: bool,
    pub ext1_dim: usize,
    pub tau_matches_kernel: bool,
}

impl ARReport {
    pub fn all_pass(&self) -> bool {
        self.exact && self.nonsplit && self.ends_indecomposable && self.ext1_dim == 1 && self.tau_matches_kernel && self.dim_middle == self.dim_tau + 1
    }
}

/// Checks exactness, non-splitness, indecomposable end terms,
/// `dim Ext¹(K_λ, τK_λ) = 1` and `τK_λ = ker Dp₁ᵗ`; together these
/// characterize an Auslander-Reiten sequence ending in `K_λ`.
pub fn verify_ar<F: Field>(seq: &ARSequence<F>, seed: u64) -> Result<ARReport> {
    let f = seq.ambient.field();
    let report: SequenceReport = sequence_checks(&seq.f, &seq.g)?;
    let ends = is_indecomposable(&seq.tau, seed).verdict == Some(true) && seq.simple.dim() == 1;
    let ext = ext1_dim(seq.lambda, &seq.tau)?;
    let ker = Subspace::span(f, seq.ambient.dim(), &kernel(f, &seq.dp1t));
    let tau = Subspace::span(f, seq.ambient.dim(), &seq.tau_basis);
    Ok(ARReport {
        lambda: seq.ambient.algebra().weight(seq.lambda).clone(),
        dim_tau: seq.tau.dim(),
        dim_middle: seq.middle.dim(),
        exact: report.short_exact(),
        nonsplit: !report.split,
        ends_indecomposable: ends,
        ext1_dim: ext,
        tau_matches_kernel: ker.equals(f, &tau),
    })
}

/// The split sequence `0 → τ → τ ⊕ K_λ → K_λ → 0` with the same ends, as a
/// negative control for [`verify_ar`].
pub fn split_control<F: Field>(seq: &ARSequence<F>) -> Result<ARSequence<F>> {
    let f = seq.ambient.field();
    let mut middle: Vec<Vec<F::Elem>> = seq
        .tau_basis
        .iter()
        .map(|u| {
            let mut v = u.clone();
            v.push(f.zero());
            v
        })
        .collect();
    // (z, 1) with z ∈ τ: take z = 0 so that the sequence splits.
    let mut z = vec![f.zero(); seq.ambient.dim()];
    z.push(f.one());
    middle.push(z);
    // Dp₁ᵗ(0) = 0 ≠ θ(1), so the middle term lives outside the pullback.
    assemble_sequence(seq.lambda, seq.construction, seq.ambient.clone(), seq.dp1t.clone(), &seq.tau_basis, &middle)
}

/// Whether `P₁` has a single summand: `λ = (λ₁, 0, …, 0, λ_ν, 0, …, 0)` with
/// `ν ≥ 2`, `λ_ν ≥ 1`, and `λ_ν < p` in characteristic `p`.
pub fn p1_indecomposable_pattern(lambda: &Composition, characteristic: u64) -> bool {
    let tail: Vec<usize> = (2..=lambda.n()).filter(|&k| lambda.part(k) > 0).collect();
    match tail.as_slice() {
        [nu] => characteristic == 0 || (lambda.part(*nu) as u64) < characteristic,
        _ => false,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MiddleTermReport {
    pub lambda: Composition,
    pub p1_summands: usize,
    pub p1_indecomposable: bool,
    /// Socle multiplicities of `E(λ)` keyed by weight.
    pub middle_socle: BTreeMap<String, usize>,
    pub middle_socle_simple: bool,
    pub middle_indecomposable: Option<bool>,
    /// `P₁` indecomposable, so `E(λ)` must have simple socle.
    pub asserted: bool,
    /// The assertion (when made) holds.
    pub holds: bool,
}

pub fn middle_term_analysis<F: Field>(alg: &Arc<Algebra<F>>, lambda: usize, seed: u64) -> Result<MiddleTermReport> {
    let seq = ar_sequence(alg, lambda)?;
    let pres = minimal_presentation(alg, lambda)?;
    let lam = alg.weight(lambda).clone();
    let pattern = p1_indecomposable_pattern(&lam, alg.field().characteristic());
    let srt = socle_radical_top(&seq.middle);
    let socle_simple = srt.socle_dim() == 1;
    let indec = is_indecomposable(&seq.middle, seed).verdict;
    let asserted = pattern && !alg.is_truncated();
    let holds = !asserted || (socle_simple && indec == Some(true) && pres.summands.len() == 1);
    Ok(MiddleTermReport {
        lambda: lam,
        p1_summands: pres.summands.len(),
        p1_indecomposable: pattern,
        middle_socle: srt.socle_multiplicities.iter().map(|(w, m)| (alg.weight(*w).to_string(), *m)).collect(),
        middle_socle_simple: socle_simple,
        middle_indecomposable: indec,
        asserted,
        holds,
    })
}

/// One row of the socle table of `A` as a left module.
#[derive(Debug, Clone, Serialize)]
pub struct SocleRow {
    pub lambda: Composition,
    /// `dim Hom(K_λ, A) = dim ker p₁ᵗ`.
    pub multiplicity: usize,
    /// Presence predicted by the known criteria, `None` where they are
    /// silent.
    pub predicted: Option<bool>,
}

impl SocleRow {
    pub fn agrees(&self) -> bool {
        self.predicted.map_or(true, |p| p == (self.multiplicity > 0))
    }
}

/// Predicted presence of `K_λ` in `soc A`.
pub fn socle_criterion(lambda: &Composition, characteristic: u64) -> Option<bool> {
    let n = lambda.n();
    if lambda.is_top() {
        return Some(true);
    }
    if !lambda.is_partition() {
        return Some(false);
    }
    let p = characteristic;
    let threshold = |upper: usize, lower: usize| upper + 1 >= (p as usize).pow(level(lower, p) + 1);
    match (n, p) {
        (1, _) => Some(true),
        (2, 0) => Some(false),
        (2, _) => Some(threshold(lambda.part(1), lambda.part(2))),
        (_, 0) => (lambda.part(n) != 0).then_some(false),
        (_, _) => {
            if lambda.part(n) != 0 && !threshold(lambda.part(n - 1), lambda.part(n)) {
                return Some(false);
            }
            if n == 3 && p >= 3 && lambda.part(3) != 0 {
                let d = level(lambda.part(3), p);
                let pu = p as usize;
                if lambda.part(1) + 1 >= pu.pow(d + 2) && lambda.part(2) == 2 * pu.pow(d + 1) - 1 {
                    return Some(true);
                }
            }
            None
        }
    }
}

/// Multiplicity of every simple in the socle of the left regular module,
/// computed as `dim ker p₁ᵗ`, with the criterion verdicts.
pub fn socle_report<F: Field>(alg: &Arc<Algebra<F>>) -> Result<Vec<SocleRow>> {
    let characteristic = alg.field().characteristic();
    (0..alg.weights().len())
        .into_par_iter()
        .map(|w| {
            let pres = minimal_presentation(alg, w)?;
            let tp = p1t_matrix(&pres)?;
            let lam = alg.weight(w).clone();
            let predicted = if alg.is_truncated() { None } else { socle_criterion(&lam, characteristic) };
            Ok(SocleRow { lambda: lam, multiplicity: tp.kernel.len(), predicted })
        })
        .collect()
}

/// `F = e(-)` and its adjoint `G` for a dominance coideal.
pub struct Truncation<F: Field> {
    pub parent: Arc<Algebra<F>>,
    pub sub: Arc<Algebra<F>>,
}

impl<F: Field> fmt::Debug for Truncation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Truncation({:?} -> {:?})", self.parent, self.sub)
    }
}

/// A uniserial submodule of length 2 with its top and socle weights.
#[derive(Debug, Clone, Serialize)]
pub struct UniserialWitness {
    pub top: Composition,
    pub socle: Composition,
}

#[derive(Debug, Clone, Serialize)]
pub struct AriffReport {
    pub lambda: Composition,
    pub dim_tau: usize,
    pub dim_truncated_tau: usize,
    /// `G(τK_λ̄) ≅ τK_λ`, i.e. `G` carries the sequence to an
    /// Auslander-Reiten sequence.
    pub isomorphic: bool,
    /// When not isomorphic: a length-2 uniserial submodule of `τK_λ` whose
    /// top lies outside the coideal.
    pub witness: Option<UniserialWitness>,
}

pub fn truncation_functors<F: Field>(parent: &Arc<Algebra<F>>, coideal: &[Composition]) -> Result<Truncation<F>> {
    if parent.is_truncated() {
        return Err(Error::MismatchedAlgebra);
    }
    let sub = Arc::new(parent.truncate_idempotent(coideal)?);
    Ok(Truncation { parent: parent.clone(), sub })
}

impl<F: Field> Truncation<F> {
    /// `F(V) = eV`.
    pub fn restrict(&self, m: &Representation<F>) -> Result<Representation<F>> {
        m.restrict(&self.sub)
    }

    /// `G(M) = M` with every basis element outside `eAe` acting as zero.
    pub fn inflate(&self, m: &Representation<F>) -> Result<Representation<F>> {
        if !Arc::ptr_eq(m.algebra(), &self.sub) {
            return Err(Error::MismatchedAlgebra);
        }
        let weights: Vec<usize> = m.weights().iter().map(|&w| self.parent.weight_id(self.sub.weight(w)).expect("sub weight")).collect();
        let sub_index: Vec<Option<usize>> = self.parent.basis().iter().map(|x| self.sub.index_of(x)).collect();
        Representation::from_fn(self.parent.clone(), m.side(), weights, m.labels().to_vec(), |x, c| {
            sub_index[x].map(|y| m.action(y).column(c).to_vec()).unwrap_or_default()
        })
    }

    /// Compares `G(τK_λ̄)` with `τK_λ`.
    pub fn ariff_check(&self, lambda: &Composition, seed: u64) -> Result<AriffReport> {
        let w = self.parent.weight_id(lambda).ok_or_else(|| Error::OutOfRange(lambda.to_string()))?;
        let ws = self.sub.weight_id(lambda).ok_or_else(|| Error::OutOfRange(format!("{lambda} is outside the coideal")))?;
        let full = ar_sequence(&self.parent, w)?;
        let small = ar_sequence(&self.sub, ws)?;
        let lifted = self.inflate(&small.tau)?;
        let isomorphic = find_isomorphism(&lifted, &full.tau, seed)?.is_isomorphic();
        let witness = if isomorphic { None } else { self.uniserial_witness(&full.tau, seed) };
        Ok(AriffReport { lambda: lambda.clone(), dim_tau: full.tau.dim(), dim_truncated_tau: small.tau.dim(), isomorphic, witness })
    }

    fn uniserial_witness(&self, tau: &Representation<F>, seed: u64) -> Option<UniserialWitness> {
        let f = tau.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for w in 0..self.parent.weights().len() {
            if self.sub.weight_id(self.parent.weight(w)).is_some() {
                continue;
            }
            let space = tau.weight_space(w);
            let mut candidates: Vec<Vec<F::Elem>> = space
                .iter()
                .map(|&k| {
                    let mut e = vec![f.zero(); tau.dim()];
                    e[k] = f.one();
                    e
                })
                .collect();
            for _ in 0..8 {
                let mut v = vec![f.zero(); tau.dim()];
                for &k in &space {
                    v[k] = f.random(&mut rng, 10);
                }
                candidates.push(v);
            }
            for v in candidates {
                if v.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                let span = tau.generated_submodule(&[v]);
                if span.len() != 2 {
                    continue;
                }
                let (sub, _) = tau.submodule(&span).ok()?;
                let srt = socle_radical_top(&sub);
                if srt.socle_dim() == 1 && srt.top_dim() == 1 {
                    let top = *srt.top_multiplicities.keys().next()?;
                    let soc = *srt.socle_multiplicities.keys().next()?;
                    if top != soc {
                        return Some(UniserialWitness { top: self.parent.weight(top).clone(), socle: self.parent.weight(soc).clone() });
                    }
                }
            }
        }
        None
    }
}

/// Checks `θ` is a homomorphism onto the simple socle of `DP₀ᵗ` and that
/// `Hom(K_λ, DP₀ᵗ)` is one-dimensional.
pub fn theta_is_socle_embedding<F: Field>(alg: &Arc<Algebra<F>>, lambda: usize) -> Result<bool> {
    let dp0t = ideal_module(alg, lambda, Side::Right).dualize();
    let k = simple_module(alg, lambda, Side::Left);
    Ok(hom_basis(&k, &dp0t)?.len() == 1 && socle_radical_top(&dp0t).socle_dim() == 1)
}

/// Validates `λ` against the algebra.
pub fn weight_id_of<F: Field>(alg: &Algebra<F>, lambda: &Composition) -> Result<usize> {
    if lambda.n() != alg.n() || lambda.r() != alg.r() {
        return Err(Error::InvalidComposition(format!("{lambda} is not a weight for n = {}, r = {}", alg.n(), alg.r())));
    }
    alg.weight_id(lambda).ok_or_else(|| Error::OutOfRange(format!("{lambda} is not a vertex of this algebra")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn full<F: Field>(f: F, n: usize, r: usize) -> Arc<Algebra<F>> {
        Arc::new(Algebra::new(f, n, r).unwrap())
    }

    #[test]
    fn presentation_summands() {
        let a = full(Rationals, 2, 2);
        let pres = minimal_presentation(&a, a.weight_id(&c(&[1, 1])).unwrap()).unwrap();
        assert_eq!(pres.summand_weights(), vec![c(&[2, 0])]);
        pres.verify().unwrap();
        let b = full(PrimeField::new(2).unwrap(), 2, 3);
        let pres = minimal_presentation(&b, b.weight_id(&c(&[0, 3])).unwrap()).unwrap();
        assert_eq!(pres.summand_weights(), vec![c(&[1, 2]), c(&[2, 1])]);
        pres.verify().unwrap();
        let top = minimal_presentation(&b, b.weight_id(&c(&[3, 0])).unwrap()).unwrap();
        assert!(top.summands.is_empty());
    }

    #[test]
    fn generic_presentation_agrees_with_closed_form() {
        for p in [0u64, 2, 3] {
            crate::with_field!(crate::scalars::FieldSpec::new(p).unwrap(), |f| {
                let a = full(f, 3, 3);
                for w in 0..a.weights().len() {
                    let closed = minimal_presentation(&a, w).unwrap();
                    let generic = generic_presentation(&a, w).unwrap();
                    generic.verify().unwrap();
                    let mut x = closed.summand_weights();
                    let mut y = generic.summand_weights();
                    x.sort();
                    y.sort();
                    assert_eq!(x, y, "λ = {}", a.weight(w));
                }
            });
        }
    }

    #[test]
    fn two_row_kernel_example() {
        let a = full(PrimeField::new(2).unwrap(), 2, 4);
        let w = a.weight_id(&c(&[3, 1])).unwrap();
        let tp = replaced_basis(&minimal_presentation(&a, w).unwrap()).unwrap();
        assert_eq!(tp.kernel.len(), 2);
        assert!(closed_form_kernel_matches(&tp));
    }

    #[test]
    fn basic_ar_sequence() {
        let a = full(Rationals, 2, 2);
        let w = a.weight_id(&c(&[1, 1])).unwrap();
        let seq = ar_sequence(&a, w).unwrap();
        assert_eq!(seq.middle.dim(), 2);
        let rep = verify_ar(&seq, 0).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        let closed = ar_sequence_closed_form(&a, w).unwrap();
        let f = a.field();
        let total = seq.ambient.dim() + 1;
        assert!(Subspace::span(f, total, &seq.middle_basis).equals(f, &Subspace::span(f, total, &closed.middle_basis)));
        let control = split_control(&seq).unwrap();
        assert!(!verify_ar(&control, 0).unwrap().nonsplit);
    }

    #[test]
    fn projective_simple_has_no_sequence() {
        let a = full(Rationals, 2, 2);
        let w = a.weight_id(&c(&[2, 0])).unwrap();
        assert!(matches!(ar_sequence(&a, w), Err(Error::ProjectiveSimple(_))));
    }

    #[test]
    fn socle_tables() {
        let a = full(Rationals, 2, 4);
        let rows = socle_report(&a).unwrap();
        let present: Vec<_> = rows.iter().filter(|r| r.multiplicity > 0).map(|r| r.lambda.clone()).collect();
        assert_eq!(present, vec![c(&[4, 0])]);
        let b = full(PrimeField::new(2).unwrap(), 2, 4);
        let rows = socle_report(&b).unwrap();
        let present: Vec<_> = rows.iter().filter(|r| r.multiplicity > 0).map(|r| r.lambda.clone()).collect();
        assert_eq!(present, vec![c(&[4, 0]), c(&[3, 1])]);
        assert!(rows.iter().all(|r| r.agrees()));
    }

    #[test]
    fn truncation_example() {
        for p in [0u64, 3] {
            crate::with_field!(crate::scalars::FieldSpec::new(p).unwrap(), |f| {
                let a = full(f, 3, 3);
                let coideal: Vec<Composition> = a.weights().iter().filter(|w| w.part(3) == 0).cloned().collect();
                let t = truncation_functors(&a, &coideal).unwrap();
                let rep = t.ariff_check(&c(&[1, 2, 0]), 0).unwrap();
                assert!(!rep.isomorphic);
                let wit = rep.witness.expect("witness");
                assert_eq!(wit.top, c(&[2, 0, 1]));
                assert_eq!(wit.socle, c(&[2, 1, 0]));
            });
        }
    }
}
