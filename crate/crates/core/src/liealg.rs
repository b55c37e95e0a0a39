//! Lie algebras given by structure constants.
//!
//! [`StructureLieAlgebra`] stores `[e_i, e_j] = Σ_k f_{ij}^k e_k` as sparse
//! rows, optionally with a degree per basis element and an involution
//! matrix (column `j` is the image of `e_j`). [`close`] realizes the Lie
//! algebra spanned by an arbitrary set of elements under a user-supplied
//! bracket; [`lie_closure`] specializes it to square matrices.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{Accumulator, Echelon, Matrix, SparseMatrix, SparseVec};
use crate::sampling::{rng, CheckMode};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct StructureLieAlgebra<T: Scalar> {
    dim: usize,
    /// `bracket[i * dim + j]` = coordinates of `[e_i, e_j]`.
    bracket: Vec<SparseVec<T>>,
    grading: Option<Vec<i32>>,
    involution: Option<Matrix<T>>,
    labels: Option<Vec<String>>,
}

impl<T: Scalar> StructureLieAlgebra<T> {
    /// Tabulates `[e_i, e_j]` for `i < j` and fills the rest by antisymmetry.
    pub fn from_bracket_fn<F>(dim: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> SparseVec<T> + Sync,
    {
        let upper: Vec<SparseVec<T>> = (0..dim * dim)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / dim, ij % dim);
                if i < j {
                    f(i, j)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let mut bracket = upper;
        for i in 0..dim {
            for j in 0..i {
                bracket[i * dim + j] = bracket[j * dim + i].neg();
            }
        }
        StructureLieAlgebra { dim, bracket, grading: None, involution: None, labels: None }
    }

    /// Builds from a full table, rejecting tables that are not antisymmetric.
    pub fn from_table(dim: usize, bracket: Vec<SparseVec<T>>) -> Result<Self> {
        if bracket.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: bracket.len() });
        }
        for i in 0..dim {
            for j in i..dim {
                if bracket[i * dim + j] != bracket[j * dim + i].neg() {
                    return Err(Error::Parse(format!("bracket table not antisymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(StructureLieAlgebra { dim, bracket, grading: None, involution: None, labels: None })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_bracket_fn(dim, |_, _| SparseVec::new())
    }

    pub fn with_grading(mut self, grading: Vec<i32>) -> Self {
        assert_eq!(grading.len(), self.dim);
        self.grading = Some(grading);
        self
    }

    pub fn with_involution(mut self, tau: Matrix<T>) -> Self {
        assert_eq!((tau.nrows(), tau.ncols()), (self.dim, self.dim));
        self.involution = Some(tau);
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> Option<&[i32]> {
        self.grading.as_deref()
    }

    pub fn involution(&self) -> Option<&Matrix<T>> {
        self.involution.as_ref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels.as_ref().map(|l| l[i].clone()).unwrap_or_else(|| format!("e{i}"))
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec<T> {
        &self.bracket[i * self.dim + j]
    }

    pub fn bracket(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> SparseVec<T> {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_scaled(&a.mul_ref(b), self.basis_bracket(*i, *j));
            }
        }
        acc.finish()
    }

    /// `[x, e_j]`.
    fn bracket_with_basis(&self, x: &SparseVec<T>, j: usize) -> SparseVec<T> {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            acc.add_scaled(a, self.basis_bracket(*i, j));
        }
        acc.finish()
    }

    /// `ad(e_i)` as a matrix; column `j` is `[e_i, e_j]`.
    pub fn ad_basis(&self, i: usize) -> SparseMatrix<T> {
        SparseMatrix::from_columns(&self.bracket[i * self.dim..(i + 1) * self.dim])
    }

    /// Copy with `f_{ij}^k` shifted by `delta` and `f_{ji}^k` by `-delta`.
    pub fn with_perturbed_constant(&self, i: usize, j: usize, k: usize, delta: T) -> Self {
        let mut out = self.clone();
        let d = self.dim;
        out.bracket[i * d + j].axpy(&T::one(), &SparseVec::single(k, delta.clone()));
        out.bracket[j * d + i].axpy(&-T::one(), &SparseVec::single(k, delta));
        out
    }

    fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> SparseVec<T> {
        let mut d = self.bracket_with_basis(self.basis_bracket(i, j), k);
        d.axpy(&T::one(), &self.bracket_with_basis(self.basis_bracket(j, k), i));
        d.axpy(&T::one(), &self.bracket_with_basis(self.basis_bracket(k, i), j));
        d
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y] = 0` on basis triples `i < j < k`
    /// (full) or on `count` random basis triples (sampled).
    pub fn check_jacobi(&self, mode: CheckMode, seed: u64) -> JacobiReport {
        let d = self.dim;
        let (checked, witness) = match mode {
            CheckMode::Full => {
                let witness = (0..d)
                    .into_par_iter()
                    .filter_map(|i| {
                        for j in i + 1..d {
                            for k in j + 1..d {
                                if !self.jacobi_defect(i, j, k).is_zero() {
                                    return Some([i, j, k]);
                                }
                            }
                        }
                        None
                    })
                    .min();
                let n = d as u64;
                ((n * n.saturating_sub(1) * n.saturating_sub(2) / 6) as usize, witness)
            }
            CheckMode::Sampled(count) => {
                let mut g = rng(seed);
                let triples: Vec<[usize; 3]> = if d == 0 {
                    Vec::new()
                } else {
                    (0..count).map(|_| [g.gen_range(0..d), g.gen_range(0..d), g.gen_range(0..d)]).collect()
                };
                let first = triples
                    .par_iter()
                    .enumerate()
                    .filter(|(_, t)| !self.jacobi_defect(t[0], t[1], t[2]).is_zero())
                    .map(|(n, _)| n)
                    .min();
                (triples.len(), first.map(|n| triples[n]))
            }
        };
        JacobiReport {
            mode: mode.to_string(),
            seed,
            dim: d,
            triples_checked: checked,
            passed: witness.is_none(),
            witness_labels: witness.map(|w| w.iter().map(|&i| self.label(i)).collect()),
            witness,
        }
    }

    /// Dimensions of the graded pieces, by increasing degree.
    pub fn graded_dims(&self) -> Option<Vec<(i32, usize)>> {
        let g = self.grading.as_ref()?;
        let mut counts = BTreeMap::new();
        for d in g {
            *counts.entry(*d).or_insert(0) += 1;
        }
        Some(counts.into_iter().collect())
    }

    /// Checks `deg [e_i, e_j] = deg e_i + deg e_j` for every nonzero constant.
    pub fn check_grading(&self) -> Result<GradingReport> {
        let g = self.grading.as_ref().ok_or(Error::MissingGrading)?;
        let d = self.dim;
        let witness = (0..d * d).find_map(|ij| {
            let (i, j) = (ij / d, ij % d);
            self.basis_bracket(i, j).iter().find(|(k, _)| g[*k] != g[i] + g[j]).map(|(k, _)| [i, j, *k])
        });
        Ok(GradingReport {
            passed: witness.is_none(),
            graded_dims: self.graded_dims().unwrap_or_default(),
            witness_labels: witness.map(|w| w.iter().map(|&i| self.label(i)).collect()),
            witness,
        })
    }

    /// Checks that the involution is an automorphism with `τ² = 1` that
    /// maps degree `k` to degree `−k` (when a grading is present).
    pub fn check_graded_involution(&self) -> Result<InvolutionReport> {
        let tau = self.involution.as_ref().ok_or(Error::MissingInvolution)?;
        let d = self.dim;
        let images: Vec<SparseVec<T>> = (0..d).map(|j| SparseVec::from_dense(&tau.column(j))).collect();
        let apply = |v: &SparseVec<T>| {
            let mut acc = Accumulator::new();
            for (j, c) in v.iter() {
                acc.add_scaled(c, &images[*j]);
            }
            acc.finish()
        };
        let involutive = (0..d).find(|&j| apply(&images[j]) != SparseVec::unit(j));
        let automorphism = (0..d * d).into_par_iter().find_first(|ij| {
            let (i, j) = (ij / d, ij % d);
            i < j && apply(self.basis_bracket(i, j)) != self.bracket(&images[i], &images[j])
        });
        let degree = self.grading.as_ref().and_then(|g| {
            (0..d).find(|&j| images[j].iter().any(|(k, _)| g[*k] != -g[j]))
        });
        let mut witness = None;
        if let Some(j) = involutive {
            witness = Some(format!("tau^2 moves {}", self.label(j)));
        } else if let Some(ij) = automorphism {
            witness = Some(format!("tau fails on [{}, {}]", self.label(ij / d), self.label(ij % d)));
        } else if let Some(j) = degree {
            witness = Some(format!("tau does not reverse the degree of {}", self.label(j)));
        }
        Ok(InvolutionReport {
            passed: witness.is_none(),
            involutive: involutive.is_none(),
            automorphism: automorphism.is_none(),
            degree_reversing: self.grading.as_ref().map(|_| degree.is_none()),
            witness,
        })
    }

    /// `K(e_i, e_j) = tr(ad e_i ∘ ad e_j)`.
    pub fn killing_form(&self) -> Matrix<T> {
        let d = self.dim;
        let ads: Vec<SparseMatrix<T>> = (0..d).into_par_iter().map(|i| self.ad_basis(i)).collect();
        let rows: Vec<Vec<T>> = (0..d)
            .into_par_iter()
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if j < i {
                            return T::zero();
                        }
                        // tr(A B) = Σ_{l,k} A[l][k] B[k][l]
                        let mut acc = T::zero();
                        for l in 0..d {
                            for (k, a) in ads[i].row(l).iter() {
                                if let Some(b) = ads[j].row(*k).get(l) {
                                    acc.add_product(a, b);
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut m = Matrix::from_rows(rows);
        for i in 0..d {
            for j in 0..i {
                let v = m.get(j, i).clone();
                m.set(i, j, v);
            }
        }
        m
    }

    /// RREF basis of `[S, S]` for the subspace `S` spanned by `basis`.
    pub fn derived_of(&self, basis: &[SparseVec<T>]) -> Vec<SparseVec<T>> {
        let mut ech = Echelon::new();
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                ech.insert(&self.bracket(x, y));
            }
        }
        ech.rows().to_vec()
    }

    pub fn derived_subalgebra(&self) -> Vec<SparseVec<T>> {
        let mut ech = Echelon::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                ech.insert(self.basis_bracket(i, j));
                if ech.rank() == self.dim {
                    return ech.rows().to_vec();
                }
            }
        }
        ech.rows().to_vec()
    }

    /// Dimensions `g ⊇ g' ⊇ g'' ⊇ …` until the series stabilizes.
    pub fn derived_series_dims(&self) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut cur = self.derived_subalgebra();
        loop {
            let last = *dims.last().unwrap();
            dims.push(cur.len());
            if cur.len() == last || cur.is_empty() {
                break;
            }
            cur = self.derived_of(&cur);
        }
        dims
    }

    /// Basis of `{x : [x, e_j] = 0 for all j}`.
    pub fn center(&self) -> Vec<SparseVec<T>> {
        let d = self.dim;
        let mut ech = Echelon::new();
        for j in 0..d {
            // row (j, k): Σ_i x_i f_{ij}^k
            let mut rows: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
            for i in 0..d {
                for (k, c) in self.basis_bracket(i, j).iter() {
                    rows.entry(*k).or_default().push((i, c.clone()));
                }
            }
            for (_, r) in rows {
                ech.insert(&SparseVec::from_pairs(r));
                if ech.rank() == d {
                    return Vec::new();
                }
            }
        }
        ech.kernel_basis(d)
    }

    /// Quotient by the ideal spanned by `ideal`, on the complement spanned by
    /// the standard basis vectors that are not RREF pivots of the ideal.
    pub fn quotient_by_ideal(&self, ideal: &[SparseVec<T>]) -> Result<Self> {
        let d = self.dim;
        let mut ech = Echelon::new();
        for v in ideal {
            ech.insert(v);
        }
        for (a, v) in ideal.iter().enumerate() {
            for i in 0..d {
                let w = self.bracket(&SparseVec::unit(i), v);
                if !ech.contains(&w) {
                    return Err(Error::NotAnIdeal(i, a));
                }
            }
        }
        let pivots: std::collections::HashSet<usize> = ech.pivots().iter().copied().collect();
        let complement: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
        let mut position = vec![usize::MAX; d];
        for (a, &c) in complement.iter().enumerate() {
            position[c] = a;
        }
        let q = complement.len();
        let mut out = Self::from_bracket_fn(q, |a, b| {
            let r = ech.reduce(self.basis_bracket(complement[a], complement[b]));
            r.map_indices(|i| position[i])
        });
        if let Some(g) = &self.grading {
            out.grading = Some(complement.iter().map(|&c| g[c]).collect());
        }
        if let Some(l) = &self.labels {
            out.labels = Some(complement.iter().map(|&c| l[c].clone()).collect());
        }
        Ok(out)
    }

    /// Structure constants in the basis `f_a = Σ_i p[i][a] e_i`.
    pub fn change_basis(&self, p: &Matrix<T>) -> Result<Self> {
        let d = self.dim;
        if p.nrows() != d || p.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.nrows() });
        }
        let pinv = p.inverse().ok_or_else(|| Error::Parse("basis change is singular".into()))?;
        let cols: Vec<SparseVec<T>> = (0..d).map(|a| SparseVec::from_dense(&p.column(a))).collect();
        let pinv_rows: Vec<SparseVec<T>> = (0..d).map(|r| SparseVec::from_dense(pinv.row(r))).collect();
        Ok(Self::from_bracket_fn(d, |a, b| {
            let img = self.bracket(&cols[a], &cols[b]);
            SparseVec::from_pairs((0..d).map(|r| (r, pinv_rows[r].dot(&img))))
        }))
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let k = self.killing_form();
        let rank = k.rank();
        Fingerprint {
            dim: self.dim,
            graded_dims: self.graded_dims(),
            killing_rank: rank,
            killing_nondegenerate: rank == self.dim,
            derived_dims: self.derived_series_dims(),
            center_dim: self.center().len(),
        }
    }

    pub fn to_json(&self) -> Value {
        let d = self.dim;
        let mut entries = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for (k, c) in self.basis_bracket(i, j).iter() {
                    entries.push(json!([i, j, k, c.to_exact_string()]));
                }
            }
        }
        let labels: Vec<String> = (0..d).map(|i| self.label(i)).collect();
        json!({ "dim": d, "grading": self.grading, "labels": labels, "entries": entries })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub mode: String,
    pub seed: u64,
    pub dim: usize,
    pub triples_checked: usize,
    pub passed: bool,
    pub witness: Option<[usize; 3]>,
    pub witness_labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub passed: bool,
    pub graded_dims: Vec<(i32, usize)>,
    /// `(i, j, k)` with `f_{ij}^k ≠ 0` but `deg k ≠ deg i + deg j`.
    pub witness: Option<[usize; 3]>,
    pub witness_labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionReport {
    pub passed: bool,
    pub involutive: bool,
    pub automorphism: bool,
    pub degree_reversing: Option<bool>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub graded_dims: Option<Vec<(i32, usize)>>,
    pub killing_rank: usize,
    pub killing_nondegenerate: bool,
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
}

impl Fingerprint {
    /// The same fingerprint with the grading information dropped.
    pub fn ungraded(&self) -> Fingerprint {
        Fingerprint { graded_dims: None, ..self.clone() }
    }
}

pub fn fingerprint_equal(a: &Fingerprint, b: &Fingerprint) -> bool {
    a == b
}

/// Result of [`close`]: the spanning elements actually kept, their degrees,
/// and the structure constants in that basis.
pub struct Closure<E, T: Scalar> {
    pub elements: Vec<E>,
    pub degrees: Vec<i32>,
    pub algebra: StructureLieAlgebra<T>,
}

/// Smallest Lie algebra containing `seeds` under `bracket`.
///
/// `flatten` must be linear and injective on the ambient space (it gives the
/// coordinates used for independence tests); `degree` is evaluated on every
/// nonzero element, must be additive under `bracket` (otherwise the closure
/// fails with `Inhomogeneous`), and is used to keep one echelon per degree. The basis of
/// the result is the kept elements in order of discovery; seeds that are
/// dependent on earlier ones are dropped. Fails once more than `max_dim`
/// independent elements have been found.
pub fn close<T, E, B, F, D>(
    seeds: Vec<E>,
    bracket: B,
    mut flatten: F,
    degree: D,
    max_dim: usize,
) -> Result<Closure<E, T>>
where
    T: Scalar,
    E: Send + Sync,
    B: Fn(&E, &E) -> Result<E> + Sync,
    F: FnMut(&E) -> SparseVec<T>,
    D: Fn(&E) -> Result<i32>,
{
    let mut elements: Vec<E> = Vec::new();
    let mut degrees: Vec<i32> = Vec::new();
    let mut echelons: BTreeMap<i32, (Echelon<T>, Vec<usize>)> = BTreeMap::new();

    // Returns the coordinates of `e` in the current basis, adding it if new.
    let mut absorb = |e: E,
                      elements: &mut Vec<E>,
                      degrees: &mut Vec<i32>,
                      flat: SparseVec<T>,
                      deg: i32|
     -> Result<SparseVec<T>> {
        if flat.is_zero() {
            return Ok(SparseVec::new());
        }
        let (ech, ids) = echelons.entry(deg).or_insert_with(|| (Echelon::with_tracking(), Vec::new()));
        if let Some(c) = ech.coordinates(&flat) {
            return Ok(c.map_indices(|id| ids[id]));
        }
        if elements.len() >= max_dim {
            return Err(Error::ClosureOverflow(max_dim));
        }
        ech.insert(&flat);
        ids.push(elements.len());
        elements.push(e);
        degrees.push(deg);
        Ok(SparseVec::unit(elements.len() - 1))
    };

    for s in seeds {
        let flat = flatten(&s);
        let deg = if flat.is_zero() { 0 } else { degree(&s)? };
        absorb(s, &mut elements, &mut degrees, flat, deg)?;
    }

    let mut table: BTreeMap<(usize, usize), SparseVec<T>> = BTreeMap::new();
    let mut j = 0;
    while j < elements.len() {
        let products: Vec<E> =
            (0..j).into_par_iter().map(|i| bracket(&elements[i], &elements[j])).collect::<Result<_>>()?;
        for (i, p) in products.into_iter().enumerate() {
            let flat = flatten(&p);
            let deg = degrees[i] + degrees[j];
            if !flat.is_zero() && degree(&p)? != deg {
                return Err(Error::Inhomogeneous);
            }
            let coords = absorb(p, &mut elements, &mut degrees, flat, deg)?;
            table.insert((i, j), coords);
        }
        j += 1;
    }
    let n = elements.len();
    let algebra = StructureLieAlgebra::from_bracket_fn(n, |i, j| table[&(i, j)].clone());
    Ok(Closure { elements, degrees, algebra })
}

/// Lie closure of a set of square matrices under the commutator.
pub fn lie_closure<T: Scalar>(ops: &[SparseMatrix<T>]) -> Result<Closure<SparseMatrix<T>, T>> {
    let n = ops.first().map(|m| m.size()).unwrap_or(0);
    close(ops.to_vec(), |a, b| Ok(a.commutator(b)), |m| m.flatten(), |_| Ok(0), n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_scalar, DEFAULT_SEED};
    use crate::Rational;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    pub(crate) fn so3() -> StructureLieAlgebra<Rational> {
        StructureLieAlgebra::from_bracket_fn(3, |i, j| SparseVec::single(3 - i - j, r(if (j + 3 - i) % 3 == 1 { 1 } else { -1 })))
    }

    fn sl2() -> StructureLieAlgebra<Rational> {
        // e, f, h
        StructureLieAlgebra::from_bracket_fn(3, |i, j| match (i, j) {
            (0, 1) => SparseVec::single(2, r(1)),
            (0, 2) => SparseVec::single(0, r(-2)),
            (1, 2) => SparseVec::single(1, r(2)),
            _ => unreachable!(),
        })
    }

    fn elementary(n: usize, i: usize, j: usize) -> SparseMatrix<Rational> {
        let mut rows = vec![SparseVec::new(); n];
        rows[i] = SparseVec::unit(j);
        SparseMatrix::from_rows(rows)
    }

    #[test]
    fn so3_constants() {
        let g = so3();
        assert_eq!(g.basis_bracket(0, 1), &SparseVec::single(2, r(1)));
        assert_eq!(g.basis_bracket(1, 2), &SparseVec::single(0, r(1)));
        assert_eq!(g.basis_bracket(2, 0), &SparseVec::single(1, r(1)));
        assert!(g.check_jacobi(CheckMode::Full, 0).passed);
        let k = g.killing_form();
        assert_eq!(k, Matrix::from_i64_rows(&[vec![-2, 0, 0], vec![0, -2, 0], vec![0, 0, -2]]));
    }

    #[test]
    fn perturbed_constant_breaks_jacobi() {
        let g = sl2().with_perturbed_constant(0, 1, 0, r(1));
        let rep = g.check_jacobi(CheckMode::Full, 0);
        assert!(!rep.passed);
        assert_eq!(rep.witness, Some([0, 1, 2]));
        let rep = g.check_jacobi(CheckMode::Sampled(500), DEFAULT_SEED);
        assert!(!rep.passed);
    }

    #[test]
    fn abelian_basics() {
        let a = StructureLieAlgebra::<Rational>::abelian(3).with_grading(vec![5, -2, 0]);
        assert!(a.killing_form().is_zero());
        assert!(a.derived_subalgebra().is_empty());
        assert_eq!(a.center().len(), 3);
        assert!(a.check_grading().unwrap().passed);
        let a = StructureLieAlgebra::<Rational>::abelian(2)
            .with_grading(vec![0, 0])
            .with_involution(Matrix::from_i64_rows(&[vec![-1, 0], vec![0, -1]]));
        assert!(a.check_graded_involution().unwrap().passed);
    }

    #[test]
    fn grading_checks() {
        let g = sl2().with_grading(vec![1, -1, 0]);
        let rep = g.check_grading().unwrap();
        assert!(rep.passed);
        assert_eq!(rep.graded_dims, vec![(-1, 1), (0, 1), (1, 1)]);
        let bad = sl2().with_grading(vec![1, 0, 0]);
        assert!(!bad.check_grading().unwrap().passed);
        assert_eq!(sl2().check_grading().unwrap_err(), Error::MissingGrading);
        assert_eq!(sl2().check_graded_involution().unwrap_err(), Error::MissingInvolution);
    }

    #[test]
    fn involution_checks() {
        let chev = Matrix::from_i64_rows(&[vec![0, -1, 0], vec![-1, 0, 0], vec![0, 0, -1]]);
        let g = sl2().with_grading(vec![1, -1, 0]).with_involution(chev);
        assert!(g.check_graded_involution().unwrap().passed);
        let id = sl2().with_grading(vec![1, -1, 0]).with_involution(Matrix::identity(3));
        let rep = id.check_graded_involution().unwrap();
        assert!(!rep.passed);
        assert_eq!(rep.degree_reversing, Some(false));
        assert!(rep.automorphism && rep.involutive);
    }

    #[test]
    fn closure_examples() {
        let c = lie_closure(&[SparseMatrix::<Rational>::identity(2)]).unwrap();
        assert_eq!(c.algebra.dim(), 1);
        assert!(c.algebra.basis_bracket(0, 0).is_zero());
        let c = lie_closure::<Rational>(&[]).unwrap();
        assert_eq!(c.algebra.dim(), 0);
        let c = lie_closure(&[elementary(2, 0, 1), elementary(2, 1, 0)]).unwrap();
        assert_eq!(c.algebra.dim(), 3);
        assert!(c.algebra.check_jacobi(CheckMode::Full, 0).passed);
        assert_eq!(c.algebra.fingerprint(), sl2().fingerprint());
        // idempotent
        let again = lie_closure(&c.elements).unwrap();
        assert_eq!(again.algebra.dim(), 3);
        assert_eq!(again.algebra, c.algebra);
    }

    #[test]
    fn closure_overflow_is_reported() {
        let res = close(
            vec![SparseMatrix::<Rational>::identity(1)],
            |a, b| Ok(a.commutator(b)),
            |m| m.flatten(),
            |_| Ok(0),
            0,
        );
        assert!(matches!(res, Err(Error::ClosureOverflow(0))));
    }

    #[test]
    fn sl3_closure_and_fingerprint() {
        let ops: Vec<_> = (0..3).flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| elementary(3, i, j))).collect();
        let c = lie_closure(&ops).unwrap();
        let g = &c.algebra;
        assert_eq!(g.dim(), 8);
        let fp = g.fingerprint();
        assert_eq!(fp.killing_rank, 8);
        assert_eq!(fp.derived_dims, vec![8, 8]);
        assert_eq!(fp.center_dim, 0);
        assert!(!fingerprint_equal(&sl2().fingerprint(), &StructureLieAlgebra::<Rational>::abelian(3).fingerprint()));
    }

    #[test]
    fn quotients() {
        // gl2 = sl2 + scalars
        let ops = vec![elementary(2, 0, 1), elementary(2, 1, 0), SparseMatrix::identity(2)];
        let c = lie_closure(&ops).unwrap();
        let g = &c.algebra;
        assert_eq!(g.dim(), 4);
        let z = g.center();
        assert_eq!(z.len(), 1);
        let q = g.quotient_by_ideal(&z).unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.check_jacobi(CheckMode::Full, 0).passed);
        assert_eq!(q.fingerprint(), sl2().fingerprint());
        assert_eq!(g.quotient_by_ideal(&[]).unwrap().fingerprint(), g.fingerprint());
        let all: Vec<_> = (0..4).map(SparseVec::unit).collect();
        assert_eq!(g.quotient_by_ideal(&all).unwrap().dim(), 0);
        let not_ideal = sl2().quotient_by_ideal(&[SparseVec::unit(0)]);
        assert!(matches!(not_ideal, Err(Error::NotAnIdeal(_, 0))));
    }

    #[test]
    fn derived_series_of_solvable_algebra() {
        // upper triangular 3x3 matrices: dims 6, 3, 1, 0
        let ops: Vec<_> = (0..3).flat_map(|i| (i..3).map(move |j| elementary(3, i, j))).collect();
        let c = lie_closure(&ops).unwrap();
        assert_eq!(c.algebra.derived_series_dims(), vec![6, 3, 1, 0]);
        assert_eq!(c.algebra.center().len(), 1);
    }

    #[test]
    fn json_export_lists_upper_entries() {
        let v = so3().to_json();
        assert_eq!(v["dim"], 3);
        assert_eq!(v["entries"].as_array().unwrap().len(), 3);
        assert_eq!(v["entries"][0], json!([0, 1, 2, "1"]));
    }

    fn random_invertible(d: usize, seed: u64) -> Matrix<Rational> {
        let mut g = rng(seed);
        loop {
            let rows = (0..d).map(|_| (0..d).map(|_| random_scalar::<Rational, _>(&mut g)).collect()).collect();
            let m = Matrix::from_rows(rows);
            if m.rank() == d {
                return m;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn fingerprint_invariant_under_basis_change(seed in 0u64..10_000) {
            let gl2 = lie_closure(&[elementary(2, 0, 1), elementary(2, 1, 0), SparseMatrix::identity(2)]).unwrap().algebra;
            let tri = lie_closure(&(0..3).flat_map(|i| (i..3).map(move |j| elementary(3, i, j))).collect::<Vec<_>>()).unwrap().algebra;
            for g in [so3(), sl2(), gl2, tri] {
                let p = random_invertible(g.dim(), seed);
                let h = g.change_basis(&p).unwrap();
                prop_assert!(h.check_jacobi(CheckMode::Full, 0).passed);
                prop_assert_eq!(h.fingerprint(), g.fingerprint());
            }
        }
    }
}
