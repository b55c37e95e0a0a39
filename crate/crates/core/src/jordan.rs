//! Jordan algebras H_n(K) of hermitian matrices over a division algebra.
//!
//! Basis order: diagonal units `E_1..E_n`, then for each slot `(i, j)` with
//! `i < j` in lexicographic order the off-diagonal units `F_ij(e_k)` sweeping
//! the K-basis. `F_ij(a)` has `a` at `(i, j)` and `conj(a)` at `(j, i)`.
//! The product is `a∘b = (ab + ba)/2` computed entrywise over K, so the
//! nonassociativity of O is handled by plain expansion.
//!
//! `n = 4` is accepted so that H_4(O) can serve as a negative control for
//! the identity checker; it is not a Jordan algebra.

use rayon::prelude::*;
use serde::Serialize;

use crate::compalg::{CompositionElement, CompositionKind};
use crate::error::{Error, Result};
use crate::exactnum::{Accumulator, SparseMatrix, SparseVec};
use crate::sampling::{random_vector, rng};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermitianUnit {
    Diagonal(usize),
    OffDiagonal { row: usize, col: usize, unit: usize },
}

#[derive(Clone, Debug)]
pub struct JordanAlgebra<T> {
    n: usize,
    kind: CompositionKind,
    basis: Vec<HermitianUnit>,
    /// `product[a * dim + b]` = coordinates of `e_a ∘ e_b`.
    product: Vec<SparseVec<T>>,
}

/// An element of a specific H_n(K).
#[derive(Clone, Debug, PartialEq)]
pub struct JordanElement<T> {
    n: usize,
    kind: CompositionKind,
    coords: SparseVec<T>,
}

impl<T: Scalar> JordanElement<T> {
    pub fn coords(&self) -> &SparseVec<T> {
        &self.coords
    }
}

type KMatrix<T> = Vec<Vec<CompositionElement<T>>>;

impl<T: Scalar> JordanAlgebra<T> {
    pub fn new(n: usize, kind: CompositionKind) -> Result<Self> {
        if !(2..=4).contains(&n) {
            return Err(Error::UnsupportedSize(n));
        }
        let mut basis: Vec<HermitianUnit> = (0..n).map(HermitianUnit::Diagonal).collect();
        for row in 0..n {
            for col in row + 1..n {
                basis.extend((0..kind.dim()).map(|unit| HermitianUnit::OffDiagonal { row, col, unit }));
            }
        }
        let mut alg = JordanAlgebra { n, kind, basis, product: Vec::new() };
        let mats: Vec<KMatrix<T>> = (0..alg.dim()).map(|a| alg.unit_matrix(a)).collect();
        let dim = alg.dim();
        let product: Vec<SparseVec<T>> = (0..dim * dim)
            .into_par_iter()
            .map(|ab| {
                let (a, b) = (ab / dim, ab % dim);
                let x = &mats[a];
                let y = &mats[b];
                let xy = kmat_mul(x, y);
                let yx = kmat_mul(y, x);
                alg.coords_of_symmetrized(&xy, &yx)
            })
            .collect();
        alg.product = product;
        Ok(alg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CompositionKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[HermitianUnit] {
        &self.basis
    }

    pub fn name(&self) -> String {
        format!("H{}:{}", self.n, self.kind)
    }

    pub fn label(&self, a: usize) -> String {
        match self.basis[a] {
            HermitianUnit::Diagonal(i) => format!("E{}", i + 1),
            HermitianUnit::OffDiagonal { row, col, unit } => format!("F{}{}(e{})", row + 1, col + 1, unit),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|a| self.label(a)).collect()
    }

    fn unit_matrix(&self, a: usize) -> KMatrix<T> {
        let mut m = vec![vec![CompositionElement::zero(self.kind); self.n]; self.n];
        match self.basis[a] {
            HermitianUnit::Diagonal(i) => m[i][i] = CompositionElement::one(self.kind),
            HermitianUnit::OffDiagonal { row, col, unit } => {
                let e = CompositionElement::basis(self.kind, unit);
                m[col][row] = e.conj();
                m[row][col] = e;
            }
        }
        m
    }

    fn offdiag_offset(&self, row: usize, col: usize) -> usize {
        let mut offset = self.n;
        for r in 0..self.n {
            for c in r + 1..self.n {
                if (r, c) == (row, col) {
                    return offset;
                }
                offset += self.kind.dim();
            }
        }
        unreachable!("slot ({row}, {col}) outside the matrix")
    }

    fn coords_of_symmetrized(&self, xy: &KMatrix<T>, yx: &KMatrix<T>) -> SparseVec<T> {
        let half = T::from_frac(1, 2);
        let mut pairs = Vec::new();
        for i in 0..self.n {
            let d = xy[i][i].add(&yx[i][i]).expect("same kind").scaled(&half);
            assert!(d.is_real(), "symmetrized product has a non-real diagonal entry");
            pairs.push((i, d.coords()[0].clone()));
        }
        for row in 0..self.n {
            for col in row + 1..self.n {
                let off = self.offdiag_offset(row, col);
                let e = xy[row][col].add(&yx[row][col]).expect("same kind").scaled(&half);
                for (k, c) in e.coords().iter().enumerate() {
                    pairs.push((off + k, c.clone()));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn product_basis(&self, a: usize, b: usize) -> &SparseVec<T> {
        &self.product[a * self.dim() + b]
    }

    /// Product on raw coordinate vectors.
    pub fn mul_coords(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> SparseVec<T> {
        let mut acc = Accumulator::new();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                let c = xa.mul_ref(yb);
                acc.add_scaled(&c, self.product_basis(*a, *b));
            }
        }
        acc.finish()
    }

    pub fn element(&self, coords: SparseVec<T>) -> Result<JordanElement<T>> {
        if let Some((i, _)) = coords.entries().last() {
            if *i >= self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), got: i + 1 });
            }
        }
        Ok(JordanElement { n: self.n, kind: self.kind, coords })
    }

    pub fn basis_element(&self, a: usize) -> JordanElement<T> {
        JordanElement { n: self.n, kind: self.kind, coords: SparseVec::unit(a) }
    }

    /// Sum of the diagonal units.
    pub fn unit(&self) -> JordanElement<T> {
        JordanElement { n: self.n, kind: self.kind, coords: SparseVec::from_pairs((0..self.n).map(|i| (i, T::one()))) }
    }

    fn check(&self, x: &JordanElement<T>) -> Result<()> {
        if x.n == self.n && x.kind == self.kind {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn product(&self, x: &JordanElement<T>, y: &JordanElement<T>) -> Result<JordanElement<T>> {
        self.check(x)?;
        self.check(y)?;
        Ok(JordanElement { n: self.n, kind: self.kind, coords: self.mul_coords(&x.coords, &y.coords) })
    }

    pub fn trace_coords(&self, x: &SparseVec<T>) -> T {
        let mut acc = T::zero();
        for (a, v) in x.iter() {
            if *a < self.n {
                acc += v.clone();
            }
        }
        acc
    }

    /// `(x, y) = tr(x∘y)`.
    pub fn trace_form_coords(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> T {
        self.trace_coords(&self.mul_coords(x, y))
    }

    pub fn trace_form(&self, x: &JordanElement<T>, y: &JordanElement<T>) -> Result<T> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.trace_form_coords(&x.coords, &y.coords))
    }

    /// `(xyz) = (x∘y)∘z + x∘(y∘z) - y∘(x∘z)` on coordinates.
    pub fn jts_coords(&self, x: &SparseVec<T>, y: &SparseVec<T>, z: &SparseVec<T>) -> SparseVec<T> {
        let t1 = self.mul_coords(&self.mul_coords(x, y), z);
        let t2 = self.mul_coords(x, &self.mul_coords(y, z));
        let t3 = self.mul_coords(y, &self.mul_coords(x, z));
        let mut out = t1;
        out.axpy(&T::one(), &t2);
        out.axpy(&-T::one(), &t3);
        out
    }

    pub fn jts_product(
        &self,
        x: &JordanElement<T>,
        y: &JordanElement<T>,
        z: &JordanElement<T>,
    ) -> Result<JordanElement<T>> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(JordanElement { n: self.n, kind: self.kind, coords: self.jts_coords(&x.coords, &y.coords, &z.coords) })
    }

    /// Left multiplication operator `L_x` as a matrix (column b = x∘e_b).
    pub fn left_mult(&self, x: &SparseVec<T>) -> SparseMatrix<T> {
        let cols: Vec<SparseVec<T>> = (0..self.dim()).map(|b| self.mul_coords(x, &SparseVec::unit(b))).collect();
        SparseMatrix::from_columns(&cols)
    }

    /// Copy with `c_{ab}^k` and `c_{ba}^k` both shifted by `delta`.
    pub fn with_perturbed_product(&self, a: usize, b: usize, k: usize, delta: T) -> Self {
        let mut out = self.clone();
        let dim = self.dim();
        let bump = SparseVec::single(k, delta);
        out.product[a * dim + b].axpy(&T::one(), &bump);
        if a != b {
            out.product[b * dim + a].axpy(&T::one(), &bump);
        }
        out
    }

    /// Checks the Jordan identity `a²∘(b∘a) = (a²∘b)∘a`: exhaustively in its
    /// fully linearized operator form `Σ [L_{ai∘aj}, L_{ak}] = 0` over all
    /// basis multisets `{a1, a2, a3}`, plus `trials` random rational pairs.
    pub fn check_jordan_identity(&self, trials: usize, seed: u64) -> JordanIdentityReport {
        let dim = self.dim();
        let lefts: Vec<SparseMatrix<T>> = (0..dim).map(|a| self.left_mult(&SparseVec::unit(a))).collect();
        let left_of = |v: &SparseVec<T>| -> SparseMatrix<T> {
            let mut m = SparseMatrix::zeros(dim);
            for (c, x) in v.iter() {
                m = m.add(&lefts[*c].scaled(x));
            }
            m
        };
        let mut triples = Vec::new();
        for a1 in 0..dim {
            for a2 in a1..dim {
                for a3 in a2..dim {
                    triples.push((a1, a2, a3));
                }
            }
        }
        let linearized = triples
            .par_iter()
            .filter_map(|&(a1, a2, a3)| {
                let terms = [(a1, a2, a3), (a1, a3, a2), (a2, a3, a1)];
                let mut m = SparseMatrix::zeros(dim);
                for (i, j, k) in terms {
                    let lij = left_of(self.product_basis(i, j));
                    m = m.add(&lij.commutator(&lefts[k]));
                }
                if m.is_zero() {
                    return None;
                }
                let b = (0..dim).find(|&b| (0..dim).any(|r| !m.get(r, b).is_zero()))?;
                Some((a1, a2, a3, b))
            })
            .min();
        let mut r = rng(seed);
        let mut trial_witness = None;
        for t in 0..trials {
            let a = random_vector::<T, _>(&mut r, dim);
            let b = random_vector::<T, _>(&mut r, dim);
            let a2 = self.mul_coords(&a, &a);
            let lhs = self.mul_coords(&a2, &self.mul_coords(&b, &a));
            let rhs = self.mul_coords(&self.mul_coords(&a2, &b), &a);
            if lhs != rhs && trial_witness.is_none() {
                trial_witness = Some(t);
            }
        }
        JordanIdentityReport {
            algebra: self.name(),
            dim,
            multisets_checked: triples.len(),
            trials,
            seed,
            passed: linearized.is_none() && trial_witness.is_none(),
            witness: linearized.map(|(a1, a2, a3, b)| {
                vec![self.label(a1), self.label(a2), self.label(a3), self.label(b)]
            }),
            failing_trial: trial_witness,
        }
    }
}

fn kmat_mul<T: Scalar>(x: &KMatrix<T>, y: &KMatrix<T>) -> KMatrix<T> {
    let n = x.len();
    let kind = x[0][0].kind();
    let mut out = vec![vec![CompositionElement::zero(kind); n]; n];
    for i in 0..n {
        for k in 0..n {
            let mut acc = CompositionElement::zero(kind);
            for j in 0..n {
                if x[i][j].is_zero() || y[j][k].is_zero() {
                    continue;
                }
                acc = acc.add(&x[i][j].mul(&y[j][k]).expect("same kind")).expect("same kind");
            }
            out[i][k] = acc;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanIdentityReport {
    pub algebra: String,
    pub dim: usize,
    pub multisets_checked: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: bool,
    /// `(a1, a2, a3, b)` basis labels of the first violated linearized instance.
    pub witness: Option<Vec<String>>,
    pub failing_trial: Option<usize>,
}

pub fn build_jordan<T: Scalar>(n: usize, kind: CompositionKind) -> Result<JordanAlgebra<T>> {
    JordanAlgebra::new(n, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::DEFAULT_SEED;
    use crate::Rational;
    use CompositionKind::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn dimensions() {
        let expected = [(2, R, 3), (2, C, 4), (2, H, 6), (2, O, 10), (3, R, 6), (3, C, 9), (3, H, 15), (3, O, 27)];
        for (n, k, d) in expected {
            assert_eq!(JordanAlgebra::<Rational>::new(n, k).unwrap().dim(), d);
        }
        assert_eq!(JordanAlgebra::<Rational>::new(4, O).unwrap().dim(), 52);
        assert!(matches!(JordanAlgebra::<Rational>::new(5, R), Err(Error::UnsupportedSize(5))));
        assert!(matches!(JordanAlgebra::<Rational>::new(1, R), Err(Error::UnsupportedSize(1))));
    }

    #[test]
    fn product_examples() {
        let j = JordanAlgebra::<Rational>::new(2, R).unwrap();
        let e1 = j.basis_element(0);
        let e2 = j.basis_element(1);
        let f = j.basis_element(2);
        assert_eq!(j.product(&e1, &e1).unwrap(), e1);
        assert!(j.product(&e1, &e2).unwrap().coords().is_zero());
        assert_eq!(j.product(&e1, &f).unwrap().coords(), &SparseVec::single(2, Rational::from_frac(1, 2)));
    }

    #[test]
    fn commutative_with_unit() {
        for n in [2, 3] {
            for k in CompositionKind::ALL {
                let j = JordanAlgebra::<Rational>::new(n, k).unwrap();
                let one = j.unit();
                for a in 0..j.dim() {
                    for b in 0..j.dim() {
                        assert_eq!(j.product_basis(a, b), j.product_basis(b, a));
                    }
                    let x = j.basis_element(a);
                    assert_eq!(j.product(&one, &x).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn trace_form_examples() {
        let j = JordanAlgebra::<Rational>::new(2, O).unwrap();
        let (e1, e2) = (j.basis_element(0), j.basis_element(1));
        assert_eq!(j.trace_form(&e1, &e1).unwrap(), r(1));
        assert_eq!(j.trace_form(&e1, &e2).unwrap(), r(0));
        for a in 2..j.dim() {
            let f = j.basis_element(a);
            assert_eq!(j.trace_form(&f, &f).unwrap(), r(2));
        }
    }

    #[test]
    fn trace_form_is_associative() {
        let j = JordanAlgebra::<Rational>::new(3, H).unwrap();
        let mut g = rng(3);
        for _ in 0..50 {
            let x = random_vector::<Rational, _>(&mut g, j.dim());
            let y = random_vector::<Rational, _>(&mut g, j.dim());
            let z = random_vector::<Rational, _>(&mut g, j.dim());
            assert_eq!(
                j.trace_form_coords(&j.mul_coords(&x, &y), &z),
                j.trace_form_coords(&x, &j.mul_coords(&y, &z))
            );
        }
    }

    #[test]
    fn jts_examples() {
        let j = JordanAlgebra::<Rational>::new(2, R).unwrap();
        let (e1, e2) = (j.basis_element(0), j.basis_element(1));
        assert_eq!(j.jts_product(&e1, &e1, &e1).unwrap(), e1);
        assert!(j.jts_product(&e1, &e2, &e1).unwrap().coords().is_zero());
        let j3 = JordanAlgebra::<Rational>::new(3, O).unwrap();
        let mut g = rng(5);
        for _ in 0..20 {
            let x = random_vector::<Rational, _>(&mut g, j3.dim());
            let y = random_vector::<Rational, _>(&mut g, j3.dim());
            let z = random_vector::<Rational, _>(&mut g, j3.dim());
            assert_eq!(j3.jts_coords(&x, &y, &z), j3.jts_coords(&z, &y, &x));
        }
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = JordanAlgebra::<Rational>::new(2, R).unwrap();
        let b = JordanAlgebra::<Rational>::new(2, C).unwrap();
        assert_eq!(a.product(&a.unit(), &b.unit()), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn jordan_identity_small_algebras() {
        for k in CompositionKind::ALL {
            let j = JordanAlgebra::<Rational>::new(2, k).unwrap();
            let rep = j.check_jordan_identity(5, DEFAULT_SEED);
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn perturbation_breaks_identity() {
        let j = JordanAlgebra::<Rational>::new(3, R).unwrap();
        let bad = j.with_perturbed_product(0, 3, 4, r(1));
        let rep = bad.check_jordan_identity(0, DEFAULT_SEED);
        assert!(!rep.passed);
        assert!(rep.witness.is_some());
    }
}
