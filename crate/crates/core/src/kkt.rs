//! The Kantor–Koecher–Tits tower `der J ⊂ str′ J ⊂ str J ⊂ con J` of a
//! Jordan algebra.
//!
//! `str J` is spanned by the operators `L(u, v): x ↦ (uvx)`; `con J` is
//! realized by the constant, linear and quadratic fields `u`, `(uvx)` and
//! `−½(xux)` on `J` and closed under the vector-field bracket.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{Echelon, Matrix, SparseMatrix, SparseVec};
use crate::jordan::JordanAlgebra;
use crate::kantorvf::{close_fields, FieldFlattener, KantorPairSpace, PolyVectorField};
use crate::liealg::{lie_closure, Closure, StructureLieAlgebra};
use crate::scalar::Scalar;
use crate::triplesys::jts_tensor;

/// Positions of the operators `L(u, v)` that are independent of the earlier
/// ones, in row-major order.
fn independent_pairs<T: Scalar>(ops: &[(usize, usize, SparseVec<T>)]) -> Vec<usize> {
    let mut ech = Echelon::new();
    (0..ops.len()).filter(|&k| ech.insert(&ops[k].2).is_some()).collect()
}

struct StrData<T: Scalar> {
    closure: Closure<SparseMatrix<T>, T>,
    pairs: Vec<(usize, usize)>,
}

fn str_data<T: Scalar>(j: &JordanAlgebra<T>) -> Result<StrData<T>> {
    let t = jts_tensor(j);
    let n = j.dim();
    let ops: Vec<(usize, usize, SparseVec<T>)> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (u, v) = (k / n, k % n);
            (u, v, t.left_operator(u, v).flatten())
        })
        .collect();
    let kept = independent_pairs(&ops);
    let mats: Vec<SparseMatrix<T>> = kept.iter().map(|&k| SparseMatrix::unflatten(n, &ops[k].2)).collect();
    let mut closure = lie_closure(&mats)?;
    let pairs: Vec<(usize, usize)> = kept.iter().map(|&k| (ops[k].0, ops[k].1)).collect();
    let labels = (0..closure.algebra.dim())
        .map(|k| match pairs.get(k) {
            Some(&(u, v)) => format!("L({},{})", j.label(u), j.label(v)),
            None => format!("c{k}"),
        })
        .collect();
    closure.algebra = closure.algebra.with_labels(labels);
    Ok(StrData { closure, pairs })
}

/// `str J`: Lie closure of the operators `L(u, v)` over basis pairs.
pub fn structure_algebra<T: Scalar>(j: &JordanAlgebra<T>) -> Result<StructureLieAlgebra<T>> {
    Ok(str_data(j)?.closure.algebra)
}

/// The center of `str J`, required to be the line of scalar multiplications.
fn scalar_ideal<T: Scalar>(j: &JordanAlgebra<T>, closure: &Closure<SparseMatrix<T>, T>) -> Result<Vec<SparseVec<T>>> {
    let center = closure.algebra.center();
    let id = SparseMatrix::<T>::identity(j.dim()).flatten();
    let as_op = |c: &SparseVec<T>| {
        let mut acc = SparseVec::new();
        for (k, x) in c.iter() {
            acc.axpy(x, &closure.elements[*k].flatten());
        }
        acc
    };
    let [c] = center.as_slice() else { return Err(Error::NoIdentity) };
    let op = as_op(c);
    let mut line = Echelon::new();
    line.insert(&op);
    if !line.contains(&id) {
        return Err(Error::NoIdentity);
    }
    Ok(center)
}

fn quotient_map<T: Scalar>(dim: usize, ideal: &[SparseVec<T>]) -> Matrix<T> {
    let mut ech = Echelon::new();
    for v in ideal {
        ech.insert(v);
    }
    let pivots: std::collections::HashSet<usize> = ech.pivots().iter().copied().collect();
    let complement: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let mut m = Matrix::zeros(complement.len(), dim);
    for i in 0..dim {
        let r = ech.reduce(&SparseVec::unit(i));
        for (a, &c) in complement.iter().enumerate() {
            if let Some(x) = r.get(c) {
                m.set(a, i, x.clone());
            }
        }
    }
    m
}

/// `str′ J = str J / (scalar multiplications)`.
pub fn reduced_structure<T: Scalar>(j: &JordanAlgebra<T>) -> Result<StructureLieAlgebra<T>> {
    let s = str_data(j)?;
    let ideal = scalar_ideal(j, &s.closure)?;
    s.closure.algebra.quotient_by_ideal(&ideal)
}

/// Derivations of `J` as `dim J × dim J` matrices, from the kernel of
/// `D(x∘y) − Dx∘y − x∘Dy` on basis pairs.
pub fn derivations<T: Scalar>(j: &JordanAlgebra<T>) -> Vec<SparseMatrix<T>> {
    let n = j.dim();
    let var = |k: usize, l: usize| k * n + l;
    let rows: Vec<Vec<SparseVec<T>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in a..n {
                let mut per_w: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
                for (l, c) in j.product_basis(a, b).iter() {
                    for (w, row) in per_w.iter_mut().enumerate() {
                        row.push((var(w, *l), c.clone()));
                    }
                }
                for k in 0..n {
                    for (w, c) in j.product_basis(k, b).iter() {
                        per_w[*w].push((var(k, a), c.neg_ref()));
                    }
                    for (w, c) in j.product_basis(a, k).iter() {
                        per_w[*w].push((var(k, b), c.neg_ref()));
                    }
                }
                out.extend(per_w.into_iter().map(SparseVec::from_pairs).filter(|r| !r.is_zero()));
            }
            out
        })
        .collect();
    let mut ech = Echelon::new();
    for r in rows.iter().flatten() {
        ech.insert(r);
    }
    ech.kernel_basis(n * n).iter().map(|v| SparseMatrix::unflatten(n, v)).collect()
}

/// `der J` with structure constants; fails if the derivations are not
/// closed under the commutator.
pub fn derivation_algebra<T: Scalar>(j: &JordanAlgebra<T>) -> Result<StructureLieAlgebra<T>> {
    Ok(derivation_closure(j)?.algebra)
}

fn derivation_closure<T: Scalar>(j: &JordanAlgebra<T>) -> Result<Closure<SparseMatrix<T>, T>> {
    let ders = derivations(j);
    let k = ders.len();
    let c = lie_closure(&ders)?;
    if c.algebra.dim() != k {
        return Err(Error::NotClosed(k, c.algebra.dim()));
    }
    Ok(c)
}

/// Coordinates of each of `ops` in the span of `basis` (columns).
fn coordinates_in<T: Scalar>(ops: &[SparseMatrix<T>], basis: &[SparseMatrix<T>], what: &str) -> Result<Matrix<T>> {
    let mut ech = Echelon::with_tracking();
    for b in basis {
        ech.insert(&b.flatten());
    }
    let mut m = Matrix::zeros(basis.len(), ops.len());
    for (c, op) in ops.iter().enumerate() {
        let coords = ech.coordinates(&op.flatten()).ok_or_else(|| Error::NotInSpan(format!("{what} element {c}")))?;
        for (r, x) in coords.iter() {
            m.set(*r, c, x.clone());
        }
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct KKTTower<T: Scalar> {
    pub jordan: JordanAlgebra<T>,
    pub der: StructureLieAlgebra<T>,
    pub str_reduced: StructureLieAlgebra<T>,
    pub str: StructureLieAlgebra<T>,
    /// Graded (−1, 0, 1) with the involution `u ↔ τ(u)`; basis `u_i`, then
    /// the `str` basis, then `τ(u_i)`.
    pub con: StructureLieAlgebra<T>,
    /// Column `k`: `der` basis element `k` in the `str` basis.
    pub der_in_str: Matrix<T>,
    /// The quotient map `str → str′`.
    pub str_to_reduced: Matrix<T>,
    /// Column `k`: `str` basis element `k` in the `con` basis.
    pub str_in_con: Matrix<T>,
    pub con_fields: Vec<PolyVectorField<T>>,
}

impl<T: Scalar> KKTTower<T> {
    /// `dim con = 2 dim J + dim str`.
    pub fn dims_consistent(&self) -> bool {
        self.con.dim() == 2 * self.jordan.dim() + self.str.dim()
    }
}

/// Checks that the linear map with matrix `m` (columns = images of the
/// source basis) intertwines the brackets.
pub fn is_homomorphism<T: Scalar>(m: &Matrix<T>, src: &StructureLieAlgebra<T>, dst: &StructureLieAlgebra<T>) -> bool {
    let cols: Vec<SparseVec<T>> = (0..src.dim()).map(|k| SparseVec::from_dense(&m.column(k))).collect();
    let image = |v: &SparseVec<T>| {
        let mut acc = SparseVec::new();
        for (k, x) in v.iter() {
            acc.axpy(x, &cols[*k]);
        }
        acc
    };
    (0..src.dim()).into_par_iter().all(|a| {
        (a + 1..src.dim()).all(|b| image(src.basis_bracket(a, b)) == dst.bracket(&cols[a], &cols[b]))
    })
}

pub fn kkt_construct<T: Scalar>(j: &JordanAlgebra<T>) -> Result<KKTTower<T>> {
    let n = j.dim();
    let s = str_data(j)?;
    let str_alg = s.closure.algebra.clone();
    let ideal = scalar_ideal(j, &s.closure)?;
    let str_reduced = str_alg.quotient_by_ideal(&ideal)?;
    let str_to_reduced = quotient_map(str_alg.dim(), &ideal);
    let der_closure = derivation_closure(j)?;
    let der_in_str = coordinates_in(&der_closure.elements, &s.closure.elements, "derivation")?;

    let ps = KantorPairSpace::new(&jts_tensor(j));
    let mut flat = FieldFlattener::default();
    let mut ech0 = Echelon::with_tracking();
    let mut zero: Vec<PolyVectorField<T>> = Vec::new();
    for &(u, v) in &s.pairs {
        let f = ps.zero_grade(u, v);
        ech0.insert(&flat.flatten(&f));
        zero.push(f);
    }
    if s.closure.elements.len() != s.pairs.len() {
        return Err(Error::NotClosed(s.pairs.len(), s.closure.elements.len()));
    }
    let d0 = zero.len();
    let mut seeds: Vec<PolyVectorField<T>> = (0..n).map(|i| ps.minus_one(i)).collect();
    seeds.extend(zero);
    seeds.extend((0..n).map(|i| ps.plus_one(i)));
    let expected = seeds.len();
    let closure = close_fields(seeds, Some(1), expected)?;
    if closure.elements.len() != expected {
        return Err(Error::ClosureOverflow(expected));
    }

    let dim = closure.algebra.dim();
    let mut tau = Matrix::zeros(dim, dim);
    for i in 0..n {
        tau.set(n + d0 + i, i, T::one());
        tau.set(i, n + d0 + i, T::one());
    }
    for (k, &(u, v)) in s.pairs.iter().enumerate() {
        let swapped = flat.flatten(&ps.zero_grade(v, u));
        let c = ech0.coordinates(&swapped).ok_or_else(|| Error::NotInSpan(format!("L({v},{u})")))?;
        for (r, x) in c.iter() {
            tau.set(n + r, n + k, x.neg_ref());
        }
    }
    let con = closure.algebra.with_involution(tau);

    // Linear fields compose in the opposite order to operators, so the
    // embedding carries the sign −1.
    let mut str_in_con = Matrix::zeros(dim, d0);
    for k in 0..d0 {
        str_in_con.set(n + k, k, -T::one());
    }

    Ok(KKTTower {
        jordan: j.clone(),
        der: der_closure.algebra,
        str_reduced,
        str: str_alg,
        con,
        der_in_str,
        str_to_reduced,
        str_in_con,
        con_fields: closure.elements,
    })
}
