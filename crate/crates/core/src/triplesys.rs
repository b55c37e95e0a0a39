//! Triple systems as explicit structure tensors.
//!
//! A [`TripleTensor`] stores `(e_i e_j e_k) = Σ_l t_{ijk}^l e_l` sparsely.
//! Slotted spaces `V^n` use the flat index `slot * dim + inner`, with slots
//! counted from 0.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{Accumulator, Matrix, SparseMatrix, SparseVec};
use crate::jordan::JordanAlgebra;
use crate::sampling::{rng, CheckMode};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TripleTensor<T> {
    dim: usize,
    /// `t[(i * dim + j) * dim + k]` = coordinates of `(e_i e_j e_k)`.
    t: Vec<SparseVec<T>>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlottedBasisIndex {
    pub slot: usize,
    pub inner: usize,
}

impl SlottedBasisIndex {
    pub fn new(slot: usize, inner: usize) -> Self {
        SlottedBasisIndex { slot, inner }
    }

    pub fn flat(self, dim: usize) -> usize {
        self.slot * dim + self.inner
    }

    pub fn from_flat(i: usize, dim: usize) -> Self {
        SlottedBasisIndex { slot: i / dim, inner: i % dim }
    }
}

impl<T: Scalar> TripleTensor<T> {
    pub fn zero(dim: usize) -> Self {
        TripleTensor { dim, t: vec![SparseVec::new(); dim * dim * dim], labels: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, i: usize) -> String {
        self.labels.as_ref().map(|l| l[i].clone()).unwrap_or_else(|| format!("e{i}"))
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn basis_product(&self, i: usize, j: usize, k: usize) -> &SparseVec<T> {
        &self.t[self.idx(i, j, k)]
    }

    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> T {
        self.basis_product(i, j, k).get(l).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(|v| v.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.t.iter().map(|v| v.nnz()).sum()
    }

    /// All nonzero entries `(i, j, k, l, value)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &T)> + '_ {
        let d = self.dim;
        self.t.iter().enumerate().flat_map(move |(ijk, v)| {
            let (i, j, k) = (ijk / (d * d), (ijk / d) % d, ijk % d);
            v.iter().map(move |(l, c)| (i, j, k, *l, c))
        })
    }

    pub fn apply(&self, x: &SparseVec<T>, y: &SparseVec<T>, z: &SparseVec<T>) -> SparseVec<T> {
        let mut acc = Accumulator::new();
        for (i, xi) in x.iter() {
            for (j, yj) in y.iter() {
                let xy = xi.mul_ref(yj);
                for (k, zk) in z.iter() {
                    acc.add_scaled(&xy.mul_ref(zk), self.basis_product(*i, *j, *k));
                }
            }
        }
        acc.finish()
    }

    /// `(u v ·)` applied to a vector.
    fn apply_uv(&self, u: usize, v: usize, z: &SparseVec<T>) -> SparseVec<T> {
        let mut acc = Accumulator::new();
        for (k, zk) in z.iter() {
            acc.add_scaled(zk, self.basis_product(u, v, *k));
        }
        acc.finish()
    }

    /// The operator `L(u, v): z ↦ (u v z)` for basis `u`, `v`.
    pub fn left_operator(&self, u: usize, v: usize) -> SparseMatrix<T> {
        let cols: Vec<SparseVec<T>> = (0..self.dim).map(|k| self.basis_product(u, v, k).clone()).collect();
        SparseMatrix::from_columns(&cols)
    }

    /// Copy with `t_{ijk}^l` shifted by `delta`.
    pub fn with_perturbed_entry(&self, i: usize, j: usize, k: usize, l: usize, delta: T) -> Self {
        let mut out = self.clone();
        let at = self.idx(i, j, k);
        out.t[at].axpy(&T::one(), &SparseVec::single(l, delta));
        out
    }

    pub fn scaled(&self, c: &T) -> Self {
        TripleTensor { dim: self.dim, t: self.t.iter().map(|v| v.scaled(c)).collect(), labels: self.labels.clone() }
    }

    /// Tensor expressed in a new basis `f_a = Σ_i p[i][a] e_i` (columns of `p`).
    pub fn change_basis(&self, p: &Matrix<T>) -> Result<Self> {
        let d = self.dim;
        if p.nrows() != d || p.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.nrows() });
        }
        let pinv = p.inverse().ok_or_else(|| Error::Parse("basis change is singular".into()))?;
        let cols: Vec<SparseVec<T>> = (0..d).map(|a| SparseVec::from_dense(&p.column(a))).collect();
        let pinv_rows: Vec<SparseVec<T>> = (0..d).map(|r| SparseVec::from_dense(pinv.row(r))).collect();
        let t = (0..d * d * d)
            .into_par_iter()
            .map(|abc| {
                let (a, b, c) = (abc / (d * d), (abc / d) % d, abc % d);
                let img = self.apply(&cols[a], &cols[b], &cols[c]);
                // coordinates in the new basis: pinv * img
                SparseVec::from_pairs((0..d).map(|r| (r, pinv_rows[r].dot(&img))))
            })
            .collect();
        Ok(TripleTensor { dim: d, t, labels: None })
    }

    pub fn to_json(&self) -> Value {
        let labels: Vec<String> = (0..self.dim).map(|i| self.label(i)).collect();
        let entries: Vec<Value> =
            self.entries().map(|(i, j, k, l, c)| json!([i, j, k, l, c.to_exact_string()])).collect();
        json!({ "dim": self.dim, "labels": labels, "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("tensor json: {m}"));
        let dim = v["dim"].as_u64().ok_or_else(|| bad("missing dim"))? as usize;
        let mut out = TripleTensor::zero(dim);
        for e in v["entries"].as_array().ok_or_else(|| bad("missing entries"))? {
            let e = e.as_array().filter(|e| e.len() == 5).ok_or_else(|| bad("entry shape"))?;
            let mut ix = [0usize; 4];
            for (slot, x) in ix.iter_mut().zip(e.iter()) {
                *slot = x.as_u64().ok_or_else(|| bad("index"))? as usize;
            }
            if ix.iter().any(|&i| i >= dim) {
                return Err(Error::DimensionMismatch { expected: dim, got: ix.iter().max().unwrap() + 1 });
            }
            let c = e[4].as_str().and_then(T::parse_exact).ok_or_else(|| bad("value"))?;
            out = out.with_perturbed_entry(ix[0], ix[1], ix[2], ix[3], c);
        }
        if let Some(ls) = v["labels"].as_array() {
            let labels: Vec<String> = ls.iter().map(|l| l.as_str().unwrap_or_default().to_string()).collect();
            if labels.len() == dim {
                out.labels = Some(labels);
            }
        }
        Ok(out)
    }

    /// `(uv(xyz)) − (xy(uvz)) − ((uvx)yz) + (x(vuy)z)` on basis elements.
    fn gjts_defect(&self, u: usize, v: usize, x: usize, y: usize, z: usize) -> SparseVec<T> {
        let xyz = self.basis_product(x, y, z);
        let uvz = self.basis_product(u, v, z);
        let uvx = self.basis_product(u, v, x);
        let vuy = self.basis_product(v, u, y);
        let ey = SparseVec::unit(y);
        let ex = SparseVec::unit(x);
        let ez = SparseVec::unit(z);
        let mut d = self.apply_uv(u, v, xyz);
        let mut acc = Accumulator::new();
        for (k, c) in uvz.iter() {
            acc.add_scaled(c, self.basis_product(x, y, *k));
        }
        d.axpy(&-T::one(), &acc.finish());
        d.axpy(&-T::one(), &self.apply(uvx, &ey, &ez));
        d.axpy(&T::one(), &self.apply(&ex, vuy, &ez));
        d
    }

    /// Checks `(uv(xyz)) − (xy(uvz)) = ((uvx)yz) − (x(vuy)z)` on basis
    /// 5-tuples. Full mode uses the equivalent operator identity
    /// `[L(u,v), L(x,y)] = L((uvx), y) − L(x, (vuy))` for every quadruple.
    pub fn check_gjts(&self, mode: CheckMode, seed: u64) -> GjtsReport {
        let d = self.dim;
        let (checked, witness) = match mode {
            CheckMode::Full => {
                let ops: Vec<SparseMatrix<T>> =
                    (0..d * d).into_par_iter().map(|uv| self.left_operator(uv / d, uv % d)).collect();
                let op_of = |w: &SparseVec<T>, y: usize, first: bool| -> SparseMatrix<T> {
                    let mut m = SparseMatrix::zeros(d);
                    for (i, c) in w.iter() {
                        let o = if first { &ops[*i * d + y] } else { &ops[y * d + *i] };
                        m = m.add(&o.scaled(c));
                    }
                    m
                };
                let witness = (0..d * d * d * d)
                    .into_par_iter()
                    .filter_map(|q| {
                        let (u, v, x, y) = (q / (d * d * d), (q / (d * d)) % d, (q / d) % d, q % d);
                        let lhs = ops[u * d + v].commutator(&ops[x * d + y]);
                        let rhs = op_of(self.basis_product(u, v, x), y, true)
                            .sub(&op_of(self.basis_product(v, u, y), x, false));
                        let diff = lhs.sub(&rhs);
                        if diff.is_zero() {
                            return None;
                        }
                        let z = (0..d).find(|&z| (0..d).any(|r| !diff.get(r, z).is_zero()))?;
                        Some([u, v, x, y, z])
                    })
                    .min();
                (d.pow(5), witness)
            }
            CheckMode::Sampled(count) => {
                let mut g = rng(seed);
                let tuples: Vec<[usize; 5]> = (0..count)
                    .map(|_| {
                        let mut t = [0usize; 5];
                        for s in t.iter_mut() {
                            *s = g.gen_range(0..d.max(1));
                        }
                        t
                    })
                    .collect();
                let first = if d == 0 {
                    None
                } else {
                    tuples
                        .par_iter()
                        .enumerate()
                        .filter(|(_, t)| !self.gjts_defect(t[0], t[1], t[2], t[3], t[4]).is_zero())
                        .map(|(i, _)| i)
                        .min()
                };
                (count, first.map(|i| tuples[i]))
            }
        };
        GjtsReport {
            mode: mode.to_string(),
            seed,
            dim: d,
            tuples_checked: checked,
            passed: witness.is_none(),
            witness_labels: witness.map(|w| w.iter().map(|&i| self.label(i)).collect()),
            witness,
        }
    }

    /// Whether `t_{ijk}^l = t_{kji}^l` for every entry.
    pub fn check_outer_symmetry(&self) -> SymmetryReport {
        let d = self.dim;
        let witness = (0..d * d * d).find_map(|ijk| {
            let (i, j, k) = (ijk / (d * d), (ijk / d) % d, ijk % d);
            if i > k {
                return None;
            }
            let a = self.basis_product(i, j, k);
            let b = self.basis_product(k, j, i);
            if a == b {
                return None;
            }
            let l = a.sub(b).leading().map(|(l, _)| *l)?;
            Some([i, j, k, l])
        });
        SymmetryReport {
            symmetric: witness.is_none(),
            witness_labels: witness.map(|w| w.iter().map(|&i| self.label(i)).collect()),
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GjtsReport {
    pub mode: String,
    pub seed: u64,
    pub dim: usize,
    pub tuples_checked: usize,
    pub passed: bool,
    /// `(u, v, x, y, z)` of the first violation.
    pub witness: Option<[usize; 5]>,
    pub witness_labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    /// `(i, j, k, l)` with `t_{ijk}^l ≠ t_{kji}^l`.
    pub witness: Option<[usize; 4]>,
    pub witness_labels: Option<Vec<String>>,
}

/// Tabulates `product` over all basis triples.
pub fn tensor_from_product<T, F>(dim: usize, product: F) -> Result<TripleTensor<T>>
where
    T: Scalar,
    F: Fn(usize, usize, usize) -> Result<SparseVec<T>> + Sync,
{
    let t: Result<Vec<SparseVec<T>>> = (0..dim * dim * dim)
        .into_par_iter()
        .map(|ijk| {
            let v = product(ijk / (dim * dim), (ijk / dim) % dim, ijk % dim)?;
            if let Some((l, _)) = v.entries().last() {
                if *l >= dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: l + 1 });
                }
            }
            Ok(v)
        })
        .collect();
    Ok(TripleTensor { dim, t: t?, labels: None })
}

/// The Jordan triple product of `alg` as a tensor.
pub fn jts_tensor<T: Scalar>(alg: &JordanAlgebra<T>) -> TripleTensor<T> {
    let units: Vec<SparseVec<T>> = (0..alg.dim()).map(SparseVec::unit).collect();
    tensor_from_product(alg.dim(), |i, j, k| Ok(alg.jts_coords(&units[i], &units[j], &units[k])))
        .expect("jordan products stay in range")
        .with_labels(alg.labels())
}

fn check_slots(n: usize, xs: &[SlottedBasisIndex]) -> Result<()> {
    match xs.iter().find(|x| x.slot >= n) {
        Some(x) => Err(Error::SlotOutOfRange { slot: x.slot, copies: n }),
        None => Ok(()),
    }
}

fn place<T: Scalar>(out: &mut Accumulator<T>, slot: usize, dim: usize, c: &T, v: &SparseVec<T>) {
    out.add_scaled(c, &v.map_indices(|i| slot * dim + i));
}

/// The five-term product on `alg^n`:
/// `2δ^{ab}((z∘y)∘x)^c − 2δ^{ab}((z∘x)∘y)^c + 2δ^{ab}((x∘y)∘z)^c − δ^{ab}(x,y)z^c + δ^{bc}(x,y)z^a`.
pub fn eq7_product<T: Scalar>(
    alg: &JordanAlgebra<T>,
    n: usize,
    x: SlottedBasisIndex,
    y: SlottedBasisIndex,
    z: SlottedBasisIndex,
) -> Result<SparseVec<T>> {
    check_slots(n, &[x, y, z])?;
    let d = alg.dim();
    for w in [x, y, z] {
        if w.inner >= d {
            return Err(Error::DimensionMismatch { expected: d, got: w.inner + 1 });
        }
    }
    let (ex, ey, ez) = (SparseVec::unit(x.inner), SparseVec::unit(y.inner), SparseVec::unit(z.inner));
    let form = alg.trace_form_coords(&ex, &ey);
    let mut out = Accumulator::new();
    if x.slot == y.slot {
        let two = T::from_int(2);
        let zyx = alg.mul_coords(&alg.mul_coords(&ez, &ey), &ex);
        let zxy = alg.mul_coords(&alg.mul_coords(&ez, &ex), &ey);
        let xyz = alg.mul_coords(&alg.mul_coords(&ex, &ey), &ez);
        place(&mut out, z.slot, d, &two, &zyx);
        place(&mut out, z.slot, d, &-two.clone(), &zxy);
        place(&mut out, z.slot, d, &two, &xyz);
        place(&mut out, z.slot, d, &-form.clone(), &ez);
    }
    if y.slot == z.slot {
        place(&mut out, x.slot, d, &form, &ez);
    }
    Ok(out.finish())
}

fn slotted_labels(base: &[String], n: usize) -> Vec<String> {
    (0..n).flat_map(|a| base.iter().map(move |l| format!("{l}^{}", a + 1))).collect()
}

pub fn eq7_tensor<T: Scalar>(alg: &JordanAlgebra<T>, n: usize) -> Result<TripleTensor<T>> {
    let d = alg.dim();
    let t = tensor_from_product(n * d, |i, j, k| {
        eq7_product(
            alg,
            n,
            SlottedBasisIndex::from_flat(i, d),
            SlottedBasisIndex::from_flat(j, d),
            SlottedBasisIndex::from_flat(k, d),
        )
    })?;
    Ok(t.with_labels(slotted_labels(&alg.labels(), n)))
}

/// The three-term product on `V^n` built from a triple system on `V` and a
/// bilinear form `form[i][j] = B(e_i, e_j)`:
/// `δ^{ab}T(x,y,z)^c − δ^{ab}B(x,y)z^c + δ^{bc}B(x,y)z^a`.
pub fn theorem1_product<T: Scalar>(
    base: &TripleTensor<T>,
    form: &Matrix<T>,
    n: usize,
    x: SlottedBasisIndex,
    y: SlottedBasisIndex,
    z: SlottedBasisIndex,
) -> Result<SparseVec<T>> {
    check_slots(n, &[x, y, z])?;
    let d = base.dim();
    let b = form.get(x.inner, y.inner).clone();
    let ez = SparseVec::unit(z.inner);
    let mut out = Accumulator::new();
    if x.slot == y.slot {
        place(&mut out, z.slot, d, &T::one(), base.basis_product(x.inner, y.inner, z.inner));
        place(&mut out, z.slot, d, &-b.clone(), &ez);
    }
    if y.slot == z.slot {
        place(&mut out, x.slot, d, &b, &ez);
    }
    Ok(out.finish())
}

pub fn theorem1_tensor<T: Scalar>(base: &TripleTensor<T>, form: &Matrix<T>, n: usize) -> Result<TripleTensor<T>> {
    let d = base.dim();
    let base_labels: Vec<String> = (0..d).map(|i| base.label(i)).collect();
    let t = tensor_from_product(n * d, |i, j, k| {
        theorem1_product(
            base,
            form,
            n,
            SlottedBasisIndex::from_flat(i, d),
            SlottedBasisIndex::from_flat(j, d),
            SlottedBasisIndex::from_flat(k, d),
        )
    })?;
    Ok(t.with_labels(slotted_labels(&base_labels, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compalg::CompositionKind::{self, *};
    use crate::sampling::DEFAULT_SEED;
    use crate::Rational;
    use proptest::prelude::*;

    fn jordan(n: usize, k: CompositionKind) -> JordanAlgebra<Rational> {
        JordanAlgebra::new(n, k).unwrap()
    }

    #[test]
    fn zero_tensor_from_zero_product() {
        let t = tensor_from_product::<Rational, _>(1, |_, _, _| Ok(SparseVec::new())).unwrap();
        assert!(t.is_zero());
        assert!(t.check_outer_symmetry().symmetric);
        assert!(t.check_gjts(CheckMode::Full, 0).passed);
    }

    #[test]
    fn out_of_range_product_is_rejected() {
        let r = tensor_from_product::<Rational, _>(2, |_, _, _| Ok(SparseVec::unit(2)));
        assert_eq!(r.unwrap_err(), Error::DimensionMismatch { expected: 2, got: 3 });
    }

    #[test]
    fn jts_tensors_are_symmetric_gjts() {
        for k in CompositionKind::ALL {
            let t = jts_tensor(&jordan(2, k));
            assert!(t.check_outer_symmetry().symmetric);
            let rep = t.check_gjts(CheckMode::Full, 0);
            assert!(rep.passed, "H2({k}): {rep:?}");
        }
        let t = jts_tensor(&jordan(3, C));
        assert!(t.check_outer_symmetry().symmetric);
        assert!(t.check_gjts(CheckMode::Sampled(2000), DEFAULT_SEED).passed);
    }

    #[test]
    fn corrupted_tensor_fails_with_witness() {
        let t = jts_tensor(&jordan(2, R)).with_perturbed_entry(0, 0, 2, 1, Rational::from_int(1));
        let rep = t.check_gjts(CheckMode::Full, 0);
        assert!(!rep.passed);
        let w = rep.witness.unwrap();
        assert!(!t.gjts_defect(w[0], w[1], w[2], w[3], w[4]).is_zero());
        assert!(!t.check_outer_symmetry().symmetric);
    }

    #[test]
    fn eq7_delta_pattern() {
        let alg = jordan(2, H);
        let s = SlottedBasisIndex::new;
        assert!(eq7_product(&alg, 3, s(0, 2), s(1, 3), s(2, 4)).unwrap().is_zero());
        for (x, y) in [(0, 0), (2, 2), (3, 4), (0, 1)] {
            let got = eq7_product(&alg, 2, s(0, x), s(1, y), s(1, 3)).unwrap();
            let form = alg.trace_form_coords(&SparseVec::unit(x), &SparseVec::unit(y));
            assert_eq!(got, SparseVec::single(3, form));
        }
        assert_eq!(
            eq7_product(&alg, 2, s(2, 0), s(0, 0), s(0, 0)),
            Err(Error::SlotOutOfRange { slot: 2, copies: 2 })
        );
    }

    #[test]
    fn eq7_at_one_copy_is_twice_jts() {
        for k in CompositionKind::ALL {
            let alg = jordan(2, k);
            assert_eq!(eq7_tensor(&alg, 1).unwrap().with_labels(alg.labels()), jts_tensor(&alg).scaled(&Rational::from_int(2)));
        }
        let alg = jordan(3, R);
        assert_eq!(eq7_tensor(&alg, 1).unwrap().with_labels(alg.labels()), jts_tensor(&alg).scaled(&Rational::from_int(2)));
    }

    #[test]
    fn eq7_two_copies_not_outer_symmetric() {
        let t = eq7_tensor(&jordan(2, R), 2).unwrap();
        assert_eq!(t.dim(), 6);
        let rep = t.check_outer_symmetry();
        assert!(!rep.symmetric);
        let [i, j, k, l] = rep.witness.unwrap();
        assert_ne!(t.entry(i, j, k, l), t.entry(k, j, i, l));
    }

    #[test]
    fn eq7_is_gjts_small() {
        for n in 1..=3 {
            let t = eq7_tensor(&jordan(2, R), n).unwrap();
            let rep = t.check_gjts(CheckMode::Full, 0);
            assert!(rep.passed, "n={n}: {rep:?}");
        }
    }

    #[test]
    fn theorem1_reduces_at_one_copy() {
        let base = jts_tensor(&jordan(2, C));
        let form = Matrix::from_rows(
            (0..base.dim())
                .map(|i| (0..base.dim()).map(|j| Rational::from_int(((i + 2 * j) % 3) as i64 - 1)).collect())
                .collect(),
        );
        let t1 = theorem1_tensor(&base, &form, 1).unwrap();
        assert_eq!(t1.with_labels((0..base.dim()).map(|i| base.label(i)).collect()), base);
        let s = SlottedBasisIndex::new;
        let d = base.dim();
        for (x, y, z) in [(0, 1, 2), (3, 3, 1), (2, 0, 0)] {
            let aaa = theorem1_product(&base, &form, 3, s(1, x), s(1, y), s(1, z)).unwrap();
            assert_eq!(aaa, base.basis_product(x, y, z).map_indices(|i| d + i));
            let abb = theorem1_product(&base, &form, 3, s(0, x), s(2, y), s(2, z)).unwrap();
            assert_eq!(abb, SparseVec::single(z, form.get(x, y).clone()));
        }
    }

    #[test]
    fn json_round_trip() {
        let t = eq7_tensor(&jordan(2, R), 2).unwrap();
        let back = TripleTensor::<Rational>::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn change_basis_identity_and_scaling() {
        let t = jts_tensor(&jordan(2, R));
        let id = Matrix::identity(3);
        assert_eq!(t.change_basis(&id).unwrap().with_labels(t.labels().unwrap().to_vec()), t);
        let mut p = Matrix::identity(3);
        p.set(2, 2, Rational::from_int(-1));
        let q = t.change_basis(&p).unwrap();
        assert!(q.check_gjts(CheckMode::Full, 0).passed);
    }

    proptest! {
        #[test]
        fn jts_outer_symmetry_on_random_h3_triples(seed in 0u64..1000) {
            let alg = jordan(3, H);
            let mut g = rng(seed);
            let x = crate::sampling::random_vector::<Rational, _>(&mut g, alg.dim());
            let y = crate::sampling::random_vector::<Rational, _>(&mut g, alg.dim());
            let z = crate::sampling::random_vector::<Rational, _>(&mut g, alg.dim());
            prop_assert_eq!(alg.jts_coords(&x, &y, &z), alg.jts_coords(&z, &y, &x));
        }
    }
}
