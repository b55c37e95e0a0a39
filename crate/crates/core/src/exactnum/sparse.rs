use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Scalar> Default for SparseVec<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> SparseVec<T> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, T::one())] }
    }

    pub fn single(i: usize, v: T) -> Self {
        if v.is_zero() {
            Self::new()
        } else {
            SparseVec { entries: vec![(i, v)] }
        }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, T)>>(pairs: I) -> Self {
        let mut acc = Accumulator::new();
        for (i, v) in pairs {
            acc.add(i, &v);
        }
        acc.finish()
    }

    /// Builds from entries already sorted by strictly increasing index.
    pub fn from_sorted(entries: Vec<(usize, T)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[T]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, T)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, T)> {
        self.entries
    }

    pub fn leading(&self) -> Option<&(usize, T)> {
        self.entries.first()
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn scaled(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul_ref(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg_ref())).collect(),
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &T, other: &SparseVec<T>) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, _)), Some((ib, _))) => {
                    if ia < ib {
                        out.push(a.next().unwrap());
                    } else if ib < ia {
                        let (i, v) = b.next().unwrap();
                        out.push((*i, v.mul_ref(c)));
                    } else {
                        let (i, mut v) = a.next().unwrap();
                        let (_, w) = b.next().unwrap();
                        v.add_product(c, w);
                        if !v.is_zero() {
                            out.push((i, v));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, v.mul_ref(c)));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec<T>) -> Self {
        let mut out = self.clone();
        out.axpy(&T::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec<T>) -> Self {
        let mut out = self.clone();
        out.axpy(&-T::one(), other);
        out
    }

    pub fn dot_dense(&self, dense: &[T]) -> T {
        let mut acc = T::zero();
        for (i, v) in &self.entries {
            acc.add_product(v, &dense[*i]);
        }
        acc
    }

    pub fn dot(&self, other: &SparseVec<T>) -> T {
        let mut acc = T::zero();
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < other.entries.len() {
            let (i, a) = &self.entries[p];
            let (j, b) = &other.entries[q];
            if i < j {
                p += 1;
            } else if j < i {
                q += 1;
            } else {
                acc.add_product(a, b);
                p += 1;
                q += 1;
            }
        }
        acc
    }

    /// Relabels indices through `f` (which need not preserve order).
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }
}

/// Order-independent sum of sparse contributions.
#[derive(Clone, Debug)]
pub struct Accumulator<T> {
    map: BTreeMap<usize, T>,
}

impl<T: Scalar> Default for Accumulator<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Accumulator<T> {
    pub fn new() -> Self {
        Accumulator { map: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, v: &T) {
        if v.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(slot) => *slot += v.clone(),
            None => {
                self.map.insert(i, v.clone());
            }
        }
    }

    pub fn add_product(&mut self, i: usize, a: &T, b: &T) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(slot) => slot.add_product(a, b),
            None => {
                self.map.insert(i, a.mul_ref(b));
            }
        }
    }

    pub fn add_scaled(&mut self, c: &T, v: &SparseVec<T>) {
        for (i, x) in v.iter() {
            self.add_product(*i, c, x);
        }
    }

    pub fn finish(self) -> SparseVec<T> {
        SparseVec {
            entries: self.map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }
}

/// Square sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    n: usize,
    rows: Vec<SparseVec<T>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SparseMatrix { n, rows: vec![SparseVec::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { n, rows: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(rows: Vec<SparseVec<T>>) -> Self {
        SparseMatrix { n: rows.len(), rows }
    }

    /// Builds the matrix whose column `j` is `cols[j]`.
    pub fn from_columns(cols: &[SparseVec<T>]) -> Self {
        let n = cols.len();
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { n, rows: rows.into_iter().map(SparseVec::from_sorted).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &SparseVec<T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(j).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn mul(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Accumulator::new();
                for (k, a) in r.iter() {
                    acc.add_scaled(a, &other.rows[*k]);
                }
                acc.finish()
            })
            .collect();
        SparseMatrix { n: self.n, rows }
    }

    pub fn commutator(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn sub(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        SparseMatrix {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        SparseMatrix {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scaled(&self, c: &T) -> SparseMatrix<T> {
        SparseMatrix { n: self.n, rows: self.rows.iter().map(|r| r.scaled(c)).collect() }
    }

    pub fn apply(&self, v: &SparseVec<T>) -> SparseVec<T> {
        SparseVec::from_pairs(
            self.rows
                .iter()
                .enumerate()
                .map(|(i, r)| (i, r.dot(v)))
                .filter(|(_, x)| !x.is_zero()),
        )
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(v) = r.get(i) {
                acc += v.clone();
            }
        }
        acc
    }

    /// Row-major flattening to a vector of length `n * n`.
    pub fn flatten(&self) -> SparseVec<T> {
        let mut entries = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter() {
                entries.push((i * self.n + j, v.clone()));
            }
        }
        SparseVec::from_sorted(entries)
    }

    pub fn unflatten(n: usize, v: &SparseVec<T>) -> SparseMatrix<T> {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        for (k, x) in v.iter() {
            rows[k / n].push((k % n, x.clone()));
        }
        SparseMatrix { n, rows: rows.into_iter().map(SparseVec::from_sorted).collect() }
    }
}
