use std::collections::HashMap;

use super::sparse::{Accumulator, SparseVec};
use crate::scalar::Scalar;

/// Incrementally maintained reduced row-echelon basis of a subspace.
///
/// Rows are kept fully reduced with unit pivots, so the stored rows are the
/// unique RREF basis of the span regardless of insertion order. With
/// tracking enabled, every row also carries its expression in terms of the
/// accepted (independent) inserted vectors, which lets callers express
/// members of the span in a basis of their own choosing.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    rows: Vec<SparseVec<T>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
    combos: Option<Vec<SparseVec<T>>>,
}

impl<T: Scalar> Default for Echelon<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Echelon<T> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new(), pivot_row: HashMap::new(), combos: None }
    }

    pub fn with_tracking() -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<T>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; returns the remainder and, when
    /// tracking, the combination of accepted vectors that was subtracted.
    fn reduce_inner(&self, v: &SparseVec<T>) -> (SparseVec<T>, Option<SparseVec<T>>) {
        let hits: Vec<(usize, T)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row.get(c).map(|r| (*r, x.clone())))
            .collect();
        if hits.is_empty() {
            return (v.clone(), self.combos.as_ref().map(|_| SparseVec::new()));
        }
        let mut acc = Accumulator::new();
        for (c, x) in v.iter() {
            if !self.pivot_row.contains_key(c) {
                acc.add(*c, x);
            }
        }
        for (r, x) in &hits {
            let neg = x.neg_ref();
            for (c, y) in self.rows[*r].iter() {
                if !self.pivot_row.contains_key(c) {
                    acc.add_product(*c, &neg, y);
                }
            }
        }
        let combo = self.combos.as_ref().map(|combos| {
            let mut cacc = Accumulator::new();
            for (r, x) in &hits {
                cacc.add_scaled(x, &combos[*r]);
            }
            cacc.finish()
        });
        (acc.finish(), combo)
    }

    pub fn reduce(&self, v: &SparseVec<T>) -> SparseVec<T> {
        self.reduce_inner(v).0
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`. Returns the id of the new accepted vector if `v` was
    /// independent of the current span; ids count up from zero.
    pub fn insert(&mut self, v: &SparseVec<T>) -> Option<usize> {
        let (rem, combo) = self.reduce_inner(v);
        let (pivot, lead) = rem.leading()?.clone();
        let id = self.rows.len();
        let inv = lead.inv();
        let row = rem.scaled(&inv);
        let new_combo = combo.map(|c| {
            let mut own = SparseVec::unit(id);
            own.axpy(&-T::one(), &c);
            own.scaled(&inv)
        });
        for r in 0..self.rows.len() {
            if let Some(c) = self.rows[r].get(pivot).cloned() {
                let neg = c.neg_ref();
                self.rows[r].axpy(&neg, &row);
                if let (Some(combos), Some(nc)) = (self.combos.as_mut(), new_combo.as_ref()) {
                    combos[r].axpy(&neg, nc);
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(pivot);
        self.pivot_row.insert(pivot, id);
        if let (Some(combos), Some(nc)) = (self.combos.as_mut(), new_combo) {
            combos.push(nc);
        }
        Some(id)
    }

    /// Coordinates of `v` with respect to the accepted inserted vectors, or
    /// `None` if `v` is outside the span. Requires tracking.
    pub fn coordinates(&self, v: &SparseVec<T>) -> Option<SparseVec<T>> {
        assert!(self.combos.is_some(), "coordinates need an Echelon built with tracking");
        let (rem, combo) = self.reduce_inner(v);
        if rem.is_zero() {
            combo
        } else {
            None
        }
    }

    /// Coordinates of `v` with respect to the RREF rows (read off the pivots).
    pub fn rref_coordinates(&self, v: &SparseVec<T>) -> Option<SparseVec<T>> {
        if !self.contains(v) {
            return None;
        }
        Some(SparseVec::from_pairs(
            v.iter().filter_map(|(c, x)| self.pivot_row.get(c).map(|r| (*r, x.clone()))),
        ))
    }

    /// Canonical basis of the solution space of `row · x = 0` over all rows,
    /// for vectors of length `ncols`: one vector per free column, in
    /// increasing column order.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<SparseVec<T>> {
        let mut by_col: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row.iter() {
                if *c != self.pivots[r] {
                    by_col.entry(*c).or_default().push((self.pivots[r], x.neg_ref()));
                }
            }
        }
        (0..ncols)
            .filter(|c| !self.pivot_row.contains_key(c))
            .map(|f| {
                let mut pairs = by_col.remove(&f).unwrap_or_default();
                pairs.push((f, T::one()));
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> SparseVec<Rational> {
        SparseVec::from_dense(&xs.iter().map(|x| Rational::from_int(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_independent_of_insertion_order() {
        let a = v(&[1, 2, 3]);
        let b = v(&[2, 1, 0]);
        let mut e1 = Echelon::new();
        e1.insert(&a);
        e1.insert(&b);
        let mut e2 = Echelon::new();
        e2.insert(&b);
        e2.insert(&a);
        let mut r1 = e1.rows().to_vec();
        let mut r2 = e2.rows().to_vec();
        r1.sort_by_key(|r| r.leading().unwrap().0);
        r2.sort_by_key(|r| r.leading().unwrap().0);
        assert_eq!(r1, r2);
    }

    #[test]
    fn tracked_coordinates() {
        let a = v(&[1, 1, 0]);
        let b = v(&[0, 1, 1]);
        let mut e = Echelon::with_tracking();
        assert_eq!(e.insert(&a), Some(0));
        assert_eq!(e.insert(&b), Some(1));
        assert_eq!(e.insert(&a.add(&b)), None);
        let target = a.scaled(&Rational::from_int(3)).sub(&b.scaled(&Rational::from_int(5)));
        let c = e.coordinates(&target).unwrap();
        assert_eq!(c.to_dense(2), vec![Rational::from_int(3), Rational::from_int(-5)]);
        assert!(e.coordinates(&v(&[1, 0, 0])).is_none());
    }
}
