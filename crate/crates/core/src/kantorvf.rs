//! Polynomial vector fields with exact coefficients.
//!
//! A field `Σ_i f^i ∂_i` lives on a [`CoordinateSpace`] whose coordinates
//! carry integer weights; the degree of a homogeneous field is the weight of
//! its monomials minus the weight of the coordinate they multiply, so
//! constant fields in weight-one coordinates have degree −1. This module
//! provides the conformal realization on a space with metric of signature
//! `(p, q)`, its generalization to `n` vector indices plus antisymmetric
//! coordinates `y_{ab}`, and the five-family operator realization of a
//! second-order triple system on pairs `(z, Z)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactnum::{Echelon, SparseVec};
use crate::liealg::{close, Closure, StructureLieAlgebra};
use crate::scalar::Scalar;
use crate::triplesys::TripleTensor;

pub const MAX_DEGREE: usize = 4;

/// Sorted multiset of variable indices.
pub type Monomial = SmallVec<[u32; 4]>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateSpace {
    names: Vec<String>,
    weights: Vec<i32>,
    /// Diagonal of the metric on the vector index, empty if there is none.
    eta: Vec<i8>,
}

impl CoordinateSpace {
    pub fn new(names: Vec<String>, weights: Vec<i32>, eta: Vec<i8>) -> Arc<Self> {
        assert_eq!(names.len(), weights.len());
        Arc::new(CoordinateSpace { names, weights, eta })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> i32 {
        self.weights[i]
    }

    pub fn eta(&self) -> &[i8] {
        &self.eta
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> Default for Polynomial<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::term(c, Monomial::new())
    }

    pub fn var(i: usize) -> Self {
        Self::term(T::one(), SmallVec::from_slice(&[i as u32]))
    }

    pub fn term(c: T, mut m: Monomial) -> Self {
        let mut p = Self::zero();
        m.sort_unstable();
        p.add_term(m, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: &T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add_ref(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: &T, other: &Polynomial<T>) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), &v.mul_ref(c));
        }
    }

    pub fn add(&self, other: &Polynomial<T>) -> Self {
        let mut p = self.clone();
        p.axpy(&T::one(), other);
        p
    }

    pub fn scaled(&self, c: &T) -> Self {
        let mut p = Self::zero();
        p.axpy(c, self);
        p
    }

    pub fn mul(&self, other: &Polynomial<T>) -> Self {
        let mut p = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(merge(a, b), &x.mul_ref(y));
            }
        }
        p
    }

    pub fn derivative(&self, var: usize) -> Self {
        let v = var as u32;
        let mut p = Self::zero();
        for (m, c) in &self.terms {
            let k = m.iter().filter(|&&x| x == v).count();
            if k == 0 {
                continue;
            }
            let mut rest = m.clone();
            let pos = rest.iter().position(|&x| x == v).expect("present");
            rest.remove(pos);
            p.add_term(rest, &c.mul_ref(&T::from_int(k as i64)));
        }
        p
    }

    fn format(&self, space: &CoordinateSpace) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_exact_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, s),
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<&str> = m.iter().map(|&v| space.name(v as usize)).collect();
            if vars.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

fn merge(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Monomial::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `Σ_i f^i ∂_i` with polynomial components of degree at most [`MAX_DEGREE`].
#[derive(Clone, Debug)]
pub struct PolyVectorField<T> {
    space: Arc<CoordinateSpace>,
    comps: BTreeMap<usize, Polynomial<T>>,
    name: Option<String>,
}

impl<T: Scalar> PartialEq for PolyVectorField<T> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.comps == other.comps
    }
}

impl<T: Scalar> PolyVectorField<T> {
    pub fn new(space: Arc<CoordinateSpace>, comps: BTreeMap<usize, Polynomial<T>>) -> Result<Self> {
        let dim = space.dim();
        let mut kept = BTreeMap::new();
        for (i, p) in comps {
            if i >= dim {
                return Err(Error::DimensionMismatch { expected: dim, got: i + 1 });
            }
            if p.terms.keys().flatten().any(|&v| v as usize >= dim) {
                return Err(Error::DimensionMismatch { expected: dim, got: p.terms.keys().flatten().max().map_or(0, |&v| v as usize + 1) });
            }
            if p.degree() > MAX_DEGREE {
                return Err(Error::DegreeOverflow(p.degree()));
            }
            if !p.is_zero() {
                kept.insert(i, p);
            }
        }
        Ok(PolyVectorField { space, comps: kept, name: None })
    }

    pub fn zero(space: Arc<CoordinateSpace>) -> Self {
        PolyVectorField { space, comps: BTreeMap::new(), name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn space(&self) -> &Arc<CoordinateSpace> {
        &self.space
    }

    pub fn component(&self, i: usize) -> Option<&Polynomial<T>> {
        self.comps.get(&i)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Polynomial<T>)> {
        self.comps.iter().map(|(i, p)| (*i, p))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.comps.values().map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Weighted degree of a nonzero homogeneous field (0 for the zero field).
    pub fn weighted_degree(&self) -> Result<i32> {
        let mut found = None;
        for (i, p) in &self.comps {
            for m in p.terms.keys() {
                let w: i32 = m.iter().map(|&v| self.space.weight(v as usize)).sum();
                let d = w - self.space.weight(*i);
                match found {
                    None => found = Some(d),
                    Some(e) if e != d => return Err(Error::Inhomogeneous),
                    _ => {}
                }
            }
        }
        Ok(found.unwrap_or(0))
    }

    pub fn scaled(&self, c: &T) -> Self {
        let comps = self.comps.iter().map(|(i, p)| (*i, p.scaled(c))).filter(|(_, p)| !p.is_zero()).collect();
        PolyVectorField { space: self.space.clone(), comps, name: None }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_space(self, other)?;
        let mut comps = self.comps.clone();
        for (i, p) in &other.comps {
            let e = comps.entry(*i).or_default();
            e.axpy(&T::one(), p);
            if e.is_zero() {
                comps.remove(i);
            }
        }
        Ok(PolyVectorField { space: self.space.clone(), comps, name: None })
    }

    /// Plain-text form, e.g. `-2*x0*x1 d/dx1 + x0*x0 d/dx0`.
    pub fn to_plain_string(&self) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        self.comps
            .iter()
            .map(|(i, p)| {
                let body = p.format(&self.space);
                let body = if p.len() > 1 { format!("({body})") } else { body };
                format!("{body} d/d{}", self.space.name(*i))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<T: Scalar> fmt::Display for PolyVectorField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}

fn same_space<T>(a: &PolyVectorField<T>, b: &PolyVectorField<T>) -> Result<()> {
    if Arc::ptr_eq(&a.space, &b.space) || a.space == b.space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// `[f, g] = f(g) − g(f)`: component `i` is `Σ_j f^j ∂_j g^i − g^j ∂_j f^i`.
pub fn vf_bracket<T: Scalar>(f: &PolyVectorField<T>, g: &PolyVectorField<T>) -> Result<PolyVectorField<T>> {
    same_space(f, g)?;
    let mut comps: BTreeMap<usize, Polynomial<T>> = BTreeMap::new();
    let minus = -T::one();
    for (sign, a, b) in [(T::one(), f, g), (minus, g, f)] {
        for (j, aj) in &a.comps {
            for (i, bi) in &b.comps {
                let d = bi.derivative(*j);
                if !d.is_zero() {
                    comps.entry(*i).or_default().axpy(&sign, &aj.mul(&d));
                }
            }
        }
    }
    comps.retain(|_, p| !p.is_zero());
    let deg = comps.values().map(|p| p.degree()).max().unwrap_or(0);
    if deg > MAX_DEGREE {
        return Err(Error::DegreeOverflow(deg));
    }
    Ok(PolyVectorField { space: f.space.clone(), comps, name: None })
}

/// Assigns a column to every `(coordinate, monomial)` pair seen so far.
#[derive(Default)]
pub struct FieldFlattener {
    index: HashMap<(usize, Monomial), usize>,
}

impl FieldFlattener {
    pub fn flatten<T: Scalar>(&mut self, f: &PolyVectorField<T>) -> SparseVec<T> {
        let mut pairs = Vec::new();
        for (i, p) in &f.comps {
            for (m, c) in &p.terms {
                let n = self.index.len();
                let col = *self.index.entry((*i, m.clone())).or_insert(n);
                pairs.push((col, c.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }
}

/// Closes a set of fields under [`vf_bracket`], graded by weighted degree.
/// A nonzero element with `|degree| > max_grade` aborts the closure with
/// [`Error::NotSecondOrder`].
pub fn close_fields<T: Scalar>(
    seeds: Vec<PolyVectorField<T>>,
    max_grade: Option<i32>,
    max_dim: usize,
) -> Result<Closure<PolyVectorField<T>, T>> {
    let mut flat = FieldFlattener::default();
    let degree = |f: &PolyVectorField<T>| -> Result<i32> {
        let d = f.weighted_degree()?;
        match max_grade {
            Some(m) if d.abs() > m => Err(Error::NotSecondOrder(d)),
            _ => Ok(d),
        }
    };
    let mut c = close(seeds, vf_bracket, |f| flat.flatten(f), degree, max_dim)?;
    let labels: Vec<String> =
        c.elements.iter().enumerate().map(|(k, f)| f.name().map_or_else(|| format!("c{k}"), str::to_string)).collect();
    c.algebra = c.algebra.with_grading(c.degrees.clone()).with_labels(labels);
    Ok(c)
}

/// Builder for fields given as sums of signed monomial terms. Factors and
/// targets are `Option<(index, sign)>`; `None` stands for a vanishing
/// coordinate such as `y_{aa}`.
struct Terms<T> {
    comps: BTreeMap<usize, Polynomial<T>>,
    target_scale: Option<(usize, T)>,
}

type Factor = Option<(usize, i64)>;

impl<T: Scalar> Terms<T> {
    fn new() -> Self {
        Terms { comps: BTreeMap::new(), target_scale: None }
    }

    /// Multiplies every term aimed at a coordinate `>= from` by `s`.
    fn scaling(from: usize, s: T) -> Self {
        Terms { comps: BTreeMap::new(), target_scale: Some((from, s)) }
    }

    fn add(&mut self, coeff: i64, target: Factor, factors: &[Factor]) {
        let Some((t, mut sign)) = target else { return };
        let mut m = Monomial::new();
        for f in factors {
            let Some((v, s)) = f else { return };
            sign *= s;
            m.push(*v as u32);
        }
        m.sort_unstable();
        let mut c = T::from_int(coeff * sign);
        if let Some((from, s)) = &self.target_scale {
            if t >= *from {
                c = c.mul_ref(s);
            }
        }
        self.comps.entry(t).or_default().add_term(m, &c);
    }

    fn build(self, space: &Arc<CoordinateSpace>, name: String) -> PolyVectorField<T> {
        PolyVectorField::new(space.clone(), self.comps).expect("generated fields are well formed").with_name(name)
    }
}

fn signature(p: usize, q: usize) -> Vec<i8> {
    std::iter::repeat(-1).take(p).chain(std::iter::repeat(1).take(q)).collect()
}

/// Translations, Lorentz fields, dilatation and special conformal fields on
/// `R^{p,q}` with `η = diag(−1 (p times), +1 (q times))`.
pub fn conformal_fields<T: Scalar>(p: usize, q: usize) -> Result<Vec<PolyVectorField<T>>> {
    let d = p + q;
    if d == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    let eta = signature(p, q);
    let space = CoordinateSpace::new((0..d).map(|m| format!("x{m}")).collect(), vec![1; d], eta.clone());
    let e = |m: usize| eta[m] as i64;
    let x = |m: usize| Some((m, 1));
    let x_low = |m: usize| Some((m, e(m)));
    let del = |m: usize| Some((m, 1));
    let del_up = |m: usize| Some((m, e(m)));
    let mut out = Vec::new();
    for m in 0..d {
        let mut t = Terms::new();
        t.add(1, del(m), &[]);
        out.push(t.build(&space, format!("P_{m}")));
    }
    for m in 0..d {
        for n in m + 1..d {
            let mut t = Terms::new();
            t.add(1, del_up(m), &[x_low(n)]);
            t.add(-1, del(n), &[x(m)]);
            out.push(t.build(&space, format!("G^{m}_{n}")));
        }
    }
    let mut t = Terms::new();
    for m in 0..d {
        t.add(1, del(m), &[x(m)]);
    }
    out.push(t.build(&space, "D".into()));
    for m in 0..d {
        let mut t = Terms::new();
        for n in 0..d {
            t.add(-2, del(n), &[x(n), x(m)]);
            t.add(1, del_up(m), &[x(n), x_low(n)]);
        }
        out.push(t.build(&space, format!("K^{m}")));
    }
    Ok(out)
}

/// The six families `P^{ab}, P_μ^a, G^μ_ν, D^a_b, K^μ_a, K_{ab}` on
/// coordinates `x^μ_a` (weight 1) and antisymmetric `y_{ab} = x_{ab}`
/// (weight 2, stored for `a < b`). Vector indices use `η` of signature
/// `(p, q)`; the indices `a, b` are Euclidean. The antisymmetric derivative
/// is normalized as `∂^{ab} x_{cd} = ½(δ^a_c δ^b_d − δ^a_d δ^b_c)`, i.e.
/// `∂^{ab} = ½ ∂/∂y_{ab}` for `a < b`; with the unnormalized derivative the
/// fields do not close.
pub fn generalized_fields<T: Scalar>(p: usize, q: usize, n: usize) -> Result<Vec<PolyVectorField<T>>> {
    generalized_fields_scaled(p, q, n, T::from_frac(1, 2))
}

fn generalized_fields_scaled<T: Scalar>(p: usize, q: usize, n: usize, lam: T) -> Result<Vec<PolyVectorField<T>>> {
    let d = p + q;
    if d == 0 || n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    let eta = signature(p, q);
    let mut names: Vec<String> = Vec::new();
    let mut weights = Vec::new();
    for a in 0..n {
        for m in 0..d {
            names.push(format!("x{m}_{}", a + 1));
            weights.push(1);
        }
    }
    let mut pair_index = HashMap::new();
    for a in 0..n {
        for b in a + 1..n {
            pair_index.insert((a, b), names.len());
            names.push(format!("y{}{}", a + 1, b + 1));
            weights.push(2);
        }
    }
    let space = CoordinateSpace::new(names, weights, eta.clone());
    let e = |m: usize| eta[m] as i64;
    let x = |m: usize, a: usize| -> Factor { Some((a * d + m, 1)) };
    let x_low = |m: usize, a: usize| -> Factor { Some((a * d + m, e(m))) };
    let y = |a: usize, b: usize| -> Factor {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => Some((pair_index[&(a, b)], 1)),
            Greater => Some((pair_index[&(b, a)], -1)),
            Equal => None,
        }
    };
    let del = x;
    let del_up = x_low;
    let del_y = y;

    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut t = Terms::scaling(n * d, lam.clone());
            t.add(-2, del_y(a, b), &[]);
            out.push(t.build(&space, format!("P^{}{}", a + 1, b + 1)));
        }
    }
    for a in 0..n {
        for m in 0..d {
            let mut t = Terms::scaling(n * d, lam.clone());
            t.add(1, del(m, a), &[]);
            for b in 0..n {
                t.add(-2, del_y(a, b), &[x_low(m, b)]);
            }
            out.push(t.build(&space, format!("P_{m}^{}", a + 1)));
        }
    }
    for m in 0..d {
        for nu in m + 1..d {
            let mut t = Terms::scaling(n * d, lam.clone());
            for a in 0..n {
                t.add(1, del_up(m, a), &[x_low(nu, a)]);
                t.add(-1, del(nu, a), &[x(m, a)]);
            }
            out.push(t.build(&space, format!("G^{m}_{nu}")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let mut t = Terms::scaling(n * d, lam.clone());
            for m in 0..d {
                t.add(1, del(m, a), &[x(m, b)]);
            }
            for c in 0..n {
                t.add(2, del_y(a, c), &[y(b, c)]);
            }
            out.push(t.build(&space, format!("D^{}_{}", a + 1, b + 1)));
        }
    }
    for a in 0..n {
        for m in 0..d {
            let mut t = Terms::scaling(n * d, lam.clone());
            for nu in 0..d {
                for b in 0..n {
                    t.add(-2, del(nu, b), &[x(nu, a), x(m, b)]);
                    t.add(1, del_up(m, b), &[x(nu, a), x_low(nu, b)]);
                }
            }
            for b in 0..n {
                t.add(-1, del_up(m, b), &[y(a, b)]);
            }
            for nu in 0..d {
                for b in 0..n {
                    for c in 0..n {
                        t.add(-2, del_y(b, c), &[x(nu, a), x(m, b), x_low(nu, c)]);
                    }
                }
            }
            for b in 0..n {
                for c in 0..n {
                    t.add(2, del_y(b, c), &[y(a, b), x(m, c)]);
                }
            }
            out.push(t.build(&space, format!("K^{m}_{}", a + 1)));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let mut t = Terms::scaling(n * d, lam.clone());
            for m in 0..d {
                for nu in 0..d {
                    for c in 0..n {
                        t.add(1, del(nu, c), &[x(m, a), x(nu, b), x_low(m, c)]);
                        t.add(-1, del(nu, c), &[x(m, b), x(nu, a), x_low(m, c)]);
                    }
                }
            }
            for m in 0..d {
                for c in 0..n {
                    t.add(-1, del(m, c), &[y(a, c), x(m, b)]);
                    t.add(1, del(m, c), &[y(b, c), x(m, a)]);
                }
            }
            for m in 0..d {
                for nu in 0..d {
                    for c in 0..n {
                        for dd in 0..n {
                            t.add(2, del_y(c, dd), &[x(m, a), x(nu, b), x_low(m, c), x_low(nu, dd)]);
                        }
                    }
                }
            }
            for c in 0..n {
                for dd in 0..n {
                    t.add(-2, del_y(c, dd), &[y(a, c), y(b, dd)]);
                }
            }
            out.push(t.build(&space, format!("K_{}{}", a + 1, b + 1)));
        }
    }
    Ok(out)
}

type PVec<T> = Vec<Polynomial<T>>;

/// A triple system on `N` coordinates `z^k` (weight 1) together with the
/// span of the operators `⟨u, v⟩: z ↦ (uzv) − (vzu)`, whose coordinates
/// `Z^m` (weight 2) follow the `z^k` in the combined space.
#[derive(Clone, Debug)]
pub struct KantorPairSpace<T: Scalar> {
    tensor: TripleTensor<T>,
    /// Basis operators `B_m` as `(row, col, value)` lists.
    z_basis: Vec<Vec<(usize, usize, T)>>,
    /// Coordinates of `⟨e_i, e_j⟩` in the `B_m`, index `i * N + j`.
    pairs: Vec<SparseVec<T>>,
    space: Arc<CoordinateSpace>,
}

impl<T: Scalar> KantorPairSpace<T> {
    pub fn new(tensor: &TripleTensor<T>) -> Self {
        let n = tensor.dim();
        let op = |i: usize, j: usize| -> SparseVec<T> {
            let mut pairs = Vec::new();
            for k in 0..n {
                for (l, c) in tensor.basis_product(i, k, j).iter() {
                    pairs.push((l * n + k, c.clone()));
                }
                for (l, c) in tensor.basis_product(j, k, i).iter() {
                    pairs.push((l * n + k, c.neg_ref()));
                }
            }
            SparseVec::from_pairs(pairs)
        };
        let mut ech = Echelon::with_tracking();
        let mut basis = Vec::new();
        let mut flats = vec![SparseVec::new(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let f = op(i, j);
                if ech.insert(&f).is_some() {
                    basis.push(f.iter().map(|(c, v)| (c / n, c % n, v.clone())).collect());
                }
                flats[i * n + j] = f;
            }
        }
        let mut pairs = vec![SparseVec::new(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let c = ech.coordinates(&flats[i * n + j]).expect("inserted");
                pairs[j * n + i] = c.neg();
                pairs[i * n + j] = c;
            }
        }
        let m = basis.len();
        let names = (0..n).map(|k| format!("z{k}")).chain((0..m).map(|k| format!("Z{k}"))).collect();
        let weights = std::iter::repeat(1).take(n).chain(std::iter::repeat(2).take(m)).collect();
        let space = CoordinateSpace::new(names, weights, Vec::new());
        KantorPairSpace { tensor: tensor.clone(), z_basis: basis, pairs, space }
    }

    pub fn n(&self) -> usize {
        self.tensor.dim()
    }

    /// Dimension of the span of the `⟨u, v⟩`.
    pub fn z_dim(&self) -> usize {
        self.z_basis.len()
    }

    pub fn space(&self) -> &Arc<CoordinateSpace> {
        &self.space
    }

    pub fn tensor(&self) -> &TripleTensor<T> {
        &self.tensor
    }

    fn unit(&self, u: usize) -> PVec<T> {
        let mut v = vec![Polynomial::zero(); self.n()];
        v[u] = Polynomial::constant(T::one());
        v
    }

    fn z(&self) -> PVec<T> {
        (0..self.n()).map(Polynomial::var).collect()
    }

    fn triple(&self, a: &PVec<T>, b: &PVec<T>, c: &PVec<T>) -> PVec<T> {
        let n = self.n();
        let mut out = vec![Polynomial::zero(); n];
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                let ab = a[i].mul(&b[j]);
                for k in (0..n).filter(|&k| !c[k].is_zero()) {
                    let t = self.tensor.basis_product(i, j, k);
                    if t.is_zero() {
                        continue;
                    }
                    let abc = ab.mul(&c[k]);
                    for (w, coef) in t.iter() {
                        out[*w].axpy(coef, &abc);
                    }
                }
            }
        }
        out
    }

    /// `⟨a, b⟩` in Z-coordinates.
    fn pair(&self, a: &PVec<T>, b: &PVec<T>) -> PVec<T> {
        let n = self.n();
        let mut out = vec![Polynomial::zero(); self.z_dim()];
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero() && j != i) {
                let ab = a[i].mul(&b[j]);
                for (m, c) in self.pairs[i * n + j].iter() {
                    out[*m].axpy(c, &ab);
                }
            }
        }
        out
    }

    /// `Z(a) = Σ_m Z^m B_m a`.
    fn z_apply(&self, a: &PVec<T>) -> PVec<T> {
        let n = self.n();
        let mut out = vec![Polynomial::zero(); n];
        for (m, b) in self.z_basis.iter().enumerate() {
            let zm = Polynomial::var(n + m);
            for (l, k, c) in b {
                if !a[*k].is_zero() {
                    out[*l].axpy(c, &a[*k].mul(&zm));
                }
            }
        }
        out
    }

    fn field(&self, z: PVec<T>, zz: PVec<T>, name: String) -> PolyVectorField<T> {
        let n = self.n();
        let comps = z.into_iter().enumerate().chain(zz.into_iter().enumerate().map(|(m, p)| (n + m, p))).collect();
        PolyVectorField::new(self.space.clone(), comps).expect("operator fields stay within degree 4").with_name(name)
    }

    fn zero_vec(&self, len: usize) -> PVec<T> {
        vec![Polynomial::zero(); len]
    }

    fn label(&self, u: usize) -> String {
        self.tensor.label(u)
    }

    fn half(&self) -> T {
        T::from_frac(1, 2)
    }

    /// Degree −2: `z + Z ↦ ⟨u, v⟩`.
    pub fn minus_two(&self, u: usize, v: usize) -> PolyVectorField<T> {
        let zz = self.pair(&self.unit(u), &self.unit(v));
        self.field(self.zero_vec(self.n()), zz, format!("<{},{}>", self.label(u), self.label(v)))
    }

    /// Degree −1: `z + Z ↦ u + ½⟨u, z⟩`.
    pub fn minus_one(&self, u: usize) -> PolyVectorField<T> {
        let zz = scale(self.pair(&self.unit(u), &self.z()), &self.half());
        self.field(self.unit(u), zz, self.label(u))
    }

    /// Degree 0: `z + Z ↦ (uvz) − ⟨u, Z(v)⟩`.
    pub fn zero_grade(&self, u: usize, v: usize) -> PolyVectorField<T> {
        let z = self.triple(&self.unit(u), &self.unit(v), &self.z());
        let zz = scale(self.pair(&self.unit(u), &self.z_apply(&self.unit(v))), &-T::one());
        self.field(z, zz, format!("L({},{})", self.label(u), self.label(v)))
    }

    /// Degree 1: `z + Z ↦ −½(zuz) − Z(u) + (1/12)⟨(zuz), z⟩ − ½⟨Z(u), z⟩`.
    pub fn plus_one(&self, u: usize) -> PolyVectorField<T> {
        let zvec = self.z();
        let zuz = self.triple(&zvec, &self.unit(u), &zvec);
        let zu = self.z_apply(&self.unit(u));
        let z = add(scale(zuz.clone(), &self.half().neg_ref()), scale(zu.clone(), &-T::one()));
        let zz = add(
            scale(self.pair(&zuz, &zvec), &T::from_frac(1, 12)),
            scale(self.pair(&zu, &zvec), &self.half().neg_ref()),
        );
        self.field(z, zz, format!("tau({})", self.label(u)))
    }

    /// Degree 2: with `w = ⟨u, v⟩(z)`,
    /// `z + Z ↦ −(1/6)(zwz) − Z(w) + (1/24)⟨(zwz), z⟩ + ⟨Z(u), Z(v)⟩`.
    pub fn plus_two(&self, u: usize, v: usize) -> PolyVectorField<T> {
        let zvec = self.z();
        let (eu, ev) = (self.unit(u), self.unit(v));
        let w = add(self.triple(&eu, &zvec, &ev), scale(self.triple(&ev, &zvec, &eu), &-T::one()));
        let zwz = self.triple(&zvec, &w, &zvec);
        let z = add(scale(zwz.clone(), &T::from_frac(-1, 6)), scale(self.z_apply(&w), &-T::one()));
        let zz = add(
            scale(self.pair(&zwz, &zvec), &T::from_frac(1, 24)),
            self.pair(&self.z_apply(&eu), &self.z_apply(&ev)),
        );
        self.field(z, zz, format!("[tau({}),tau({})]", self.label(u), self.label(v)))
    }

    /// All five families, in order of degree.
    pub fn seeds(&self) -> Vec<PolyVectorField<T>> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.minus_two(i, j));
            }
        }
        out.extend((0..n).map(|i| self.minus_one(i)));
        for i in 0..n {
            for j in 0..n {
                out.push(self.zero_grade(i, j));
            }
        }
        out.extend((0..n).map(|i| self.plus_one(i)));
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.plus_two(i, j));
            }
        }
        out
    }
}

fn scale<T: Scalar>(v: PVec<T>, c: &T) -> PVec<T> {
    v.into_iter().map(|p| p.scaled(c)).collect()
}

fn add<T: Scalar>(a: PVec<T>, b: PVec<T>) -> PVec<T> {
    a.into_iter().zip(b).map(|(x, y)| x.add(&y)).collect()
}

/// Closure of the five operator families of a second-order triple system,
/// graded by degree. Any grade beyond ±2 aborts with [`Error::NotSecondOrder`].
pub fn kantor_operators<T: Scalar>(t: &TripleTensor<T>) -> Result<StructureLieAlgebra<T>> {
    Ok(kantor_closure(t)?.algebra)
}

pub fn kantor_closure<T: Scalar>(t: &TripleTensor<T>) -> Result<Closure<PolyVectorField<T>, T>> {
    let ps = KantorPairSpace::new(t);
    let (n, m) = (ps.n(), ps.z_dim());
    close_fields(ps.seeds(), Some(2), 2 * m + 2 * n + n * n)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiveGradingReport {
    pub passed: bool,
    pub graded_dims: Vec<(i32, usize)>,
    pub reason: Option<String>,
}

/// `g_k = 0` for `|k| > 2` and `g_k ≠ 0` for `|k| ≤ 2`.
pub fn check_five_grading<T: Scalar>(l: &StructureLieAlgebra<T>) -> Result<FiveGradingReport> {
    let dims = l.graded_dims().ok_or(Error::MissingGrading)?;
    let get = |k: i32| dims.iter().find(|(d, _)| *d == k).map_or(0, |(_, c)| *c);
    let mut reason = None;
    if let Some((k, _)) = dims.iter().find(|(k, c)| k.abs() > 2 && *c > 0) {
        reason = Some(format!("grade {k} is nonzero"));
    } else if let Some(k) = (-2..=2).find(|&k| get(k) == 0) {
        reason = Some(format!("grade {k} is empty"));
    }
    Ok(FiveGradingReport { passed: reason.is_none(), graded_dims: dims, reason })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compalg::CompositionKind;
    use crate::jordan::JordanAlgebra;
    use crate::liealg::fingerprint_equal;
    use crate::sampling::CheckMode;
    use crate::triplesys::{eq7_tensor, jts_tensor};
    use crate::Rational;

    fn dims(l: &StructureLieAlgebra<Rational>) -> Vec<usize> {
        l.graded_dims().unwrap().into_iter().map(|(_, c)| c).collect()
    }

    #[test]
    fn polynomial_basics() {
        let x: Polynomial<Rational> = Polynomial::var(0);
        let y = Polynomial::var(1);
        let p = x.mul(&x).mul(&y).add(&y);
        assert_eq!(p.degree(), 3);
        let dx = p.derivative(0);
        assert_eq!(dx, Polynomial::term(Rational::from_int(2), SmallVec::from_slice(&[0, 1])));
        assert!(p.derivative(2).is_zero());
    }

    #[test]
    fn bracket_examples() {
        let f = conformal_fields::<Rational>(1, 3).unwrap();
        let d = 4;
        let p0 = &f[0];
        let dil = &f[d + d * (d - 1) / 2];
        assert_eq!(dil.name(), Some("D"));
        assert_eq!(&vf_bracket(p0, dil).unwrap(), p0);
        assert!(vf_bracket(p0, p0).unwrap().is_zero());
        let k0 = &f[d + d * (d - 1) / 2 + 1];
        assert_eq!(&vf_bracket(dil, k0).unwrap(), k0);
    }

    #[test]
    fn space_mismatch() {
        let a = conformal_fields::<Rational>(1, 2).unwrap();
        let b = conformal_fields::<Rational>(2, 1).unwrap();
        assert!(matches!(vf_bracket(&a[0], &b[0]), Err(Error::SpaceMismatch)));
    }

    #[test]
    fn degree_cap() {
        let space = CoordinateSpace::new(vec!["x".into()], vec![1], vec![]);
        let mut comps = BTreeMap::new();
        comps.insert(0, Polynomial::<Rational>::term(Rational::from_int(1), SmallVec::from_slice(&[0; 5])));
        assert!(matches!(PolyVectorField::new(space, comps), Err(Error::DegreeOverflow(5))));
    }

    #[test]
    fn conformal_closure_dims() {
        for (p, q) in [(0, 1), (1, 1), (1, 2), (2, 1), (1, 3), (0, 4), (2, 3)] {
            let d = p + q;
            let f = conformal_fields::<Rational>(p, q).unwrap();
            assert_eq!(f.len(), (d + 2) * (d + 1) / 2);
            let c = close_fields(f, None, 100).unwrap();
            assert_eq!(c.algebra.dim(), (d + 2) * (d + 1) / 2, "({p},{q})");
            assert!(c.algebra.check_jacobi(CheckMode::Full, 0).passed);
            assert!(c.algebra.check_grading().unwrap().passed);
        }
    }

    #[test]
    fn signature_does_not_change_fingerprint() {
        let a = close_fields(conformal_fields::<Rational>(1, 3).unwrap(), None, 100).unwrap().algebra;
        let b = close_fields(conformal_fields::<Rational>(0, 4).unwrap(), None, 100).unwrap().algebra;
        assert!(fingerprint_equal(&a.fingerprint(), &b.fingerprint()));
    }

    #[test]
    fn generalized_closure() {
        let f = generalized_fields::<Rational>(1, 2, 2).unwrap();
        assert_eq!(f.len(), 21);
        let c = close_fields(f, None, 100).unwrap();
        assert_eq!(c.algebra.dim(), 21);
        assert_eq!(dims(&c.algebra), vec![1, 6, 7, 6, 1]);
        assert!(c.algebra.check_jacobi(CheckMode::Full, 0).passed);
        assert!(check_five_grading(&c.algebra).unwrap().passed);
    }

    #[test]
    fn unnormalized_antisymmetric_derivative_does_not_close() {
        let f = generalized_fields_scaled::<Rational>(1, 2, 2, Rational::from_int(1)).unwrap();
        assert!(matches!(close_fields(f, None, 100), Err(Error::DegreeOverflow(5))));
    }

    #[test]
    fn generalized_n1_is_conformal() {
        let g = generalized_fields::<Rational>(1, 2, 1).unwrap();
        let c = conformal_fields::<Rational>(1, 2).unwrap();
        assert_eq!(g.len(), c.len());
        let a = close_fields(g, None, 100).unwrap().algebra;
        let b = close_fields(c, None, 100).unwrap().algebra;
        assert!(fingerprint_equal(&a.fingerprint(), &b.fingerprint()));
    }

    #[test]
    fn kantor_on_slotted_h2r() {
        let j = JordanAlgebra::<Rational>::new(2, CompositionKind::R).unwrap();
        let t = eq7_tensor(&j, 2).unwrap();
        let k = kantor_operators(&t).unwrap();
        assert_eq!(k.dim(), 21);
        assert!(k.check_jacobi(CheckMode::Full, 0).passed);
        assert!(check_five_grading(&k).unwrap().passed);
        let g = close_fields(generalized_fields::<Rational>(1, 2, 2).unwrap(), None, 100).unwrap().algebra;
        assert!(fingerprint_equal(&k.fingerprint(), &g.fingerprint()));
    }

    #[test]
    fn kantor_on_jordan_is_three_graded() {
        let j = JordanAlgebra::<Rational>::new(2, CompositionKind::C).unwrap();
        let ps = KantorPairSpace::new(&jts_tensor(&j));
        assert_eq!(ps.z_dim(), 0);
        let k = kantor_operators(&jts_tensor(&j)).unwrap();
        assert_eq!(dims(&k), vec![4, 7, 4]);
        let rep = check_five_grading(&k).unwrap();
        assert!(!rep.passed);
    }
}
