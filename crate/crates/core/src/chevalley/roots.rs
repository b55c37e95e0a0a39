use std::collections::{HashMap, HashSet};

use num_rational::Ratio;

use super::gcm::{classify_gcm, Gcm, GcmClass};
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, SparseVec};
use crate::liealg::StructureLieAlgebra;
use crate::scalar::Scalar;
use crate::Rational;

type Q = Ratio<i64>;

/// Root system of a finite-type Cartan matrix with Chevalley structure
/// constants `[e_α, e_β] = N_{α,β} e_{α+β}`.
///
/// Roots are addressed by id: `0..P` are the positive roots in order and
/// `P + k` is the negative of root `k`. Signs come from the extraspecial
/// pair rule: for every non-simple positive `ξ`, the pair `(α, β)` with `α`
/// the first positive root in order such that `ξ − α` is a root has
/// `N_{α,β} = p + 1 > 0`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    gcm: Gcm,
    sym: Vec<i64>,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    n: HashMap<(usize, usize), i64>,
}

/// Positive roots as coefficient vectors over the simple roots, ordered by
/// height and then lexicographically.
pub fn positive_roots(g: &Gcm) -> Result<Vec<Vec<i64>>> {
    let class = classify_gcm(g);
    if class != GcmClass::Finite {
        return Err(Error::NotFinite(class.to_string()));
    }
    let r = g.rank();
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut out = Vec::new();
    while !layer.is_empty() {
        layer.sort();
        all.extend(layer.iter().cloned());
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| g.get(i, j) * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        out.append(&mut layer);
        layer = next;
    }
    Ok(out)
}

impl RootDatum {
    pub fn new(g: &Gcm) -> Result<Self> {
        let positive = positive_roots(g)?;
        let sym = g.symmetrizer()?;
        let index = positive.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        let mut rd = RootDatum { gcm: g.clone(), sym, positive, index, n: HashMap::new() };
        rd.n = NTable::new(&rd).compute_all();
        Ok(rd)
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    pub fn positive(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// `(α_i, α_i) / 2`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    pub fn is_positive_id(&self, id: usize) -> bool {
        id < self.positive.len()
    }

    pub fn neg_id(&self, id: usize) -> usize {
        let p = self.positive.len();
        if id < p {
            id + p
        } else {
            id - p
        }
    }

    pub fn root(&self, id: usize) -> Vec<i64> {
        let p = self.positive.len();
        if id < p {
            self.positive[id].clone()
        } else {
            self.positive[id - p].iter().map(|c| -c).collect()
        }
    }

    pub fn root_id(&self, v: &[i64]) -> Option<usize> {
        if let Some(&k) = self.index.get(v) {
            return Some(k);
        }
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&k| k + self.positive.len())
    }

    pub fn sum_id(&self, x: usize, y: usize) -> Option<usize> {
        let (a, b) = (self.root(x), self.root(y));
        let s: Vec<i64> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        self.root_id(&s)
    }

    /// `(x, y) = Σ x_i y_j d_i a_ij`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += x[i] * y[j] * self.sym[i] * self.gcm.get(i, j);
            }
        }
        s
    }

    /// `N_{x,y}` for root ids with `x + y` a root.
    pub fn structure_constant(&self, x: usize, y: usize) -> Option<i64> {
        self.n.get(&(x, y)).copied()
    }

    pub fn height(&self, id: usize) -> i64 {
        self.root(id).iter().sum()
    }
}

/// Memoized evaluation of the Chevalley structure constants.
struct NTable<'a> {
    rd: &'a RootDatum,
    memo: HashMap<(usize, usize), i64>,
    extraspecial: Vec<Option<(usize, usize)>>,
}

impl<'a> NTable<'a> {
    fn new(rd: &'a RootDatum) -> Self {
        let p = rd.positive.len();
        let extraspecial = (0..p)
            .map(|xi| {
                let target = &rd.positive[xi];
                (0..xi).find_map(|a| {
                    let rest: Vec<i64> = target.iter().zip(&rd.positive[a]).map(|(t, x)| t - x).collect();
                    rd.index.get(&rest).map(|&b| (a, b))
                })
            })
            .collect();
        NTable { rd, memo: HashMap::new(), extraspecial }
    }

    fn norm(&self, id: usize) -> i64 {
        let v = self.rd.root(id);
        self.rd.inner(&v, &v)
    }

    fn compute_all(mut self) -> HashMap<(usize, usize), i64> {
        let total = 2 * self.rd.positive.len();
        for x in 0..total {
            for y in 0..total {
                if self.rd.sum_id(x, y).is_some() {
                    self.n(x, y);
                }
            }
        }
        self.memo
    }

    fn exact(q: Q) -> i64 {
        assert!(q.is_integer(), "non-integral structure constant {q}");
        q.to_integer()
    }

    fn n(&mut self, x: usize, y: usize) -> i64 {
        if let Some(&v) = self.memo.get(&(x, y)) {
            return v;
        }
        let rd = self.rd;
        let (px, py) = (rd.is_positive_id(x), rd.is_positive_id(y));
        let v = match (px, py) {
            (true, true) if x < y => self.special(x, y),
            (true, true) => -self.special(y, x),
            (false, false) => -self.n(rd.neg_id(x), rd.neg_id(y)),
            (true, false) => {
                let w = rd.sum_id(x, y).expect("sum is a root");
                let z = rd.neg_id(w);
                if rd.is_positive_id(w) {
                    Self::exact(Q::new(self.n(y, z) * self.norm(z), self.norm(x)))
                } else {
                    Self::exact(Q::new(self.n(z, x) * self.norm(z), self.norm(y)))
                }
            }
            (false, true) => -self.n(y, x),
        };
        self.memo.insert((x, y), v);
        v
    }

    /// `N_{γ,δ}` for positive `γ` before `δ`.
    fn special(&mut self, g: usize, d: usize) -> i64 {
        let rd = self.rd;
        let xi = rd.sum_id(g, d).expect("sum is a root");
        let (a, b) = self.extraspecial[xi].expect("non-simple root has an extraspecial pair");
        if (a, b) == (g, d) {
            let alpha = rd.root(a);
            let mut p = 0;
            let mut down = rd.root(b);
            loop {
                for (x, y) in down.iter_mut().zip(&alpha) {
                    *x -= y;
                }
                if rd.root_id(&down).is_some() {
                    p += 1;
                } else {
                    break;
                }
            }
            return p + 1;
        }
        let (ng, nd) = (rd.neg_id(g), rd.neg_id(d));
        let mut acc = Q::from_integer(0);
        if let Some(bg) = rd.sum_id(b, ng) {
            acc += Q::new(self.n(b, ng) * self.n(a, nd), self.norm(bg));
        }
        if let Some(ag) = rd.sum_id(a, ng) {
            acc += Q::new(self.n(ng, a) * self.n(b, nd), self.norm(ag));
        }
        let nab = self.n(a, b);
        Self::exact(acc * Q::new(self.norm(xi), nab))
    }
}

/// A split simple Lie algebra in its Chevalley basis, with root data.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    datum: RootDatum,
    algebra: StructureLieAlgebra<Rational>,
}

pub fn build_chevalley(g: &Gcm) -> Result<ChevalleyAlgebra> {
    ChevalleyAlgebra::new(g)
}

fn coeff_label(prefix: &str, v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("{prefix}[{}]", s.join(""))
}

impl ChevalleyAlgebra {
    pub fn new(g: &Gcm) -> Result<Self> {
        let rd = RootDatum::new(g)?;
        let p = rd.num_positive();
        let r = rd.rank();
        let dim = 2 * p + r;
        // basis index -> root id (None for Cartan)
        let root_of = |b: usize| if b < 2 * p { Some(b) } else { None };
        let coroot = |id: usize| -> SparseVec<Rational> {
            // h_α = Σ c_j d_j / d_α h_j for positive α
            let v = rd.root(id);
            let da = rd.inner(&v, &v) / 2;
            SparseVec::from_pairs(
                (0..r).map(|j| (2 * p + j, Rational::from_frac(v[j] * rd.sym[j], da))),
            )
        };
        let bracket = |x: usize, y: usize| -> SparseVec<Rational> {
            match (root_of(x), root_of(y)) {
                (Some(a), Some(b)) => {
                    if rd.neg_id(a) == b {
                        if rd.is_positive_id(a) {
                            coroot(a)
                        } else {
                            coroot(b).neg()
                        }
                    } else if let Some(s) = rd.sum_id(a, b) {
                        SparseVec::single(s, Rational::from_int(rd.n[&(a, b)]))
                    } else {
                        SparseVec::new()
                    }
                }
                (None, Some(b)) => {
                    let i = x - 2 * p;
                    let v = rd.root(b);
                    let c: i64 = (0..r).map(|j| g.get(i, j) * v[j]).sum();
                    SparseVec::single(b, Rational::from_int(c))
                }
                (Some(a), None) => {
                    let i = y - 2 * p;
                    let v = rd.root(a);
                    let c: i64 = (0..r).map(|j| g.get(i, j) * v[j]).sum();
                    SparseVec::single(a, Rational::from_int(-c))
                }
                (None, None) => SparseVec::new(),
            }
        };
        let mut labels: Vec<String> = rd.positive.iter().map(|v| coeff_label("e", v)).collect();
        labels.extend(rd.positive.iter().map(|v| coeff_label("f", v)));
        labels.extend((1..=r).map(|i| format!("h{i}")));
        let mut tau = Matrix::zeros(dim, dim);
        for k in 0..p {
            tau.set(k + p, k, Rational::from_int(-1));
            tau.set(k, k + p, Rational::from_int(-1));
        }
        for i in 0..r {
            tau.set(2 * p + i, 2 * p + i, Rational::from_int(-1));
        }
        let algebra = StructureLieAlgebra::from_bracket_fn(dim, bracket).with_labels(labels).with_involution(tau);
        Ok(ChevalleyAlgebra { datum: rd, algebra })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn algebra(&self) -> &StructureLieAlgebra<Rational> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn e_index(&self, k: usize) -> usize {
        k
    }

    pub fn f_index(&self, k: usize) -> usize {
        self.datum.num_positive() + k
    }

    pub fn h_index(&self, i: usize) -> usize {
        2 * self.datum.num_positive() + i
    }

    fn check_node(&self, node: usize) -> Result<()> {
        let r = self.datum.rank();
        if node < r {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node, rank: r })
        }
    }

    /// Degree of every basis element for the grading generated by `node`.
    pub fn node_grading(&self, node: usize) -> Result<Vec<i32>> {
        self.check_node(node)?;
        let p = self.datum.num_positive();
        let mut g = Vec::with_capacity(self.dim());
        g.extend(self.datum.positive.iter().map(|v| -(v[node] as i32)));
        g.extend(self.datum.positive.iter().map(|v| v[node] as i32));
        g.extend(std::iter::repeat(0).take(self.datum.rank()));
        debug_assert_eq!(g.len(), 2 * p + self.datum.rank());
        Ok(g)
    }

    /// The algebra carrying the grading generated by `node`.
    pub fn graded(&self, node: usize) -> Result<StructureLieAlgebra<Rational>> {
        Ok(self.algebra.clone().with_grading(self.node_grading(node)?))
    }

    /// `2·max_μ c_node(μ) + 1`.
    pub fn grading_depth(&self, node: usize) -> Result<usize> {
        self.check_node(node)?;
        let m = self.datum.positive.iter().map(|v| v[node]).max().unwrap_or(0);
        Ok(2 * m as usize + 1)
    }

    pub fn chevalley_involution(&self) -> &Matrix<Rational> {
        self.algebra.involution().expect("built with an involution")
    }

    /// `ad(e_i)^{1 − a_ij} e_j = 0` and the same for `f`, for all `i ≠ j`.
    pub fn check_serre(&self) -> bool {
        let r = self.datum.rank();
        let simple = |i: usize| {
            let mut v = vec![0; r];
            v[i] = 1;
            self.datum.root_id(&v).unwrap()
        };
        (0..r).all(|i| {
            (0..r).filter(|&j| j != i).all(|j| {
                let k = 1 - self.datum.gcm.get(i, j);
                [(simple(i), simple(j)), (self.f_index(simple(i)), self.f_index(simple(j)))].iter().all(|&(x, y)| {
                    let ad = SparseVec::unit(x);
                    let mut v = SparseVec::unit(y);
                    for _ in 0..k {
                        v = self.algebra.bracket(&ad, &v);
                    }
                    v.is_zero()
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::CheckMode;

    fn build(name: &str) -> ChevalleyAlgebra {
        build_chevalley(&Gcm::named(name).unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (name, count) in [("A2", 3), ("B3", 9), ("C3", 9), ("G2", 6), ("F4", 24), ("D6", 30), ("E6", 36), ("E7", 63), ("E8", 120)] {
            assert_eq!(positive_roots(&Gcm::named(name).unwrap()).unwrap().len(), count, "{name}");
        }
        let affine = Gcm::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(positive_roots(&affine), Err(Error::NotFinite(_))));
    }

    #[test]
    fn highest_roots() {
        for (name, top) in [
            ("E8", vec![2, 3, 4, 6, 5, 4, 3, 2]),
            ("E7", vec![2, 2, 3, 4, 3, 2, 1]),
            ("E6", vec![1, 2, 2, 3, 2, 1]),
            ("F4", vec![2, 3, 4, 2]),
            ("G2", vec![3, 2]),
            ("B3", vec![1, 2, 2]),
            ("C3", vec![2, 2, 1]),
        ] {
            let roots = positive_roots(&Gcm::named(name).unwrap()).unwrap();
            assert_eq!(roots.last().unwrap(), &top, "{name}");
        }
    }

    #[test]
    fn a1_brackets() {
        let g = build("A1");
        let l = g.algebra();
        assert_eq!(l.dim(), 3);
        assert_eq!(l.basis_bracket(0, 1), &SparseVec::unit(2));
        assert_eq!(l.basis_bracket(2, 0), &SparseVec::single(0, Rational::from_int(2)));
        assert_eq!(l.basis_bracket(2, 1), &SparseVec::single(1, Rational::from_int(-2)));
    }

    #[test]
    fn structure_constants_are_small_integers() {
        for name in ["B3", "C3", "G2", "F4", "E6"] {
            let g = build(name);
            assert!(g.datum().n.values().all(|v| (1..=3).contains(&v.abs())), "{name}");
        }
    }

    #[test]
    fn jacobi_serre_involution_for_small_types() {
        for name in ["A1", "A2", "A3", "B2", "B3", "B4", "C2", "C3", "D4", "G2", "F4", "A5", "D6"] {
            let g = build(name);
            assert!(g.algebra().check_jacobi(CheckMode::Full, 0).passed, "{name}");
            assert!(g.check_serre(), "{name}");
            for node in 0..g.datum().rank() {
                let graded = g.graded(node).unwrap();
                assert!(graded.check_grading().unwrap().passed, "{name} node {node}");
                assert!(graded.check_graded_involution().unwrap().passed, "{name} node {node}");
            }
        }
    }

    #[test]
    fn dimensions() {
        for (name, dim) in [("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133)] {
            assert_eq!(build(name).dim(), dim);
        }
    }

    #[test]
    fn gradings() {
        let e6 = build("E6");
        let dims = e6.graded(3).unwrap().graded_dims().unwrap();
        let counts: Vec<usize> = dims.iter().map(|(_, c)| *c).collect();
        assert_eq!(counts, vec![2, 9, 18, 20, 18, 9, 2]);
        assert_eq!(e6.grading_depth(3).unwrap(), 7);
        let a5 = build("A5");
        let dims = a5.graded(2).unwrap().graded_dims().unwrap();
        assert_eq!(dims, vec![(-1, 9), (0, 17), (1, 9)]);
        let a1 = build("A1");
        assert_eq!(a1.graded(0).unwrap().graded_dims().unwrap(), vec![(-1, 1), (0, 1), (1, 1)]);
        assert!(matches!(a1.node_grading(1), Err(Error::NodeOutOfRange { node: 1, rank: 1 })));
    }

    #[test]
    fn coroot_brackets_match_long_and_short() {
        // in B2 the short root α1+α2 has coroot 2h1 + h2
        let g = build("B2");
        let rd = g.datum();
        let k = rd.root_id(&[1, 1]).unwrap();
        let h = g.algebra().basis_bracket(g.e_index(k), g.f_index(k));
        assert_eq!(h, &SparseVec::from_pairs([(g.h_index(0), Rational::from_int(2)), (g.h_index(1), Rational::from_int(1))]));
    }
}
