use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::Matrix;
use crate::scalar::Scalar;
use crate::Rational;

/// A generalized Cartan matrix with node labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gcm {
    a: Vec<Vec<i64>>,
    labels: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GcmClass {
    Finite,
    Affine,
    Hyperbolic,
    Indefinite,
}

impl fmt::Display for GcmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GcmClass::Finite => "finite",
            GcmClass::Affine => "affine",
            GcmClass::Hyperbolic => "hyperbolic",
            GcmClass::Indefinite => "indefinite",
        })
    }
}

impl Gcm {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let r = a.len();
        for (i, row) in a.iter().enumerate() {
            if row.len() != r {
                return Err(Error::InvalidGcm(format!("row {} has length {}, expected {r}", i + 1, row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 2 {
                    return Err(Error::InvalidGcm(format!("diagonal entry ({0},{0}) is {x}", i + 1)));
                }
                if i != j && x > 0 {
                    return Err(Error::InvalidGcm(format!("positive off-diagonal entry at ({},{})", i + 1, j + 1)));
                }
                if i != j && (x == 0) != (a[j][i] == 0) {
                    return Err(Error::InvalidGcm(format!("zero pattern not symmetric at ({},{})", i + 1, j + 1)));
                }
            }
        }
        let labels = (1..=r).map(|i| i.to_string()).collect();
        Ok(Gcm { a, labels })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank());
        self.labels = labels;
        self
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Gcm) -> Gcm {
        let (r, s) = (self.rank(), other.rank());
        let mut a = vec![vec![0i64; r + s]; r + s];
        for i in 0..r {
            a[i][..r].copy_from_slice(&self.a[i]);
        }
        for i in 0..s {
            a[r + i][r..].copy_from_slice(&other.a[i]);
        }
        let labels = (1..=r + s).map(|i| i.to_string()).collect();
        Gcm { a, labels }
    }

    /// Cartan matrix of a named finite type such as `A5`, `E6`, `F4`, `B3`,
    /// or a direct sum written `A2xA2`.
    pub fn named(name: &str) -> Result<Self> {
        let name = name.trim();
        if name.contains(['x', 'X']) {
            let mut parts = name.split(['x', 'X']).map(Gcm::named);
            let first = parts.next().expect("split yields a part")?;
            return parts.try_fold(first, |acc, g| Ok(acc.direct_sum(&g?)));
        }
        let bad = || Error::Parse(format!("unknown Cartan type '{name}'"));
        let family = name.chars().next().ok_or_else(bad)?.to_ascii_uppercase();
        let r: usize = name[1..].parse().map_err(|_| bad())?;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a[i - 1][j - 1] = -1;
            a[j - 1][i - 1] = -1;
        };
        match (family, r) {
            ('A', 1..) => (1..r).for_each(|i| link(&mut a, i, i + 1)),
            ('B', 2..) => {
                (1..r).for_each(|i| link(&mut a, i, i + 1));
                a[r - 1][r - 2] = -2;
            }
            ('C', 2..) => {
                (1..r).for_each(|i| link(&mut a, i, i + 1));
                a[r - 2][r - 1] = -2;
            }
            ('D', 4..) => {
                (1..r - 1).for_each(|i| link(&mut a, i, i + 1));
                link(&mut a, r - 2, r);
            }
            ('E', 6..=8) => {
                link(&mut a, 1, 3);
                (3..r).for_each(|i| link(&mut a, i, i + 1));
                link(&mut a, 2, 4);
            }
            ('F', 4) => {
                (1..4).for_each(|i| link(&mut a, i, i + 1));
                a[2][1] = -2;
            }
            ('G', 2) => {
                link(&mut a, 1, 2);
                a[0][1] = -3;
            }
            _ => return Err(bad()),
        }
        Gcm::new(a)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v.get("matrix").unwrap_or(v);
        let rows = rows.as_array().ok_or_else(|| Error::Parse("GCM json: expected an integer matrix".into()))?;
        let a: Option<Vec<Vec<i64>>> =
            rows.iter().map(|r| r.as_array().and_then(|r| r.iter().map(|x| x.as_i64()).collect())).collect();
        let g = Gcm::new(a.ok_or_else(|| Error::Parse("GCM json: entries must be integers".into()))?)?;
        match v.get("labels").and_then(|l| l.as_array()) {
            Some(l) if l.len() == g.rank() => {
                Ok(g.with_labels(l.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect()))
            }
            Some(_) => Err(Error::Parse("GCM json: label count differs from rank".into())),
            None => Ok(g),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "matrix": self.a, "labels": self.labels })
    }

    pub fn to_matrix(&self) -> Matrix<Rational> {
        Matrix::from_i64_rows(&self.a)
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| j != i && self.a[i][j] != 0)
    }

    /// Connected components of the diagram, each sorted.
    pub fn components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank()];
        let inside: Vec<bool> = (0..self.rank()).map(|i| nodes.contains(&i)).collect();
        let mut out = Vec::new();
        for &s in nodes {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(i) = q.pop_front() {
                for j in self.neighbours(i) {
                    if inside[j] && !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                        q.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.components(&all).len() <= 1
    }

    /// Integers `d_i > 0` with `d_i a_ij = d_j a_ji`, so that
    /// `(α_i, α_j) = d_i a_ij` and `(α_i, α_i) = 2 d_i`. Each component is
    /// scaled to the smallest integer solution.
    pub fn symmetrizer(&self) -> Result<Vec<i64>> {
        let r = self.rank();
        let mut d: Vec<Option<Ratio<i64>>> = vec![None; r];
        let all: Vec<usize> = (0..r).collect();
        let mut out = vec![0i64; r];
        for comp in self.components(&all) {
            d[comp[0]] = Some(Ratio::from_integer(1));
            let mut q = VecDeque::from([comp[0]]);
            while let Some(i) = q.pop_front() {
                let di = d[i].unwrap();
                for j in self.neighbours(i) {
                    let want = di * Ratio::new(self.a[i][j], self.a[j][i]);
                    match d[j] {
                        None => {
                            d[j] = Some(want);
                            q.push_back(j);
                        }
                        Some(x) if x != want => {
                            return Err(Error::InvalidGcm("matrix is not symmetrizable".into()));
                        }
                        _ => {}
                    }
                }
            }
            let lcm = comp.iter().fold(1i64, |l, &i| num_integer::lcm(l, *d[i].unwrap().denom()));
            let ints: Vec<i64> = comp.iter().map(|&i| (d[i].unwrap() * lcm).to_integer()).collect();
            let g = ints.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            for (&i, x) in comp.iter().zip(ints) {
                out[i] = x / g;
            }
        }
        Ok(out)
    }

    pub fn principal_minor(&self, idx: &[usize]) -> Rational {
        self.to_matrix().principal_submatrix(idx).determinant()
    }

    /// Node permutation `p` with `self[p(i)][p(j)] = other[i][j]`, if any.
    pub fn isomorphism_to(&self, other: &Gcm) -> Option<Vec<usize>> {
        let r = self.rank();
        if other.rank() != r {
            return None;
        }
        let sig = |g: &Gcm, i: usize| {
            let mut row: Vec<(i64, i64)> = (0..r).filter(|&j| j != i).map(|j| (g.a[i][j], g.a[j][i])).collect();
            row.sort_unstable();
            row
        };
        let sa: Vec<_> = (0..r).map(|i| sig(self, i)).collect();
        let sb: Vec<_> = (0..r).map(|i| sig(other, i)).collect();
        let mut perm = vec![usize::MAX; r];
        let mut used = vec![false; r];
        fn go(
            i: usize,
            a: &Gcm,
            b: &Gcm,
            sa: &[Vec<(i64, i64)>],
            sb: &[Vec<(i64, i64)>],
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let r = a.rank();
            if i == r {
                return true;
            }
            for c in 0..r {
                if used[c] || sa[c] != sb[i] {
                    continue;
                }
                if (0..i).all(|j| a.a[c][perm[j]] == b.a[i][j] && a.a[perm[j]][c] == b.a[j][i]) {
                    perm[i] = c;
                    used[c] = true;
                    if go(i + 1, a, b, sa, sb, perm, used) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            false
        }
        go(0, self, other, &sa, &sb, &mut perm, &mut used).then_some(perm)
    }

    /// Name of the finite type this matrix is isomorphic to (connected only).
    pub fn identify(&self) -> Option<String> {
        let r = self.rank();
        if r == 0 || !self.is_connected() {
            return None;
        }
        let mut names: Vec<String> = Vec::new();
        for fam in ["A", "B", "C", "D", "E", "F", "G"] {
            names.push(format!("{fam}{r}"));
        }
        names.into_iter().find(|n| Gcm::named(n).ok().and_then(|g| self.isomorphism_to(&g)).is_some())
    }
}

/// Finite: all principal minors positive. Affine: connected, `det = 0`,
/// corank 1, all proper principal minors positive. Hyperbolic: connected,
/// neither of those, and every connected piece left after deleting any one
/// node is finite or affine.
pub fn classify_gcm(g: &Gcm) -> GcmClass {
    let r = g.rank();
    let all: Vec<usize> = (0..r).collect();
    let proper_positive = |nodes: &[usize]| {
        let k = nodes.len();
        (1u64..(1u64 << k)).filter(|m| m.count_ones() < k as u32).all(|m| {
            let idx: Vec<usize> = (0..k).filter(|b| m >> b & 1 == 1).map(|b| nodes[b]).collect();
            g.principal_minor(&idx) > Rational::from_int(0)
        })
    };
    let det_sign = |nodes: &[usize]| g.principal_minor(nodes);
    let is_finite = |nodes: &[usize]| proper_positive(nodes) && det_sign(nodes) > Rational::from_int(0);
    let is_affine = |nodes: &[usize]| {
        let sub = Gcm::new(nodes.iter().map(|&i| nodes.iter().map(|&j| g.a[i][j]).collect()).collect()).unwrap();
        sub.is_connected()
            && proper_positive(nodes)
            && det_sign(nodes) == Rational::from_int(0)
            && sub.to_matrix().rank() + 1 == nodes.len()
    };
    if is_finite(&all) {
        return GcmClass::Finite;
    }
    if is_affine(&all) {
        return GcmClass::Affine;
    }
    if !g.is_connected() {
        return GcmClass::Indefinite;
    }
    let hyper = (0..r).all(|del| {
        let rest: Vec<usize> = (0..r).filter(|&i| i != del).collect();
        g.components(&rest).iter().all(|c| is_finite(c) || is_affine(c))
    });
    if hyper {
        GcmClass::Hyperbolic
    } else {
        GcmClass::Indefinite
    }
}

/// Appends a chain of `n − 1` new nodes to `black`. The new nodes get
/// indices `r, …, r + n − 2`; the last of them is joined to `black`, so the
/// chain reads `r - r+1 - … - r+n−2 - black`. Every new link is simply
/// laced (`−1` both ways). `n = 1` returns a copy.
pub fn extend_diagram(h: &Gcm, black: usize, n: usize) -> Result<Gcm> {
    let r = h.rank();
    if black >= r {
        return Err(Error::NodeOutOfRange { node: black, rank: r });
    }
    if n == 0 {
        return Err(Error::InvalidGcm("extension needs n >= 1".into()));
    }
    let m = r + n - 1;
    let mut a = vec![vec![0i64; m]; m];
    for i in 0..r {
        a[i][..r].copy_from_slice(&h.a[i]);
    }
    for i in r..m {
        a[i][i] = 2;
        let next = if i + 1 < m { i + 1 } else { black };
        a[i][next] = -1;
        a[next][i] = -1;
    }
    let mut labels = h.labels.clone();
    labels.extend((1..n).map(|k| format!("c{k}")));
    Ok(Gcm::new(a)?.with_labels(labels))
}

/// Resolves a node name for a named type to a 0-based index. Accepts a
/// 1-based number or one of: `black` (the node generating the 3-grading of
/// the conformal-row algebra, or the black node of a last-row algebra),
/// `ext-black` (E7 viewed as a last-row algebra), `middle`, `end`,
/// `vector`, `spinor`, `trivalent`.
pub fn named_node(type_name: &str, node: &str) -> Result<usize> {
    let g = Gcm::named(type_name)?;
    let r = g.rank();
    let fam = type_name.trim().chars().next().unwrap().to_ascii_uppercase();
    if let Ok(k) = node.trim().parse::<usize>() {
        return if (1..=r).contains(&k) { Ok(k - 1) } else { Err(Error::NodeOutOfRange { node: k, rank: r }) };
    }
    let one_based = match (node.trim().to_ascii_lowercase().as_str(), fam, r) {
        ("end", _, _) => Some(1),
        ("middle", 'A', r) if r % 2 == 1 => Some(r.div_ceil(2)),
        ("vector", 'B' | 'D', _) => Some(1),
        ("spinor", 'B' | 'D', r) => Some(r),
        ("trivalent", 'D', r) => Some(r - 2),
        ("trivalent", 'E', _) => Some(4),
        ("black", 'A', r) if r % 2 == 1 => Some(r.div_ceil(2)),
        ("black", 'C', r) => Some(r),
        ("black", 'D', r) => Some(r),
        ("black", 'B', _) => Some(1),
        ("black", 'E', 6) => Some(4),
        ("black", 'E', 7) => Some(7),
        ("black", 'E', 8) => Some(7),
        ("black", 'F', 4) => Some(2),
        ("ext-black", 'E', 7) => Some(3),
        _ => None,
    };
    one_based.map(|k| k - 1).ok_or_else(|| Error::Parse(format!("no node named '{node}' for {type_name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_matrices() {
        assert_eq!(Gcm::named("A2").unwrap().rows(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(Gcm::named("B2").unwrap().rows(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(Gcm::named("C2").unwrap().rows(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(Gcm::named("G2").unwrap().rows(), &[vec![2, -3], vec![-1, 2]]);
        let e8 = Gcm::named("E8").unwrap();
        assert_eq!(e8.get(1, 3), -1);
        assert_eq!(e8.get(0, 2), -1);
        assert_eq!(e8.get(0, 1), 0);
        assert!(Gcm::named("E9").is_err());
        assert!(Gcm::named("D3").is_err());
        let s = Gcm::named("A2xA1").unwrap();
        assert_eq!(s.rows(), &[vec![2, -1, 0], vec![-1, 2, 0], vec![0, 0, 2]]);
        assert!(!s.is_connected());
    }

    #[test]
    fn determinants() {
        for (name, det) in [("A5", 6), ("B3", 2), ("C3", 2), ("D6", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1)] {
            let g = Gcm::named(name).unwrap();
            assert_eq!(g.to_matrix().determinant(), Rational::from_integer(det.into()), "{name}");
        }
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(Gcm::named("B3").unwrap().symmetrizer().unwrap(), vec![2, 2, 1]);
        assert_eq!(Gcm::named("C3").unwrap().symmetrizer().unwrap(), vec![1, 1, 2]);
        assert_eq!(Gcm::named("F4").unwrap().symmetrizer().unwrap(), vec![2, 2, 1, 1]);
        assert_eq!(Gcm::named("G2").unwrap().symmetrizer().unwrap(), vec![1, 3]);
    }

    #[test]
    fn axioms_are_enforced() {
        assert!(Gcm::new(vec![vec![2, 1], vec![-1, 2]]).is_err());
        assert!(Gcm::new(vec![vec![2, 0], vec![-1, 2]]).is_err());
        assert!(Gcm::new(vec![vec![1]]).is_err());
        assert!(Gcm::new(vec![vec![2, -1]]).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_gcm(&Gcm::named("A2").unwrap()), GcmClass::Finite);
        let affine_a1 = Gcm::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(classify_gcm(&affine_a1), GcmClass::Affine);
        let hyper = Gcm::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert_eq!(classify_gcm(&hyper), GcmClass::Hyperbolic);
        // a triangle of double links: every rank-2 piece is affine
        let tri = Gcm::new(vec![vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]]).unwrap();
        assert_eq!(classify_gcm(&tri), GcmClass::Hyperbolic);
        // A1^(1) with a long tail is neither
        let tail = Gcm::new(vec![
            vec![2, -2, 0, 0],
            vec![-2, 2, -1, 0],
            vec![0, -1, 2, -3],
            vec![0, 0, -3, 2],
        ])
        .unwrap();
        assert_eq!(classify_gcm(&tail), GcmClass::Indefinite);
    }

    #[test]
    fn extension_examples() {
        let a5 = Gcm::named("A5").unwrap();
        let e6 = extend_diagram(&a5, named_node("A5", "middle").unwrap(), 2).unwrap();
        assert_eq!(e6.identify().as_deref(), Some("E6"));
        let b2 = Gcm::named("B2").unwrap();
        let b3 = extend_diagram(&b2, 0, 2).unwrap();
        assert_eq!(b3.identify().as_deref(), Some("B3"));
        assert_eq!(extend_diagram(&a5, 2, 1).unwrap().rows(), a5.rows());
        assert_eq!(extend_diagram(&a5, 7, 2).unwrap_err(), Error::NodeOutOfRange { node: 7, rank: 5 });
    }

    #[test]
    fn magic_square_extensions() {
        let rows = [("C3", "F4"), ("A5", "E6"), ("D6", "E7"), ("E7", "E8")];
        for (h, g) in rows {
            let black = named_node(h, "black").unwrap();
            let hg = Gcm::named(h).unwrap();
            let ext = extend_diagram(&hg, black, 2).unwrap();
            assert_eq!(ext.identify().as_deref(), Some(g), "{h}");
            assert_eq!(classify_gcm(&extend_diagram(&hg, black, 3).unwrap()), GcmClass::Affine, "{h}");
            assert_eq!(classify_gcm(&extend_diagram(&hg, black, 4).unwrap()), GcmClass::Hyperbolic, "{h}");
        }
    }

    #[test]
    fn isomorphism_respects_orientation() {
        let b3 = Gcm::named("B3").unwrap();
        let c3 = Gcm::named("C3").unwrap();
        assert!(b3.isomorphism_to(&c3).is_none());
        let rev = Gcm::new(vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap();
        assert_eq!(rev.isomorphism_to(&b3), Some(vec![2, 1, 0]));
    }

    #[test]
    fn json_round_trip() {
        let g = Gcm::named("F4").unwrap();
        assert_eq!(Gcm::from_json(&g.to_json()).unwrap(), g);
        let bare = serde_json::json!([[2, -1], [-1, 2]]);
        assert_eq!(Gcm::from_json(&bare).unwrap(), Gcm::named("A2").unwrap());
    }

    #[test]
    fn node_names() {
        assert_eq!(named_node("E7", "black").unwrap(), 6);
        assert_eq!(named_node("E7", "ext-black").unwrap(), 2);
        assert_eq!(named_node("D6", "black").unwrap(), 5);
        assert_eq!(named_node("A5", "3").unwrap(), 2);
        assert!(named_node("A5", "9").is_err());
        assert!(named_node("G2", "spinor").is_err());
    }
}
