use rayon::prelude::*;

use super::roots::ChevalleyAlgebra;
use crate::error::Result;
use crate::exactnum::{Matrix, SparseMatrix, SparseVec};
use crate::scalar::Scalar;
use crate::triplesys::{tensor_from_product, TripleTensor};
use crate::Rational;

/// The degree −1 subspace for a node grading as a triple system
/// `(uvw) = [[u, τ(v)], w]`, with its bilinear form.
#[derive(Clone, Debug)]
pub struct GradedSliceData {
    pub node: usize,
    /// Positive-root ids spanning `g_{−1}` (the `e_μ` with `c_node(μ) = 1`).
    pub roots: Vec<usize>,
    pub coefficients: Vec<Vec<i64>>,
    pub triple: TripleTensor<Rational>,
    /// `B(x, y) = κ(x, τ y) / κ(e_α, f_α)` with `α` the node's simple root.
    pub form: Matrix<Rational>,
}

impl GradedSliceData {
    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    /// `(e_μ, τ(f_ν))`, i.e. `−B(e_μ, e_ν)`.
    pub fn pairing(&self) -> Matrix<Rational> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, self.form.get(i, j).neg_ref());
            }
        }
        m
    }
}

fn killing_entry(ad_x: &SparseMatrix<Rational>, ad_y: &SparseMatrix<Rational>) -> Rational {
    let mut acc = Rational::from_int(0);
    for l in 0..ad_x.size() {
        for (k, a) in ad_x.row(l).iter() {
            if let Some(b) = ad_y.row(*k).get(l) {
                acc.add_product(a, b);
            }
        }
    }
    acc
}

pub fn graded_slice(ch: &ChevalleyAlgebra, node: usize) -> Result<GradedSliceData> {
    let grading = ch.node_grading(node)?;
    let rd = ch.datum();
    let alg = ch.algebra();
    let roots: Vec<usize> = (0..rd.num_positive()).filter(|&k| grading[ch.e_index(k)] == -1).collect();
    let d = roots.len();
    let pos: Vec<usize> = roots.iter().map(|&k| ch.e_index(k)).collect();
    let mut local = vec![usize::MAX; alg.dim()];
    for (a, &b) in pos.iter().enumerate() {
        local[b] = a;
    }
    let tau = ch.chevalley_involution();
    let tau_of = |b: usize| SparseVec::from_dense(&tau.column(b));
    let tau_pos: Vec<SparseVec<Rational>> = pos.iter().map(|&b| tau_of(b)).collect();
    let triple = tensor_from_product(d, |u, v, w| {
        let inner = alg.bracket(&SparseVec::unit(pos[u]), &tau_pos[v]);
        let out = alg.bracket(&inner, &SparseVec::unit(pos[w]));
        Ok(out.map_indices(|i| local[i]))
    })
    .expect("degree -1 is closed under the triple product");
    let labels = pos.iter().map(|&b| alg.label(b)).collect();
    let triple = triple.with_labels(labels);

    let mut simple = vec![0; rd.rank()];
    simple[node] = 1;
    let s = rd.root_id(&simple).expect("simple root");
    let norm = killing_entry(&alg.ad_basis(ch.e_index(s)), &alg.ad_basis(ch.f_index(s)));
    let ads: Vec<SparseMatrix<Rational>> = pos.par_iter().map(|&b| alg.ad_basis(b)).collect();
    let ad_tau: Vec<SparseMatrix<Rational>> = tau_pos
        .par_iter()
        .map(|v| {
            let mut m = SparseMatrix::zeros(alg.dim());
            for (b, c) in v.iter() {
                m = m.add(&alg.ad_basis(*b).scaled(c));
            }
            m
        })
        .collect();
    let rows: Vec<Vec<Rational>> = (0..d)
        .into_par_iter()
        .map(|i| (0..d).map(|j| killing_entry(&ads[i], &ad_tau[j]).div_ref(&norm)).collect())
        .collect();
    Ok(GradedSliceData {
        node,
        coefficients: roots.iter().map(|&k| rd.root(k)).collect(),
        roots,
        triple,
        form: Matrix::from_rows(rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{build_chevalley, named_node, Gcm};
    use crate::sampling::CheckMode;

    fn slice(name: &str, node: &str) -> GradedSliceData {
        let g = build_chevalley(&Gcm::named(name).unwrap()).unwrap();
        graded_slice(&g, named_node(name, node).unwrap()).unwrap()
    }

    #[test]
    fn a5_middle_is_a_jordan_triple_system() {
        let s = slice("A5", "middle");
        assert_eq!(s.dim(), 9);
        assert!(s.triple.check_outer_symmetry().symmetric);
        assert!(s.triple.check_gjts(CheckMode::Sampled(20_000), 1).passed);
        assert_eq!(s.pairing(), Matrix::identity(9));
    }

    #[test]
    fn a1_slice_values() {
        let s = slice("A1", "1");
        assert_eq!(s.triple.entry(0, 0, 0, 0), Rational::from_int(-2));
        assert_eq!(s.form.get(0, 0), &Rational::from_int(-1));
    }

    #[test]
    fn e6_trivalent_is_generalized_but_not_symmetric() {
        let s = slice("E6", "trivalent");
        assert_eq!(s.dim(), 18);
        assert!(!s.triple.check_outer_symmetry().symmetric);
        assert!(s.triple.check_gjts(CheckMode::Sampled(20_000), 2).passed);
        assert_eq!(s.pairing(), Matrix::identity(18));
    }

    #[test]
    fn short_roots_scale_the_pairing() {
        // B3 at its first (long) node: the short roots α1+α2+α3 pair to 2
        let s = slice("B3", "vector");
        assert_eq!(s.dim(), 5);
        for (i, c) in s.coefficients.iter().enumerate() {
            let short = c == &vec![1, 1, 1];
            let want = Rational::from_int(if short { 2 } else { 1 });
            assert_eq!(s.pairing().get(i, i), &want, "{c:?}");
        }
    }
}
