//! Exact linear algebra over any [`Scalar`](crate::Scalar) field.
//!
//! Dense [`Matrix`] covers the small systems (Cartan matrices, basis
//! changes); [`SparseVec`], [`SparseMatrix`] and the incremental [`Echelon`]
//! basis carry the large structure-constant computations.

mod echelon;
mod matrix;
mod sparse;

pub use echelon::Echelon;
pub use matrix::{Matrix, Solution};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};

use crate::scalar::Scalar;

pub fn mat_rank<T: Scalar>(m: &Matrix<T>) -> usize {
    m.rank()
}

pub fn mat_kernel<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    m.kernel()
}

pub fn mat_solve<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Solution<T> {
    m.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{RatMatrix, Rational};
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |xs| {
                RatMatrix::from_rows(
                    xs.chunks(c).map(|row| row.iter().map(|x| Rational::from_int(*x)).collect()).collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = mat_kernel(&m);
            prop_assert_eq!(mat_rank(&m) + k.len(), m.ncols());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|x| *x == Rational::from_int(0)));
            }
            let km = RatMatrix::from_rows(k.clone());
            if !k.is_empty() {
                prop_assert_eq!(km.rank(), k.len());
            }
        }

        #[test]
        fn solve_reproduces_rhs(m in small_matrix(), seed in proptest::collection::vec(-3i64..=3, 6)) {
            let x0: Vec<Rational> = seed.iter().take(m.ncols()).map(|x| Rational::from_int(*x)).collect();
            let b = m.mul_vec(&x0);
            match mat_solve(&m, &b) {
                Solution::Consistent { x, kernel_dim } => {
                    prop_assert_eq!(m.mul_vec(&x), b);
                    prop_assert_eq!(kernel_dim, m.ncols() - m.rank());
                }
                Solution::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }

        #[test]
        fn field_inverse(n in -50i64..50, d in 1i64..50) {
            prop_assume!(n != 0);
            let a = Rational::from_frac(n, d);
            prop_assert_eq!(a.mul_ref(&a.inv()), Rational::from_int(1));
        }
    }
}
