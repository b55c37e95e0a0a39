//! Simple Lie algebras from Cartan matrices, node gradings, and the
//! diagram-extension scheme.
//!
//! Conventions:
//! - Cartan matrices follow `a_ij = 2(α_i, α_j)/(α_i, α_i)`, so `a_ij` is the
//!   value of the coroot `α_i^∨` on `α_j`. Named types use Bourbaki node
//!   numbering (1-based in names and on the command line, 0-based in the API).
//! - The Chevalley basis is ordered `e_μ` (positive roots by height, then
//!   lexicographically), then `f_μ = e_{−μ}` in the same order, then `h_i`.
//! - A node `α` grades the algebra by `deg e_μ = −c_α(μ)`, `deg f_μ = +c_α(μ)`,
//!   so `g_{−1}` is spanned by raising-type vectors `e_μ` with `c_α(μ) = 1`.

mod gcm;
mod roots;
mod slice;
mod theorem1;

pub use gcm::{extend_diagram, classify_gcm, named_node, Gcm, GcmClass};
pub use roots::{build_chevalley, positive_roots, ChevalleyAlgebra, RootDatum};
pub use slice::{graded_slice, GradedSliceData};
pub use theorem1::{verify_theorem1, Theorem1Report};
