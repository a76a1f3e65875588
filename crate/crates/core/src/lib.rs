//! Exact computations around edgewise subdivision of simplices and the
//! relative homology of products of circle wedges modulo partial diagonals.

pub mod affine;
pub mod chains;
pub mod error;
pub mod nu;
pub mod pair;
pub mod perm;
pub mod report;
pub mod suites;
pub mod words;
pub mod zlinalg;

pub use affine::{f_map, ftilde_map, vertex_e, AffineSimplexMap, RationalPoint};
pub use chains::{boundary_chain, build_homotopy_l, div_chain, FormalChain};
pub use error::{Error, Result};
pub use nu::{
    loop_subset_check, naturality_check, nu_chain, shuffle_expand, term_to_simplex, NuEvaluator, WedgeMap,
};
pub use pair::{enumerate_basis, PairComplex, ProductSimplex, WedgeSimplex};
pub use perm::{bij, enumerate_ens, Composition, EnsElement, InvolPoint, Permutation, Sign};
pub use report::{Report, Status};
pub use suites::SuiteOutcome;
pub use words::{magnus, positivize, TruncatedTensorElement, Word, WordCombination};
pub use zlinalg::{smith_normal_form, HomologyClass, HomologySummary, IntMatrix, SmithForm};
