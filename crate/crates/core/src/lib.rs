//! Exact and estimated longest common subsequence through a reduction to
//! block-restricted longest increasing subsequence.
//!
//! For strings `x` and `y`, block `i` of the block sequence `z` lists the
//! positions of `y` holding the symbol `x[i]`. A strictly increasing
//! selection with at most one value per block is exactly a common
//! subsequence, so solving that problem solves LCS. The crate provides:
//!
//! - [`counts`]: count vectors and the match-count lower bound
//!   `LCS(x, y) >= |z| / (|x| + |y|)`;
//! - [`reduction`]: the occurrence index and block sequence;
//! - [`solver`]: an exact `O(|z| log ℓ)` block-LIS solver, certificates and
//!   the approximate-solver contract [`SolverSpec`];
//! - [`estimator`]: the estimation pipeline and i.i.d. subsampling;
//! - [`dp`]: the quadratic dynamic program used as ground truth;
//! - [`workbench`]: instance generators and the benchmark runner;
//! - [`cli`]: the `blocklis` command-line front end and its report format.
//!
//! ```
//! use blocklis::{build_block_sequence, build_occurrence_index, exact_block_lis, Sequence};
//!
//! let x = Sequence::from("abcabc");
//! let y = Sequence::from("cbacba");
//! let z = build_block_sequence(&x, &build_occurrence_index(&y));
//! let (len, _) = exact_block_lis(&z, false).unwrap();
//! assert_eq!(len, 3);
//! ```

pub mod cli;
pub mod counts;
pub mod dp;
mod error;
pub mod estimator;
pub mod ratio;
pub mod reduction;
pub mod report;
pub mod sequence;
pub mod solver;
pub mod workbench;

pub use counts::{
    count_vector, holder_bound, inner_product, match_lower_bound_d, min_count_lower_bound,
    CountVector,
};
pub use dp::{dp_lcs, dp_lcs_certificate, DpTable, DEFAULT_DP_GUARD};
pub use error::{Error, Result};
pub use estimator::{
    approximate_lcs, estimate_lcs, subsample_pair, EstimatorParams, LambdaPolicy, LcsEstimate,
};
pub use ratio::Ratio;
pub use reduction::{
    build_block_sequence, build_occurrence_index, match_count, BlockSequence, OccurrenceIndex,
};
pub use sequence::{InputMode, Sequence, Symbol};
pub use solver::{exact_block_lis, exact_solver_spec, verify_certificate, Certificate, SolverSpec};
pub use workbench::{generate, run_suite, BenchRecord, FamilyKind, InstanceFamily, Method};
