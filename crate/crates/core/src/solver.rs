//! Exact block-restricted LIS and the solver contract.
//!
//! [`exact_block_lis`] keeps the patience tails array: `tails[t]` is the
//! smallest value that ends a strictly increasing selection of length `t + 1`
//! seen so far. The array is strictly increasing, so each value is placed by a
//! binary search. Values of one block are fed in decreasing order, which
//! prevents two values of the same block from chaining: when a smaller value
//! of block `i` is placed, every tail below it was set by an earlier block.
//! Total work is `O(|z| log ℓ)` where `ℓ` is the answer.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reduction::BlockSequence;
use crate::sequence::Sequence;

/// A monotone set of `(block_index, value)` pairs. Under the LCS reduction
/// these are `(i, j)` with `x[i] == y[j]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Certificate {
    pairs: Vec<(usize, usize)>,
}

impl Certificate {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Certificate { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Both coordinates strictly increase along the list. This also rules
    /// out two pairs from one block.
    pub fn is_monotone(&self) -> bool {
        self.pairs
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
    }
}

const NO_PRED: usize = usize::MAX;

struct Node {
    block: usize,
    value: usize,
    pred: usize,
}

/// Length of the longest strictly increasing selection taking at most one
/// value per block, with an optional witness.
pub fn exact_block_lis(
    z: &BlockSequence,
    want_certificate: bool,
) -> Result<(usize, Option<Certificate>)> {
    let mut tails: Vec<usize> = Vec::new();
    // Parallel to `tails` when a certificate is requested.
    let mut tail_nodes: Vec<usize> = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();

    for (i, block) in z.blocks().enumerate() {
        let mut upper: Option<usize> = None;
        for &v in block.iter().rev() {
            if let Some(u) = upper.filter(|&u| v >= u) {
                return Err(Error::invalid(format!(
                    "block {i} is not strictly increasing ({v} then {u})"
                )));
            }
            upper = Some(v);
            let t = tails.partition_point(|&tail| tail < v);
            if t < tails.len() && tails[t] == v {
                continue;
            }
            if t == tails.len() {
                tails.push(v);
            } else {
                tails[t] = v;
            }
            if want_certificate {
                let pred = if t > 0 { tail_nodes[t - 1] } else { NO_PRED };
                nodes.push(Node {
                    block: i,
                    value: v,
                    pred,
                });
                let id = nodes.len() - 1;
                if t == tail_nodes.len() {
                    tail_nodes.push(id);
                } else {
                    tail_nodes[t] = id;
                }
            }
        }
    }

    let certificate = want_certificate.then(|| {
        let mut pairs = Vec::with_capacity(tails.len());
        let mut cur = tail_nodes.last().copied().unwrap_or(NO_PRED);
        while cur != NO_PRED {
            let node = &nodes[cur];
            pairs.push((node.block, node.value));
            cur = node.pred;
        }
        pairs.reverse();
        Certificate { pairs }
    });
    Ok((tails.len(), certificate))
}

/// Checks that `cert` witnesses a common subsequence of `x` and `y` of
/// exactly `claimed` symbols.
pub fn verify_certificate(x: &Sequence, y: &Sequence, cert: &Certificate, claimed: usize) -> bool {
    cert.len() == claimed
        && cert.is_monotone()
        && cert
            .pairs()
            .iter()
            .all(|&(i, j)| i < x.len() && j < y.len() && x[i] == y[j])
}

type SolveFn = dyn Fn(&BlockSequence, f64) -> Result<u64> + Send + Sync;

/// A block-LIS solver together with the approximation guarantee it claims.
///
/// For an input with true value `q`, `n` blocks and additive parameter `λ`,
/// the output must lie in `[q / alpha - additive_budget · λ · n, q]`.
/// `additive_budget` is therefore the slack in units of `λn`: 1 for a
/// `(α, λn)` solver, 0 for an exact one.
#[derive(Clone)]
pub struct SolverSpec {
    name: String,
    alpha: f64,
    additive_budget: f64,
    solve: Arc<SolveFn>,
}

impl SolverSpec {
    pub fn new<F>(name: impl Into<String>, alpha: f64, additive_budget: f64, solve: F) -> Self
    where
        F: Fn(&BlockSequence, f64) -> Result<u64> + Send + Sync + 'static,
    {
        assert!(alpha >= 1.0, "alpha must be at least 1");
        assert!(
            additive_budget >= 0.0,
            "additive budget must be non-negative"
        );
        SolverSpec {
            name: name.into(),
            alpha,
            additive_budget,
            solve: Arc::new(solve),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn additive_budget(&self) -> f64 {
        self.additive_budget
    }

    pub fn solve(&self, z: &BlockSequence, lambda: f64) -> Result<u64> {
        (self.solve)(z, lambda)
    }

    /// Whether `output` is inside the promised window around `truth`.
    pub fn admits(&self, truth: u64, output: u64, lambda: f64, n: usize) -> bool {
        let floor = truth as f64 / self.alpha - self.additive_budget * lambda * n as f64;
        output <= truth && output as f64 >= floor - 1e-9
    }
}

impl fmt::Debug for SolverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolverSpec")
            .field("name", &self.name)
            .field("alpha", &self.alpha)
            .field("additive_budget", &self.additive_budget)
            .finish_non_exhaustive()
    }
}

/// [`exact_block_lis`] as a `(1, 0)` solver; `λ` is ignored.
pub fn exact_solver_spec() -> SolverSpec {
    SolverSpec::new("exact", 1.0, 0.0, |z, _lambda| {
        exact_block_lis(z, false).map(|(len, _)| len as u64)
    })
}
