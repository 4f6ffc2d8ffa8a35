//! The LCS estimation pipeline and its subsampling wrapper.
//!
//! [`estimate_lcs`] runs four steps: index `y` by symbol, compute the match
//! count `|z|` and the bound `d = |z| / (|x| + |y|)`, hand `z` and
//! `λ = d / (n log₂ n)` to a block-LIS solver, and report the larger of
//! `⌈d⌉` and the solver output. With a solver that never overestimates the
//! report never exceeds the LCS; with an `(f, λn)` solver it is at least
//! `LCS / f - d / log₂ n`, which `⌈d⌉` covers whenever that slack matters.
//!
//! [`approximate_lcs`] first keeps each index independently with a fixed
//! probability (one shared index set for both strings) and estimates on the
//! restricted pair. The result is not rescaled.

use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::counts::match_lower_bound_d;
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::reduction::{build_block_sequence, build_occurrence_index};
use crate::sequence::Sequence;
use crate::solver::SolverSpec;

/// How the additive parameter `λ` is derived from `d` and `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum LambdaPolicy {
    /// `λ = d / (n · log₂ n)` with `n = max(|x|, |y|)`; `log₂ n` is
    /// clamped to at least 1 so that `n = 1` stays finite.
    #[default]
    MatchBoundOverNLogN,
    /// A constant `λ`, used as-is when `d > 0`.
    Fixed(f64),
}

impl LambdaPolicy {
    pub fn lambda(&self, d: Ratio, n: usize) -> f64 {
        if d.is_zero() {
            return 0.0;
        }
        match *self {
            LambdaPolicy::MatchBoundOverNLogN => {
                let n = n.max(1) as f64;
                d.as_f64() / (n * n.log2().max(1.0))
            }
            LambdaPolicy::Fixed(l) => l.max(0.0),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EstimatorParams {
    pub lambda_policy: LambdaPolicy,
    /// Sampling probability in `(0, 1]`.
    pub subsample_rate: Ratio,
    pub seed: u64,
}

impl Default for EstimatorParams {
    fn default() -> Self {
        EstimatorParams {
            lambda_policy: LambdaPolicy::default(),
            subsample_rate: Ratio::ONE,
            seed: 0,
        }
    }
}

/// Wall time per stage, in nanoseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTimings {
    pub subsample_ns: u64,
    pub index_ns: u64,
    pub bound_ns: u64,
    pub solve_ns: u64,
    pub total_ns: u64,
}

fn nanos(d: Duration) -> u64 {
    d.as_nanos().min(u64::MAX as u128) as u64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LcsEstimate {
    /// Lengths of the strings the pipeline actually ran on.
    pub n_x: usize,
    pub n_y: usize,
    pub match_count: u64,
    pub d: Ratio,
    pub d_ceil: u64,
    pub lambda: f64,
    pub solver: String,
    pub solver_output: u64,
    pub solver_skipped: bool,
    pub estimate: u64,
    pub subsample_rate: Ratio,
    /// `|U|`; absent when no index set was drawn.
    pub sample_size: Option<usize>,
    pub seed: u64,
    pub timings: StageTimings,
}

impl LcsEstimate {
    /// Copy with all timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> LcsEstimate {
        LcsEstimate {
            timings: StageTimings::default(),
            ..self.clone()
        }
    }
}

pub fn estimate_lcs(
    x: &Sequence,
    y: &Sequence,
    solver: &SolverSpec,
    params: &EstimatorParams,
) -> Result<LcsEstimate> {
    let start = Instant::now();

    let idx = build_occurrence_index(y);
    let z = build_block_sequence(x, &idx);
    let index_done = Instant::now();

    let d =
        match_lower_bound_d(z.match_count(), x.len(), y.len()).map_err(|e| stage("bound", e))?;
    let d_ceil = d.ceil();
    let lambda = params.lambda_policy.lambda(d, x.len().max(y.len()));
    let bound_done = Instant::now();

    let skipped = z.match_count() == 0;
    let solver_output = if skipped {
        0
    } else {
        solver.solve(&z, lambda).map_err(|e| stage("solve", e))?
    };
    let solve_done = Instant::now();

    Ok(LcsEstimate {
        n_x: x.len(),
        n_y: y.len(),
        match_count: z.match_count(),
        d,
        d_ceil,
        lambda,
        solver: solver.name().to_owned(),
        solver_output,
        solver_skipped: skipped,
        estimate: d_ceil.max(solver_output),
        subsample_rate: Ratio::ONE,
        sample_size: None,
        seed: params.seed,
        timings: StageTimings {
            subsample_ns: 0,
            index_ns: nanos(index_done - start),
            bound_ns: nanos(bound_done - index_done),
            solve_ns: nanos(solve_done - bound_done),
            total_ns: nanos(solve_done - start),
        },
    })
}

fn stage(stage: &'static str, e: Error) -> Error {
    Error::Stage {
        stage,
        source: Box::new(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsample {
    pub x: Sequence,
    pub y: Sequence,
    /// The kept index set `U`, ascending.
    pub kept: Vec<usize>,
}

/// Keeps each index `i < n` independently with probability `rate`.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
/// Index `i` consumes the `i`-th 64-bit output `r` and is kept iff
/// `r < ⌊rate · 2⁶⁴⌋`, computed exactly from the rational rate; rate 1
/// keeps every index. The result depends only on `(rate, seed, n)`.
pub fn subsample_pair(x: &Sequence, y: &Sequence, rate: Ratio, seed: u64) -> Result<Subsample> {
    if !rate.is_probability() {
        return Err(Error::invalid(format!(
            "subsample rate {rate} is not in (0, 1]"
        )));
    }
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "subsampling draws one index set for both strings but the lengths differ \
             ({} vs {}); pad the inputs or use rate 1",
            x.len(),
            y.len()
        )));
    }
    let threshold = ((rate.num as u128) << 64) / rate.den as u128;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kept: Vec<usize> = (0..x.len())
        .filter(|_| (rng.next_u64() as u128) < threshold)
        .collect();
    Ok(Subsample {
        x: x.restrict(&kept),
        y: y.restrict(&kept),
        kept,
    })
}

/// Subsample with `params.subsample_rate`, then [`estimate_lcs`].
pub fn approximate_lcs(
    x: &Sequence,
    y: &Sequence,
    solver: &SolverSpec,
    params: &EstimatorParams,
) -> Result<LcsEstimate> {
    let rate = params.subsample_rate;
    if rate.is_one() && x.len() != y.len() {
        let mut est = estimate_lcs(x, y, solver, params)?;
        est.subsample_rate = rate;
        return Ok(est);
    }
    let start = Instant::now();
    let sample = subsample_pair(x, y, rate, params.seed)?;
    let sampled = start.elapsed();
    let mut est = estimate_lcs(&sample.x, &sample.y, solver, params)?;
    est.subsample_rate = rate;
    est.sample_size = Some(sample.kept.len());
    est.timings.subsample_ns = nanos(sampled);
    est.timings.total_ns += nanos(sampled);
    Ok(est)
}
