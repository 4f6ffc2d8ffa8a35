//! Instance generators and the benchmark suite runner.
//!
//! A suite is a list of instance families, each paired with the methods to
//! run on it. Every `(family, method)` combination is one cell and yields one
//! [`BenchRecord`]. Cells are independent and seeded, so the records do not
//! depend on how many worker threads run them.

use std::io::Write;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counts::{count_vector, inner_product, match_lower_bound_d, min_count_lower_bound};
use crate::dp::{dp_lcs_guarded, DEFAULT_DP_GUARD};
use crate::error::{Error, Result};
use crate::estimator::{approximate_lcs, EstimatorParams};
use crate::ratio::Ratio;
use crate::reduction::{build_block_sequence, build_occurrence_index};
use crate::sequence::Sequence;
use crate::solver::{exact_block_lis, exact_solver_spec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Both strings i.i.d. uniform over `sigma` symbols.
    Random,
    /// Two independent permutations of `n` distinct symbols.
    Permutation,
    /// A shared random string of length `planted_len` embedded in noise
    /// drawn from two alphabets disjoint from it and from each other.
    Planted,
    /// One symbol repeated `n` times, in both strings.
    Repeated,
}

fn default_sigma() -> u32 {
    4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFamily {
    pub kind: FamilyKind,
    pub n: usize,
    #[serde(default = "default_sigma")]
    pub sigma: u32,
    #[serde(default)]
    pub planted_len: usize,
    #[serde(default)]
    pub seed: u64,
}

impl InstanceFamily {
    pub fn new(kind: FamilyKind, n: usize) -> Self {
        InstanceFamily {
            kind,
            n,
            sigma: default_sigma(),
            planted_len: 0,
            seed: 0,
        }
    }

    pub fn sigma(mut self, sigma: u32) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn planted_len(mut self, len: usize) -> Self {
        self.planted_len = len;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma == 0 {
            return Err(Error::InvalidFamily("sigma must be at least 1".into()));
        }
        if self.kind == FamilyKind::Planted {
            if self.planted_len > self.n {
                return Err(Error::InvalidFamily(format!(
                    "planted_len {} exceeds n {}",
                    self.planted_len, self.n
                )));
            }
            if self.sigma > u32::MAX / 3 {
                return Err(Error::InvalidFamily(format!(
                    "sigma {} too large for three disjoint alphabets",
                    self.sigma
                )));
            }
        }
        if self.kind == FamilyKind::Permutation && self.n > u32::MAX as usize {
            return Err(Error::InvalidFamily(format!(
                "permutation of {} symbols exceeds the symbol space",
                self.n
            )));
        }
        Ok(())
    }
}

pub fn generate(family: &InstanceFamily) -> Result<(Sequence, Sequence)> {
    family.validate()?;
    let n = family.n;
    let sigma = family.sigma;
    let mut rng = ChaCha8Rng::seed_from_u64(family.seed);
    let pair = match family.kind {
        FamilyKind::Random => {
            let mut draw = || {
                (0..n)
                    .map(|_| rng.random_range(0..sigma))
                    .collect::<Vec<_>>()
            };
            (draw(), draw())
        }
        FamilyKind::Permutation => {
            let mut x: Vec<u32> = (0..n as u32).collect();
            let mut y = x.clone();
            x.shuffle(&mut rng);
            y.shuffle(&mut rng);
            (x, y)
        }
        FamilyKind::Planted => {
            let planted: Vec<u32> = (0..family.planted_len)
                .map(|_| rng.random_range(0..sigma))
                .collect();
            let mut embed = |noise_base: u32| {
                let mut s: Vec<u32> = (0..n)
                    .map(|_| noise_base + rng.random_range(0..sigma))
                    .collect();
                let mut slots = rand::seq::index::sample(&mut rng, n, planted.len()).into_vec();
                slots.sort_unstable();
                for (&slot, &c) in slots.iter().zip(&planted) {
                    s[slot] = c;
                }
                s
            };
            let x = embed(sigma);
            let y = embed(2 * sigma);
            (x, y)
        }
        FamilyKind::Repeated => (vec![0; n], vec![0; n]),
    };
    Ok((Sequence::new(pair.0), Sequence::new(pair.1)))
}

fn ratio_one() -> Ratio {
    Ratio::ONE
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case", deny_unknown_fields)]
pub enum Method {
    /// Exact block-LIS on the full reduction.
    Exact,
    /// The estimation pipeline with the exact solver, after subsampling.
    Estimate {
        #[serde(default = "ratio_one")]
        rate: Ratio,
        #[serde(default)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub family: InstanceFamily,
    pub methods: Vec<Method>,
}

/// Parses a suite file: one JSON object per line, blank lines and lines
/// starting with `#` ignored.
pub fn parse_suite(text: &str) -> Result<Vec<SuiteEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(no, line)| {
            serde_json::from_str(line)
                .map_err(|e| Error::Usage(format!("suite line {}: {e}", no + 1)))
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub dp_guard: u64,
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            dp_guard: DEFAULT_DP_GUARD,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellTimings {
    pub generate_ns: u64,
    pub bounds_ns: u64,
    pub method_ns: u64,
    pub dp_ns: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub cell: usize,
    pub family: InstanceFamily,
    pub method: Method,
    pub n_x: usize,
    pub n_y: usize,
    pub match_count: u64,
    pub d: Ratio,
    pub d_ceil: u64,
    pub min_count_bound: u64,
    pub estimate: Option<u64>,
    pub sample_size: Option<usize>,
    pub dp_truth: Option<u64>,
    /// No dp truth: the instance is above the guard or the cell failed.
    pub bounds_only: bool,
    pub error: Option<String>,
    pub timings: CellTimings,
}

impl BenchRecord {
    /// Bounds or estimates that exceed the dp truth.
    pub fn violations(&self) -> Vec<String> {
        let Some(truth) = self.dp_truth else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if self.min_count_bound > truth {
            out.push(format!(
                "min-count bound {} > truth {truth}",
                self.min_count_bound
            ));
        }
        if self.d_ceil > truth {
            out.push(format!("ceil(d) {} > truth {truth}", self.d_ceil));
        }
        if let Some(e) = self.estimate.filter(|&e| e > truth) {
            out.push(format!("estimate {e} > truth {truth}"));
        }
        out
    }
}

fn elapsed_ns(start: Instant) -> u64 {
    start.elapsed().as_nanos().min(u64::MAX as u128) as u64
}

fn run_cell(cell: usize, family: &InstanceFamily, method: &Method, guard: u64) -> BenchRecord {
    let mut rec = BenchRecord {
        cell,
        family: family.clone(),
        method: method.clone(),
        n_x: 0,
        n_y: 0,
        match_count: 0,
        d: Ratio::ZERO,
        d_ceil: 0,
        min_count_bound: 0,
        estimate: None,
        sample_size: None,
        dp_truth: None,
        bounds_only: true,
        error: None,
        timings: CellTimings::default(),
    };
    if let Err(e) = fill_cell(&mut rec, guard) {
        rec.error = Some(e.to_string());
    }
    rec
}

fn fill_cell(rec: &mut BenchRecord, guard: u64) -> Result<()> {
    let t = Instant::now();
    let (x, y) = generate(&rec.family)?;
    rec.timings.generate_ns = elapsed_ns(t);
    rec.n_x = x.len();
    rec.n_y = y.len();

    let t = Instant::now();
    let (cx, cy) = (count_vector(&x), count_vector(&y));
    rec.match_count = inner_product(&cx, &cy);
    rec.min_count_bound = min_count_lower_bound(&cx, &cy);
    rec.d = match_lower_bound_d(rec.match_count, x.len(), y.len())?;
    rec.d_ceil = rec.d.ceil();
    rec.timings.bounds_ns = elapsed_ns(t);

    let t = Instant::now();
    match &rec.method {
        Method::Exact => {
            let z = build_block_sequence(&x, &build_occurrence_index(&y));
            let (len, _) = exact_block_lis(&z, false)?;
            rec.estimate = Some(len as u64);
        }
        Method::Estimate { rate, seed } => {
            let params = EstimatorParams {
                subsample_rate: *rate,
                seed: *seed,
                ..Default::default()
            };
            let est = approximate_lcs(&x, &y, &exact_solver_spec(), &params)?;
            rec.estimate = Some(est.estimate);
            rec.sample_size = est.sample_size;
        }
    }
    rec.timings.method_ns = elapsed_ns(t);

    let t = Instant::now();
    match dp_lcs_guarded(&x, &y, guard) {
        Ok(l) => {
            rec.dp_truth = Some(l as u64);
            rec.bounds_only = false;
        }
        Err(Error::SizeGuard { .. }) => {}
        Err(e) => return Err(e),
    }
    rec.timings.dp_ns = elapsed_ns(t);
    Ok(())
}

/// Runs every `(family, method)` cell. Records come back in cell order
/// regardless of `opts.jobs`; a failing cell carries its error instead of
/// aborting the suite.
pub fn run_suite(entries: &[SuiteEntry], opts: &SuiteOptions) -> Result<Vec<BenchRecord>> {
    let cells: Vec<(&InstanceFamily, &Method)> = entries
        .iter()
        .flat_map(|e| e.methods.iter().map(move |m| (&e.family, m)))
        .collect();
    let run = |(i, (f, m)): (usize, &(&InstanceFamily, &Method))| run_cell(i, f, m, opts.dp_guard);
    if opts.jobs <= 1 {
        return Ok(cells.iter().enumerate().map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Invariant(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| cells.par_iter().enumerate().map(run).collect()))
}

/// Writes one JSON object per line.
pub fn write_records<W: Write>(records: &[BenchRecord], mut out: W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::dp_lcs;

    #[test]
    fn repeated_family() {
        let (x, y) = generate(&InstanceFamily::new(FamilyKind::Repeated, 5)).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.len(), 5);
        assert_eq!(dp_lcs(&x, &y).unwrap(), 5);
        assert_eq!(crate::reduction::match_count(&x, &y), 25);
    }

    #[test]
    fn permutation_family_has_n_matches() {
        for n in [0, 1, 7, 100] {
            let (x, y) =
                generate(&InstanceFamily::new(FamilyKind::Permutation, n).seed(3)).unwrap();
            assert_eq!(crate::reduction::match_count(&x, &y), n as u64);
        }
    }

    #[test]
    fn planted_truth_is_exact() {
        for seed in 0..5 {
            let fam = InstanceFamily::new(FamilyKind::Planted, 200)
                .planted_len(100)
                .sigma(4)
                .seed(seed);
            let (x, y) = generate(&fam).unwrap();
            assert_eq!(dp_lcs(&x, &y).unwrap(), 100);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for kind in [
            FamilyKind::Random,
            FamilyKind::Permutation,
            FamilyKind::Planted,
        ] {
            let fam = InstanceFamily::new(kind, 50).planted_len(10).seed(11);
            assert_eq!(generate(&fam).unwrap(), generate(&fam).unwrap());
            assert_ne!(
                generate(&fam).unwrap(),
                generate(&fam.clone().seed(12)).unwrap()
            );
        }
    }

    #[test]
    fn invalid_families() {
        let bad = InstanceFamily::new(FamilyKind::Planted, 5).planted_len(6);
        assert!(matches!(generate(&bad), Err(Error::InvalidFamily(_))));
        let bad = InstanceFamily::new(FamilyKind::Random, 5).sigma(0);
        assert!(matches!(generate(&bad), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn suite_parsing() {
        let text = r#"
# comment
{"family":{"kind":"random","n":20,"sigma":2,"seed":1},"methods":[{"method":"exact"},{"method":"estimate","rate":{"num":1,"den":2},"seed":5}]}
{"family":{"kind":"repeated","n":5},"methods":[{"method":"estimate"}]}
"#;
        let entries = parse_suite(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(
            entries[0].methods[1],
            Method::Estimate {
                rate: Ratio::new(1, 2),
                seed: 5
            }
        );
        assert_eq!(
            entries[1].methods[0],
            Method::Estimate {
                rate: Ratio::ONE,
                seed: 0
            }
        );
        let err = parse_suite(r#"{"family":{"kind":"random","n":3,"sigmaa":2},"methods":[]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("sigmaa"), "{err}");
        assert!(err.contains("line 1"), "{err}");
        assert!(parse_suite("").unwrap().is_empty());
    }

    #[test]
    fn suite_cardinality_and_bounds() {
        let families = [
            InstanceFamily::new(FamilyKind::Random, 40).sigma(3).seed(1),
            InstanceFamily::new(FamilyKind::Planted, 60)
                .planted_len(20)
                .seed(2),
            InstanceFamily::new(FamilyKind::Repeated, 9),
        ];
        let entries: Vec<SuiteEntry> = families
            .into_iter()
            .map(|family| SuiteEntry {
                family,
                methods: vec![
                    Method::Exact,
                    Method::Estimate {
                        rate: Ratio::new(1, 2),
                        seed: 4,
                    },
                ],
            })
            .collect();
        let recs = run_suite(&entries, &SuiteOptions::default()).unwrap();
        assert_eq!(recs.len(), 6);
        for (i, r) in recs.iter().enumerate() {
            assert_eq!(r.cell, i);
            assert!(r.error.is_none());
            let truth = r.dp_truth.unwrap();
            assert!(r.d_ceil <= truth);
            assert!(r.violations().is_empty());
            if r.method == Method::Exact {
                assert_eq!(r.estimate, Some(truth));
            }
        }
        let parallel = run_suite(
            &entries,
            &SuiteOptions {
                jobs: 3,
                ..Default::default()
            },
        )
        .unwrap();
        let strip = |v: &[BenchRecord]| {
            v.iter()
                .map(|r| BenchRecord {
                    timings: CellTimings::default(),
                    ..r.clone()
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&recs), strip(&parallel));
    }

    #[test]
    fn failing_and_guarded_cells_are_contained() {
        let entries = vec![
            SuiteEntry {
                family: InstanceFamily::new(FamilyKind::Planted, 3).planted_len(9),
                methods: vec![Method::Exact],
            },
            SuiteEntry {
                family: InstanceFamily::new(FamilyKind::Random, 200).seed(1),
                methods: vec![Method::Exact],
            },
        ];
        let opts = SuiteOptions {
            dp_guard: 1000,
            jobs: 1,
        };
        let recs = run_suite(&entries, &opts).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs[0].error.as_deref().unwrap().contains("planted_len"));
        assert!(recs[1].error.is_none());
        assert!(recs[1].bounds_only);
        assert!(recs[1].dp_truth.is_none());
        assert!(recs[1].estimate.is_some());
    }
}
