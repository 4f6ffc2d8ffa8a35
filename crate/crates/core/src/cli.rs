//! The `blocklis` command line.
//!
//! Exit codes: 0 on success, 2 for usage and input errors, 3 when an
//! internal invariant check fails.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::counts::{
    count_vector, holder_bound, inner_product, match_lower_bound_d, min_count_lower_bound,
};
use crate::dp::DEFAULT_DP_GUARD;
use crate::error::{Error, Result};
use crate::estimator::{approximate_lcs, EstimatorParams, StageTimings};
use crate::ratio::Ratio;
use crate::reduction::{build_block_sequence, build_occurrence_index};
use crate::report::{
    BenchResult, BoundsResult, CliReport, EstimateResult, ExactResult, GenResult, InputInfo,
    ReportBody,
};
use crate::sequence::{parse_pair, render_pair, split_combined, InputMode, Sequence};
use crate::solver::{exact_block_lis, exact_solver_spec, verify_certificate};
use crate::workbench::{self, FamilyKind, InstanceFamily, SuiteOptions};

#[derive(Debug, Parser)]
#[command(
    name = "blocklis",
    version,
    about = "Exact and estimated LCS via block-LIS"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Two input files, or a single `-` to read both from standard input
    /// (separated by a NUL byte in bytes mode, a blank line in tokens mode).
    #[arg(required = true, num_args = 1..=2)]
    inputs: Vec<String>,

    #[arg(long, value_enum, default_value_t = InputMode::Bytes)]
    mode: InputMode,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Leave wall times out of the report.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact LCS length by solving the block sequence.
    Exact {
        #[command(flatten)]
        input: InputArgs,
        /// Include a witness of (i, j) pairs.
        #[arg(long)]
        certificate: bool,
    },
    /// Lower bound plus solver estimate, optionally on a subsample.
    Estimate {
        #[command(flatten)]
        input: InputArgs,
        /// Sampling probability in (0, 1], as `p/q` or a decimal.
        #[arg(long, default_value = "1")]
        rate: Ratio,
        #[arg(long, env = "BLOCKLIS_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Match count and count-vector lower bounds, no solver run.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Write a generated instance pair to two files.
    Gen {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        sigma: u32,
        #[arg(long, default_value_t = 0)]
        planted_len: usize,
        #[arg(long, env = "BLOCKLIS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = InputMode::Bytes)]
        mode: InputMode,
        out_a: PathBuf,
        out_b: PathBuf,
    },
    /// Run a suite file and write one record per cell.
    Bench {
        config: PathBuf,
        /// Record destination; records go to standard output (and the
        /// report to standard error) when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_DP_GUARD)]
        dp_guard: u64,
    },
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(
    cmd: Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    match cmd {
        Command::Exact { input, certificate } => {
            let loaded = load_inputs(&input, stdin)?;
            let report = cmd_exact(&loaded, certificate, !input.no_timings)?;
            emit(&report, input.out.as_deref(), stdout)?;
        }
        Command::Estimate { input, rate, seed } => {
            let loaded = load_inputs(&input, stdin)?;
            let report = cmd_estimate(&loaded, rate, seed, !input.no_timings)?;
            emit(&report, input.out.as_deref(), stdout)?;
        }
        Command::Bounds { input } => {
            let loaded = load_inputs(&input, stdin)?;
            let report = cmd_bounds(&loaded, !input.no_timings)?;
            emit(&report, input.out.as_deref(), stdout)?;
        }
        Command::Gen {
            kind,
            n,
            sigma,
            planted_len,
            seed,
            mode,
            out_a,
            out_b,
        } => {
            let family = InstanceFamily {
                kind,
                n,
                sigma,
                planted_len,
                seed,
            };
            let report = cmd_gen(family, mode, &out_a, &out_b)?;
            emit(&report, None, stdout)?;
        }
        Command::Bench {
            config,
            out,
            jobs,
            dp_guard,
        } => {
            let opts = SuiteOptions {
                dp_guard,
                jobs: jobs.max(1),
            };
            let report = match &out {
                Some(path) => {
                    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
                    let report = cmd_bench(&config, &opts, std::io::BufWriter::new(file), path)?;
                    emit(&report, None, stdout)?;
                    report
                }
                None => {
                    let report = cmd_bench(&config, &opts, &mut *stdout, Path::new("-"))?;
                    emit(&report, None, stderr)?;
                    report
                }
            };
            if let ReportBody::Bench(b) = &report.result {
                if b.violations > 0 {
                    return Err(Error::Invariant(format!(
                        "{} benchmark record(s) report a bound above the dp truth",
                        b.violations
                    )));
                }
            }
        }
    }
    Ok(0)
}

fn emit(report: &CliReport, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let line = report.to_line();
    match out {
        Some(path) => fs::write(path, line).map_err(|e| Error::io(path, e)),
        None => stdout
            .write_all(line.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

/// A decoded input pair plus the descriptors echoed in reports.
pub struct LoadedInputs {
    pub x: Sequence,
    pub y: Sequence,
    pub info: InputInfo,
}

fn read_file(path: &str) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn load_inputs(args: &InputArgs, stdin: &mut dyn Read) -> Result<LoadedInputs> {
    let (a_name, b_name, raw_a, raw_b);
    match args.inputs.as_slice() {
        [dash] if dash == "-" => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| Error::io("<stdin>", e))?;
            let (a, b) = split_combined(args.mode, &buf)?;
            (raw_a, raw_b) = (a.to_vec(), b.to_vec());
            (a_name, b_name) = ("-".to_owned(), "-".to_owned());
        }
        [a, b] if a != "-" && b != "-" => {
            (raw_a, raw_b) = (read_file(a)?, read_file(b)?);
            (a_name, b_name) = (a.clone(), b.clone());
        }
        _ => {
            return Err(Error::Usage(
                "expected two input paths, or a single `-` for standard input".into(),
            ))
        }
    }
    Ok(pair_from_raw(args.mode, a_name, b_name, &raw_a, &raw_b))
}

/// Decodes raw inputs under `mode`.
pub fn pair_from_raw(
    mode: InputMode,
    a: String,
    b: String,
    raw_a: &[u8],
    raw_b: &[u8],
) -> LoadedInputs {
    let (x, y) = parse_pair(mode, raw_a, raw_b);
    LoadedInputs {
        info: InputInfo {
            a,
            b,
            mode,
            len_a: x.len(),
            len_b: y.len(),
        },
        x,
        y,
    }
}

fn ns_since(t: Instant) -> u64 {
    t.elapsed().as_nanos().min(u64::MAX as u128) as u64
}

pub fn cmd_exact(inputs: &LoadedInputs, certificate: bool, timings: bool) -> Result<CliReport> {
    let (x, y) = (&inputs.x, &inputs.y);
    let start = Instant::now();
    let z = build_block_sequence(x, &build_occurrence_index(y));
    let index_ns = ns_since(start);

    let t = Instant::now();
    let d = match_lower_bound_d(z.match_count(), x.len(), y.len())?;
    let bound_ns = ns_since(t);

    let t = Instant::now();
    let (length, cert) = exact_block_lis(&z, certificate)?;
    let solve_ns = ns_since(t);

    if let Some(c) = &cert {
        if !verify_certificate(x, y, c, length) {
            return Err(Error::Invariant(
                "solver certificate failed verification".into(),
            ));
        }
    }
    if d.ceil() > length as u64 {
        return Err(Error::Invariant(format!(
            "lower bound {} exceeds exact length {length}",
            d.ceil()
        )));
    }

    let mut report = CliReport::new(
        "exact",
        Some(inputs.info.clone()),
        ReportBody::Exact(ExactResult {
            length: length as u64,
            match_count: z.match_count(),
            d,
            d_ceil: d.ceil(),
            certificate: cert,
        }),
    );
    if timings {
        report.timings = Some(StageTimings {
            subsample_ns: 0,
            index_ns,
            bound_ns,
            solve_ns,
            total_ns: ns_since(start),
        });
    }
    Ok(report)
}

pub fn cmd_estimate(
    inputs: &LoadedInputs,
    rate: Ratio,
    seed: u64,
    timings: bool,
) -> Result<CliReport> {
    if !rate.is_probability() {
        return Err(Error::Usage(format!("--rate {rate} is not in (0, 1]")));
    }
    if !rate.is_one() && inputs.x.len() != inputs.y.len() {
        return Err(Error::Usage(format!(
            "--rate below 1 needs equal-length inputs (got {} and {}); pad them or use --rate 1",
            inputs.x.len(),
            inputs.y.len()
        )));
    }
    let params = EstimatorParams {
        subsample_rate: rate,
        seed,
        ..Default::default()
    };
    let est = approximate_lcs(&inputs.x, &inputs.y, &exact_solver_spec(), &params)?;
    if est.estimate < est.d_ceil || est.estimate < est.solver_output {
        return Err(Error::Invariant("estimate below its own components".into()));
    }
    let mut report = CliReport::new(
        "estimate",
        Some(inputs.info.clone()),
        ReportBody::Estimate(EstimateResult {
            estimate: est.estimate,
            solver_output: est.solver_output,
            solver_skipped: est.solver_skipped,
            match_count: est.match_count,
            d: est.d,
            d_ceil: est.d_ceil,
            rate,
            sample_size: est.sample_size,
            seed,
        }),
    );
    if timings {
        report.timings = Some(est.timings);
    }
    Ok(report)
}

pub fn cmd_bounds(inputs: &LoadedInputs, timings: bool) -> Result<CliReport> {
    let start = Instant::now();
    let (a, b) = (count_vector(&inputs.x), count_vector(&inputs.y));
    let match_count = inner_product(&a, &b);
    let d = match_lower_bound_d(match_count, inputs.x.len(), inputs.y.len())?;
    let holder = holder_bound(&a, &b);
    if match_count > holder {
        return Err(Error::Invariant(format!(
            "match count {match_count} exceeds the min/max bound {holder}"
        )));
    }
    let mut report = CliReport::new(
        "bounds",
        Some(inputs.info.clone()),
        ReportBody::Bounds(BoundsResult {
            match_count,
            d,
            d_ceil: d.ceil(),
            min_count_bound: min_count_lower_bound(&a, &b),
            holder_bound: holder,
        }),
    );
    if timings {
        let total = ns_since(start);
        report.timings = Some(StageTimings {
            bound_ns: total,
            total_ns: total,
            ..Default::default()
        });
    }
    Ok(report)
}

pub fn cmd_gen(
    family: InstanceFamily,
    mode: InputMode,
    out_a: &Path,
    out_b: &Path,
) -> Result<CliReport> {
    let (x, y) = match workbench::generate(&family) {
        Err(Error::InvalidFamily(msg)) => return Err(Error::Usage(msg)),
        other => other?,
    };
    let (a, b) = render_pair(mode, &x, &y)?;
    fs::write(out_a, a).map_err(|e| Error::io(out_a, e))?;
    fs::write(out_b, b).map_err(|e| Error::io(out_b, e))?;
    Ok(CliReport::new(
        "gen",
        None,
        ReportBody::Gen(GenResult {
            family,
            mode,
            out_a: out_a.display().to_string(),
            out_b: out_b.display().to_string(),
            len_a: x.len(),
            len_b: y.len(),
        }),
    ))
}

pub fn cmd_bench<W: Write>(
    config: &Path,
    opts: &SuiteOptions,
    out: W,
    out_name: &Path,
) -> Result<CliReport> {
    let text = fs::read_to_string(config).map_err(|e| Error::io(config, e))?;
    let entries = workbench::parse_suite(&text)?;
    let records = workbench::run_suite(&entries, opts)?;
    workbench::write_records(&records, out).map_err(|e| Error::io(out_name, e))?;
    Ok(CliReport::new(
        "bench",
        None,
        ReportBody::Bench(BenchResult {
            records: records.len(),
            failed: records.iter().filter(|r| r.error.is_some()).count(),
            violations: records
                .iter()
                .filter(|r| !r.violations().is_empty())
                .count(),
            out: out_name.display().to_string(),
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loaded(a: &str, b: &str) -> LoadedInputs {
        pair_from_raw(
            InputMode::Bytes,
            "a".into(),
            "b".into(),
            a.as_bytes(),
            b.as_bytes(),
        )
    }

    fn run_args(args: &[&str], stdin: &[u8]) -> (i32, String, String) {
        let mut input = stdin;
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["blocklis"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exact_fixture() {
        let r = cmd_exact(&loaded("abcabc", "cbacba"), true, false).unwrap();
        let ReportBody::Exact(e) = r.result else {
            panic!()
        };
        assert_eq!(e.length, 3);
        assert_eq!(e.match_count, 12);
        assert_eq!(e.d, Ratio::new(12, 12));
        assert_eq!(e.certificate.unwrap().len(), 3);
        assert!(r.timings.is_none());
    }

    #[test]
    fn bounds_fixture() {
        let r = cmd_bounds(&loaded("abcabc", "cbacba"), true).unwrap();
        assert!(r.timings.is_some());
        let ReportBody::Bounds(b) = r.result else {
            panic!()
        };
        assert_eq!(
            (b.match_count, b.min_count_bound, b.holder_bound),
            (12, 2, 24)
        );
        let r = cmd_bounds(&loaded("aaaaaaa", "aaaaaaa"), false).unwrap();
        let ReportBody::Bounds(b) = r.result else {
            panic!()
        };
        assert_eq!((b.match_count, b.min_count_bound), (49, 7));
    }

    #[test]
    fn estimate_rules() {
        assert!(matches!(
            cmd_estimate(&loaded("ab", "abc"), Ratio::new(1, 2), 0, false),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            cmd_estimate(&loaded("ab", "ab"), Ratio::new(0, 2), 0, false),
            Err(Error::Usage(_))
        ));
        let r = cmd_estimate(&loaded("xyz", "uvw"), Ratio::new(1, 2), 0, false).unwrap();
        let ReportBody::Estimate(e) = r.result else {
            panic!()
        };
        assert_eq!(e.estimate, 0);
    }

    #[test]
    fn stdin_input() {
        let (code, out, err) = run_args(&["exact", "-", "--no-timings"], b"abcabc\0cbacba");
        assert_eq!(code, 0, "{err}");
        let r = CliReport::parse(&out).unwrap();
        assert_eq!(r.inputs.unwrap().a, "-");

        let (code, out, _) = run_args(
            &["bounds", "--mode", "tokens", "-", "--no-timings"],
            b"the cat sat\n\nthe cat\n",
        );
        assert_eq!(code, 0);
        let ReportBody::Bounds(b) = CliReport::parse(&out).unwrap().result else {
            panic!()
        };
        assert_eq!(b.match_count, 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["exact", "-"], b"no separator").0, 2);
        assert_eq!(run_args(&["exact", "only-one-path"], b"").0, 2);
        assert_eq!(
            run_args(&["exact", "/nonexistent/a", "/nonexistent/b"], b"").0,
            2
        );
        assert_eq!(run_args(&["frobnicate"], b"").0, 2);
        assert_eq!(run_args(&["estimate", "--rate", "abc", "-"], b"a\0a").0, 2);
        let (code, _, err) = run_args(&["exact", "/nonexistent/a", "/nonexistent/b"], b"");
        assert_eq!(code, 2);
        assert!(err.contains("/nonexistent/a"), "{err}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"], b"");
        assert_eq!(code, 0);
        assert!(out.contains("exact"));
    }
}
