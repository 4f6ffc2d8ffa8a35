//! The estimation pipeline with the exact solver and with a deliberately
//! weak solver that only promises a factor-4 answer minus `λn`.
//!
//! `cargo run -p blocklis --example estimate_pipeline`

use blocklis::{
    dp_lcs, estimate_lcs, exact_block_lis, exact_solver_spec, generate, EstimatorParams,
    FamilyKind, InstanceFamily, SolverSpec,
};

fn main() {
    let weak = SolverSpec::new("quarter", 4.0, 1.0, |z, lambda| {
        let (exact, _) = exact_block_lis(z, false)?;
        Ok((exact as f64 / 4.0 - lambda * z.num_blocks() as f64)
            .max(0.0)
            .ceil() as u64)
    });
    let params = EstimatorParams::default();

    for fam in [
        InstanceFamily::new(FamilyKind::Random, 500)
            .sigma(4)
            .seed(1),
        InstanceFamily::new(FamilyKind::Random, 500)
            .sigma(64)
            .seed(1),
        InstanceFamily::new(FamilyKind::Planted, 500)
            .planted_len(120)
            .seed(2),
        InstanceFamily::new(FamilyKind::Repeated, 500),
    ] {
        let (x, y) = generate(&fam).unwrap();
        let truth = dp_lcs(&x, &y).unwrap();
        println!(
            "{:?} n={} sigma={} (LCS {truth})",
            fam.kind, fam.n, fam.sigma
        );
        for solver in [exact_solver_spec(), weak.clone()] {
            let est = estimate_lcs(&x, &y, &solver, &params).unwrap();
            println!(
                "  {:<8} |z|={:<7} d={:<12} lambda={:.2e} solver={:<4} estimate={:<4} ({:.1} us)",
                solver.name(),
                est.match_count,
                est.d.to_string(),
                est.lambda,
                est.solver_output,
                est.estimate,
                est.timings.total_ns as f64 / 1e3
            );
        }
    }
}
