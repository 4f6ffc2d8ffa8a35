//! Estimating on an i.i.d. subsample of positions. The reported value is not
//! rescaled, so it never exceeds the true LCS.
//!
//! `cargo run -p blocklis --example subsampling`

use blocklis::{
    approximate_lcs, dp_lcs, exact_solver_spec, generate, EstimatorParams, FamilyKind,
    InstanceFamily, Ratio,
};

fn main() {
    let fam = InstanceFamily::new(FamilyKind::Planted, 2_000)
        .planted_len(800)
        .sigma(8)
        .seed(5);
    let (x, y) = generate(&fam).unwrap();
    println!("planted pair n=2000, LCS {}", dp_lcs(&x, &y).unwrap());

    for rate in [
        Ratio::ONE,
        Ratio::new(3, 4),
        Ratio::new(1, 2),
        Ratio::new(1, 4),
        Ratio::new(1, 10),
    ] {
        let runs: Vec<_> = (0..20)
            .map(|seed| {
                let params = EstimatorParams {
                    subsample_rate: rate,
                    seed,
                    ..Default::default()
                };
                approximate_lcs(&x, &y, &exact_solver_spec(), &params).unwrap()
            })
            .collect();
        let mean = runs.iter().map(|e| e.estimate as f64).sum::<f64>() / runs.len() as f64;
        let mean_u = runs
            .iter()
            .map(|e| e.sample_size.unwrap() as f64)
            .sum::<f64>()
            / runs.len() as f64;
        let max = runs.iter().map(|e| e.estimate).max().unwrap();
        println!("rate {rate:<6} mean |U| {mean_u:>7.1}  mean estimate {mean:>6.1}  max {max}");
    }
}
