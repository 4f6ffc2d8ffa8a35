//! Wall time of the exact solver as `n` doubles on permutation pairs, where
//! `|z| = n`.
//!
//! `cargo run -p blocklis --example scaling --release`

use std::time::Instant;

use blocklis::{
    build_block_sequence, build_occurrence_index, exact_block_lis, generate, FamilyKind,
    InstanceFamily,
};

fn main() {
    let mut prev: Option<f64> = None;
    println!(
        "{:>9} {:>8} {:>12} {:>7}",
        "n", "LIS", "solve (ms)", "ratio"
    );
    for exp in 14..=22 {
        let n = 1usize << exp;
        let (x, y) = generate(&InstanceFamily::new(FamilyKind::Permutation, n).seed(exp)).unwrap();
        let z = build_block_sequence(&x, &build_occurrence_index(&y));
        let mut best = f64::INFINITY;
        let mut len = 0;
        for _ in 0..3 {
            let t = Instant::now();
            len = exact_block_lis(&z, false).unwrap().0;
            best = best.min(t.elapsed().as_secs_f64());
        }
        let ratio = prev.map_or(String::from("-"), |p| format!("{:.2}", best / p));
        println!("{n:>9} {len:>8} {:>12.3} {ratio:>7}", best * 1e3);
        prev = Some(best);
    }
}
