//! Count vectors and the bounds they give on the LCS.
//!
//! `cargo run -p blocklis --example lower_bounds`

use blocklis::{
    count_vector, dp_lcs, holder_bound, inner_product, match_lower_bound_d, min_count_lower_bound,
    Sequence,
};

fn main() {
    let pairs = [
        ("abcabc", "cbacba"),
        ("aaaaaaaa", "aaaa"),
        ("banana bandana", "cabana canada"),
        ("abc", "def"),
    ];
    println!(
        "{:<16} {:<16} {:>4} {:>8} {:>6} {:>4} {:>7} {:>4}",
        "x", "y", "|z|", "d", "ceil d", "min", "holder", "lcs"
    );
    for (a, b) in pairs {
        let (x, y) = (Sequence::from(a), Sequence::from(b));
        let (cx, cy) = (count_vector(&x), count_vector(&y));
        let z = inner_product(&cx, &cy);
        let d = match_lower_bound_d(z, x.len(), y.len()).unwrap();
        let min = min_count_lower_bound(&cx, &cy);
        let holder = holder_bound(&cx, &cy);
        let lcs = dp_lcs(&x, &y).unwrap();
        assert!(z <= holder && d.ceil() <= lcs as u64 && min <= lcs as u64);
        println!(
            "{a:<16} {b:<16} {z:>4} {:>8} {:>6} {min:>4} {holder:>7} {lcs:>4}",
            d.to_string(),
            d.ceil()
        );
    }
}
