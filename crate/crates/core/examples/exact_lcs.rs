//! Exact LCS through the block-LIS reduction, with a witness.
//!
//! Run with:
//! `cargo run -p blocklis --example exact_lcs -- [A] [B]`

use blocklis::{
    build_block_sequence, build_occurrence_index, dp_lcs, exact_block_lis, verify_certificate,
    Sequence,
};

fn main() {
    let mut args = std::env::args().skip(1);
    let a = args
        .next()
        .unwrap_or_else(|| "ACCGGTCGAGTGCGCGGAAGCCGGCCGAA".into());
    let b = args
        .next()
        .unwrap_or_else(|| "GTCGTTCGGAATGCCGTTGCTCTGTAAA".into());
    let (x, y) = (Sequence::from(a.as_str()), Sequence::from(b.as_str()));

    let idx = build_occurrence_index(&y);
    let z = build_block_sequence(&x, &idx);
    println!("|x| = {}, |y| = {}", x.len(), y.len());
    println!(
        "blocks = {}, |z| = {}, largest block = {}",
        z.num_blocks(),
        z.match_count(),
        z.max_block_len()
    );

    let (len, cert) = exact_block_lis(&z, true).expect("blocks built from y are increasing");
    let cert = cert.expect("requested");
    assert!(verify_certificate(&x, &y, &cert, len));

    let common: String = cert
        .pairs()
        .iter()
        .map(|&(i, _)| a.as_bytes()[i] as char)
        .collect();
    println!("LCS length {len}: {common}");
    println!("pairs (i, j): {:?}", cert.pairs());
    println!("dp cross-check: {}", dp_lcs(&x, &y).unwrap());
}
