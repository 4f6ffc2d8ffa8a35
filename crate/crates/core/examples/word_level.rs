//! Word-level LCS: tokens split on whitespace share one dictionary.
//!
//! `cargo run -p blocklis --example word_level`

use blocklis::sequence::{parse_pair, InputMode};
use blocklis::{build_block_sequence, build_occurrence_index, exact_block_lis};

fn main() {
    let a = "the quick brown fox jumps over the lazy dog";
    let b = "a quick red fox leaps over one lazy brown dog";
    let (x, y) = parse_pair(InputMode::Tokens, a.as_bytes(), b.as_bytes());
    let z = build_block_sequence(&x, &build_occurrence_index(&y));
    let (len, cert) = exact_block_lis(&z, true).unwrap();
    let words: Vec<&str> = a.split_whitespace().collect();
    let common: Vec<&str> = cert
        .unwrap()
        .pairs()
        .iter()
        .map(|&(i, _)| words[i])
        .collect();
    println!("{len} common words: {}", common.join(" "));
}
