//! Count vectors and the norm bounds that lower-bound the LCS.
//!
//! For a string `x`, `ψ(x)` maps each symbol to its number of occurrences.
//! The total number of matching pairs `|z|` equals `⟨ψ(x), ψ(y)⟩`, and
//! splitting the inner product into its coordinatewise min and max gives
//!
//! ```text
//! |z| <= ‖min(ψ(x), ψ(y))‖∞ · (‖ψ(x)‖₁ + ‖ψ(y)‖₁) <= LCS(x, y) · (|x| + |y|)
//! ```
//!
//! because a symbol occurring `k` times in both strings yields the common
//! subsequence `c^k`. Hence `d = |z| / (|x| + |y|)` never exceeds the LCS.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::sequence::{Sequence, Symbol};

/// Sparse symbol to count map. Absent symbols have count zero; stored counts
/// are always at least one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountVector {
    counts: BTreeMap<Symbol, u64>,
}

impl CountVector {
    /// Builds a vector from `(symbol, count)` pairs, dropping zero counts and
    /// summing repeated symbols.
    pub fn from_counts<I: IntoIterator<Item = (Symbol, u64)>>(iter: I) -> Self {
        let mut counts = BTreeMap::new();
        for (sym, c) in iter {
            if c > 0 {
                *counts.entry(sym).or_insert(0) += c;
            }
        }
        CountVector { counts }
    }

    pub fn get(&self, sym: Symbol) -> u64 {
        self.counts.get(&sym).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, u64)> + '_ {
        self.counts.iter().map(|(&s, &c)| (s, c))
    }

    /// Number of distinct symbols with a nonzero count.
    pub fn support(&self) -> usize {
        self.counts.len()
    }

    pub fn l1_norm(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn max_count(&self) -> u64 {
        self.counts.values().copied().max().unwrap_or(0)
    }
}

pub fn count_vector(s: &Sequence) -> CountVector {
    let symbols = s.as_slice();
    if symbols.iter().all(|&c| c < 256) {
        let mut dense = [0u64; 256];
        for &c in symbols {
            dense[c as usize] += 1;
        }
        let counts = dense
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(sym, &c)| (sym as Symbol, c))
            .collect();
        return CountVector { counts };
    }
    let mut counts = BTreeMap::new();
    for &c in symbols {
        *counts.entry(c).or_insert(0) += 1;
    }
    CountVector { counts }
}

fn smaller_first<'a>(a: &'a CountVector, b: &'a CountVector) -> (&'a CountVector, &'a CountVector) {
    if a.support() <= b.support() {
        (a, b)
    } else {
        (b, a)
    }
}

/// `Σ_c a[c]·b[c]`.
pub fn inner_product(a: &CountVector, b: &CountVector) -> u64 {
    let (small, large) = smaller_first(a, b);
    small.iter().map(|(s, c)| c * large.get(s)).sum()
}

/// `‖min(a, b)‖∞`, the length of the longest single-symbol common subsequence.
pub fn min_count_lower_bound(a: &CountVector, b: &CountVector) -> u64 {
    let (small, large) = smaller_first(a, b);
    small
        .iter()
        .map(|(s, c)| c.min(large.get(s)))
        .max()
        .unwrap_or(0)
}

/// `‖min(a, b)‖∞ · (‖a‖₁ + ‖b‖₁)`, an upper bound on `inner_product(a, b)`.
pub fn holder_bound(a: &CountVector, b: &CountVector) -> u64 {
    min_count_lower_bound(a, b) * (a.l1_norm() + b.l1_norm())
}

/// The match-count lower bound `d = match_count / (len_x + len_y)`.
///
/// For equal lengths `n` this is `|z| / 2n`. Both lengths zero is only
/// meaningful with zero matches and yields `0/1`.
pub fn match_lower_bound_d(match_count: u64, len_x: usize, len_y: usize) -> Result<Ratio> {
    let den = len_x as u64 + len_y as u64;
    if den == 0 {
        if match_count != 0 {
            return Err(Error::invalid(format!(
                "match count {match_count} with two empty sequences"
            )));
        }
        return Ok(Ratio::ZERO);
    }
    Ok(Ratio::new(match_count, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn psi(s: &str) -> CountVector {
        count_vector(&Sequence::from(s))
    }

    #[test]
    fn count_examples() {
        assert_eq!(psi("aab"), CountVector::from_counts([(97, 2), (98, 1)]));
        assert_eq!(psi(""), CountVector::default());
        assert_eq!(
            psi("abcabc"),
            CountVector::from_counts([(97, 2), (98, 2), (99, 2)])
        );
    }

    #[test]
    fn sparse_path_matches_dense() {
        let s = Sequence::new(vec![7, 1000, 7, 3, 1000, 1000]);
        let cv = count_vector(&s);
        assert_eq!(cv.get(1000), 3);
        assert_eq!(cv.get(7), 2);
        assert_eq!(cv.get(3), 1);
        assert_eq!(cv.get(4), 0);
        assert_eq!(cv.l1_norm(), 6);
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(
            inner_product(&psi("aab"), &psi("abb")),
            4,
            "{{a:2,b:1}} · {{a:1,b:2}}"
        );
        assert_eq!(inner_product(&psi("aaa"), &psi("bbb")), 0);
        assert_eq!(inner_product(&psi("abcabc"), &psi("cbacba")), 12);
    }

    #[test]
    fn min_count_examples() {
        assert_eq!(min_count_lower_bound(&psi("aaa"), &psi("aa")), 2);
        assert_eq!(min_count_lower_bound(&psi("abc"), &psi("def")), 0);
        assert_eq!(min_count_lower_bound(&psi("abcabc"), &psi("cbacba")), 2);
    }

    #[test]
    fn holder_examples() {
        assert_eq!(holder_bound(&psi("abcabc"), &psi("cbacba")), 24);
        assert_eq!(holder_bound(&psi(""), &psi("abc")), 0);
        assert_eq!(holder_bound(&psi("aaaa"), &psi("aaaa")), 32);
        assert_eq!(inner_product(&psi("aaaa"), &psi("aaaa")), 16);
    }

    #[test]
    fn d_examples() {
        assert_eq!(match_lower_bound_d(12, 6, 6).unwrap(), Ratio::new(12, 12));
        assert_eq!(match_lower_bound_d(12, 6, 6).unwrap().ceil(), 1);
        assert!(match_lower_bound_d(0, 9, 9).unwrap().is_zero());
        let n = 17u64;
        let d = match_lower_bound_d(n * n, n as usize, n as usize).unwrap();
        assert_eq!(d.cmp_value(Ratio::new(n, 2)), std::cmp::Ordering::Equal);
        assert_eq!(match_lower_bound_d(0, 0, 0).unwrap(), Ratio::ZERO);
        assert!(matches!(
            match_lower_bound_d(3, 0, 0),
            Err(Error::InvalidInput(_))
        ));
    }

    proptest! {
        #[test]
        fn inner_product_counts_matching_pairs(
            x in proptest::collection::vec(0u32..6, 0..40),
            y in proptest::collection::vec(0u32..6, 0..40),
        ) {
            let brute = x.iter().map(|a| y.iter().filter(|&b| a == b).count() as u64).sum::<u64>();
            let (x, y) = (Sequence::new(x), Sequence::new(y));
            let (a, b) = (count_vector(&x), count_vector(&y));
            prop_assert_eq!(inner_product(&a, &b), brute);
            prop_assert!(inner_product(&a, &b) <= holder_bound(&a, &b));
            prop_assert_eq!(a.l1_norm(), x.len() as u64);
            prop_assert!(a.iter().all(|(_, c)| c >= 1));
        }

        #[test]
        fn holder_on_raw_vectors(
            a in proptest::collection::vec(0u64..10_000, 0..64),
            b in proptest::collection::vec(0u64..10_000, 0..64),
        ) {
            let a = CountVector::from_counts(a.into_iter().enumerate().map(|(i, c)| (i as u32, c)));
            let b = CountVector::from_counts(b.into_iter().enumerate().map(|(i, c)| (i as u32, c)));
            prop_assert!(inner_product(&a, &b) <= holder_bound(&a, &b));
        }
    }
}
