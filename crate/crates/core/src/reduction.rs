//! The reduction from LCS to block-restricted LIS.
//!
//! Block `i` of `z` lists every position `j` of `y` with `y[j] == x[i]`, in
//! increasing order. Picking at most one value per block and requiring the
//! picks to increase strictly is the same as choosing a monotone set of
//! matching pairs, so the longest such selection is exactly `LCS(x, y)`.
//! Positions are 0-based.

use std::collections::HashMap;
use std::sync::Arc;

use crate::counts::{count_vector, inner_product};
use crate::error::{Error, Result};
use crate::sequence::{Sequence, Symbol};

/// `y⁻¹`: each symbol of `y` mapped to its ascending position list.
#[derive(Clone, Debug, Default)]
pub struct OccurrenceIndex {
    positions: HashMap<Symbol, Arc<[usize]>>,
    len: usize,
}

impl OccurrenceIndex {
    pub fn positions(&self, sym: Symbol) -> &[usize] {
        self.positions.get(&sym).map_or(&[], |p| p)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.positions.keys().copied()
    }

    /// Length of the indexed sequence, which equals the total number of
    /// stored positions.
    pub fn indexed_len(&self) -> usize {
        self.len
    }
}

/// One pass over `y`.
pub fn build_occurrence_index(y: &Sequence) -> OccurrenceIndex {
    let mut lists: HashMap<Symbol, Vec<usize>> = HashMap::new();
    for (j, &c) in y.as_slice().iter().enumerate() {
        lists.entry(c).or_default().push(j);
    }
    OccurrenceIndex {
        positions: lists.into_iter().map(|(c, v)| (c, v.into())).collect(),
        len: y.len(),
    }
}

/// The block sequence `z`. Blocks built from equal symbols of `x` share a
/// single position list, so memory stays linear even when `|z|` is quadratic.
#[derive(Clone, Debug)]
pub struct BlockSequence {
    blocks: Vec<Arc<[usize]>>,
    match_count: u64,
}

impl BlockSequence {
    /// Wraps explicit blocks without checking them; the solver rejects blocks
    /// that are not strictly increasing.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Self {
        let match_count = blocks.iter().map(|b| b.len() as u64).sum();
        BlockSequence {
            blocks: blocks.into_iter().map(Arc::from).collect(),
            match_count,
        }
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.blocks.iter().map(|b| &b[..])
    }

    /// `|z|`, the total number of stored values.
    pub fn match_count(&self) -> u64 {
        self.match_count
    }

    /// `k`, the largest block size.
    pub fn max_block_len(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.match_count == 0
    }

    pub fn validate(&self) -> Result<()> {
        for (i, b) in self.blocks.iter().enumerate() {
            if let Some(w) = b.windows(2).find(|w| w[0] >= w[1]) {
                return Err(Error::invalid(format!(
                    "block {i} is not strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

pub fn build_block_sequence(x: &Sequence, idx: &OccurrenceIndex) -> BlockSequence {
    let empty: Arc<[usize]> = Arc::from(Vec::new());
    let mut match_count = 0u64;
    let blocks = x
        .as_slice()
        .iter()
        .map(|c| match idx.positions.get(c) {
            Some(p) => {
                match_count += p.len() as u64;
                Arc::clone(p)
            }
            None => Arc::clone(&empty),
        })
        .collect();
    BlockSequence {
        blocks,
        match_count,
    }
}

/// `|z|` without materializing `z`.
pub fn match_count(x: &Sequence, y: &Sequence) -> u64 {
    inner_product(&count_vector(x), &count_vector(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn blocks_of(z: &BlockSequence) -> Vec<Vec<usize>> {
        z.blocks().map(|b| b.to_vec()).collect()
    }

    #[test]
    fn occurrence_index_examples() {
        let idx = build_occurrence_index(&"cbacba".into());
        assert_eq!(idx.positions(b'c' as u32), &[0, 3]);
        assert_eq!(idx.positions(b'b' as u32), &[1, 4]);
        assert_eq!(idx.positions(b'a' as u32), &[2, 5]);
        assert_eq!(idx.indexed_len(), 6);

        let idx = build_occurrence_index(&"".into());
        assert_eq!(idx.symbols().count(), 0);

        let idx = build_occurrence_index(&"aaa".into());
        assert_eq!(idx.positions(b'a' as u32), &[0, 1, 2]);
    }

    #[test]
    fn block_sequence_examples() {
        let idx = build_occurrence_index(&"cbacba".into());
        let z = build_block_sequence(&"abcabc".into(), &idx);
        assert_eq!(
            blocks_of(&z),
            vec![
                vec![2, 5],
                vec![1, 4],
                vec![0, 3],
                vec![2, 5],
                vec![1, 4],
                vec![0, 3]
            ]
        );
        assert_eq!(z.match_count(), 12);
        assert_eq!(z.max_block_len(), 2);

        let z = build_block_sequence(&"abc".into(), &build_occurrence_index(&"def".into()));
        assert_eq!(blocks_of(&z), vec![Vec::<usize>::new(); 3]);
        assert_eq!(z.match_count(), 0);

        let x = Sequence::new(vec![4, 2, 0, 3, 1]);
        let y = Sequence::new(vec![1, 0, 4, 3, 2]);
        let z = build_block_sequence(&x, &build_occurrence_index(&y));
        assert!(z.blocks().all(|b| b.len() == 1));
        assert_eq!(z.match_count(), 5);
    }

    #[test]
    fn repeated_symbols_share_storage() {
        let idx = build_occurrence_index(&"abab".into());
        let z = build_block_sequence(&"aaa".into(), &idx);
        assert!(std::ptr::eq(z.block(0).as_ptr(), z.block(2).as_ptr()));
    }

    #[test]
    fn match_count_examples() {
        assert_eq!(match_count(&"abcabc".into(), &"cbacba".into()), 12);
        assert_eq!(match_count(&"".into(), &"xyz".into()), 0);
        let a = Sequence::new(vec![0; 37]);
        assert_eq!(match_count(&a, &a), 37 * 37);
    }

    #[test]
    fn validate_rejects_non_increasing_blocks() {
        assert!(BlockSequence::from_blocks(vec![vec![1, 3], vec![]])
            .validate()
            .is_ok());
        assert!(BlockSequence::from_blocks(vec![vec![3, 3]])
            .validate()
            .is_err());
        assert!(BlockSequence::from_blocks(vec![vec![0], vec![4, 2]])
            .validate()
            .is_err());
    }

    proptest! {
        #[test]
        fn block_sequence_invariants(
            x in proptest::collection::vec(0u32..5, 0..48),
            y in proptest::collection::vec(0u32..5, 0..48),
        ) {
            let (x, y) = (Sequence::new(x), Sequence::new(y));
            let idx = build_occurrence_index(&y);
            let total: usize = idx.symbols().map(|c| idx.positions(c).len()).sum();
            prop_assert_eq!(total, y.len());
            let z = build_block_sequence(&x, &idx);
            prop_assert_eq!(z.num_blocks(), x.len());
            prop_assert_eq!(z.match_count(), match_count(&x, &y));
            prop_assert!(z.validate().is_ok());
            for (i, block) in z.blocks().enumerate() {
                for &j in block {
                    prop_assert_eq!(y[j], x[i]);
                }
                let expected = (0..y.len()).filter(|&j| y[j] == x[i]).count();
                prop_assert_eq!(block.len(), expected);
            }
        }
    }
}
