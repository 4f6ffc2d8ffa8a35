//! Quadratic dynamic-programming LCS, used as ground truth.

use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::solver::Certificate;

/// Default limit on `|x| · |y|`.
pub const DEFAULT_DP_GUARD: u64 = 100_000_000;

fn check_guard(x: &Sequence, y: &Sequence, guard: u64) -> Result<()> {
    let cells = x.len() as u128 * y.len() as u128;
    if cells > guard as u128 {
        return Err(Error::SizeGuard {
            cells,
            limit: guard,
        });
    }
    Ok(())
}

/// Full `(|x|+1) × (|y|+1)` table of prefix LCS lengths.
#[derive(Clone, Debug)]
pub struct DpTable {
    cols: usize,
    entries: Vec<u32>,
}

impl DpTable {
    pub fn build(x: &Sequence, y: &Sequence, guard: u64) -> Result<Self> {
        check_guard(x, y, guard)?;
        let cols = y.len() + 1;
        let mut entries = vec![0u32; (x.len() + 1) * cols];
        for i in 1..=x.len() {
            let (prev, cur) = entries[(i - 1) * cols..(i + 1) * cols].split_at_mut(cols);
            for j in 1..cols {
                cur[j] = if x[i - 1] == y[j - 1] {
                    prev[j - 1] + 1
                } else {
                    prev[j].max(cur[j - 1])
                };
            }
        }
        Ok(DpTable { cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.len() / self.cols
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// LCS of `x[..i]` and `y[..j]`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn lcs(&self) -> u32 {
        self.get(self.rows() - 1, self.cols - 1)
    }

    /// Standard traceback from the bottom-right corner.
    pub fn traceback(&self, x: &Sequence, y: &Sequence) -> Certificate {
        let (mut i, mut j) = (x.len(), y.len());
        let mut pairs = Vec::with_capacity(self.lcs() as usize);
        while i > 0 && j > 0 {
            if x[i - 1] == y[j - 1] {
                pairs.push((i - 1, j - 1));
                i -= 1;
                j -= 1;
            } else if self.get(i - 1, j) >= self.get(i, j - 1) {
                i -= 1;
            } else {
                j -= 1;
            }
        }
        pairs.reverse();
        Certificate::new(pairs)
    }
}

pub fn dp_lcs(x: &Sequence, y: &Sequence) -> Result<usize> {
    dp_lcs_guarded(x, y, DEFAULT_DP_GUARD)
}

/// Length-only DP with two rolling rows.
pub fn dp_lcs_guarded(x: &Sequence, y: &Sequence, guard: u64) -> Result<usize> {
    check_guard(x, y, guard)?;
    let mut prev = vec![0usize; y.len() + 1];
    let mut cur = vec![0usize; y.len() + 1];
    for &a in x.as_slice() {
        for (j, &b) in y.as_slice().iter().enumerate() {
            cur[j + 1] = if a == b {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[y.len()])
}

pub fn dp_lcs_certificate(x: &Sequence, y: &Sequence) -> Result<Certificate> {
    dp_lcs_certificate_guarded(x, y, DEFAULT_DP_GUARD)
}

pub fn dp_lcs_certificate_guarded(x: &Sequence, y: &Sequence, guard: u64) -> Result<Certificate> {
    let table = DpTable::build(x, y, guard)?;
    Ok(table.traceback(x, y))
}
