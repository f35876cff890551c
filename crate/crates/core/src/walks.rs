//! Exact closed-walk counts `(A^k)_ii`.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Closed-walk counts: `counts[k][i]` is the number of closed walks of
/// length `k` starting and ending at vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTable {
    pub n: usize,
    pub kmax: usize,
    pub counts: Vec<Vec<i64>>,
}

impl WalkTable {
    /// Counts at vertex `v` for k = 0..=kmax.
    pub fn moments_for_vertex(&self, v: usize) -> Result<Vec<i64>> {
        if v >= self.n {
            return Err(Error::OutOfRange {
                index: v,
                n: self.n,
            });
        }
        Ok(self.counts.iter().map(|row| row[v]).collect())
    }

    /// Σ_i (A^k)_ii, i.e. trace(A^k).
    pub fn row_total(&self, k: usize) -> i128 {
        self.counts[k].iter().map(|&c| i128::from(c)).sum()
    }
}

/// Computes `(A^k)_ii` for k = 0..=kmax by repeated integer multiplication.
///
/// Every entry of every power is range-checked; the first entry that leaves
/// the i64 range is reported as [`Error::Overflow`] with its row vertex.
pub fn walk_table(g: &Graph, kmax: usize) -> Result<WalkTable> {
    let n = g.order();
    let mut counts = Vec::with_capacity(kmax + 1);
    let mut power = vec![0i64; n * n];
    for i in 0..n {
        power[i * n + i] = 1;
    }
    counts.push(vec![1; n]);

    for k in 1..=kmax {
        // (A^k)_ij = Σ_{l ~ j} (A^(k-1))_il
        let mut next = vec![0i64; n * n];
        for i in 0..n {
            let prev = &power[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = 0i64;
                for &l in g.neighbors(j) {
                    acc = acc
                        .checked_add(prev[l])
                        .ok_or(Error::Overflow { k, vertex: i })?;
                }
                next[i * n + j] = acc;
            }
        }
        power = next;
        counts.push((0..n).map(|i| power[i * n + i]).collect());
    }
    Ok(WalkTable { n, kmax, counts })
}

pub fn moments_for_vertex(t: &WalkTable, v: usize) -> Result<Vec<i64>> {
    t.moments_for_vertex(v)
}
