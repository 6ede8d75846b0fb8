use std::collections::BTreeSet;

use crate::{Error, Result};

/// Sparse binary parity-check matrix stored as its list of ones.
///
/// Rows are check nodes, columns are variable nodes. Entries are kept sorted
/// by `(row, col)`; the Tanner graph has one edge per entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    n: usize,
    m: usize,
    ones: Vec<(usize, usize)>,
}

/// Summary sizes of a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeInfo {
    pub total_edges: usize,
    pub var_nodes: usize,
    pub check_nodes: usize,
}

impl ParityCheckMatrix {
    /// Builds an `m x n` matrix from `(row, col)` pairs.
    ///
    /// Rejects out-of-range or duplicate entries, and any row or column with
    /// no entries at all.
    pub fn new(m: usize, n: usize, ones: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidMatrix(format!("empty dimensions {m}x{n}")));
        }
        let mut set = BTreeSet::new();
        for (row, col) in ones {
            if row >= m || col >= n {
                return Err(Error::InvalidMatrix(format!(
                    "entry ({row}, {col}) outside {m}x{n}"
                )));
            }
            if !set.insert((row, col)) {
                return Err(Error::InvalidMatrix(format!("duplicate entry ({row}, {col})")));
            }
        }
        let ones: Vec<_> = set.into_iter().collect();

        let mut row_seen = vec![false; m];
        let mut col_seen = vec![false; n];
        for &(r, c) in &ones {
            row_seen[r] = true;
            col_seen[c] = true;
        }
        if let Some(r) = row_seen.iter().position(|&s| !s) {
            return Err(Error::InvalidMatrix(format!("row {r} has no entries")));
        }
        if let Some(c) = col_seen.iter().position(|&s| !s) {
            return Err(Error::InvalidMatrix(format!("column {c} has no entries")));
        }
        Ok(Self { n, m, ones })
    }

    /// Number of variable nodes (columns).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of check nodes (rows).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Entries as `(row, col)` pairs, sorted.
    pub fn ones(&self) -> &[(usize, usize)] {
        &self.ones
    }

    pub fn total_edges(&self) -> usize {
        self.ones.len()
    }

    pub fn info(&self) -> CodeInfo {
        CodeInfo {
            total_edges: self.ones.len(),
            var_nodes: self.n,
            check_nodes: self.m,
        }
    }

    /// Code rate `k / n` with `k = n - m`.
    pub fn rate(&self) -> f64 {
        (self.n as f64 - self.m as f64) / self.n as f64
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.ones.binary_search(&(row, col)).is_ok()
    }

    /// Row indices of every column, ascending.
    pub fn column_rows(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.n];
        for &(r, c) in &self.ones {
            cols[c].push(r);
        }
        cols
    }

    /// Column indices of every row, ascending.
    pub fn row_columns(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.m];
        for &(r, c) in &self.ones {
            rows[r].push(c);
        }
        rows
    }

    /// Syndrome `z = c_hat * H^T (mod 2)` from the row adjacency.
    pub fn syndrome(&self, c_hat: &[u8]) -> Result<Vec<u8>> {
        if c_hat.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: c_hat.len(),
            });
        }
        let mut z = vec![0u8; self.m];
        for &(r, c) in &self.ones {
            z[r] ^= c_hat[c] & 1;
        }
        Ok(z)
    }
}
