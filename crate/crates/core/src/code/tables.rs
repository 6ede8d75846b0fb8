//! Address-iterator tables.
//!
//! Every Tanner graph edge gets an index `k`. In the variable orientation the
//! edges are grouped by variable node (column) and:
//!
//! * `e[k] = k`,
//! * `v[k]`, `c[k]` are the edge's variable and check node,
//! * `t[k]` is the size of the group of edges sharing `v[k]`,
//! * `s[k]` is the first index of that group,
//! * `u[k] = k - s[k]` is the position of the edge inside its group.
//!
//! The check orientation is the same edge list stably re-sorted by check
//! node; there `e[k]` is the original (variable-orientation) index of the edge
//! and `t`, `s`, `u` describe check groups.
//!
//! Within a column, rows are enumerated in descending order. That is the
//! canonical order that makes the (14,7) tutorial code produce its published
//! tables exactly.

use super::ParityCheckMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Variable,
    Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeTables {
    pub orientation: Orientation,
    pub e: Vec<usize>,
    pub v: Vec<usize>,
    pub c: Vec<usize>,
    pub t: Vec<usize>,
    pub s: Vec<usize>,
    pub u: Vec<usize>,
}

impl EdgeTables {
    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    /// Index range of the group containing position `k`.
    #[inline]
    pub fn group(&self, k: usize) -> std::ops::Range<usize> {
        self.s[k]..self.s[k] + self.t[k]
    }

    /// Start positions of every group, in order.
    pub fn group_starts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&k| self.u[k] == 0)
    }
}

/// `(t, s, u)` for a key array that is already grouped (equal keys adjacent).
fn group_arrays(keys: &[usize]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let len = keys.len();
    let mut t = vec![0; len];
    let mut s = vec![0; len];
    let mut u = vec![0; len];
    let mut start = 0;
    while start < len {
        let mut end = start + 1;
        while end < len && keys[end] == keys[start] {
            end += 1;
        }
        for k in start..end {
            t[k] = end - start;
            s[k] = start;
            u[k] = k - start;
        }
        start = end;
    }
    (t, s, u)
}

pub fn build_variable_tables(h: &ParityCheckMatrix) -> EdgeTables {
    let edges = h.total_edges();
    let mut v = Vec::with_capacity(edges);
    let mut c = Vec::with_capacity(edges);
    for (col, rows) in h.column_rows().into_iter().enumerate() {
        for row in rows.into_iter().rev() {
            v.push(col);
            c.push(row);
        }
    }
    let (t, s, u) = group_arrays(&v);
    EdgeTables {
        orientation: Orientation::Variable,
        e: (0..edges).collect(),
        v,
        c,
        t,
        s,
        u,
    }
}

/// Re-sorts variable-oriented tables by check node.
///
/// # Panics
///
/// Panics if `tables` is not in the variable orientation.
pub fn build_check_tables(tables: &EdgeTables) -> EdgeTables {
    assert_eq!(tables.orientation, Orientation::Variable);
    let mut e: Vec<usize> = (0..tables.len()).collect();
    // sort_by_key is stable, so ties keep ascending edge index
    e.sort_by_key(|&k| tables.c[k]);
    let v: Vec<usize> = e.iter().map(|&k| tables.v[k]).collect();
    let c: Vec<usize> = e.iter().map(|&k| tables.c[k]).collect();
    let (t, s, u) = group_arrays(&c);
    EdgeTables {
        orientation: Orientation::Check,
        e,
        v,
        c,
        t,
        s,
        u,
    }
}

/// Both orientations of a code's address iterators plus its dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerTables {
    pub n: usize,
    pub m: usize,
    pub variable: EdgeTables,
    pub check: EdgeTables,
}

impl TannerTables {
    pub fn new(h: &ParityCheckMatrix) -> Self {
        let variable = build_variable_tables(h);
        let check = build_check_tables(&variable);
        Self {
            n: h.n(),
            m: h.m(),
            variable,
            check,
        }
    }

    pub fn total_edges(&self) -> usize {
        self.variable.len()
    }
}
