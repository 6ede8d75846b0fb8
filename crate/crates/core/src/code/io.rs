//! Text formats for parity-check matrices.
//!
//! * alist: the usual sparse interchange format. Line 1 holds `n m`, line 2
//!   the maximum column and row degrees, then the `n` column degrees, the `m`
//!   row degrees, one line of 1-based row indices per column and one line of
//!   1-based column indices per row. Zero entries are accepted as padding.
//! * dense: one matrix row per line, entries `0`/`1`, whitespace optional.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::ParityCheckMatrix;
use crate::{Error, Result};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line as (1-based line number, numeric tokens).
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        for (idx, line) in self.inner.by_ref() {
            self.last = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::parse(idx + 1, format!("invalid integer '{tok}' in {what}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((idx + 1, nums));
        }
        Err(Error::parse(self.last + 1, format!("unexpected end of input, expected {what}")))
    }
}

fn expect_len(line: usize, nums: &[usize], len: usize, what: &str) -> Result<()> {
    if nums.len() != len {
        return Err(Error::parse(
            line,
            format!("{what}: expected {len} values, found {}", nums.len()),
        ));
    }
    Ok(())
}

/// Reads one adjacency list line, dropping zero padding, and returns 0-based indices.
fn adjacency_line(
    line: usize,
    nums: &[usize],
    degree: usize,
    bound: usize,
    what: &str,
) -> Result<Vec<usize>> {
    let entries: Vec<usize> = nums.iter().copied().filter(|&x| x != 0).collect();
    if entries.len() != degree {
        return Err(Error::parse(
            line,
            format!("{what}: declared degree {degree}, found {} entries", entries.len()),
        ));
    }
    let mut seen = BTreeSet::new();
    for &x in &entries {
        if x > bound {
            return Err(Error::parse(line, format!("{what}: index {x} out of range 1..={bound}")));
        }
        if !seen.insert(x) {
            return Err(Error::parse(line, format!("{what}: repeated index {x}")));
        }
    }
    Ok(entries.into_iter().map(|x| x - 1).collect())
}

pub fn parse_alist(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = Lines::new(text);

    let (l, dims) = lines.next_numbers("dimensions")?;
    expect_len(l, &dims, 2, "dimensions")?;
    let (n, m) = (dims[0], dims[1]);
    if n == 0 || m == 0 {
        return Err(Error::parse(l, format!("dimensions must be positive, got {n} {m}")));
    }

    let (max_line, max_deg) = lines.next_numbers("maximum degrees")?;
    expect_len(max_line, &max_deg, 2, "maximum degrees")?;

    let (l, col_deg) = lines.next_numbers("column degrees")?;
    expect_len(l, &col_deg, n, "column degrees")?;
    if let Some(j) = col_deg.iter().position(|&d| d == 0 || d > m) {
        return Err(Error::parse(l, format!("column {} has invalid degree {}", j + 1, col_deg[j])));
    }

    let (l, row_deg) = lines.next_numbers("row degrees")?;
    expect_len(l, &row_deg, m, "row degrees")?;
    if let Some(i) = row_deg.iter().position(|&d| d == 0 || d > n) {
        return Err(Error::parse(l, format!("row {} has invalid degree {}", i + 1, row_deg[i])));
    }

    let col_max = col_deg.iter().copied().max().unwrap_or(0);
    let row_max = row_deg.iter().copied().max().unwrap_or(0);
    if max_deg[0] != col_max || max_deg[1] != row_max {
        return Err(Error::parse(
            max_line,
            format!(
                "maximum degrees {} {} do not match degree lists ({col_max} {row_max})",
                max_deg[0], max_deg[1]
            ),
        ));
    }
    if col_deg.iter().sum::<usize>() != row_deg.iter().sum::<usize>() {
        return Err(Error::parse(l, "column and row degree sums differ"));
    }

    let mut from_cols = BTreeSet::new();
    for (j, &deg) in col_deg.iter().enumerate() {
        let (l, nums) = lines.next_numbers("column list")?;
        for r in adjacency_line(l, &nums, deg, m, &format!("column {}", j + 1))? {
            from_cols.insert((r, j));
        }
    }

    let mut from_rows = BTreeSet::new();
    for (i, &deg) in row_deg.iter().enumerate() {
        let (l, nums) = lines.next_numbers("row list")?;
        for c in adjacency_line(l, &nums, deg, n, &format!("row {}", i + 1))? {
            if !from_cols.contains(&(i, c)) {
                return Err(Error::parse(
                    l,
                    format!("inconsistent adjacency: row {} lists column {} which does not list it", i + 1, c + 1),
                ));
            }
            from_rows.insert((i, c));
        }
    }
    // Degree sums agree and every row entry is in the column set, so the sets are equal.
    debug_assert_eq!(from_rows, from_cols);

    ParityCheckMatrix::new(m, n, from_cols)
}

pub fn to_alist(h: &ParityCheckMatrix) -> String {
    let cols = h.column_rows();
    let rows = h.row_columns();
    let join = |v: &[usize], offset: usize| {
        v.iter()
            .map(|x| (x + offset).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let col_deg: Vec<usize> = cols.iter().map(Vec::len).collect();
    let row_deg: Vec<usize> = rows.iter().map(Vec::len).collect();

    let mut out = String::new();
    writeln!(out, "{} {}", h.n(), h.m()).unwrap();
    writeln!(
        out,
        "{} {}",
        col_deg.iter().max().unwrap(),
        row_deg.iter().max().unwrap()
    )
    .unwrap();
    writeln!(out, "{}", join(&col_deg, 0)).unwrap();
    writeln!(out, "{}", join(&row_deg, 0)).unwrap();
    for c in &cols {
        writeln!(out, "{}", join(c, 1)).unwrap();
    }
    for r in &rows {
        writeln!(out, "{}", join(r, 1)).unwrap();
    }
    out
}

pub fn parse_dense(text: &str) -> Result<ParityCheckMatrix> {
    let mut width = None;
    let mut ones = Vec::new();
    let mut row = 0;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut col = 0;
        for ch in line.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '0' => {}
                '1' => ones.push((row, col)),
                other => {
                    return Err(Error::parse(line_no, format!("illegal character '{other}'")));
                }
            }
            col += 1;
        }
        match width {
            None => width = Some(col),
            Some(w) if w != col => {
                return Err(Error::parse(
                    line_no,
                    format!("ragged row at line {line_no}: {col} entries, expected {w}"),
                ));
            }
            _ => {}
        }
        row += 1;
    }
    let n = width.ok_or_else(|| Error::parse(1, "empty matrix"))?;
    ParityCheckMatrix::new(row, n, ones)
}

pub fn to_dense(h: &ParityCheckMatrix) -> String {
    let mut grid = vec![vec!['0'; h.n()]; h.m()];
    for &(r, c) in h.ones() {
        grid[r][c] = '1';
    }
    let mut out = String::new();
    for row in grid {
        let line: Vec<String> = row.into_iter().map(String::from).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}
