#![allow(dead_code)]

use ldpc_edge::code::{parse_alist, ParityCheckMatrix};
use ldpc_edge::Xorshift128Plus;

pub const CODE_14_7_ALIST: &str = include_str!("../data/code_14_7.alist");
pub const CODE_14_7_DENSE: &str = include_str!("../data/code_14_7.dense");

pub fn code_14_7() -> ParityCheckMatrix {
    parse_alist(CODE_14_7_ALIST).unwrap()
}

// Golden address tables of the (14,7) tutorial code.
pub const E: [usize; 31] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30];
pub const V: [usize; 31] = [0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13];
pub const C: [usize; 31] = [5, 3, 2, 0, 4, 0, 5, 1, 6, 4, 1, 4, 3, 1, 0, 4, 2, 6, 5, 5, 4, 2, 1, 6, 0, 3, 1, 6, 3, 5, 0];
pub const T: [usize; 31] = [4, 4, 4, 4, 2, 2, 2, 2, 3, 3, 3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2];
pub const S: [usize; 31] = [0, 0, 0, 0, 4, 4, 6, 6, 8, 8, 8, 11, 11, 13, 13, 15, 15, 17, 17, 19, 19, 21, 21, 23, 23, 25, 25, 27, 27, 29, 29];
pub const U: [usize; 31] = [0, 1, 2, 3, 0, 1, 0, 1, 0, 1, 2, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1];

pub const E_BAR: [usize; 31] = [3, 5, 14, 24, 30, 7, 10, 13, 22, 26, 2, 16, 21, 1, 12, 25, 28, 4, 9, 11, 15, 20, 0, 6, 18, 19, 29, 8, 17, 23, 27];
pub const V_BAR: [usize; 31] = [0, 1, 5, 10, 13, 2, 3, 5, 9, 11, 0, 6, 9, 0, 4, 11, 12, 1, 3, 4, 6, 8, 0, 2, 7, 8, 13, 3, 7, 10, 12];
pub const C_BAR: [usize; 31] = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 6, 6, 6, 6];
pub const T_BAR: [usize; 31] = [5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 4, 4, 4, 4];
pub const S_BAR: [usize; 31] = [0, 0, 0, 0, 0, 5, 5, 5, 5, 5, 10, 10, 10, 13, 13, 13, 13, 17, 17, 17, 17, 17, 22, 22, 22, 22, 22, 27, 27, 27, 27];
pub const U_BAR: [usize; 31] = [0, 1, 2, 3, 4, 0, 1, 2, 3, 4, 0, 1, 2, 0, 1, 2, 3, 0, 1, 2, 3, 4, 0, 1, 2, 3, 4, 0, 1, 2, 3];

/// Random matrix with every row and column non-empty.
pub fn random_matrix(rng: &mut Xorshift128Plus, m: usize, n: usize, density: f64) -> ParityCheckMatrix {
    let mut ones = Vec::new();
    for r in 0..m {
        for c in 0..n {
            if rng.uniform01() < density {
                ones.push((r, c));
            }
        }
    }
    // patch empty rows/columns
    for r in 0..m {
        if !ones.iter().any(|&(rr, _)| rr == r) {
            ones.push((r, rng.below(n)));
        }
    }
    for c in 0..n {
        if !ones.iter().any(|&(_, cc)| cc == c) {
            ones.push((rng.below(m), c));
        }
    }
    ones.sort();
    ones.dedup();
    ParityCheckMatrix::new(m, n, ones).unwrap()
}

/// Dense `c_hat * H^T mod 2` straight from the 0/1 grid.
pub fn dense_syndrome(h: &ParityCheckMatrix, c_hat: &[u8]) -> Vec<u8> {
    let mut grid = vec![vec![0u8; h.n()]; h.m()];
    for &(r, c) in h.ones() {
        grid[r][c] = 1;
    }
    grid.iter()
        .map(|row| row.iter().zip(c_hat).map(|(a, b)| a * b).sum::<u8>() % 2)
        .collect()
}

pub fn random_bits(rng: &mut Xorshift128Plus, n: usize) -> Vec<u8> {
    (0..n).map(|_| (rng.next_u64() >> 63) as u8).collect()
}
