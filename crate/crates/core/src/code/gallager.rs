use super::ParityCheckMatrix;
use crate::channel::Xorshift128Plus;
use crate::{Error, Result};

const MAX_SHUFFLES: usize = 64;
const SWAP_TRIES: usize = 1000;

/// Pseudo-random `(wc, wr)`-regular parity-check matrix with `n` columns.
///
/// Edge sockets are shuffled and dealt to columns `wc` at a time; any socket
/// that repeats a row already present in its column is swapped with a random
/// socket elsewhere until the column and the partner column are both clean.
/// The output depends only on the arguments.
pub fn generate_gallager_code(n: usize, wc: usize, wr: usize, seed: u64) -> Result<ParityCheckMatrix> {
    if n == 0 || wr == 0 {
        return Err(Error::Infeasible(format!("n = {n} and wr = {wr} must be positive")));
    }
    if wc < 2 {
        return Err(Error::Infeasible(format!("column weight {wc} must be at least 2")));
    }
    if !(n * wc).is_multiple_of(wr) {
        return Err(Error::Infeasible(format!(
            "n*wc = {} is not divisible by wr = {wr}",
            n * wc
        )));
    }
    let m = n * wc / wr;
    if wr > n || wc > m {
        return Err(Error::Infeasible(format!(
            "weights wc = {wc}, wr = {wr} do not fit a {m}x{n} matrix"
        )));
    }

    let mut rng = Xorshift128Plus::from_seed(seed);
    let edges = n * wc;
    for _ in 0..MAX_SHUFFLES {
        let mut sockets: Vec<usize> = (0..m).flat_map(|r| std::iter::repeat_n(r, wr)).collect();
        for i in (1..edges).rev() {
            let j = rng.below(i + 1);
            sockets.swap(i, j);
        }
        if repair(&mut sockets, wc, &mut rng) {
            let ones = sockets.iter().enumerate().map(|(pos, &row)| (row, pos / wc));
            return ParityCheckMatrix::new(m, n, ones);
        }
    }
    Err(Error::Infeasible(format!(
        "no duplicate-free placement found for n = {n}, wc = {wc}, wr = {wr}"
    )))
}

/// True if `row` appears in column `col` at a position other than `skip`.
fn column_has(sockets: &[usize], wc: usize, col: usize, row: usize, skip: usize) -> bool {
    (col * wc..(col + 1) * wc).any(|p| p != skip && sockets[p] == row)
}

fn repair(sockets: &mut [usize], wc: usize, rng: &mut Xorshift128Plus) -> bool {
    let edges = sockets.len();
    for p in 0..edges {
        let col = p / wc;
        if !column_has(sockets, wc, col, sockets[p], p) {
            continue;
        }
        let mut fixed = false;
        for _ in 0..SWAP_TRIES {
            let q = rng.below(edges);
            let other = q / wc;
            if other == col {
                continue;
            }
            if !column_has(sockets, wc, col, sockets[q], p) && !column_has(sockets, wc, other, sockets[p], q) {
                sockets.swap(p, q);
                fixed = true;
                break;
            }
        }
        if !fixed {
            return false;
        }
    }
    true
}
