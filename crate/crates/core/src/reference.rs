//! Serial sum-product decoder.
//!
//! Messages are probabilities that the bit is 1, one scalar per edge, stored
//! in variable-orientation edge order. Every product runs over the edges of
//! a group in ascending table order; the parallel engine uses the same order
//! so both decoders produce bit-identical results.

use crate::code::{ParityCheckMatrix, TannerTables};
use crate::{Error, Result};

/// Priors `p` (per variable node) and edge messages `q`, `r` (per edge).
#[derive(Debug, Clone, PartialEq)]
pub struct MessageState {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecodeResult {
    pub estimate: Vec<u8>,
    pub success: bool,
    pub iterations_used: usize,
    pub syndrome: Vec<u8>,
}

/// Posterior probability of a 1 for BPSK observation `y` (bit 1 sent as +1).
#[inline]
pub fn awgn_prior(y: f64, sigma2: f64) -> f64 {
    1.0 / (1.0 + (-2.0 * y / sigma2).exp())
}

pub(crate) fn check_inputs(y: &[f64], sigma2: f64, tables: &TannerTables) -> Result<()> {
    if sigma2 <= 0.0 || !sigma2.is_finite() {
        return Err(Error::InvalidArgument(format!("noise variance {sigma2} must be positive")));
    }
    if y.len() != tables.n {
        return Err(Error::LengthMismatch {
            expected: tables.n,
            actual: y.len(),
        });
    }
    Ok(())
}

/// Channel priors; `q` starts at the prior of each edge's variable node and
/// `r` at the uninformative 0.5.
pub fn initialize(y: &[f64], sigma2: f64, tables: &TannerTables) -> Result<MessageState> {
    check_inputs(y, sigma2, tables)?;
    let p: Vec<f64> = y.iter().map(|&yj| awgn_prior(yj, sigma2)).collect();
    let q = tables.variable.v.iter().map(|&j| p[j]).collect();
    Ok(MessageState {
        p,
        q,
        r: vec![0.5; tables.total_edges()],
    })
}

pub fn values_to_check(p: &[f64], r: &[f64], tables: &TannerTables) -> Vec<f64> {
    let mut q = vec![0.0; tables.total_edges()];
    values_to_check_into(p, r, tables, &mut q);
    q
}

/// Variable-to-check update, written into `q`.
pub fn values_to_check_into(p: &[f64], r: &[f64], tables: &TannerTables, q: &mut [f64]) {
    let vt = &tables.variable;
    for start in vt.group_starts() {
        let group = vt.group(start);
        let pj = p[vt.v[start]];
        for k in group.clone() {
            let mut q0 = 1.0 - pj;
            let mut q1 = pj;
            for i in group.clone().filter(|&i| i != k) {
                q0 *= 1.0 - r[i];
                q1 *= r[i];
            }
            let sum = q0 + q1;
            q[k] = if sum > 0.0 { q1 / sum } else { 0.5 };
        }
    }
}

pub fn values_to_variable(q: &[f64], tables: &TannerTables) -> Vec<f64> {
    let mut r = vec![0.0; tables.total_edges()];
    values_to_variable_into(q, tables, &mut r);
    r
}

/// Check-to-variable update, written into `r` (variable-orientation order).
pub fn values_to_variable_into(q: &[f64], tables: &TannerTables, r: &mut [f64]) {
    let ct = &tables.check;
    for start in ct.group_starts() {
        let group = ct.group(start);
        for k in group.clone() {
            let mut prod = 1.0;
            for i in group.clone().filter(|&i| i != k) {
                prod *= 1.0 - 2.0 * q[ct.e[i]];
            }
            let r0 = 0.5 + 0.5 * prod;
            r[ct.e[k]] = 1.0 - r0;
        }
    }
}

pub fn estimate(p: &[f64], r: &[f64], tables: &TannerTables) -> Vec<u8> {
    let mut c_hat = vec![0; tables.n];
    estimate_into(p, r, tables, &mut c_hat);
    c_hat
}

/// Hard decision per variable node from its prior and all incoming `r`.
/// A tie decides 1.
pub fn estimate_into(p: &[f64], r: &[f64], tables: &TannerTables, c_hat: &mut [u8]) {
    let vt = &tables.variable;
    for start in vt.group_starts() {
        let j = vt.v[start];
        let mut big_q0 = 1.0 - p[j];
        let mut big_q1 = p[j];
        for i in vt.group(start) {
            big_q0 *= 1.0 - r[i];
            big_q1 *= r[i];
        }
        c_hat[j] = if big_q0 > big_q1 { 0 } else { 1 };
    }
}

/// `c_hat * H^T (mod 2)`.
pub fn syndrome(c_hat: &[u8], h: &ParityCheckMatrix) -> Result<Vec<u8>> {
    h.syndrome(c_hat)
}

pub(crate) fn check_code(tables: &TannerTables, h: &ParityCheckMatrix) -> Result<()> {
    if tables.n != h.n() || tables.m != h.m() || tables.total_edges() != h.total_edges() {
        return Err(Error::InvalidArgument(
            "address tables were not built from this parity-check matrix".into(),
        ));
    }
    Ok(())
}

/// Sum-product decoding of one AWGN frame.
///
/// Phase order: initialise, check-node update, estimate, syndrome test; then
/// up to `max_iterations` rounds of variable update, check update, estimate
/// and syndrome test. `iterations_used` counts completed rounds.
pub fn decode_awgn(
    y: &[f64],
    sigma2: f64,
    max_iterations: usize,
    tables: &TannerTables,
    h: &ParityCheckMatrix,
) -> Result<DecodeResult> {
    check_code(tables, h)?;
    let MessageState { p, mut q, mut r } = initialize(y, sigma2, tables)?;
    let mut c_hat = vec![0u8; tables.n];

    values_to_variable_into(&q, tables, &mut r);
    estimate_into(&p, &r, tables, &mut c_hat);
    let mut z = syndrome(&c_hat, h)?;
    let mut rounds = 0;
    while z.iter().any(|&b| b != 0) && rounds < max_iterations {
        values_to_check_into(&p, &r, tables, &mut q);
        values_to_variable_into(&q, tables, &mut r);
        estimate_into(&p, &r, tables, &mut c_hat);
        z = syndrome(&c_hat, h)?;
        rounds += 1;
    }
    Ok(DecodeResult {
        success: z.iter().all(|&b| b == 0),
        estimate: c_hat,
        iterations_used: rounds,
        syndrome: z,
    })
}
