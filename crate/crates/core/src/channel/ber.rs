//! Monte Carlo bit-error-rate sweep over the all-zero codeword.
//!
//! By linearity the zero codeword is representative, so every 1 in a decoder
//! output is a bit error. Each frame draws its noise from its own generator
//! keyed by `(seed, point index, frame index)`, which keeps the result
//! independent of how many frames are decoded at once.

use std::io::Write;

use super::awgn::{ebno_to_sigma2, transmit_all_zero};
use super::rng::frame_rng;
use crate::code::{ParityCheckMatrix, TannerTables};
use crate::parallel::{map_frames, ParallelDecoder, WorkerPool};
use crate::reference::decode_awgn;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "ebno_db,sigma2,frames,bit_errors,ber,mean_iterations,failures";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepDecoder {
    Reference,
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BerConfig {
    pub ebno_db: Vec<f64>,
    pub frames: usize,
    pub max_iterations: usize,
    pub seed: u64,
    pub group_size: usize,
    pub decoders_in_flight: usize,
    pub threads: Option<usize>,
    pub decoder: SweepDecoder,
}

impl Default for BerConfig {
    fn default() -> Self {
        Self {
            ebno_db: vec![2.0],
            frames: 10_000,
            max_iterations: crate::DEFAULT_MAX_ITERATIONS,
            seed: 0,
            group_size: crate::DEFAULT_GROUP_SIZE,
            decoders_in_flight: crate::DEFAULT_DECODERS_IN_FLIGHT,
            threads: None,
            decoder: SweepDecoder::Parallel,
        }
    }
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct BerPoint {
    pub ebno_db: f64,
    pub sigma2: f64,
    pub frames: usize,
    pub bit_errors: u64,
    pub ber: f64,
    pub mean_iterations: f64,
    pub failures: usize,
}

struct FrameOutcome {
    ones: u64,
    iterations: usize,
    success: bool,
}

pub fn ber_sweep(h: &ParityCheckMatrix, config: &BerConfig) -> Result<Vec<BerPoint>> {
    if config.frames == 0 {
        return Err(Error::InvalidArgument("at least one frame is required".into()));
    }
    if config.decoders_in_flight == 0 {
        return Err(Error::InvalidArgument("decoders in flight must be at least 1".into()));
    }
    let tables = TannerTables::new(h);
    let decoder = ParallelDecoder::new(&tables, config.group_size)?;
    let pool = WorkerPool::new(config.threads)?;
    let n = h.n();
    let rate = h.rate();

    let mut points = Vec::with_capacity(config.ebno_db.len());
    for (point_idx, &ebno_db) in config.ebno_db.iter().enumerate() {
        let sigma2 = ebno_to_sigma2(ebno_db, rate)?;
        let run_frame = |frame: usize| -> Result<FrameOutcome> {
            let mut rng = frame_rng(config.seed, point_idx as u64, frame as u64);
            let y = transmit_all_zero(n, sigma2, &mut rng)?;
            let res = match config.decoder {
                SweepDecoder::Parallel => decoder.decode(&y, sigma2, config.max_iterations)?,
                SweepDecoder::Reference => decode_awgn(&y, sigma2, config.max_iterations, &tables, h)?,
            };
            Ok(FrameOutcome {
                ones: res.estimate.iter().map(|&b| b as u64).sum(),
                iterations: res.iterations_used,
                success: res.success,
            })
        };

        let mut bit_errors = 0u64;
        let mut iterations = 0usize;
        let mut failures = 0usize;
        let mut next = 0;
        while next < config.frames {
            let end = (next + config.decoders_in_flight).min(config.frames);
            let wave = pool.install(|| map_frames(next..end, run_frame));
            for outcome in wave {
                let outcome = outcome?;
                bit_errors += outcome.ones;
                iterations += outcome.iterations;
                failures += usize::from(!outcome.success);
            }
            next = end;
        }

        points.push(BerPoint {
            ebno_db,
            sigma2,
            frames: config.frames,
            bit_errors,
            ber: bit_errors as f64 / (config.frames as f64 * n as f64),
            mean_iterations: iterations as f64 / config.frames as f64,
            failures,
        });
    }
    Ok(points)
}

/// Writes the sweep as CSV. Floats use Rust's shortest round-trip formatting.
pub fn write_csv<W: Write>(mut out: W, points: &[BerPoint]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{:?},{:?},{},{},{:?},{:?},{}",
            p.ebno_db, p.sigma2, p.frames, p.bit_errors, p.ber, p.mean_iterations, p.failures
        )?;
    }
    Ok(())
}
