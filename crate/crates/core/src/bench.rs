//! Serial-versus-parallel timing over one deterministic frame set.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use crate::channel::{ebno_to_sigma2, frame_rng, transmit_all_zero};
use crate::code::{ParityCheckMatrix, TannerTables};
use crate::parallel::{map_frames, ParallelDecoder, WorkerPool};
use crate::reference::{decode_awgn, DecodeResult};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub ebno_db: f64,
    pub frames: usize,
    pub max_iterations: usize,
    pub seed: u64,
    pub group_size: usize,
    pub decoders_in_flight: usize,
    pub threads: Option<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            ebno_db: 2.0,
            frames: 10_000,
            max_iterations: crate::DEFAULT_MAX_ITERATIONS,
            seed: 0,
            group_size: crate::DEFAULT_GROUP_SIZE,
            decoders_in_flight: crate::DEFAULT_DECODERS_IN_FLIGHT,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub n: usize,
    pub m: usize,
    pub edges: usize,
    pub frames: usize,
    pub group_size: usize,
    pub threads: usize,
    pub decoders_in_flight: usize,
    pub serial_time: Duration,
    pub parallel_time: Duration,
    /// Parallel results matched the serial decoder frame for frame.
    pub identical: bool,
}

impl BenchReport {
    pub fn serial_fps(&self) -> f64 {
        self.frames as f64 / self.serial_time.as_secs_f64()
    }

    pub fn parallel_fps(&self) -> f64 {
        self.frames as f64 / self.parallel_time.as_secs_f64()
    }

    pub fn speedup(&self) -> f64 {
        self.serial_time.as_secs_f64() / self.parallel_time.as_secs_f64()
    }
}

fn fingerprint(res: &DecodeResult) -> u64 {
    let mut hasher = DefaultHasher::new();
    res.hash(&mut hasher);
    hasher.finish()
}

/// Decodes the same frames with [`decode_awgn`] one after another and with the
/// parallel engine, `decoders_in_flight` frames at a time.
pub fn run_bench(h: &ParityCheckMatrix, config: &BenchConfig) -> Result<BenchReport> {
    if config.frames == 0 || config.decoders_in_flight == 0 {
        return Err(Error::InvalidArgument("frames and decoders in flight must be positive".into()));
    }
    let tables = TannerTables::new(h);
    let decoder = ParallelDecoder::new(&tables, config.group_size)?;
    let pool = WorkerPool::new(config.threads)?;
    let sigma2 = ebno_to_sigma2(config.ebno_db, h.rate())?;
    let received = |frame: usize| -> Result<Vec<f64>> {
        let mut rng = frame_rng(config.seed, 0, frame as u64);
        transmit_all_zero(h.n(), sigma2, &mut rng)
    };

    let start = Instant::now();
    let mut serial = Vec::with_capacity(config.frames);
    for frame in 0..config.frames {
        let y = received(frame)?;
        serial.push(fingerprint(&decode_awgn(&y, sigma2, config.max_iterations, &tables, h)?));
    }
    let serial_time = start.elapsed();

    let start = Instant::now();
    let mut parallel = Vec::with_capacity(config.frames);
    let mut next = 0;
    while next < config.frames {
        let end = (next + config.decoders_in_flight).min(config.frames);
        let wave = pool.install(|| {
            map_frames(next..end, |frame| -> Result<u64> {
                let y = received(frame)?;
                Ok(fingerprint(&decoder.decode(&y, sigma2, config.max_iterations)?))
            })
        });
        for fp in wave {
            parallel.push(fp?);
        }
        next = end;
    }
    let parallel_time = start.elapsed();

    Ok(BenchReport {
        n: h.n(),
        m: h.m(),
        edges: h.total_edges(),
        frames: config.frames,
        group_size: config.group_size,
        threads: pool.threads(),
        decoders_in_flight: config.decoders_in_flight,
        serial_time,
        parallel_time,
        identical: serial == parallel,
    })
}
