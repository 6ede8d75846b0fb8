//! Edge-level parallel decoder.
//!
//! One logical worker computes the message leaving one edge. Workers are
//! grouped into pages of `group_size` (the number of workers that can share a
//! barrier); a phase walks every page and then ends at a barrier. Inside a
//! phase a worker reads only arrays frozen at the previous barrier and writes
//! a single location:
//!
//! | phase              | reads       | writes                     |
//! |--------------------|-------------|----------------------------|
//! | to check nodes     | `p`, `r`    | `q[e[k]]`                  |
//! | to variable nodes  | `q`         | `r[ebar[k]]`               |
//! | estimate           | `p`, `r`    | `c_hat[v[k]]` (per group)  |
//! | syndrome           | `c_hat`     | `z[cbar[k]]` (per group)   |
//!
//! The first two phases write disjoint locations. In the last two every
//! member of a group stores the same value to the same location.
//!
//! Logical workers are independent of physical threads: with the `parallel`
//! feature pages and workers are spread over the current rayon pool, without
//! it the same schedule runs on the calling thread. Every reduction inside a
//! worker runs over its group in ascending order, matching
//! [`crate::reference`] operation for operation, so the decoded output is
//! bit-identical to the serial decoder for any `group_size` and thread count.
//!
//! The estimation worker combines the prior with all incoming messages of its
//! variable node and the syndrome worker XORs the estimate of every member of
//! its check group; both follow the serial definitions exactly.

use std::sync::atomic::{AtomicU64, AtomicU8, Ordering};

use crate::code::{EdgeTables, ParityCheckMatrix, TannerTables};
use crate::reference::{awgn_prior, check_code, check_inputs, DecodeResult, MessageState};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Lower bound on logical workers handed to one rayon task.
#[cfg(feature = "parallel")]
const MIN_WORKERS_PER_TASK: usize = 64;

/// Split of the edge list into pages of at most `group_size` workers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PagePlan {
    group_size: usize,
    total_edges: usize,
    page_starts: Vec<usize>,
}

/// One logical worker slot: worker `lid` of page `page` handles `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Assignment {
    pub page: usize,
    pub lid: usize,
    pub position: usize,
}

impl PagePlan {
    pub fn new(total_edges: usize, group_size: usize) -> Result<Self> {
        if group_size == 0 {
            return Err(Error::InvalidArgument("group size must be at least 1".into()));
        }
        Ok(Self {
            group_size,
            total_edges,
            page_starts: (0..total_edges).step_by(group_size).collect(),
        })
    }

    pub fn group_size(&self) -> usize {
        self.group_size
    }

    pub fn total_edges(&self) -> usize {
        self.total_edges
    }

    pub fn page_count(&self) -> usize {
        self.page_starts.len()
    }

    pub fn page_starts(&self) -> &[usize] {
        &self.page_starts
    }

    /// Workers with work on `page`; only the last page can be partial.
    pub fn active_workers(&self, page: usize) -> usize {
        self.group_size.min(self.total_edges - self.page_starts[page])
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        (0..self.page_count()).flat_map(move |page| {
            let start = self.page_starts[page];
            (0..self.active_workers(page)).map(move |lid| Assignment {
                page,
                lid,
                position: start + lid,
            })
        })
    }
}

/// `f64` array shared by the workers of one decoder.
#[derive(Debug)]
pub struct SharedF64(Vec<AtomicU64>);

impl SharedF64 {
    pub fn from_slice(values: &[f64]) -> Self {
        Self(values.iter().map(|v| AtomicU64::new(v.to_bits())).collect())
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        f64::from_bits(self.0[i].load(Ordering::Relaxed))
    }

    #[inline]
    pub fn set(&self, i: usize, value: f64) {
        self.0[i].store(value.to_bits(), Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_vec(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

fn shared_bits(len: usize) -> Vec<AtomicU8> {
    (0..len).map(|_| AtomicU8::new(0)).collect()
}

fn bits_to_vec(bits: &[AtomicU8]) -> Vec<u8> {
    bits.iter().map(|b| b.load(Ordering::Relaxed)).collect()
}

/// Everything the workers of one decoder read and write.
#[derive(Debug)]
pub struct SharedDecodeState {
    pub p: Vec<f64>,
    pub q: SharedF64,
    pub r: SharedF64,
    pub estimate: Vec<AtomicU8>,
    pub syndrome: Vec<AtomicU8>,
}

impl SharedDecodeState {
    /// Channel priors, then one phase spreading each prior onto its edges.
    pub fn initialize(y: &[f64], sigma2: f64, tables: &TannerTables, plan: &PagePlan) -> Result<Self> {
        check_inputs(y, sigma2, tables)?;
        let edges = tables.total_edges();
        let state = Self {
            p: y.iter().map(|&yj| awgn_prior(yj, sigma2)).collect(),
            q: SharedF64::from_slice(&vec![0.0; edges]),
            r: SharedF64::from_slice(&vec![0.5; edges]),
            estimate: shared_bits(tables.n),
            syndrome: shared_bits(tables.m),
        };
        let vt = &tables.variable;
        run_phase(plan, |k| state.q.set(vt.e[k], state.p[vt.v[k]]));
        Ok(state)
    }

    pub fn from_messages(messages: &MessageState, tables: &TannerTables) -> Self {
        Self {
            p: messages.p.clone(),
            q: SharedF64::from_slice(&messages.q),
            r: SharedF64::from_slice(&messages.r),
            estimate: shared_bits(tables.n),
            syndrome: shared_bits(tables.m),
        }
    }

    pub fn messages(&self) -> MessageState {
        MessageState {
            p: self.p.clone(),
            q: self.q.to_vec(),
            r: self.r.to_vec(),
        }
    }

    pub fn estimate_vec(&self) -> Vec<u8> {
        bits_to_vec(&self.estimate)
    }

    pub fn syndrome_vec(&self) -> Vec<u8> {
        bits_to_vec(&self.syndrome)
    }

    pub fn set_estimate(&self, c_hat: &[u8]) {
        for (slot, &b) in self.estimate.iter().zip(c_hat) {
            slot.store(b, Ordering::Relaxed);
        }
    }

    fn syndrome_is_zero(&self) -> bool {
        self.syndrome.iter().all(|b| b.load(Ordering::Relaxed) == 0)
    }
}

// Worker kernels. `k` is the worker's table position (lid + page start).

#[inline]
fn to_check_kernel(k: usize, vt: &EdgeTables, p: &[f64], r: &SharedF64) -> f64 {
    let pj = p[vt.v[k]];
    let own = vt.u[k] + vt.s[k];
    let mut q0 = 1.0 - pj;
    let mut q1 = pj;
    for i in vt.s[k]..vt.s[k] + vt.t[k] {
        if i == own {
            continue;
        }
        let ri = r.get(vt.e[i]);
        q0 *= 1.0 - ri;
        q1 *= ri;
    }
    let sum = q0 + q1;
    if sum > 0.0 {
        q1 / sum
    } else {
        0.5
    }
}

#[inline]
fn to_variable_kernel(k: usize, ct: &EdgeTables, q: &SharedF64) -> f64 {
    let own = ct.u[k] + ct.s[k];
    let mut prod = 1.0;
    for i in ct.s[k]..ct.s[k] + ct.t[k] {
        if i == own {
            continue;
        }
        prod *= 1.0 - 2.0 * q.get(ct.e[i]);
    }
    let r0 = 0.5 + 0.5 * prod;
    1.0 - r0
}

#[inline]
fn estimate_kernel(k: usize, vt: &EdgeTables, p: &[f64], r: &SharedF64) -> u8 {
    let pj = p[vt.v[k]];
    let mut big_q0 = 1.0 - pj;
    let mut big_q1 = pj;
    for i in vt.s[k]..vt.s[k] + vt.t[k] {
        let ri = r.get(vt.e[i]);
        big_q0 *= 1.0 - ri;
        big_q1 *= ri;
    }
    if big_q1 < big_q0 {
        0
    } else {
        1
    }
}

#[inline]
fn syndrome_kernel(k: usize, ct: &EdgeTables, c_hat: &[AtomicU8]) -> u8 {
    let mut value = 0;
    for i in ct.s[k]..ct.s[k] + ct.t[k] {
        value ^= c_hat[ct.v[i]].load(Ordering::Relaxed);
    }
    value
}

/// Runs `worker` once per logical worker of every page; returning is the barrier.
fn run_phase<F>(plan: &PagePlan, worker: F)
where
    F: Fn(usize) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        let pages_per_task = (MIN_WORKERS_PER_TASK / plan.group_size).max(1);
        (0..plan.page_count())
            .into_par_iter()
            .with_min_len(pages_per_task)
            .for_each(|page| {
                let start = plan.page_starts[page];
                (0..plan.active_workers(page))
                    .into_par_iter()
                    .with_min_len(MIN_WORKERS_PER_TASK)
                    .for_each(|lid| worker(start + lid));
            });
    }
    #[cfg(not(feature = "parallel"))]
    {
        for page in 0..plan.page_count() {
            let start = plan.page_starts[page];
            for lid in 0..plan.active_workers(page) {
                worker(start + lid);
            }
        }
    }
}

pub fn parallel_to_check(state: &SharedDecodeState, tables: &TannerTables, plan: &PagePlan) {
    let vt = &tables.variable;
    run_phase(plan, |k| {
        let value = to_check_kernel(k, vt, &state.p, &state.r);
        state.q.set(vt.e[k], value);
    });
}

pub fn parallel_to_variable(state: &SharedDecodeState, tables: &TannerTables, plan: &PagePlan) {
    let ct = &tables.check;
    run_phase(plan, |k| {
        let value = to_variable_kernel(k, ct, &state.q);
        state.r.set(ct.e[k], value);
    });
}

pub fn parallel_estimate(state: &SharedDecodeState, tables: &TannerTables, plan: &PagePlan) {
    let vt = &tables.variable;
    run_phase(plan, |k| {
        let value = estimate_kernel(k, vt, &state.p, &state.r);
        state.estimate[vt.v[k]].store(value, Ordering::Relaxed);
    });
}

pub fn parallel_syndrome(state: &SharedDecodeState, tables: &TannerTables, plan: &PagePlan) {
    let ct = &tables.check;
    run_phase(plan, |k| {
        let value = syndrome_kernel(k, ct, &state.estimate);
        state.syndrome[ct.c[k]].store(value, Ordering::Relaxed);
    });
}

/// Edge-parallel decoder bound to one code and one page plan.
#[derive(Debug, Clone)]
pub struct ParallelDecoder<'t> {
    tables: &'t TannerTables,
    plan: PagePlan,
}

impl<'t> ParallelDecoder<'t> {
    pub fn new(tables: &'t TannerTables, group_size: usize) -> Result<Self> {
        Ok(Self {
            tables,
            plan: PagePlan::new(tables.total_edges(), group_size)?,
        })
    }

    pub fn plan(&self) -> &PagePlan {
        &self.plan
    }

    pub fn tables(&self) -> &TannerTables {
        self.tables
    }

    /// Same phase order and stopping rule as [`crate::reference::decode_awgn`].
    /// The all-zero syndrome test runs on the calling thread once per round.
    pub fn decode(&self, y: &[f64], sigma2: f64, max_iterations: usize) -> Result<DecodeResult> {
        let (tables, plan) = (self.tables, &self.plan);
        let state = SharedDecodeState::initialize(y, sigma2, tables, plan)?;

        parallel_to_variable(&state, tables, plan);
        parallel_estimate(&state, tables, plan);
        parallel_syndrome(&state, tables, plan);
        let mut rounds = 0;
        while !state.syndrome_is_zero() && rounds < max_iterations {
            parallel_to_check(&state, tables, plan);
            parallel_to_variable(&state, tables, plan);
            parallel_estimate(&state, tables, plan);
            parallel_syndrome(&state, tables, plan);
            rounds += 1;
        }
        Ok(DecodeResult {
            success: state.syndrome_is_zero(),
            estimate: state.estimate_vec(),
            iterations_used: rounds,
            syndrome: state.syndrome_vec(),
        })
    }
}

pub fn parallel_decode_awgn(
    y: &[f64],
    sigma2: f64,
    max_iterations: usize,
    tables: &TannerTables,
    h: &ParityCheckMatrix,
    group_size: usize,
) -> Result<DecodeResult> {
    check_code(tables, h)?;
    ParallelDecoder::new(tables, group_size)?.decode(y, sigma2, max_iterations)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    ToCheck,
    ToVariable,
    Estimate,
    Syndrome,
}

/// One store performed by a logical worker; `value` holds the raw bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WriteRecord {
    pub page: usize,
    pub lid: usize,
    pub index: usize,
    pub value: u64,
}

/// Replays one phase serially against `state` and records every store it would
/// make, without modifying the state.
pub fn audit_phase(phase: Phase, state: &SharedDecodeState, tables: &TannerTables, plan: &PagePlan) -> Vec<WriteRecord> {
    let (vt, ct) = (&tables.variable, &tables.check);
    plan.assignments()
        .map(|a| {
            let k = a.position;
            let (index, value) = match phase {
                Phase::ToCheck => (vt.e[k], to_check_kernel(k, vt, &state.p, &state.r).to_bits()),
                Phase::ToVariable => (ct.e[k], to_variable_kernel(k, ct, &state.q).to_bits()),
                Phase::Estimate => (vt.v[k], estimate_kernel(k, vt, &state.p, &state.r) as u64),
                Phase::Syndrome => (ct.c[k], syndrome_kernel(k, ct, &state.estimate) as u64),
            };
            WriteRecord {
                page: a.page,
                lid: a.lid,
                index,
                value,
            }
        })
        .collect()
}

/// Checks the write discipline of an audited phase over a target array of
/// length `len`: every slot is written, message phases write each slot exactly
/// once, and repeated writes in the other phases all store the same value.
pub fn check_write_discipline(phase: Phase, records: &[WriteRecord], len: usize) -> std::result::Result<(), String> {
    let mut first: Vec<Option<WriteRecord>> = vec![None; len];
    for rec in records {
        let slot = first
            .get_mut(rec.index)
            .ok_or_else(|| format!("write to index {} outside 0..{len}", rec.index))?;
        match slot {
            None => *slot = Some(*rec),
            Some(prev) => {
                if matches!(phase, Phase::ToCheck | Phase::ToVariable) {
                    return Err(format!(
                        "index {} written by page {} worker {} and page {} worker {}",
                        rec.index, prev.page, prev.lid, rec.page, rec.lid
                    ));
                }
                if prev.value != rec.value {
                    return Err(format!("index {} receives conflicting values", rec.index));
                }
            }
        }
    }
    match first.iter().position(Option::is_none) {
        Some(i) => Err(format!("index {i} never written")),
        None => Ok(()),
    }
}

/// Physical threads executing logical workers and concurrent frames.
pub struct WorkerPool {
    #[cfg(feature = "parallel")]
    pool: rayon::ThreadPool,
}

impl std::fmt::Debug for WorkerPool {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WorkerPool").field("threads", &self.threads()).finish()
    }
}

impl WorkerPool {
    /// `None` uses the machine's available parallelism. Without the `parallel`
    /// feature the pool is always the calling thread.
    pub fn new(threads: Option<usize>) -> Result<Self> {
        if threads == Some(0) {
            return Err(Error::InvalidArgument("thread count must be at least 1".into()));
        }
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("cannot start worker threads: {e}")))?;
            Ok(Self { pool })
        }
        #[cfg(not(feature = "parallel"))]
        {
            Ok(Self {})
        }
    }

    pub fn threads(&self) -> usize {
        #[cfg(feature = "parallel")]
        {
            self.pool.current_num_threads()
        }
        #[cfg(not(feature = "parallel"))]
        {
            1
        }
    }

    pub fn install<R, F>(&self, f: F) -> R
    where
        F: FnOnce() -> R + Send,
        R: Send,
    {
        #[cfg(feature = "parallel")]
        {
            self.pool.install(f)
        }
        #[cfg(not(feature = "parallel"))]
        {
            f()
        }
    }
}

/// Ordered map over `range`, concurrent when the `parallel` feature is on.
pub fn map_frames<T, F>(range: std::ops::Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(f).collect()
    }
}
