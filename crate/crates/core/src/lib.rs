//! Edge-level parallel sum-product decoding for arbitrary (irregular) LDPC codes.
//!
//! The crate is organised around the Tanner graph edge list of a parity-check
//! matrix:
//!
//! * [`code`] holds the matrix type, the alist and dense text formats, a
//!   pseudo-random regular code generator, and the address-iterator tables
//!   (`e`, `v`, `c`, `t`, `s`, `u` and their check-ordered counterparts) that
//!   drive both decoders.
//! * [`reference`] is a plain serial sum-product decoder. It is the oracle the
//!   parallel engine is checked against.
//! * [`parallel`] runs the same decoder as one logical worker per edge, split
//!   into pages of `group_size` workers with a barrier between phases.
//! * [`channel`] provides the xorshift128+ generator, Box-Muller sampling, the
//!   BPSK/AWGN channel and the bit-error-rate sweep.
//! * [`bench`] times the serial and parallel decoders over one frame set.
//!
//! With the default `parallel` feature the engine and the BER sweep execute on
//! rayon. Without it every phase runs the identical schedule on the calling
//! thread; results are bit-identical either way.

pub mod bench;
pub mod channel;
pub mod code;
mod error;
pub mod parallel;
pub mod reference;

pub use error::{Error, Result};

pub use channel::{ber_sweep, BerConfig, BerPoint, ChannelParams, Xorshift128Plus};
pub use code::{CodeInfo, EdgeTables, Orientation, ParityCheckMatrix, TannerTables};
pub use parallel::{PagePlan, ParallelDecoder, WorkerPool};
pub use reference::{decode_awgn, DecodeResult, MessageState};

/// Default iteration cap for both decoders.
pub const DEFAULT_MAX_ITERATIONS: usize = 50;
/// Default number of synchronised logical workers per page.
pub const DEFAULT_GROUP_SIZE: usize = 512;
/// Default number of frames decoded concurrently by the BER sweep.
pub const DEFAULT_DECODERS_IN_FLIGHT: usize = 100;
