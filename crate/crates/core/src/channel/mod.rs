//! Pseudo-random generation, BPSK over AWGN, and the bit-error-rate sweep.

mod awgn;
mod ber;
mod rng;

pub use awgn::{add_noise, ebno_to_sigma2, modulate, transmit_all_zero, ChannelParams};
pub use ber::{ber_sweep, write_csv, BerConfig, BerPoint, SweepDecoder, CSV_HEADER};
pub use rng::{box_muller, frame_rng, mix64, uniform_from_bits, Xorshift128Plus};
