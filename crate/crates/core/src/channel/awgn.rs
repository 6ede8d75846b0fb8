use super::rng::{box_muller, Xorshift128Plus};
use crate::{Error, Result};

/// Operating point of the channel. Bit energy is normalised to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub ebno_db: f64,
    pub rate: f64,
    pub sigma2: f64,
}

impl ChannelParams {
    pub fn new(ebno_db: f64, rate: f64) -> Result<Self> {
        Ok(Self {
            ebno_db,
            rate,
            sigma2: ebno_to_sigma2(ebno_db, rate)?,
        })
    }
}

/// Noise variance `1 / (2 R 10^(Eb/N0 / 10))`.
pub fn ebno_to_sigma2(ebno_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::InvalidArgument(format!("code rate {rate} outside (0, 1)")));
    }
    if ebno_db.is_nan() {
        return Err(Error::InvalidArgument("Eb/N0 is NaN".into()));
    }
    Ok(1.0 / (2.0 * rate * 10f64.powf(ebno_db / 10.0)))
}

/// BPSK: bit `b` maps to `2b - 1`, so a zero bit is sent as -1.
pub fn modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| if b & 1 == 1 { 1.0 } else { -1.0 }).collect()
}

/// Adds `N(0, sigma2)` noise in place, drawing normals pairwise.
pub fn add_noise(symbols: &mut [f64], sigma2: f64, rng: &mut Xorshift128Plus) -> Result<()> {
    if sigma2.is_nan() || sigma2 < 0.0 {
        return Err(Error::InvalidArgument(format!("noise variance {sigma2} is negative")));
    }
    let sigma = sigma2.sqrt();
    for pair in symbols.chunks_mut(2) {
        let u1 = rng.uniform01();
        let u2 = rng.uniform01();
        let (z0, z1) = box_muller(u1, u2);
        pair[0] += sigma * z0;
        if let Some(second) = pair.get_mut(1) {
            *second += sigma * z1;
        }
    }
    Ok(())
}

/// Received vector for the all-zero codeword of length `n`.
pub fn transmit_all_zero(n: usize, sigma2: f64, rng: &mut Xorshift128Plus) -> Result<Vec<f64>> {
    let mut y = vec![-1.0; n];
    add_noise(&mut y, sigma2, rng)?;
    Ok(y)
}
