//! Reproducible random streams and the elementary samplers built on them.
//!
//! A stream is ChaCha20 keyed with the little-endian bytes of `seed` (the
//! remaining 24 key bytes zero), nonce/stream word set to `stream`, block
//! counter starting at zero. 64-bit outputs are the little-endian
//! concatenation of consecutive 32-bit keystream words. From there:
//!
//! * uniform in `[0,1)`: `(u >> 11) · 2⁻⁵³`;
//! * uniform in `(0,1)`: `((u >> 11) + ½) · 2⁻⁵³`;
//! * standard normal: Marsaglia's polar method, one value per accepted pair
//!   (the second value is discarded);
//! * Gamma(a, 1): Marsaglia–Tsang for `a ≥ 1`; for `a < 1` the boost
//!   `G(a) = G(a+1) · U^{1/a}` carried out in log space;
//! * Dirichlet: normalised Gamma variates, normalised in log space.
//!
//! Transcendental functions come from `libm`, so the sequences do not depend
//! on the platform's C library.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut inner = ChaCha20Rng::from_seed(key);
        inner.set_stream(stream);
        RngStream { seed, stream, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn standard_normal(&mut self) -> f64 {
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * libm::sqrt(-2.0 * libm::log(s) / s);
            }
        }
    }

    /// `log G` for `G ~ Gamma(shape, 1)`. Stays finite for small shapes where
    /// `G` itself would underflow.
    pub fn log_gamma_variate(&mut self, shape: f64) -> f64 {
        debug_assert!(shape > 0.0);
        if shape < 1.0 {
            let boosted = self.log_gamma_variate(shape + 1.0);
            let u = self.uniform_open();
            return boosted + libm::log(u) / shape;
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / libm::sqrt(9.0 * d);
        loop {
            let x = self.standard_normal();
            let t = 1.0 + c * x;
            if t <= 0.0 {
                continue;
            }
            let v = t * t * t;
            let u = self.uniform_open();
            let lv = libm::log(v);
            if libm::log(u) < 0.5 * x * x + d - d * v + d * lv {
                return libm::log(d) + lv;
            }
        }
    }

    pub fn gamma(&mut self, shape: f64) -> f64 {
        libm::exp(self.log_gamma_variate(shape))
    }

    /// Chi variate with `dof` degrees of freedom (real `dof > 0`).
    pub fn chi(&mut self, dof: f64) -> f64 {
        libm::sqrt(2.0 * self.gamma(0.5 * dof))
    }
}

/// Checked Gamma(shape, 1) draw.
pub fn gamma_sample(shape: f64, rng: &mut RngStream) -> Result<f64> {
    if !(shape > 0.0 && shape.is_finite()) {
        return Err(Error::InvalidParameter(format!("Gamma shape must be positive, got {shape}")));
    }
    Ok(rng.gamma(shape))
}

/// Dirichlet draw with the given shapes. Coordinates are computed from log
/// Gamma variates, so shapes well below one are fine.
pub fn dirichlet_sample(shapes: &[f64], rng: &mut RngStream) -> Result<Vec<f64>> {
    if shapes.is_empty() {
        return Err(Error::InvalidParameter("Dirichlet needs at least one shape".into()));
    }
    if let Some(bad) = shapes.iter().find(|&&s| !(s > 0.0 && s.is_finite())) {
        return Err(Error::InvalidParameter(format!("Dirichlet shape must be positive, got {bad}")));
    }
    let logs: Vec<f64> = shapes.iter().map(|&s| rng.log_gamma_variate(s)).collect();
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut w: Vec<f64> = logs.iter().map(|&l| libm::exp(l - max)).collect();
    let total: f64 = w.iter().sum();
    for x in &mut w {
        *x /= total;
    }
    Ok(w)
}

/// Derives an experiment seed from a master seed and a label
/// (FNV-1a of the label, xor the seed, one SplitMix64 finalisation).
pub fn derive_seed(master: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(master ^ h)
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
