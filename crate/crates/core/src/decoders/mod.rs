//! Peeling and Gaussian-elimination decoding over the BEC, sum-product and
//! exhaustive ML decoding over the AWGN channel, and redundant-parity-check
//! decoding on extended matrices.

mod awgn;
mod bec;
mod rpc;

pub use awgn::{bp_sumproduct_awgn, ml_awgn_exhaustive, BpConfig, ML_AWGN_MAX_DIM};
pub use bec::{bp_peel_bec, ml_bec};
pub use rpc::{decode_rpc, RpcDecoder, RpcFrame};

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{domain, Result};

/// A codeword sent over the BEC and what the receiver saw.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BecFrame {
    transmitted: Vec<u8>,
    erased: Vec<usize>,
    received: Vec<Option<u8>>,
}

impl BecFrame {
    /// `erased` may be in any order; duplicates are rejected.
    pub fn new(transmitted: Vec<u8>, erased: &[usize]) -> Result<Self> {
        let n = transmitted.len();
        let mut received: Vec<Option<u8>> = transmitted.iter().map(|&b| Some(b & 1)).collect();
        let mut sorted = erased.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return domain(format!("position {} erased twice", w[0]));
            }
        }
        for &j in &sorted {
            if j >= n {
                return domain(format!("erased position {j} out of range for length {n}"));
            }
            received[j] = None;
        }
        Ok(BecFrame {
            transmitted: transmitted.into_iter().map(|b| b & 1).collect(),
            erased: sorted,
            received,
        })
    }

    /// Erases each position independently with probability `eps`.
    pub fn transmit(transmitted: Vec<u8>, eps: f64, rng: &mut impl Rng) -> Self {
        let erased: Vec<usize> = (0..transmitted.len()).filter(|_| rng.random::<f64>() < eps).collect();
        Self::new(transmitted, &erased).expect("positions are distinct and in range")
    }

    pub fn transmitted(&self) -> &[u8] {
        &self.transmitted
    }

    /// Erased positions, increasing.
    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    pub fn received(&self) -> &[Option<u8>] {
        &self.received
    }
}

/// A BPSK-modulated codeword (0 ↦ +1, 1 ↦ −1) with Gaussian noise.
#[derive(Clone, Debug, PartialEq)]
pub struct AwgnFrame {
    transmitted: Vec<u8>,
    modulated: Vec<f64>,
    received: Vec<f64>,
    sigma2: f64,
}

pub fn bpsk(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| if b & 1 == 0 { 1.0 } else { -1.0 }).collect()
}

impl AwgnFrame {
    pub fn new(transmitted: Vec<u8>, received: Vec<f64>, sigma2: f64) -> Result<Self> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return domain(format!("noise variance must be positive and finite, got {sigma2}"));
        }
        if received.len() != transmitted.len() {
            return domain("received and transmitted lengths differ");
        }
        if received.iter().any(|y| !y.is_finite()) {
            return domain("received values must be finite");
        }
        let transmitted: Vec<u8> = transmitted.into_iter().map(|b| b & 1).collect();
        Ok(AwgnFrame {
            modulated: bpsk(&transmitted),
            transmitted,
            received,
            sigma2,
        })
    }

    /// Noise-free reception: `y` equals the modulated word.
    pub fn noiseless(transmitted: Vec<u8>, sigma2: f64) -> Result<Self> {
        let y = bpsk(&transmitted);
        Self::new(transmitted, y, sigma2)
    }

    /// Adds i.i.d. `N(0, sigma2)` noise to the modulated word.
    pub fn transmit(transmitted: Vec<u8>, sigma2: f64, rng: &mut impl Rng) -> Result<Self> {
        let normal = Normal::new(0.0, sigma2.sqrt()).map_err(|e| crate::Error::Domain(e.to_string()))?;
        let y = bpsk(&transmitted).into_iter().map(|x| x + normal.sample(rng)).collect();
        Self::new(transmitted, y, sigma2)
    }

    pub fn transmitted(&self) -> &[u8] {
        &self.transmitted
    }

    pub fn modulated(&self) -> &[f64] {
        &self.modulated
    }

    pub fn received(&self) -> &[f64] {
        &self.received
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Channel LLRs `2y/σ²`, positive favoring bit 0.
    pub fn channel_llrs(&self) -> Vec<f64> {
        self.received.iter().map(|y| 2.0 * y / self.sigma2).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    Success,
    Failure,
    /// More than one codeword fits the observation (ML over the BEC).
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    /// Decoded bits; positions listed in `residual_erasures` hold 0.
    pub estimate: Vec<u8>,
    pub iterations: usize,
    /// Positions left unresolved (BEC decoders only), increasing.
    pub residual_erasures: Vec<usize>,
    /// A-posteriori LLRs (sum-product only).
    pub posterior: Option<Vec<f64>>,
}

impl DecodeOutcome {
    /// True when the frame was decoded to the transmitted word.
    pub fn is_correct(&self, transmitted: &[u8]) -> bool {
        self.status == DecodeStatus::Success && self.estimate == transmitted
    }
}
