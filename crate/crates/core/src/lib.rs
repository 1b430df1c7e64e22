//! Short LDPC codes over the binary erasure and AWGN channels.
//!
//! The modules cover GF(2) and GF(2^m) linear algebra ([`gf2`]), code
//! constructions and file formats ([`codes`]), distances, stopping sets and
//! stopping redundancy ([`structure`]), BP, ML and redundant-parity-check
//! decoding ([`decoders`]), ensemble spectra with union bounds ([`spectra`]),
//! and seeded Monte Carlo sweeps ([`sim`]). The `ldpc` binary wraps [`cli`].
//!
//! Every random choice is drawn from [`rng::seeded`], so results are
//! reproducible from the seeds alone.

pub mod cli;
pub mod codes;
pub mod decoders;
pub mod error;
pub mod gf2;
pub mod rng;
pub mod sim;
pub mod spectra;
pub mod structure;

pub use error::{Error, Result};
