use super::{bp_peel_bec, bp_sumproduct_awgn, AwgnFrame, BecFrame, BpConfig, DecodeOutcome};
use crate::codes::LinearCode;
use crate::error::{domain, Result};
use crate::structure::same_row_space;

/// BP on a parity-check matrix extended with redundant dual codewords.
#[derive(Clone, Debug)]
pub struct RpcDecoder {
    extended: LinearCode,
    redundant_rows: usize,
}

impl RpcDecoder {
    /// Fails unless `extended` defines the same code as `original`.
    pub fn new(original: &LinearCode, extended: LinearCode) -> Result<Self> {
        if !same_row_space(original.h(), extended.h()) {
            return domain("the extended matrix does not have the row space of the original");
        }
        Ok(RpcDecoder {
            redundant_rows: extended.r().saturating_sub(original.r()),
            extended,
        })
    }

    pub fn extended(&self) -> &LinearCode {
        &self.extended
    }

    pub fn redundant_rows(&self) -> usize {
        self.redundant_rows
    }

    pub fn decode_bec(&self, frame: &BecFrame) -> DecodeOutcome {
        bp_peel_bec(&self.extended, frame, self.extended.n() + 1)
    }

    pub fn decode_awgn(&self, frame: &AwgnFrame, cfg: &BpConfig) -> Result<DecodeOutcome> {
        bp_sumproduct_awgn(&self.extended, frame, cfg)
    }
}

pub enum RpcFrame<'a> {
    Bec(&'a BecFrame),
    Awgn(&'a AwgnFrame, BpConfig),
}

/// One-shot RPC decoding; checks the row spaces on every call; use
/// [`RpcDecoder`] to decode many frames.
pub fn decode_rpc(original: &LinearCode, extended: &LinearCode, frame: RpcFrame<'_>) -> Result<DecodeOutcome> {
    let dec = RpcDecoder::new(original, extended.clone())?;
    match frame {
        RpcFrame::Bec(f) => Ok(dec.decode_bec(f)),
        RpcFrame::Awgn(f, cfg) => dec.decode_awgn(f, &cfg),
    }
}
