use super::{BecFrame, DecodeOutcome, DecodeStatus};
use crate::codes::LinearCode;
use crate::gf2::{self, BitMatrix};

/// Peeling decoder. Each round solves every check that has exactly one
/// erased neighbor at the start of the round; decoding stops when a round
/// finds none or after `max_rounds` rounds. The residual set is the largest
/// stopping set contained in the erasure pattern.
pub fn bp_peel_bec(code: &LinearCode, frame: &BecFrame, max_rounds: usize) -> DecodeOutcome {
    let n = code.n();
    let checks = code.check_neighbors();
    let mut value: Vec<u8> = frame.received().iter().map(|v| v.unwrap_or(0)).collect();
    let mut erased: Vec<bool> = frame.received().iter().map(Option::is_none).collect();
    let mut open = vec![0usize; checks.len()];
    let mut parity = vec![0u8; checks.len()];
    for (c, vars) in checks.iter().enumerate() {
        for &v in vars {
            if erased[v] {
                open[c] += 1;
            } else {
                parity[c] ^= value[v];
            }
        }
    }
    let mut left = frame.erased().len();
    let mut rounds = 0;
    let mut ready: Vec<usize> = Vec::new();
    while left > 0 && rounds < max_rounds {
        ready.clear();
        ready.extend((0..checks.len()).filter(|&c| open[c] == 1));
        if ready.is_empty() {
            break;
        }
        rounds += 1;
        for &c in &ready {
            if open[c] != 1 {
                continue;
            }
            let v = *checks[c].iter().find(|&&v| erased[v]).expect("one erased neighbor");
            let bit = parity[c];
            value[v] = bit;
            erased[v] = false;
            left -= 1;
            for &d in &code.var_neighbors()[v] {
                open[d] -= 1;
                parity[d] ^= bit;
            }
        }
    }
    let residual: Vec<usize> = (0..n).filter(|&j| erased[j]).collect();
    DecodeOutcome {
        status: if residual.is_empty() {
            DecodeStatus::Success
        } else {
            DecodeStatus::Failure
        },
        estimate: value,
        iterations: rounds,
        residual_erasures: residual,
        posterior: None,
    }
}

/// ML decoding over the BEC: solves `H_E x_E = H_K x_K` for the erased
/// positions `E`. Unique iff the erased columns are independent; otherwise
/// the outcome is ambiguous and only positions fixed by every solution are
/// filled in.
pub fn ml_bec(code: &LinearCode, frame: &BecFrame) -> DecodeOutcome {
    let h = code.h();
    let erased = frame.erased();
    let e = erased.len();
    let mut value: Vec<u8> = frame.received().iter().map(|v| v.unwrap_or(0)).collect();
    if e == 0 {
        return DecodeOutcome {
            status: DecodeStatus::Success,
            estimate: value,
            iterations: 0,
            residual_erasures: Vec::new(),
            posterior: None,
        };
    }
    // augmented system [H_E | s], s = syndrome of the known part
    let mut aug = BitMatrix::zeros(h.rows(), e + 1);
    let syndrome = h.mul_vec(&value);
    for i in 0..h.rows() {
        for (k, &j) in erased.iter().enumerate() {
            if h.get(i, j) {
                aug.set(i, k, true);
            }
        }
        if syndrome[i] == 1 {
            aug.set(i, e, true);
        }
    }
    let rref = gf2::rank_and_rref(&aug);
    let pivots: Vec<usize> = rref.pivot_cols.iter().copied().filter(|&p| p < e).collect();
    debug_assert!(pivots.len() == rref.rank, "the received word is consistent with the transmitted codeword");
    let mut residual = Vec::new();
    let free: Vec<bool> = {
        let mut f = vec![true; e];
        for &p in &pivots {
            f[p] = false;
        }
        f
    };
    for (row, &p) in pivots.iter().enumerate() {
        let determined = (0..e).all(|k| !free[k] || !rref.reduced.get(row, k));
        if determined {
            value[erased[p]] = rref.reduced.get(row, e) as u8;
        } else {
            value[erased[p]] = 0;
            residual.push(erased[p]);
        }
    }
    for k in (0..e).filter(|&k| free[k]) {
        value[erased[k]] = 0;
        residual.push(erased[k]);
    }
    residual.sort_unstable();
    DecodeOutcome {
        status: if pivots.len() == e {
            DecodeStatus::Success
        } else {
            DecodeStatus::Ambiguous
        },
        estimate: value,
        iterations: 1,
        residual_erasures: residual,
        posterior: None,
    }
}
