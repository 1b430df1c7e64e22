use super::{AwgnFrame, DecodeOutcome, DecodeStatus};
use crate::codes::LinearCode;
use crate::error::{domain, Result};
use crate::gf2::{self, unpack_bits};
use crate::structure::{for_each_span_word, Budget};

/// Sum-product settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BpConfig {
    pub max_iter: usize,
    /// Bound on the magnitude of every message.
    pub llr_clip: f64,
    /// Stop as soon as the hard decision satisfies every check.
    pub early_exit: bool,
}

impl Default for BpConfig {
    fn default() -> Self {
        BpConfig {
            max_iter: 50,
            llr_clip: 25.0,
            early_exit: true,
        }
    }
}

/// Flooding-schedule sum-product decoding with the tanh check rule.
///
/// The posterior LLRs of the last iteration are returned in
/// [`DecodeOutcome::posterior`]. The status is `Success` when the final hard
/// decision is a codeword of `code`.
pub fn bp_sumproduct_awgn(code: &LinearCode, frame: &AwgnFrame, cfg: &BpConfig) -> Result<DecodeOutcome> {
    if cfg.max_iter == 0 {
        return domain("max_iter must be at least 1");
    }
    if !(cfg.llr_clip > 0.0) {
        return domain("llr_clip must be positive");
    }
    let n = code.n();
    if frame.received().len() != n {
        return domain(format!("frame length {} does not match code length {n}", frame.received().len()));
    }
    let clip = cfg.llr_clip;
    let checks = code.check_neighbors();
    // edge e of check c lives at start[c] + position within the check's list
    let mut start = Vec::with_capacity(checks.len() + 1);
    let mut edge_var = Vec::new();
    start.push(0);
    for vars in checks {
        edge_var.extend_from_slice(vars);
        start.push(edge_var.len());
    }
    let mut var_edges = vec![Vec::new(); n];
    for (e, &v) in edge_var.iter().enumerate() {
        var_edges[v].push(e);
    }

    let channel: Vec<f64> = frame.channel_llrs().into_iter().map(|l| l.clamp(-clip, clip)).collect();
    let mut v2c: Vec<f64> = edge_var.iter().map(|&v| channel[v]).collect();
    let mut c2v = vec![0.0f64; edge_var.len()];
    let mut total = channel.clone();
    let mut hard = vec![0u8; n];
    let mut tanh = Vec::new();
    let mut fwd = Vec::new();
    let mut iterations = 0;
    let mut valid = false;

    for it in 1..=cfg.max_iter {
        iterations = it;
        for c in 0..checks.len() {
            let edges = start[c]..start[c + 1];
            let deg = edges.len();
            tanh.clear();
            tanh.extend(v2c[edges.clone()].iter().map(|m| (m / 2.0).tanh()));
            // forward products, then a backward sweep
            fwd.clear();
            let mut acc = 1.0;
            for &t in &tanh {
                fwd.push(acc);
                acc *= t;
            }
            let mut back = 1.0;
            for k in (0..deg).rev() {
                let prod = fwd[k] * back;
                c2v[start[c] + k] = (2.0 * prod.atanh()).clamp(-clip, clip);
                back *= tanh[k];
            }
        }
        for v in 0..n {
            total[v] = channel[v] + var_edges[v].iter().map(|&e| c2v[e]).sum::<f64>();
            for &e in &var_edges[v] {
                v2c[e] = (total[v] - c2v[e]).clamp(-clip, clip);
            }
            hard[v] = (total[v] < 0.0) as u8;
        }
        valid = code.is_codeword(&hard);
        if valid && cfg.early_exit {
            break;
        }
    }
    Ok(DecodeOutcome {
        status: if valid {
            DecodeStatus::Success
        } else {
            DecodeStatus::Failure
        },
        estimate: hard,
        iterations,
        residual_erasures: Vec::new(),
        posterior: Some(total),
    })
}

/// Largest code dimension accepted by [`ml_awgn_exhaustive`].
pub const ML_AWGN_MAX_DIM: usize = 26;

/// ML decoding by correlating `y` with all `2^k` codewords. The status is
/// `Success` iff the best codeword is the transmitted one.
pub fn ml_awgn_exhaustive(code: &LinearCode, frame: &AwgnFrame) -> Result<DecodeOutcome> {
    let k = code.k();
    if k > ML_AWGN_MAX_DIM {
        return domain(format!("exhaustive ML needs k <= {ML_AWGN_MAX_DIM}, got {k}"));
    }
    let n = code.n();
    let y = frame.received();
    if y.len() != n {
        return domain(format!("frame length {} does not match code length {n}", y.len()));
    }
    // correlation with codeword c is Σy − 2·Σ_{c_j=1} y_j; minimize the
    // second sum, read off byte by byte from per-frame tables
    let bytes = n.div_ceil(8);
    let mut table = vec![0.0f64; bytes * 256];
    for b in 0..bytes {
        for pattern in 0..256usize {
            table[b * 256 + pattern] = (0..8)
                .filter(|&t| pattern >> t & 1 == 1 && b * 8 + t < n)
                .map(|t| y[b * 8 + t])
                .sum();
        }
    }
    let metric = |w: &[u64]| -> f64 {
        (0..bytes)
            .map(|b| table[b * 256 + ((w[b / 8] >> (8 * (b % 8))) & 0xff) as usize])
            .sum()
    };
    let g = code.generator();
    let mut best_metric = 0.0; // the zero codeword
    let mut best = vec![0u64; g.stride().max(1)];
    if k > 0 {
        for_each_span_word(&g, &Budget::unlimited(), |w| {
            let m = metric(w);
            if m < best_metric {
                best_metric = m;
                best.copy_from_slice(w);
            }
        })?;
    }
    let estimate = unpack_bits(&best, n);
    let correct = estimate == frame.transmitted();
    debug_assert!(code.h().annihilates_packed(&gf2::pack_bits(&estimate)));
    Ok(DecodeOutcome {
        status: if correct {
            DecodeStatus::Success
        } else {
            DecodeStatus::Failure
        },
        estimate,
        iterations: 1,
        residual_erasures: Vec::new(),
        posterior: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures;
    use crate::gf2::BitMatrix;
    use rand::SeedableRng;

    fn codewords(c: &LinearCode) -> Vec<Vec<u8>> {
        (0u32..1 << c.n())
            .map(|m| (0..c.n()).map(|j| (m >> j & 1) as u8).collect::<Vec<u8>>())
            .filter(|x| c.is_codeword(x))
            .collect()
    }

    #[test]
    fn noiseless_succeeds_at_first_iteration() {
        let c = fixtures::qc48();
        let x = gf2::unpack_bits(c.generator().row_words(3), 48);
        for sigma2 in [0.1, 1.0, 4.0] {
            let f = AwgnFrame::noiseless(x.clone(), sigma2).unwrap();
            let o = bp_sumproduct_awgn(&c, &f, &BpConfig::default()).unwrap();
            assert_eq!((o.status, o.iterations), (DecodeStatus::Success, 1));
            assert_eq!(o.estimate, x);
        }
    }

    #[test]
    fn messages_stay_finite_and_deterministic() {
        let c = fixtures::qc48();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = AwgnFrame::transmit(vec![0; 48], 0.3, &mut rng).unwrap();
            let cfg = BpConfig {
                llr_clip: 5.0,
                ..BpConfig::default()
            };
            let a = bp_sumproduct_awgn(&c, &f, &cfg).unwrap();
            let b = bp_sumproduct_awgn(&c, &f, &cfg).unwrap();
            assert_eq!(a, b);
            assert!(a.posterior.unwrap().iter().all(|l| l.is_finite()));
        }
    }

    #[test]
    fn tree_posteriors_are_exact() {
        // 3 checks on 7 variables, cycle-free
        let h = BitMatrix::from_strs(&["1110000", "0011100", "0000111"]).unwrap();
        let c = LinearCode::new(h);
        assert_eq!(crate::structure::girth(&c), None);
        let words = codewords(&c);
        let sigma2 = 0.5;
        let cfg = BpConfig {
            max_iter: 10,
            early_exit: false,
            ..BpConfig::default()
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let f = AwgnFrame::transmit(vec![0; 7], sigma2, &mut rng).unwrap();
            let llr = f.channel_llrs();
            let post = bp_sumproduct_awgn(&c, &f, &cfg).unwrap().posterior.unwrap();
            // P(x_j = 1 | y) ∝ Σ over codewords with x_j = 1 of Π p(y_i | x_i)
            let weight = |w: &[u8]| (0..7).map(|i| if w[i] == 1 { -llr[i] / 2.0 } else { llr[i] / 2.0 }).sum::<f64>().exp();
            let z: f64 = words.iter().map(|w| weight(w)).sum();
            for j in 0..7 {
                let p1: f64 = words.iter().filter(|w| w[j] == 1).map(|w| weight(w)).sum::<f64>() / z;
                let bp1 = 1.0 / (1.0 + post[j].exp());
                assert!((p1 - bp1).abs() < 1e-6, "bit {j}: {p1} vs {bp1}");
            }
        }
    }

    #[test]
    fn ml_matches_enumeration() {
        let c = fixtures::hamming84();
        let words = codewords(&c);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for t in 0..300 {
            let x = words[t % 16].clone();
            let f = AwgnFrame::transmit(x.clone(), 0.8, &mut rng).unwrap();
            let corr = |w: &[u8]| (0..8).map(|i| f.received()[i] * if w[i] == 0 { 1.0 } else { -1.0 }).sum::<f64>();
            let best = words.iter().max_by(|a, b| corr(a).total_cmp(&corr(b))).unwrap();
            let o = ml_awgn_exhaustive(&c, &f).unwrap();
            assert_eq!(&o.estimate, best);
            assert_eq!(o.status == DecodeStatus::Success, best == &x);
        }
    }

    #[test]
    fn ml_noiseless_and_cap() {
        let c = fixtures::hamming84();
        let f = AwgnFrame::noiseless(vec![1, 1, 1, 1, 0, 0, 0, 0], 1.0).unwrap();
        assert_eq!(ml_awgn_exhaustive(&c, &f).unwrap().status, DecodeStatus::Success);
        let big = fixtures::repetition(2);
        assert!(ml_awgn_exhaustive(&big, &AwgnFrame::noiseless(vec![0; 2], 1.0).unwrap()).is_ok());
        let wide = LinearCode::new(BitMatrix::from_strs(&[&"1".repeat(30)]).unwrap());
        assert_eq!(wide.k(), 29);
        assert!(ml_awgn_exhaustive(&wide, &AwgnFrame::noiseless(vec![0; 30], 1.0).unwrap()).is_err());
    }

    #[test]
    fn ml_never_worse_than_bp_in_aggregate() {
        let c = fixtures::hamming84();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let (mut ml_err, mut bp_err) = (0, 0);
        for _ in 0..3000 {
            let f = AwgnFrame::transmit(vec![0; 8], 0.7, &mut rng).unwrap();
            ml_err += !ml_awgn_exhaustive(&c, &f).unwrap().is_correct(f.transmitted()) as u32;
            bp_err += !bp_sumproduct_awgn(&c, &f, &BpConfig::default()).unwrap().is_correct(f.transmitted()) as u32;
        }
        assert!(ml_err <= bp_err, "ML {ml_err} BP {bp_err}");
    }
}
