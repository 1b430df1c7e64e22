//! Monte Carlo frame-error-rate sweeps.
//!
//! Every frame is a deterministic function of `(base_seed, point index,
//! frame index)`: the point seed is `derive_seed(base_seed, point)` and the
//! frame seed is `derive_seed(point_seed, frame)`. Two sweeps with the same
//! seed and grid therefore see identical codewords and channel noise, whatever
//! decoder they run.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::codes::LinearCode;
use crate::decoders::{
    bp_peel_bec, bp_sumproduct_awgn, ml_awgn_exhaustive, ml_bec, AwgnFrame, BecFrame, BpConfig, DecodeOutcome,
    ML_AWGN_MAX_DIM,
};
use crate::error::{domain, parse, Error, Result};
use crate::gf2::{pack_bits, unpack_bits, BitMatrix};
use crate::rng::{derive_seed, seeded, WorkbenchRng};
use crate::structure::{extend_rpc_auto, Budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    /// Grid values are erasure probabilities.
    Bec,
    /// Grid values are Eb/N0 in dB, BPSK signalling.
    Awgn,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Bec => "bec",
            Channel::Awgn => "awgn",
        })
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bec" => Ok(Channel::Bec),
            "awgn" => Ok(Channel::Awgn),
            _ => parse(format!("unknown channel {s:?} (expected bec or awgn)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    Bp,
    Ml,
    /// BP on `H` extended with this many redundant dual codewords.
    Rpc(usize),
}

impl DecoderKind {
    pub fn label(&self) -> &'static str {
        match self {
            DecoderKind::Bp => "bp",
            DecoderKind::Ml => "ml",
            DecoderKind::Rpc(_) => "rpc",
        }
    }

    pub fn rpc_rows(&self) -> usize {
        match self {
            DecoderKind::Rpc(t) => *t,
            _ => 0,
        }
    }
}

/// What to simulate.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub channel: Channel,
    pub grid: Vec<f64>,
    pub decoder: DecoderKind,
    pub max_frames: u64,
    pub target_frame_errors: u64,
    pub base_seed: u64,
    /// Sum-product settings for AWGN BP and RPC.
    pub bp: BpConfig,
}

impl SweepSpec {
    pub const DEFAULT_MAX_FRAMES: u64 = 10_000_000;
    pub const DEFAULT_TARGET_ERRORS: u64 = 100;

    pub fn new(channel: Channel, grid: Vec<f64>, decoder: DecoderKind) -> Self {
        SweepSpec {
            channel,
            grid,
            decoder,
            max_frames: Self::DEFAULT_MAX_FRAMES,
            target_frame_errors: Self::DEFAULT_TARGET_ERRORS,
            base_seed: 0,
            bp: BpConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return domain("the parameter grid is empty");
        }
        for &x in &self.grid {
            match self.channel {
                Channel::Bec if !(0.0..=1.0).contains(&x) => {
                    return domain(format!("erasure probability {x} is outside [0, 1]"))
                }
                Channel::Awgn if !x.is_finite() => return domain(format!("Eb/N0 {x} dB is not finite")),
                _ => {}
            }
        }
        if self.target_frame_errors == 0 {
            return domain("the target number of frame errors must be at least 1");
        }
        if self.max_frames == 0 {
            return domain("max_frames must be at least 1");
        }
        Ok(())
    }
}

/// Result at one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SimRecord {
    pub channel: Channel,
    pub param: f64,
    pub decoder: DecoderKind,
    pub frames: u64,
    pub frame_errors: u64,
    pub fer: f64,
    /// Half-width of the normal-approximation 95% interval.
    pub ci95: f64,
    /// Seed of this grid point.
    pub seed: u64,
    pub wall_time: Duration,
}

impl SimRecord {
    pub const CSV_HEADER: &'static str = "channel,param,decoder,rpc_rows,frames,frame_errors,fer,ci95,seed";

    /// One CSV line. The wall time is left out so equal runs give equal bytes.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:e},{:e},{}",
            self.channel,
            self.param,
            self.decoder.label(),
            self.decoder.rpc_rows(),
            self.frames,
            self.frame_errors,
            self.fer,
            self.ci95,
            self.seed
        )
    }
}

pub fn records_to_csv(records: &[SimRecord]) -> String {
    let mut out = format!("{}\n", SimRecord::CSV_HEADER);
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Plot data: one `curve,x,y` line per point, the curve named after the
/// decoder (`rpc8` for RPC with 8 rows). Points with no errors are skipped
/// since they have no place on a log axis.
pub fn records_to_plot(records: &[SimRecord]) -> String {
    let mut out = String::from("curve,x,y\n");
    for r in records.iter().filter(|r| r.frame_errors > 0) {
        let curve = match r.decoder {
            DecoderKind::Rpc(t) => format!("rpc{t}"),
            d => d.label().to_string(),
        };
        out.push_str(&format!("{curve},{},{:e}\n", r.param, r.fer));
    }
    out
}

/// Half-width `1.96·sqrt(p(1−p)/N)`.
pub fn ci95(frame_errors: u64, frames: u64) -> f64 {
    if frames == 0 {
        return 0.0;
    }
    let p = frame_errors as f64 / frames as f64;
    1.96 * (p * (1.0 - p) / frames as f64).sqrt()
}

/// Noise variance per real dimension, `1/(2·R·Eb/N0)` with `R = k/n`.
pub fn awgn_sigma2(rate: f64, ebno_db: f64) -> f64 {
    1.0 / (2.0 * rate * 10f64.powf(ebno_db / 10.0))
}

/// Draws uniform codewords from a generator matrix.
struct CodewordSource {
    generator: BitMatrix,
    n: usize,
}

impl CodewordSource {
    fn new(code: &LinearCode) -> Self {
        CodewordSource {
            generator: code.generator(),
            n: code.n(),
        }
    }

    fn draw(&self, rng: &mut WorkbenchRng) -> Vec<u8> {
        let mut acc = vec![0u64; self.generator.stride()];
        for i in 0..self.generator.rows() {
            if rng.random::<bool>() {
                for (a, w) in acc.iter_mut().zip(self.generator.row_words(i)) {
                    *a ^= w;
                }
            }
        }
        unpack_bits(&acc, self.n)
    }
}

/// Decodes one frame; the code passed is the one the decoder works on.
enum Engine {
    Bec(fn(&LinearCode, &BecFrame) -> DecodeOutcome),
    AwgnBp(BpConfig),
    AwgnMl,
}

fn peel(code: &LinearCode, frame: &BecFrame) -> DecodeOutcome {
    bp_peel_bec(code, frame, code.n() + 1)
}

/// Runs the sweep point by point. Each point stops after
/// `target_frame_errors` errors or `max_frames` frames.
pub fn run_sweep(code: &LinearCode, spec: &SweepSpec) -> Result<Vec<SimRecord>> {
    spec.validate()?;
    let decoding_code = match spec.decoder {
        DecoderKind::Rpc(t) => extend_rpc_auto(code, t, &Budget::from_now(Duration::from_secs(Budget::DEFAULT_SECONDS)))?,
        _ => code.clone(),
    };
    let engine = match (spec.channel, spec.decoder) {
        (Channel::Bec, DecoderKind::Ml) => Engine::Bec(ml_bec),
        (Channel::Bec, _) => Engine::Bec(peel),
        (Channel::Awgn, DecoderKind::Ml) => {
            if code.k() > ML_AWGN_MAX_DIM {
                return domain(format!(
                    "ML decoding over AWGN needs k <= {ML_AWGN_MAX_DIM}, the code has k = {}",
                    code.k()
                ));
            }
            Engine::AwgnMl
        }
        (Channel::Awgn, _) => Engine::AwgnBp(spec.bp),
    };
    if spec.channel == Channel::Awgn && code.k() == 0 {
        return domain("the AWGN rate normalization needs k >= 1");
    }
    let source = CodewordSource::new(code);
    let mut records = Vec::with_capacity(spec.grid.len());
    for (point, &param) in spec.grid.iter().enumerate() {
        let started = Instant::now();
        let point_seed = derive_seed(spec.base_seed, point as u64);
        let sigma2 = awgn_sigma2(code.rate(), param);
        let (mut frames, mut errors) = (0u64, 0u64);
        while frames < spec.max_frames && errors < spec.target_frame_errors {
            let mut rng = seeded(derive_seed(point_seed, frames));
            let x = source.draw(&mut rng);
            debug_assert!(code.h().annihilates_packed(&pack_bits(&x)));
            let correct = match &engine {
                Engine::Bec(decode) => {
                    let f = BecFrame::transmit(x, param, &mut rng);
                    decode(&decoding_code, &f).is_correct(f.transmitted())
                }
                Engine::AwgnBp(cfg) => {
                    let f = AwgnFrame::transmit(x, sigma2, &mut rng)?;
                    bp_sumproduct_awgn(&decoding_code, &f, cfg)?.is_correct(f.transmitted())
                }
                Engine::AwgnMl => {
                    let f = AwgnFrame::transmit(x, sigma2, &mut rng)?;
                    ml_awgn_exhaustive(code, &f)?.is_correct(f.transmitted())
                }
            };
            frames += 1;
            errors += !correct as u64;
        }
        records.push(SimRecord {
            channel: spec.channel,
            param,
            decoder: spec.decoder,
            frames,
            frame_errors: errors,
            fer: errors as f64 / frames as f64,
            ci95: ci95(errors, frames),
            seed: point_seed,
            wall_time: started.elapsed(),
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures;
    use crate::structure::{is_ml_decodable, is_stopping_set};

    fn spec(channel: Channel, grid: &[f64], decoder: DecoderKind, frames: u64) -> SweepSpec {
        SweepSpec {
            max_frames: frames,
            target_frame_errors: u64::MAX,
            base_seed: 5,
            ..SweepSpec::new(channel, grid.to_vec(), decoder)
        }
    }

    #[test]
    fn erasure_extremes() {
        let c = fixtures::hamming84();
        for d in [DecoderKind::Bp, DecoderKind::Ml, DecoderKind::Rpc(3)] {
            let r = run_sweep(&c, &spec(Channel::Bec, &[0.0, 1.0], d, 500)).unwrap();
            assert_eq!((r[0].frames, r[0].fer), (500, 0.0));
            assert_eq!(r[1].fer, 1.0);
        }
    }

    /// Exact BEC failure probability of a decoder that fails on exactly the
    /// patterns selected by `fails`.
    fn exact_fer(n: usize, eps: f64, fails: impl Fn(&[usize]) -> bool) -> f64 {
        (0u32..1 << n)
            .map(|m| {
                let e: Vec<usize> = (0..n).filter(|&j| m >> j & 1 == 1).collect();
                if fails(&e) {
                    eps.powi(e.len() as i32) * (1.0 - eps).powi((n - e.len()) as i32)
                } else {
                    0.0
                }
            })
            .sum()
    }

    #[test]
    fn bec_fer_matches_enumeration() {
        let c = fixtures::hamming84();
        let eps = 0.3;
        // peeling fails iff the pattern contains a nonempty stopping set
        let bp_exact = exact_fer(8, eps, |e| {
            (1u32..1 << e.len()).any(|sub| {
                let s: Vec<usize> = (0..e.len()).filter(|&i| sub >> i & 1 == 1).map(|i| e[i]).collect();
                is_stopping_set(c.h(), &s)
            })
        });
        let ml_exact = exact_fer(8, eps, |e| !is_ml_decodable(&c, e));
        for (d, exact) in [(DecoderKind::Bp, bp_exact), (DecoderKind::Ml, ml_exact)] {
            let r = &run_sweep(&c, &spec(Channel::Bec, &[eps], d, 20_000)).unwrap()[0];
            assert!((r.fer - exact).abs() <= 3.0 * r.ci95, "{d:?}: {} vs {exact}", r.fer);
        }
    }

    #[test]
    fn paired_frames_ml_errors_within_bp_errors() {
        let c = fixtures::qc48();
        let s = spec(Channel::Bec, &[0.35, 0.45], DecoderKind::Bp, 3000);
        let bp = run_sweep(&c, &s).unwrap();
        let ml = run_sweep(&c, &SweepSpec { decoder: DecoderKind::Ml, ..s.clone() }).unwrap();
        let rpc0 = run_sweep(&c, &SweepSpec { decoder: DecoderKind::Rpc(0), ..s }).unwrap();
        for i in 0..2 {
            assert!(ml[i].frame_errors <= bp[i].frame_errors);
            assert_eq!(rpc0[i].frame_errors, bp[i].frame_errors);
            assert_eq!(rpc0[i].seed, bp[i].seed);
        }
        assert!(bp[0].fer <= bp[1].fer + 3.0 * (bp[0].ci95 + bp[1].ci95));
    }

    #[test]
    fn reproducible_and_stops_at_target() {
        let c = fixtures::hamming84();
        let s = SweepSpec {
            max_frames: 100_000,
            target_frame_errors: 10,
            base_seed: 9,
            ..SweepSpec::new(Channel::Awgn, vec![1.0, 2.0], DecoderKind::Bp)
        };
        let a = run_sweep(&c, &s).unwrap();
        let b = run_sweep(&c, &s).unwrap();
        assert_eq!(records_to_csv(&a), records_to_csv(&b));
        assert!(a.iter().all(|r| r.frame_errors == 10));
        let ml = run_sweep(&c, &SweepSpec { decoder: DecoderKind::Ml, ..s }).unwrap();
        assert!(ml.iter().all(|r| r.frame_errors == 10));
    }

    #[test]
    fn invalid_specs() {
        let c = fixtures::hamming84();
        assert!(run_sweep(&c, &spec(Channel::Bec, &[], DecoderKind::Bp, 10)).is_err());
        assert!(run_sweep(&c, &spec(Channel::Bec, &[1.2], DecoderKind::Bp, 10)).is_err());
        assert!(run_sweep(&c, &spec(Channel::Awgn, &[f64::NAN], DecoderKind::Bp, 10)).is_err());
        let mut s = spec(Channel::Bec, &[0.1], DecoderKind::Bp, 10);
        s.target_frame_errors = 0;
        assert!(run_sweep(&c, &s).is_err());
    }

    #[test]
    fn csv_and_plot_shapes() {
        let c = fixtures::hamming84();
        let r = run_sweep(&c, &spec(Channel::Bec, &[0.0, 0.5], DecoderKind::Rpc(2), 200)).unwrap();
        let csv = records_to_csv(&r);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SimRecord::CSV_HEADER);
        assert!(lines[1].starts_with("bec,0,rpc,2,200,0,"));
        let plot = records_to_plot(&r);
        assert_eq!(plot.lines().count(), 2);
        assert!(plot.lines().nth(1).unwrap().starts_with("rpc2,0.5,"));
    }

    #[test]
    fn sigma_and_interval() {
        assert!((awgn_sigma2(0.5, 0.0) - 1.0).abs() < 1e-15);
        assert!((awgn_sigma2(0.5, 10.0) - 0.1).abs() < 1e-15);
        assert_eq!(ci95(0, 100), 0.0);
        assert!((ci95(50, 100) - 0.098).abs() < 1e-12);
    }
}
