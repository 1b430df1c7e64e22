//! Sum-product and exhaustive ML decoding over the AWGN channel on the
//! bundled QC code (k = 26 is within reach of the ML decoder, slowly).
//!
//! `cargo run --release --example awgn_decoding [ml_frames]`

use ldpc_workbench::codes::fixtures;
use ldpc_workbench::sim::{records_to_csv, run_sweep, Channel, DecoderKind, SweepSpec};

fn main() -> ldpc_workbench::Result<()> {
    let ml_frames: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20);
    let code = fixtures::qc48();
    let grid = vec![1.0, 2.0, 3.0, 4.0];
    let bp = SweepSpec {
        max_frames: 20_000,
        target_frame_errors: 100,
        base_seed: 5,
        ..SweepSpec::new(Channel::Awgn, grid.clone(), DecoderKind::Bp)
    };
    print!("{}", records_to_csv(&run_sweep(&code, &bp)?));
    let ml = SweepSpec {
        max_frames: ml_frames,
        decoder: DecoderKind::Ml,
        ..bp
    };
    for r in run_sweep(&code, &ml)? {
        println!("ml {} dB: {}/{} frame errors", r.param, r.frame_errors, r.frames);
    }
    Ok(())
}
