//! Peeling versus ML decoding over the BEC on the bundled QC code, with
//! paired frames so both decoders see the same erasures.
//!
//! `cargo run --release --example bec_decoding`

use ldpc_workbench::codes::fixtures;
use ldpc_workbench::sim::{run_sweep, Channel, DecoderKind, SweepSpec};

fn main() -> ldpc_workbench::Result<()> {
    let code = fixtures::qc48();
    let grid: Vec<f64> = (5..=10).map(|i| i as f64 * 0.05).collect();
    println!("eps    bp_fer       ml_fer");
    let spec = |decoder| SweepSpec {
        max_frames: 20_000,
        target_frame_errors: 200,
        base_seed: 11,
        ..SweepSpec::new(Channel::Bec, grid.clone(), decoder)
    };
    let bp = run_sweep(&code, &spec(DecoderKind::Bp))?;
    let ml = run_sweep(&code, &spec(DecoderKind::Ml))?;
    for (b, m) in bp.iter().zip(&ml) {
        println!("{:.2}   {:.3e}    {:.3e}", b.param, b.fer, m.fer);
    }
    Ok(())
}
