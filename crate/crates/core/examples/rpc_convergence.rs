//! BP over the BEC on parity-check matrices extended with redundant rows:
//! FER and stopping-set census as the number of extra rows grows.
//!
//! `cargo run --release --example rpc_convergence`

use std::time::Duration;

use ldpc_workbench::codes::fixtures;
use ldpc_workbench::sim::{run_sweep, Channel, DecoderKind, SweepSpec};
use ldpc_workbench::structure::{enumerate_stopping_sets, extend_rpc_auto, Budget};

fn main() -> ldpc_workbench::Result<()> {
    let budget = Budget::from_now(Duration::from_secs(300));
    for (name, code) in [("qc48", fixtures::qc48()), ("xqr48", fixtures::xqr48())] {
        let ml = SweepSpec {
            max_frames: 20_000,
            target_frame_errors: u64::MAX,
            base_seed: 3,
            ..SweepSpec::new(Channel::Bec, vec![0.35], DecoderKind::Ml)
        };
        let ml_fer = run_sweep(&code, &ml)?[0].fer;
        println!("{name}: ML FER at eps=0.35 is {ml_fer:.4}");
        for t in [0, 8, 32, 128, 512] {
            let spec = SweepSpec {
                decoder: DecoderKind::Rpc(t),
                ..ml.clone()
            };
            let fer = run_sweep(&code, &spec)?[0].fer;
            let census = enumerate_stopping_sets(&extend_rpc_auto(&code, t, &budget)?, 5, &budget)?;
            println!("  rows +{t:<4} FER {fer:.4}  stopping sets of size <= 5: {:?}", census.counts());
        }
    }
    Ok(())
}
