//! Stopping redundancy of the [8,4] extended Hamming code by the greedy
//! search over dual codewords, and the sampled and counted estimates for the
//! QC fixture.
//!
//! `cargo run --release --example stopping_redundancy`

use std::time::Duration;

use ldpc_workbench::codes::fixtures;
use ldpc_workbench::structure::{rho_hierarchy, Budget, RhoMethod};

fn main() -> ldpc_workbench::Result<()> {
    let budget = Budget::from_now(Duration::from_secs(120));
    let exact = rho_hierarchy(
        &fixtures::hamming84(),
        &[2, 3, 4],
        &RhoMethod::ExactGreedy { max_candidates: 1 << 16 },
        &budget,
    )?;
    for e in &exact.estimates {
        println!("hamming84 rho_{} = {} rows ({})", e.level, e.total_rows, e.mode);
    }
    let sampled = rho_hierarchy(
        &fixtures::qc48(),
        &[6, 7, 8, 9, 10],
        &RhoMethod::Sampled {
            samples: 100_000,
            seed: 2,
        },
        &budget,
    )?;
    for u in &sampled.u {
        println!(
            "qc48 u_{} ~ {:.1} +- {:.1} ({} hits in {} samples)",
            u.size, u.estimate, u.half_width, u.hits, u.samples
        );
    }
    // sizes with no hits contribute nothing, so rare small sets can be missed
    for e in &sampled.estimates {
        println!("qc48 rho_{} ~ {} rows ({})", e.level, e.total_rows, e.mode);
    }
    let counted = rho_hierarchy(&fixtures::qc48(), &[6, 7, 8, 9, 10], &RhoMethod::Counted, &budget)?;
    for u in &counted.u {
        println!("qc48 u_{} = {}", u.size, u.hits);
    }
    for e in &counted.estimates {
        println!("qc48 rho_{} ~ {} rows (counted, {})", e.level, e.total_rows, e.mode);
    }
    Ok(())
}
