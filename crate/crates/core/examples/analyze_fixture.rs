//! Structural analysis of the bundled length-48 codes: distances, stopping
//! distance, dual distance, girth and estimated stopping redundancy.
//!
//! `cargo run --release --example analyze_fixture`

use ldpc_workbench::codes::fixtures;
use ldpc_workbench::structure::{analyze, AnalysisOptions, AnalysisReport, RhoMethod};

fn main() -> ldpc_workbench::Result<()> {
    let opts = AnalysisOptions {
        rho_levels: vec![4, 5, 6],
        rho_method: RhoMethod::Sampled {
            samples: 50_000,
            seed: 1,
        },
        ..AnalysisOptions::default()
    };
    println!("code,{}", AnalysisReport::CSV_HEADER);
    for (name, code) in [("xqr48", fixtures::xqr48()), ("qc48", fixtures::qc48())] {
        let report = analyze(&code, &opts)?;
        println!("{name},{}", report.csv_row());
    }
    println!();
    print!("{}", analyze(&fixtures::xqr48(), &AnalysisOptions::default())?.key_values());
    Ok(())
}
