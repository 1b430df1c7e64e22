//! Exact ensemble-average spectra and the union-type ML and BP bounds over
//! the BEC for binary and GF(2^m) (3,6)-regular ensembles of binary length 96.
//!
//! `cargo run --release --example ensemble_bounds`

use ldpc_workbench::spectra::{ensemble_avg_spectrum, parse_grid, BoundTable, SpectrumKind};

fn main() -> ldpc_workbench::Result<()> {
    let grid = parse_grid("0.2:0.05:0.5")?;
    for (q, n) in [(2u64, 96usize), (4, 48), (16, 24)] {
        let w = ensemble_avg_spectrum(3, 6, q, n, SpectrumKind::Weight)?;
        let s = ensemble_avg_spectrum(3, 6, q, n, SpectrumKind::Stopping)?;
        println!(
            "q={q} n={n}: first nonzero weight {:?}, first nonzero stopping size {:?}",
            w.first_nonzero(),
            s.first_nonzero()
        );
        print!("{}", BoundTable::from_spectra(&[w, s], &grid)?.to_csv());
        println!();
    }
    Ok(())
}
