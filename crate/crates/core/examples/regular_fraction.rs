//! Monte Carlo frequency of regular matrices in the RU ensemble compared
//! with `exp(-(K-1)(J-1)/2)`.
//!
//! `cargo run --release --example regular_fraction [draws] [n]`

use ldpc_workbench::codes::build_ru;
use ldpc_workbench::spectra::regular_fraction;

fn main() -> ldpc_workbench::Result<()> {
    let mut args = std::env::args().skip(1);
    let draws: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(48);
    for (j, k) in [(2, 4), (3, 6), (4, 8)] {
        if (j * n) % k != 0 {
            continue;
        }
        let mut regular = 0u64;
        for seed in 0..draws {
            regular += build_ru(j, k, n, seed)?.1 as u64;
        }
        let p = regular as f64 / draws as f64;
        let p0 = regular_fraction(j, k);
        let sigma = (p0 * (1.0 - p0) / draws as f64).sqrt();
        println!(
            "J={j} K={k} n={n}: empirical {p:.5} +- {:.5}, formula {p0:.5}, z = {:.2}",
            1.96 * (p * (1.0 - p) / draws as f64).sqrt(),
            (p - p0) / sigma
        );
    }
    Ok(())
}
