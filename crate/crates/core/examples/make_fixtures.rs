//! Regenerates the bundled length-48 fixtures in `fixtures/`.
//!
//! * `xqr48.alist`: the [48,24,12] extended QR code in sparse form (24
//!   independent rows of weight 12). An exactly (6,12)-regular full-rank
//!   matrix cannot exist: even column weights would make the rows sum to 0.
//! * `qc48.qc`: a 3x6 all-nonzero exponent matrix with lifting degree 8,
//!   girth at least 6, best by (d_min, A_dmin) among the searched candidates.
//!
//! Run with `cargo run --release --example make_fixtures [candidates]`.

use std::path::PathBuf;

use rand::seq::SliceRandom;

use ldpc_workbench::codes::{fixtures, qc_expand_circulant, write_alist, QcPolynomialMatrix};
use ldpc_workbench::rng::seeded;
use ldpc_workbench::structure::{best_candidate, girth, min_distance, Budget};
use ldpc_workbench::Error;

const LIFTING: usize = 8;
const SEARCH_SEED: u64 = 48;

/// All exponent matrices `[0; x; y]` with `x_0 = y_0 = 0` and `x` increasing
/// whose circulant expansion has no 4-cycles: the entries of `x`, of `y` and
/// of `y − x` are each distinct mod `M`.
fn four_cycle_free() -> Vec<Vec<Vec<i64>>> {
    let m = LIFTING as i64;
    let mut out = Vec::new();
    let mut x = vec![0i64];
    fn pick_x(x: &mut Vec<i64>, m: i64, out: &mut Vec<Vec<Vec<i64>>>) {
        if x.len() == 6 {
            let mut y = vec![0i64];
            pick_y(x, &mut y, m, out);
            return;
        }
        for v in x.last().unwrap() + 1..m {
            x.push(v);
            pick_x(x, m, out);
            x.pop();
        }
    }
    fn pick_y(x: &[i64], y: &mut Vec<i64>, m: i64, out: &mut Vec<Vec<Vec<i64>>>) {
        let j = y.len();
        if j == 6 {
            out.push(vec![vec![0; 6], x.to_vec(), y.clone()]);
            return;
        }
        for v in 0..m {
            let diff = (v - x[j]).rem_euclid(m);
            if y.contains(&v) || (0..j).any(|i| (y[i] - x[i]).rem_euclid(m) == diff) {
                continue;
            }
            y.push(v);
            pick_y(x, y, m, out);
            y.pop();
        }
    }
    pick_x(&mut x, m, &mut out);
    out
}

fn main() -> Result<(), Error> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let candidates: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(200);
    let budget = Budget::unlimited();

    let xqr = fixtures::extended_qr(47)?;
    let d = min_distance(&xqr, None, &budget)?;
    println!("extended QR: n={} k={} d={} A={}", xqr.n(), xqr.k(), d.weight, d.multiplicity);
    let sparse = fixtures::sparse_form(&xqr, SEARCH_SEED, &budget)?;
    println!(
        "sparse form: rows={} rank={} profile={}",
        sparse.r(),
        sparse.rank(),
        sparse.degree_profile().label()
    );
    std::fs::write(dir.join("xqr48.alist"), write_alist(sparse.h()))?;

    if std::env::args().any(|a| a == "--xqr-only") {
        return Ok(());
    }
    let mut pool = four_cycle_free();
    println!("{} exponent matrices without 4-cycles", pool.len());
    pool.shuffle(&mut seeded(SEARCH_SEED));
    pool.truncate(candidates as usize);
    let mut next = pool.iter();
    let best = best_candidate(pool.len() as u64, SEARCH_SEED, None, &budget, |_| {
        let q = QcPolynomialMatrix::from_exponents(3, 6, LIFTING, next.next().expect("one per candidate"))?;
        qc_expand_circulant(&q)
    })?;
    let q = QcPolynomialMatrix::from_exponents(3, 6, LIFTING, &pool[best.index as usize])?;
    println!(
        "QC candidate {}: k={} d={} A={} girth={:?}",
        best.index,
        best.code.k(),
        best.distance.weight,
        best.distance.multiplicity,
        girth(&best.code)
    );
    std::fs::write(dir.join("qc48.qc"), q.to_string())?;
    Ok(())
}
