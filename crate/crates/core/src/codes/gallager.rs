use rand::seq::SliceRandom;

use super::LinearCode;
use crate::error::{domain, Result};
use crate::gf2::BitMatrix;
use crate::rng;

/// Random `(J,K)`-regular code from the Gallager ensemble.
///
/// The matrix is `J` strips of `n/K` rows. In the first strip row `j` covers
/// columns `jK .. (j+1)K`; every further strip is that strip with its
/// columns shuffled by an independent Fisher–Yates permutation.
pub fn build_gallager(j: usize, k: usize, n: usize, seed: u64) -> Result<LinearCode> {
    if j == 0 || k == 0 || n == 0 {
        return domain("J, K and n must be positive");
    }
    if n % k != 0 {
        return domain(format!("K={k} does not divide n={n}"));
    }
    let strip_rows = n / k;
    let mut h = BitMatrix::zeros(j * strip_rows, n);
    let mut rng = rng::seeded(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for strip in 0..j {
        if strip > 0 {
            perm = (0..n).collect();
            perm.shuffle(&mut rng);
        }
        // column c of this strip is column perm[c] of the first strip
        for (c, &src) in perm.iter().enumerate() {
            h.set(strip * strip_rows + src / k, c, true);
        }
    }
    Ok(LinearCode::new(h))
}
