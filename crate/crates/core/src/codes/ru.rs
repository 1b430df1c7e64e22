use rand::seq::SliceRandom;

use super::LinearCode;
use crate::error::{domain, Result};
use crate::gf2::BitMatrix;
use crate::rng;

/// Random code from the Richardson–Urbanke socket ensemble.
///
/// The socket sequence `(0^J, 1^J, …, (n−1)^J)` is shuffled and cut into
/// chunks of `K`; chunk `i` lists the columns of row `i`. Returns the code and
/// whether every chunk had `K` distinct columns (the matrix is then exactly
/// `(J,K)`-regular).
pub fn build_ru(j: usize, k: usize, n: usize, seed: u64) -> Result<(LinearCode, bool)> {
    if j == 0 || k == 0 || n == 0 {
        return domain("J, K and n must be positive");
    }
    if (j * n) % k != 0 {
        return domain(format!("K={k} does not divide J·n={}", j * n));
    }
    let mut sockets: Vec<usize> = (0..n).flat_map(|c| std::iter::repeat_n(c, j)).collect();
    sockets.shuffle(&mut rng::seeded(seed));
    ru_from_sockets(&sockets, k, n)
}

/// Builds the RU matrix from an explicit (already permuted) socket sequence.
/// Repeated columns inside one chunk set a single one.
pub fn ru_from_sockets(sockets: &[usize], k: usize, n: usize) -> Result<(LinearCode, bool)> {
    if k == 0 || sockets.len() % k != 0 || sockets.is_empty() {
        return domain(format!("{} sockets cannot be cut into rows of {k}", sockets.len()));
    }
    if let Some(&bad) = sockets.iter().find(|&&c| c >= n) {
        return domain(format!("socket column {bad} out of range for n={n}"));
    }
    let rows = sockets.len() / k;
    let mut h = BitMatrix::zeros(rows, n);
    let mut regular = true;
    for (i, chunk) in sockets.chunks(k).enumerate() {
        for &c in chunk {
            if h.get(i, c) {
                regular = false;
            }
            h.set(i, c, true);
        }
    }
    Ok((LinearCode::new(h), regular))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_permutation_collapses_duplicates() {
        let (c, regular) = ru_from_sockets(&[0, 0, 1, 1], 2, 2).unwrap();
        assert!(!regular);
        assert_eq!(c.h(), &BitMatrix::from_strs(&["10", "01"]).unwrap());
    }

    #[test]
    fn regular_draws_have_exact_degrees() {
        let mut seen = 0;
        for seed in 0..2000 {
            let (c, regular) = build_ru(2, 4, 16, seed).unwrap();
            if regular {
                seen += 1;
                assert!(c.h().row_weights().iter().all(|&w| w == 4));
                assert!(c.h().col_weights().iter().all(|&w| w == 2));
            }
            assert!(c.k() >= c.n() - c.r());
        }
        assert!(seen > 0);
    }

    #[test]
    fn rejects_bad_socket_count() {
        assert!(build_ru(3, 6, 47, 0).is_err());
        assert!(build_ru(3, 6, 48, 0).is_ok());
    }
}
