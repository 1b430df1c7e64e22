//! Redundant parity checks: extending a parity-check matrix with dual
//! codewords, and upper estimates of the stopping redundancy hierarchy.

use std::collections::HashSet;
use std::fmt;

use super::codewords::{low_weight_span_words, span_weight_distribution, Budget, EXHAUSTIVE_MAX_DIM};
use super::stopping::{enumerate_stopping_sets, is_ml_decodable, sample_u, UEstimate};
use crate::codes::LinearCode;
use crate::error::{domain, Error, Result};
use crate::gf2::{self, lex_cmp, pack_bits, weight_of, BitMatrix};
use crate::rng::derive_seed;

/// Appends `extra_rows` dual codewords of weight at most `weight_budget`,
/// taken in order of increasing weight (ties lexicographic, column 0 first).
/// Codewords already present as rows of `H` are skipped. The row space is
/// unchanged.
pub fn extend_rpc(code: &LinearCode, extra_rows: usize, weight_budget: usize, budget: &Budget) -> Result<LinearCode> {
    if extra_rows == 0 {
        return Ok(code.clone());
    }
    let h = code.h();
    let existing: HashSet<&[u64]> = (0..h.rows()).map(|i| h.row_words(i)).collect();
    let words = low_weight_span_words(h, weight_budget, budget)?;
    let mut out = h.clone();
    let mut added = 0;
    for w in &words {
        if added == extra_rows {
            break;
        }
        if !existing.contains(w.as_slice()) {
            out.push_row(w);
            added += 1;
        }
    }
    if added < extra_rows {
        return Err(Error::Budget(format!(
            "only {added} new dual codewords of weight <= {weight_budget}; {extra_rows} requested"
        )));
    }
    Ok(LinearCode::new(out))
}

/// [`extend_rpc`] with the smallest weight budget that yields enough rows.
pub fn extend_rpc_auto(code: &LinearCode, extra_rows: usize, budget: &Budget) -> Result<LinearCode> {
    if extra_rows == 0 {
        return Ok(code.clone());
    }
    let h = code.h();
    let basis = gf2::row_space_basis(h);
    let mut existing_by_weight = vec![0usize; code.n() + 1];
    let distinct: HashSet<&[u64]> = (0..h.rows()).filter(|&i| !h.row_is_zero(i)).map(|i| h.row_words(i)).collect();
    for row in &distinct {
        existing_by_weight[weight_of(row)] += 1;
    }
    if basis.rows() <= EXHAUSTIVE_MAX_DIM {
        let dist = span_weight_distribution(&basis, budget)?;
        let mut available = 0u64;
        for w in 1..=code.n() {
            available += dist[w] - existing_by_weight[w] as u64;
            if available >= extra_rows as u64 {
                return extend_rpc(code, extra_rows, w, budget);
            }
        }
        return domain(format!(
            "the dual code has only {available} codewords beyond the rows of H; {extra_rows} requested"
        ));
    }
    for w in 1..=code.n() {
        match extend_rpc(code, extra_rows, w, budget) {
            Err(Error::Budget(msg)) if msg.starts_with("only") => continue,
            other => return other,
        }
    }
    domain("not enough dual codewords")
}

/// True when `extended` has the same row space as `original` (and the same
/// length), so it defines the same code.
pub fn same_row_space(original: &BitMatrix, extended: &BitMatrix) -> bool {
    if original.cols() != extended.cols() {
        return false;
    }
    let ro = gf2::rank(original);
    if gf2::rank(extended) != ro {
        return false;
    }
    let mut basis = gf2::XorBasis::new(original.stride());
    for i in 0..original.rows() {
        basis.insert(original.row_words(i));
    }
    (0..extended.rows()).all(|i| basis.contains(extended.row_words(i)))
}

/// How a stopping-redundancy number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoMode {
    /// Greedy row selection against the exhaustive census; a true upper bound.
    ExactGreedy,
    /// Expected-survivor estimate from sampled stopping-set counts.
    Approximate,
}

impl fmt::Display for RhoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RhoMode::ExactGreedy => "greedy-upper-bound",
            RhoMode::Approximate => "APPROXIMATE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoEstimate {
    pub level: usize,
    /// Rows appended to `H`.
    pub extra_rows: u64,
    /// `rows(H) + extra_rows`.
    pub total_rows: u64,
    pub mode: RhoMode,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RhoMethod {
    /// Greedy over all nonzero dual codewords; needs the full census up to
    /// the largest level and at most `max_candidates` dual codewords.
    ExactGreedy { max_candidates: usize },
    /// Sampled `u_i` with `samples` draws per size.
    Sampled { samples: u64, seed: u64 },
    /// `u_i` counted exactly from the stopping-set census, then the same
    /// expected-survivor count as `Sampled`.
    Counted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhoHierarchy {
    pub estimates: Vec<RhoEstimate>,
    /// `u_i` per size (sampled and counted modes). Counted entries have
    /// `samples == 0` and zero half-width.
    pub u: Vec<UEstimate>,
}

/// Upper estimates of `ρ_ℓ` for each requested level, nondecreasing in `ℓ`.
pub fn rho_hierarchy(code: &LinearCode, levels: &[usize], method: &RhoMethod, budget: &Budget) -> Result<RhoHierarchy> {
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    if levels.is_empty() {
        return Ok(RhoHierarchy {
            estimates: Vec::new(),
            u: Vec::new(),
        });
    }
    match method {
        RhoMethod::ExactGreedy { max_candidates } => greedy(code, &levels, *max_candidates, budget),
        RhoMethod::Sampled { samples, seed } => {
            let rank = code.rank();
            let max_level = (*levels.last().expect("nonempty")).min(rank);
            let u = (1..=max_level)
                .map(|i| sample_u(code, i, *samples, derive_seed(*seed, i as u64)))
                .collect::<Result<_>>()?;
            Ok(expected_survivors(code, &levels, u))
        }
        RhoMethod::Counted => {
            let max_level = (*levels.last().expect("nonempty")).min(code.rank());
            let census = enumerate_stopping_sets(code, max_level, budget)?;
            let mut counts = vec![0u64; max_level + 1];
            for s in census.iter().filter(|s| is_ml_decodable(code, &s.columns)) {
                counts[s.len()] += 1;
            }
            let u = (1..=max_level)
                .map(|i| UEstimate {
                    size: i,
                    samples: 0,
                    hits: counts[i],
                    estimate: counts[i] as f64,
                    half_width: 0.0,
                })
                .collect();
            Ok(expected_survivors(code, &levels, u))
        }
    }
}

fn greedy(code: &LinearCode, levels: &[usize], max_candidates: usize, budget: &Budget) -> Result<RhoHierarchy> {
    let max_level = *levels.last().expect("nonempty");
    let basis = gf2::row_space_basis(code.h());
    if basis.rows() > EXHAUSTIVE_MAX_DIM || (1u64 << basis.rows()) - 1 > max_candidates as u64 {
        return Err(Error::Budget(format!(
            "greedy mode needs all 2^{} - 1 dual codewords; limit is {max_candidates}",
            basis.rows()
        )));
    }
    let census = enumerate_stopping_sets(code, max_level, budget)?;
    // (size, packed column mask) of each surviving ML-decodable stopping set
    let mut survivors: Vec<(usize, Vec<u64>)> = census
        .iter()
        .filter(|s| is_ml_decodable(code, &s.columns))
        .map(|s| {
            let mut bits = vec![0u8; code.n()];
            for &c in &s.columns {
                bits[c] = 1;
            }
            (s.len(), pack_bits(&bits))
        })
        .collect();
    let mut candidates = low_weight_span_words(&basis, code.n(), budget)?;
    candidates.sort_by(|a, b| lex_cmp(a, b));
    let kills = |row: &[u64], mask: &[u64]| row.iter().zip(mask).map(|(a, b)| (a & b).count_ones()).sum::<u32>() == 1;

    let base_rows = code.r() as u64;
    let mut extra = 0u64;
    let mut estimates = Vec::new();
    for &level in levels {
        loop {
            budget.check("greedy stopping redundancy")?;
            if !survivors.iter().any(|(s, _)| *s <= level) {
                break;
            }
            let mut best: Option<(usize, usize)> = None;
            for (ci, cand) in candidates.iter().enumerate() {
                let k = survivors
                    .iter()
                    .filter(|(s, m)| *s <= level && kills(cand, m))
                    .count();
                if best.is_none_or(|(_, bk)| k > bk) {
                    best = Some((ci, k));
                }
            }
            let (ci, k) = best.expect("candidates nonempty");
            debug_assert!(k > 0, "an ML-decodable stopping set is always killable");
            let row = candidates[ci].clone();
            survivors.retain(|(_, m)| !kills(&row, m));
            extra += 1;
        }
        estimates.push(RhoEstimate {
            level,
            extra_rows: extra,
            total_rows: base_rows + extra,
            mode: RhoMode::ExactGreedy,
        });
    }
    Ok(RhoHierarchy {
        estimates,
        u: Vec::new(),
    })
}

/// Fraction of nonzero dual codewords with weight exactly one on a fixed
/// ML-decodable set of size `i`, for a dual code of dimension `rank`.
///
/// The columns of such a set are independent, so restriction of the dual
/// code onto the set is onto `GF(2)^i`: every pattern is hit by `2^(rank−i)`
/// codewords, and `i` patterns have weight one.
pub fn kill_probability(i: usize, rank: usize) -> f64 {
    if i == 0 || i > rank {
        return 0.0;
    }
    // i·2^(rank−i) / (2^rank − 1)
    let num = (i as f64).ln() + (rank - i) as f64 * std::f64::consts::LN_2;
    let den = rank as f64 * std::f64::consts::LN_2 + (-(0.5f64.powi(rank as i32))).ln_1p();
    (num - den).exp()
}

fn expected_survivors(code: &LinearCode, levels: &[usize], u: Vec<UEstimate>) -> RhoHierarchy {
    let rank = code.rank();
    let base_rows = code.r() as u64;
    let estimates = levels
        .iter()
        .map(|&level| {
            let terms: Vec<(f64, f64)> = u
                .iter()
                .filter(|e| e.size <= level && e.estimate > 0.0)
                .map(|e| (e.estimate, kill_probability(e.size, rank)))
                .collect();
            let t = smallest_sufficient_rows(&terms);
            RhoEstimate {
                level,
                extra_rows: t,
                total_rows: base_rows + t,
                mode: RhoMode::Approximate,
            }
        })
        .collect();
    RhoHierarchy { estimates, u }
}

/// Smallest `t ≥ 0` with `Σ u_i (1 − p_i)^t < 1`.
fn smallest_sufficient_rows(terms: &[(f64, f64)]) -> u64 {
    let expected = |t: u64| -> f64 { terms.iter().map(|&(u, p)| u * ((1.0 - p).ln() * t as f64).exp()).sum() };
    if expected(0) < 1.0 {
        return 0;
    }
    let mut hi = 1u64;
    while expected(hi) >= 1.0 {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // expected(lo) >= 1 > expected(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if expected(mid) < 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures;
    use crate::structure::stopping::is_stopping_set;

    #[test]
    fn zero_rows_is_identity() {
        let c = fixtures::hamming84();
        assert_eq!(extend_rpc(&c, 0, 8, &Budget::unlimited()).unwrap(), c);
    }

    #[test]
    fn appended_rows_are_dual_codewords_in_weight_order() {
        let c = fixtures::hamming84();
        let e = extend_rpc(&c, 6, 8, &Budget::unlimited()).unwrap();
        assert_eq!(e.r(), 10);
        assert!(same_row_space(c.h(), e.h()));
        let g = c.generator();
        let weights: Vec<usize> = (4..10).map(|i| e.h().row_weight(i)).collect();
        assert!(weights.windows(2).all(|w| w[0] <= w[1]));
        for i in 4..10 {
            for j in 0..g.rows() {
                assert!(!gf2::dot(e.h().row_words(i), g.row_words(j)));
            }
            for j in 0..4 {
                assert_ne!(e.h().row_words(i), c.h().row_words(j));
            }
        }
    }

    #[test]
    fn full_dual_and_shortage() {
        let c = fixtures::hamming84();
        let full = extend_rpc(&c, 11, 8, &Budget::unlimited()).unwrap();
        assert_eq!(full.r(), 15);
        assert!(extend_rpc(&c, 12, 8, &Budget::unlimited()).is_err());
        assert!(extend_rpc(&c, 11, 3, &Budget::unlimited()).is_err());
        assert!(extend_rpc(&c, 12, 4, &Budget::unlimited()).is_err());
        let auto = extend_rpc_auto(&c, 11, &Budget::unlimited()).unwrap();
        assert_eq!(auto, full);
    }

    #[test]
    fn stopping_family_shrinks() {
        let c = fixtures::hamming84();
        let b = Budget::unlimited();
        let before = enumerate_stopping_sets(&c, 4, &b).unwrap();
        for t in 0..=11 {
            let e = extend_rpc(&c, t, 8, &b).unwrap();
            let after = enumerate_stopping_sets(&e, 4, &b).unwrap();
            for s in after.iter() {
                assert!(before.by_size[s.len()].contains(s));
            }
        }
    }

    #[test]
    fn kill_probability_values() {
        assert_eq!(kill_probability(0, 4), 0.0);
        assert_eq!(kill_probability(5, 4), 0.0);
        // i=1, rank=1: the single nonzero codeword has weight 1 on the set
        assert!((kill_probability(1, 1) - 1.0).abs() < 1e-12);
        // i=2, rank=4: 2·4/15
        assert!((kill_probability(2, 4) - 8.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn kill_probability_matches_enumeration() {
        let c = fixtures::hamming84();
        let duals = low_weight_span_words(c.h(), 8, &Budget::unlimited()).unwrap();
        for set in [vec![0usize, 1, 2], vec![0, 1, 2, 4], vec![3]] {
            assert!(is_ml_decodable(&c, &set));
            let hits = duals
                .iter()
                .filter(|w| set.iter().filter(|&&j| (w[0] >> j) & 1 == 1).count() == 1)
                .count();
            let p = hits as f64 / duals.len() as f64;
            assert!((p - kill_probability(set.len(), 4)).abs() < 1e-12);
        }
    }

    #[test]
    fn sufficient_rows_search() {
        assert_eq!(smallest_sufficient_rows(&[]), 0);
        assert_eq!(smallest_sufficient_rows(&[(0.5, 0.1)]), 0);
        // 4·(1/2)^t < 1 first at t = 3
        assert_eq!(smallest_sufficient_rows(&[(4.0, 0.5)]), 3);
    }

    /// Smallest number of dual codewords forming a full-rank matrix without
    /// ML-decodable stopping sets of size ≤ level, by exhaustive search.
    fn exact_min_rows(c: &LinearCode, level: usize) -> usize {
        let duals = low_weight_span_words(c.h(), 8, &Budget::unlimited()).unwrap();
        let n = c.n();
        let mut targets = Vec::new();
        for mask in 1u32..(1 << n) {
            let cols: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            if cols.len() <= level && is_ml_decodable(c, &cols) {
                targets.push(cols);
            }
        }
        for size in 1..=duals.len() {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let mut h = BitMatrix::zeros(0, n);
                for &i in &idx {
                    h.push_row(&duals[i]);
                }
                if gf2::rank(&h) == c.rank() && targets.iter().all(|s| !is_stopping_set(&h, s)) {
                    return size;
                }
                // next combination
                let mut i = size;
                while i > 0 && idx[i - 1] == duals.len() - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..size {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        unreachable!("the full dual always works")
    }

    #[test]
    fn greedy_bounds_exact_minimum() {
        let c = fixtures::hamming84();
        let b = Budget::unlimited();
        let h = rho_hierarchy(&c, &[1, 2, 3, 4], &RhoMethod::ExactGreedy { max_candidates: 1 << 10 }, &b).unwrap();
        let totals: Vec<u64> = h.estimates.iter().map(|e| e.total_rows).collect();
        assert!(totals.windows(2).all(|w| w[0] <= w[1]));
        let greedy4 = h.estimates.iter().find(|e| e.level == 4).unwrap().total_rows;
        let exact4 = exact_min_rows(&c, 4) as u64;
        assert!(greedy4 >= exact4, "greedy {greedy4} < exact {exact4}");
        for e in &h.estimates {
            assert_eq!(e.mode, RhoMode::ExactGreedy);
        }
    }

    #[test]
    fn below_stopping_distance_needs_nothing() {
        let c = fixtures::hamming84();
        let (d, _) = crate::structure::stopping_distance(&c, 8, &Budget::unlimited()).unwrap();
        let level = d - 1;
        if level >= 1 {
            let g = rho_hierarchy(&c, &[level], &RhoMethod::ExactGreedy { max_candidates: 1 << 10 }, &Budget::unlimited())
                .unwrap();
            assert_eq!(g.estimates[0].extra_rows, 0);
            let s = rho_hierarchy(&c, &[level], &RhoMethod::Sampled { samples: 1000, seed: 3 }, &Budget::unlimited())
                .unwrap();
            assert_eq!(s.estimates[0].extra_rows, 0);
            assert_eq!(s.estimates[0].mode, RhoMode::Approximate);
        }
    }

    #[test]
    fn sampled_is_monotone() {
        let c = fixtures::hamming84();
        let s = rho_hierarchy(&c, &[4, 2, 3], &RhoMethod::Sampled { samples: 4000, seed: 9 }, &Budget::unlimited())
            .unwrap();
        let t: Vec<u64> = s.estimates.iter().map(|e| e.extra_rows).collect();
        assert!(t.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(s.estimates.iter().map(|e| e.level).collect::<Vec<_>>(), vec![2, 3, 4]);
    }

    #[test]
    fn counted_u_matches_brute_force() {
        let c = fixtures::hamming84();
        let h = rho_hierarchy(&c, &[3, 4], &RhoMethod::Counted, &Budget::unlimited()).unwrap();
        for u in &h.u {
            let mut count = 0;
            for mask in 1u32..(1 << 8) {
                if mask.count_ones() as usize != u.size {
                    continue;
                }
                let cols: Vec<usize> = (0..8).filter(|&j| mask >> j & 1 == 1).collect();
                if is_stopping_set(c.h(), &cols) && is_ml_decodable(&c, &cols) {
                    count += 1;
                }
            }
            assert_eq!(u.hits, count, "size {}", u.size);
            assert_eq!(u.samples, 0);
        }
        let t: Vec<u64> = h.estimates.iter().map(|e| e.extra_rows).collect();
        assert!(t[0] <= t[1]);
        assert!(h.estimates.iter().all(|e| e.mode == RhoMode::Approximate));
    }
}
