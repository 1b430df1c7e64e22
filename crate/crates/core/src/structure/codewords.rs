//! Enumeration of the nonzero words of a binary linear span.
//!
//! Two strategies: a Gray-code sweep over all `2^k − 1` nonzero combinations
//! of a basis (used when `k ≤ EXHAUSTIVE_MAX_DIM`), and an information-set
//! search that combines at most `t` rows of a systematic basis. The second is
//! exact for every word of weight at most `t`, since such a word has at most
//! `t` ones on the information positions.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::error::{domain, Error, Result};
use crate::gf2::{self, lex_cmp, weight_of, BitMatrix};

/// Largest dimension swept exhaustively.
pub const EXHAUSTIVE_MAX_DIM: usize = 30;

/// Wall-clock budget for the expensive searches.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub const DEFAULT_SECONDS: u64 = 60;

    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn from_now(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
        }
    }

    pub fn check(&self, what: &str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget(format!("{what} ran past its time limit"))),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_now(Duration::from_secs(Self::DEFAULT_SECONDS))
    }
}

const CHECK_EVERY: u64 = 1 << 20;

/// Calls `f` on every nonzero word of the row span of `basis` (rows must be
/// independent), in Gray-code order.
pub fn for_each_span_word(basis: &BitMatrix, budget: &Budget, mut f: impl FnMut(&[u64])) -> Result<()> {
    let k = basis.rows();
    if k > EXHAUSTIVE_MAX_DIM {
        return domain(format!("dimension {k} exceeds the exhaustive limit {EXHAUSTIVE_MAX_DIM}"));
    }
    let total: u64 = 1 << k;
    if basis.stride() == 1 {
        let rows: Vec<u64> = (0..k).map(|i| basis.row_words(i)[0]).collect();
        let mut cw = 0u64;
        for i in 1..total {
            cw ^= rows[i.trailing_zeros() as usize];
            f(std::slice::from_ref(&cw));
            if i % CHECK_EVERY == 0 {
                budget.check("codeword sweep")?;
            }
        }
    } else {
        let mut cw = vec![0u64; basis.stride()];
        for i in 1..total {
            for (a, b) in cw.iter_mut().zip(basis.row_words(i.trailing_zeros() as usize)) {
                *a ^= b;
            }
            f(&cw);
            if i % CHECK_EVERY == 0 {
                budget.check("codeword sweep")?;
            }
        }
    }
    Ok(())
}

/// Weight distribution `A_0..A_n` of the row span of `basis`.
pub fn span_weight_distribution(basis: &BitMatrix, budget: &Budget) -> Result<Vec<u64>> {
    let mut dist = vec![0u64; basis.cols() + 1];
    dist[0] = 1;
    for_each_span_word(basis, budget, |w| dist[weight_of(w)] += 1)?;
    Ok(dist)
}

/// Systematic basis: RREF rows plus their pivot (information) columns.
fn systematic(basis: &BitMatrix) -> (BitMatrix, Vec<usize>) {
    let rref = gf2::rank_and_rref(basis);
    let mut rows = BitMatrix::zeros(0, basis.cols());
    for i in 0..rref.rank {
        rows.push_row(rref.reduced.row_words(i));
    }
    (rows, rref.pivot_cols)
}

/// Calls `f` on every word formed by XOR-ing between 1 and `t` distinct rows
/// of `basis`.
fn for_each_small_combination(basis: &BitMatrix, t: usize, budget: &Budget, f: &mut dyn FnMut(&[u64])) -> Result<()> {
    fn rec(
        basis: &BitMatrix,
        start: usize,
        left: usize,
        acc: &mut Vec<u64>,
        budget: &Budget,
        counter: &mut u64,
        f: &mut dyn FnMut(&[u64]),
    ) -> Result<()> {
        for i in start..basis.rows() {
            for (a, b) in acc.iter_mut().zip(basis.row_words(i)) {
                *a ^= b;
            }
            f(acc);
            *counter += 1;
            if *counter % CHECK_EVERY == 0 {
                budget.check("information-set search")?;
            }
            if left > 1 {
                rec(basis, i + 1, left - 1, acc, budget, counter, f)?;
            }
            for (a, b) in acc.iter_mut().zip(basis.row_words(i)) {
                *a ^= b;
            }
        }
        Ok(())
    }
    let mut acc = vec![0u64; basis.stride()];
    let mut counter = 0;
    if t > 0 {
        rec(basis, 0, t, &mut acc, budget, &mut counter, f)?;
    }
    Ok(())
}

fn binomial_sum(k: usize, t: usize) -> f64 {
    let mut total = 0.0;
    let mut c = 1.0;
    for i in 1..=t.min(k) {
        c *= (k - i + 1) as f64 / i as f64;
        total += c;
    }
    total
}

/// Minimum weight and its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinWeight {
    pub weight: usize,
    pub multiplicity: u64,
}

/// Minimum nonzero weight of the row span of `basis` (any spanning set).
///
/// Exhaustive when the dimension is at most [`EXHAUSTIVE_MAX_DIM`]; otherwise
/// the information-set search up to `cap`, returning
/// [`Error::CapExceeded`] when no word of weight `≤ cap` exists.
pub fn span_min_weight(basis: &BitMatrix, cap: Option<usize>, budget: &Budget, what: &'static str) -> Result<MinWeight> {
    let (sys, _) = systematic(basis);
    if sys.rows() == 0 {
        return domain(format!("{what}: the span is trivial"));
    }
    if sys.rows() <= EXHAUSTIVE_MAX_DIM {
        let dist = span_weight_distribution(&sys, budget)?;
        let (w, &c) = dist.iter().enumerate().skip(1).find(|(_, &c)| c > 0).expect("nonzero span");
        return Ok(MinWeight {
            weight: w,
            multiplicity: c,
        });
    }
    let Some(cap) = cap else {
        return domain(format!(
            "{what}: dimension {} needs a weight cap for the information-set search",
            sys.rows()
        ));
    };
    let mut best = MinWeight {
        weight: usize::MAX,
        multiplicity: 0,
    };
    for_each_small_combination(&sys, cap, budget, &mut |w| {
        let wt = weight_of(w);
        if wt <= cap {
            match wt.cmp(&best.weight) {
                Ordering::Less => best = MinWeight { weight: wt, multiplicity: 1 },
                Ordering::Equal => best.multiplicity += 1,
                Ordering::Greater => {}
            }
        }
    })?;
    if best.weight == usize::MAX {
        Err(Error::CapExceeded {
            what,
            lower_bound: cap + 1,
        })
    } else {
        Ok(best)
    }
}

/// All nonzero words of weight `≤ max_weight` in the row span of `basis`,
/// sorted by weight, then lexicographically (column 0 first, 0 < 1).
pub fn low_weight_span_words(basis: &BitMatrix, max_weight: usize, budget: &Budget) -> Result<Vec<Vec<u64>>> {
    let (sys, _) = systematic(basis);
    let k = sys.rows();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut keep = |w: &[u64]| {
        if weight_of(w) <= max_weight {
            out.push(w.to_vec());
        }
    };
    let sweep_cost = if k <= EXHAUSTIVE_MAX_DIM { (1u64 << k) as f64 } else { f64::INFINITY };
    if sweep_cost <= binomial_sum(k, max_weight) {
        for_each_span_word(&sys, budget, keep)?;
    } else {
        for_each_small_combination(&sys, max_weight, budget, &mut keep)?;
    }
    out.sort_by(|a, b| weight_of(a).cmp(&weight_of(b)).then_with(|| lex_cmp(a, b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming_h() -> BitMatrix {
        BitMatrix::from_strs(&["11111111", "00001111", "00110011", "01010101"]).unwrap()
    }

    #[test]
    fn hamming_distribution() {
        let d = span_weight_distribution(&hamming_h(), &Budget::unlimited()).unwrap();
        let mut want = vec![0u64; 9];
        want[0] = 1;
        want[4] = 14;
        want[8] = 1;
        assert_eq!(d, want);
    }

    #[test]
    fn strategies_agree() {
        let h = hamming_h();
        let b = Budget::unlimited();
        let sweep = span_min_weight(&h, None, &b, "d").unwrap();
        assert_eq!(sweep, MinWeight { weight: 4, multiplicity: 14 });
        let (sys, _) = systematic(&h);
        let mut combos = Vec::new();
        for_each_small_combination(&sys, 4, &b, &mut |w| combos.push(w.to_vec())).unwrap();
        assert_eq!(combos.len(), 15);
        let mut low = low_weight_span_words(&h, 4, &b).unwrap();
        assert_eq!(low.len(), 14);
        low.dedup();
        assert_eq!(low.len(), 14);
    }

    #[test]
    fn sorted_by_weight_then_lex() {
        let h = hamming_h();
        let words = low_weight_span_words(&h, 8, &Budget::unlimited()).unwrap();
        assert_eq!(words.len(), 15);
        for pair in words.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            assert!(weight_of(a) < weight_of(b) || (weight_of(a) == weight_of(b) && lex_cmp(a, b) == Ordering::Less));
        }
    }

    #[test]
    fn expired_budget_fails() {
        let b = Budget::from_now(Duration::from_secs(0));
        std::thread::sleep(Duration::from_millis(5));
        let big = BitMatrix::identity(22);
        assert!(matches!(span_weight_distribution(&big, &b), Err(Error::Budget(_))));
    }
}
