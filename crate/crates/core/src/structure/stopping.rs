//! Stopping sets: column subsets whose induced submatrix has no row of
//! weight one.

use std::collections::HashSet;

use rand::seq::index;

use super::codewords::Budget;
use crate::codes::LinearCode;
use crate::error::{domain, Error, Result};
use crate::gf2::{self, words_for, BitMatrix};
use crate::rng;

/// A set of column indices, sorted increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StoppingSet {
    pub columns: Vec<usize>,
}

impl StoppingSet {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

/// Per-column row incidence, packed, for bit-sliced row-weight tracking.
///
/// For a column set `S` the state is a pair of row bitsets: `one` (rows that
/// meet `S` exactly once) and `many` (rows meeting it at least twice). `S` is
/// a stopping set iff `one` is empty.
pub(crate) struct Incidence {
    words: usize,
    cols: Vec<Vec<u64>>,
}

impl Incidence {
    pub(crate) fn new(h: &BitMatrix) -> Self {
        Incidence {
            words: words_for(h.rows().max(1)),
            cols: (0..h.cols()).map(|j| h.column_packed(j)).collect(),
        }
    }

    #[inline]
    fn add(&self, one: &[u64], many: &[u64], col: usize, new_one: &mut [u64], new_many: &mut [u64]) {
        let c = &self.cols[col];
        for w in 0..self.words {
            let m = many[w] | (one[w] & c[w]);
            new_many[w] = m;
            new_one[w] = (one[w] ^ c[w]) & !m;
        }
    }

    fn state_of(&self, cols: &[usize]) -> (Vec<u64>, Vec<u64>) {
        let mut one = vec![0u64; self.words];
        let mut many = vec![0u64; self.words];
        let (mut o2, mut m2) = (one.clone(), many.clone());
        for &c in cols {
            self.add(&one, &many, c, &mut o2, &mut m2);
            std::mem::swap(&mut one, &mut o2);
            std::mem::swap(&mut many, &mut m2);
        }
        (one, many)
    }
}

/// True iff no row of `h` restricted to `cols` has weight exactly one.
pub fn is_stopping_set(h: &BitMatrix, cols: &[usize]) -> bool {
    let inc = Incidence::new(h);
    let (one, _) = inc.state_of(cols);
    one.iter().all(|&w| w == 0)
}

/// True iff the columns of `H` indexed by `cols` are linearly independent,
/// i.e. erasing exactly these positions leaves a unique ML completion.
pub fn is_ml_decodable(code: &LinearCode, cols: &[usize]) -> bool {
    gf2::column_rank(code.h(), cols) == cols.len()
}

/// Size and one witness of the smallest nonempty stopping set, searched up to
/// size `cap`.
///
/// Iterative deepening over the size bound. A partial set with smallest column
/// `c0` is extended only by branching on a row that currently meets it once:
/// some column of that row, larger than `c0` and not yet chosen, must be
/// added. The branching row is the one with fewest such candidates.
pub fn stopping_distance(code: &LinearCode, cap: usize, budget: &Budget) -> Result<(usize, StoppingSet)> {
    let h = code.h();
    let inc = Incidence::new(h);
    let max_col_degree = code.var_neighbors().iter().map(Vec::len).max().unwrap_or(0).max(1);
    let mut counter = 0u64;
    for bound in 1..=cap.min(code.n()) {
        for c0 in 0..code.n() {
            let (one, many) = inc.state_of(&[c0]);
            let mut set = vec![c0];
            if let Some(found) =
                branch(code, &inc, &one, &many, &mut set, bound, max_col_degree, budget, &mut counter)?
            {
                let mut columns = found;
                columns.sort_unstable();
                return Ok((columns.len(), StoppingSet { columns }));
            }
        }
    }
    Err(Error::CapExceeded {
        what: "stopping distance",
        lower_bound: cap.min(code.n()) + 1,
    })
}

#[allow(clippy::too_many_arguments)]
fn branch(
    code: &LinearCode,
    inc: &Incidence,
    one: &[u64],
    many: &[u64],
    set: &mut Vec<usize>,
    bound: usize,
    max_col_degree: usize,
    budget: &Budget,
    counter: &mut u64,
) -> Result<Option<Vec<usize>>> {
    *counter += 1;
    if *counter % (1 << 16) == 0 {
        budget.check("stopping distance search")?;
    }
    let open = gf2::support_of(one);
    if open.is_empty() {
        return Ok(Some(set.clone()));
    }
    let room = bound - set.len();
    if room == 0 || open.len() > room * max_col_degree {
        return Ok(None);
    }
    let c0 = set[0];
    let candidates = |row: usize| -> Vec<usize> {
        code.check_neighbors()[row]
            .iter()
            .copied()
            .filter(|&c| c > c0 && !set.contains(&c))
            .collect()
    };
    let Some(best) = open.iter().map(|&r| candidates(r)).min_by_key(Vec::len) else {
        return Ok(None);
    };
    let mut new_one = vec![0u64; one.len()];
    let mut new_many = vec![0u64; many.len()];
    for c in best {
        inc.add(one, many, c, &mut new_one, &mut new_many);
        set.push(c);
        let found = branch(code, inc, &new_one, &new_many, set, bound, max_col_degree, budget, counter)?;
        set.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Every stopping set of size `1..=max_size`, indexed by size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StoppingCensus {
    /// `by_size[s]` lists the stopping sets of size `s` in lexicographic order;
    /// `by_size[0]` is always empty.
    pub by_size: Vec<Vec<StoppingSet>>,
}

impl StoppingCensus {
    pub fn max_size(&self) -> usize {
        self.by_size.len().saturating_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_size.iter().map(Vec::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StoppingSet> {
        self.by_size.iter().flatten()
    }

    pub fn total(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }
}

/// Exhaustive census of stopping sets up to `max_size`.
///
/// For each smallest column `c0` the search grows a set from `{c0}`: while
/// some row meets the set exactly once, one of that row's other columns must
/// join; once no such row is left the set is recorded and any larger column
/// may join. A branch is cut when the open rows outnumber what the remaining
/// columns can cover, and each intermediate set is expanded once.
pub fn enumerate_stopping_sets(code: &LinearCode, max_size: usize, budget: &Budget) -> Result<StoppingCensus> {
    let inc = Incidence::new(code.h());
    let n = code.n();
    let max_size = max_size.min(n);
    let mut census = StoppingCensus {
        by_size: vec![Vec::new(); max_size + 1],
    };
    if max_size == 0 {
        return Ok(census);
    }
    let max_col_degree = code.var_neighbors().iter().map(Vec::len).max().unwrap_or(0).max(1);
    let mut search = Census {
        code,
        inc: &inc,
        max_size,
        max_col_degree,
        seen: HashSet::new(),
        budget,
        counter: 0,
    };
    for c0 in 0..n {
        search.seen.clear();
        let (one, many) = inc.state_of(&[c0]);
        let mut set = vec![c0];
        search.grow(&one, &many, &mut set, &mut census)?;
    }
    for sets in &mut census.by_size {
        sets.sort_unstable();
    }
    Ok(census)
}

struct Census<'a> {
    code: &'a LinearCode,
    inc: &'a Incidence,
    max_size: usize,
    max_col_degree: usize,
    /// Sets with the current smallest column that were already expanded.
    seen: HashSet<Vec<usize>>,
    budget: &'a Budget,
    counter: u64,
}

impl Census<'_> {
    fn grow(&mut self, one: &[u64], many: &[u64], set: &mut Vec<usize>, census: &mut StoppingCensus) -> Result<()> {
        let mut key = set.clone();
        key.sort_unstable();
        if !self.seen.insert(key.clone()) {
            return Ok(());
        }
        self.counter += 1;
        if self.counter % (1 << 16) == 0 {
            self.budget.check("stopping-set census")?;
        }
        let open = gf2::support_of(one);
        let room = self.max_size - set.len();
        if open.is_empty() {
            census.by_size[set.len()].push(StoppingSet { columns: key });
        } else if open.len() > room * self.max_col_degree {
            return Ok(());
        }
        if room == 0 {
            return Ok(());
        }
        let c0 = set[0];
        let next: Vec<usize> = if open.is_empty() {
            (c0 + 1..self.code.n()).filter(|c| !set.contains(c)).collect()
        } else {
            open.iter()
                .map(|&r| {
                    self.code.check_neighbors()[r]
                        .iter()
                        .copied()
                        .filter(|&c| c > c0 && !set.contains(&c))
                        .collect::<Vec<usize>>()
                })
                .min_by_key(Vec::len)
                .expect("open rows exist")
        };
        let mut new_one = vec![0u64; one.len()];
        let mut new_many = vec![0u64; many.len()];
        for c in next {
            self.inc.add(one, many, c, &mut new_one, &mut new_many);
            set.push(c);
            self.grow(&new_one.clone(), &new_many.clone(), set, census)?;
            set.pop();
        }
        Ok(())
    }
}

/// Sampled estimate of `u_i`, the number of ML-decodable stopping sets of
/// size `i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UEstimate {
    pub size: usize,
    pub samples: u64,
    pub hits: u64,
    /// `C(n, i) · hits / samples`.
    pub estimate: f64,
    /// 95% normal-approximation half-width on the estimate.
    pub half_width: f64,
}

/// Draws `samples` uniform `i`-subsets and counts the ML-decodable stopping
/// sets among them.
pub fn sample_u(code: &LinearCode, i: usize, samples: u64, seed: u64) -> Result<UEstimate> {
    if i == 0 || i > code.n() {
        return domain(format!("subset size {i} outside 1..={}", code.n()));
    }
    if samples == 0 {
        return domain("need at least one sample");
    }
    let inc = Incidence::new(code.h());
    let mut rng = rng::seeded(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let cols = index::sample(&mut rng, code.n(), i).into_vec();
        let (one, _) = inc.state_of(&cols);
        if one.iter().all(|&x| x == 0) && is_ml_decodable(code, &cols) {
            hits += 1;
        }
    }
    let total = binomial_f64(code.n(), i);
    let p = hits as f64 / samples as f64;
    Ok(UEstimate {
        size: i,
        samples,
        hits,
        estimate: total * p,
        half_width: total * 1.96 * (p * (1.0 - p) / samples as f64).sqrt(),
    })
}

pub(crate) fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fixtures;

    fn brute_force_stopping(h: &BitMatrix, max: usize) -> Vec<Vec<usize>> {
        let n = h.cols();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let cols: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            if cols.len() > max {
                continue;
            }
            let ok = (0..h.rows()).all(|i| cols.iter().filter(|&&j| h.get(i, j)).count() != 1);
            if ok {
                out.push(cols);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn zero_column_is_a_stopping_set() {
        let c = LinearCode::new(BitMatrix::from_strs(&["1101", "0101"]).unwrap());
        let (d, w) = stopping_distance(&c, 4, &Budget::unlimited()).unwrap();
        assert_eq!(d, 1);
        assert_eq!(w.columns, vec![2]);
    }

    #[test]
    fn hamming_matches_brute_force() {
        let c = fixtures::hamming84();
        let brute = brute_force_stopping(c.h(), 8);
        let census = enumerate_stopping_sets(&c, 8, &Budget::unlimited()).unwrap();
        let mut got: Vec<Vec<usize>> = census.iter().map(|s| s.columns.clone()).collect();
        got.sort();
        assert_eq!(got, brute);
        let smallest = brute.iter().map(Vec::len).min().unwrap();
        let (d, w) = stopping_distance(&c, 8, &Budget::unlimited()).unwrap();
        assert_eq!(d, smallest);
        assert!(is_stopping_set(c.h(), &w.columns));
        for s in 1..d {
            assert!(census.by_size[s].is_empty());
        }
    }

    #[test]
    fn sparse_codes_match_brute_force() {
        for seed in 0..4 {
            let c = crate::codes::build_gallager(2, 4, 16, seed).unwrap();
            let brute = brute_force_stopping(c.h(), 7);
            let census = enumerate_stopping_sets(&c, 7, &Budget::unlimited()).unwrap();
            let got: Vec<Vec<usize>> = census.iter().map(|s| s.columns.clone()).collect();
            let mut sorted = got.clone();
            sorted.sort();
            assert_eq!(sorted, brute, "seed {seed}");
            for sets in &census.by_size {
                assert!(sets.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn union_of_disjoint_stopping_sets() {
        let c = fixtures::hamming84();
        let census = enumerate_stopping_sets(&c, 4, &Budget::unlimited()).unwrap();
        let sets: Vec<&StoppingSet> = census.iter().collect();
        let mut checked = 0;
        for a in &sets {
            for b in &sets {
                if a.columns.iter().all(|x| !b.columns.contains(x)) {
                    let mut u = a.columns.clone();
                    u.extend(&b.columns);
                    assert!(is_stopping_set(c.h(), &u));
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn ml_decodable_examples() {
        let c = fixtures::hamming84();
        // support of codeword 11110000 (row0 + row1)
        assert!(!is_ml_decodable(&c, &[0, 1, 2, 3]));
        assert!(is_ml_decodable(&c, &[5]));
        // superset of a dependent set stays dependent
        assert!(!is_ml_decodable(&c, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn sample_u_below_stopping_distance_is_zero() {
        let c = fixtures::hamming84();
        let (d, _) = stopping_distance(&c, 8, &Budget::unlimited()).unwrap();
        if d > 1 {
            let u = sample_u(&c, d - 1, 500, 1).unwrap();
            assert_eq!(u.estimate, 0.0);
            assert_eq!(u.half_width, 0.0);
        }
    }

    #[test]
    fn sample_u_matches_exhaustive_count() {
        let c = fixtures::hamming84();
        let census = enumerate_stopping_sets(&c, 4, &Budget::unlimited()).unwrap();
        for i in 1..=4 {
            let exact = census.by_size[i].iter().filter(|s| is_ml_decodable(&c, &s.columns)).count() as f64;
            let u = sample_u(&c, i, 20_000, 17 + i as u64).unwrap();
            assert!(
                (u.estimate - exact).abs() <= u.half_width + 1e-9,
                "i={i} exact={exact} est={} hw={}",
                u.estimate,
                u.half_width
            );
        }
        let a = sample_u(&c, 4, 8_000, 5).unwrap();
        let b = sample_u(&c, 4, 16_000, 6).unwrap();
        if a.hits > 0 && b.hits > 0 {
            let ratio = a.half_width / b.half_width;
            assert!((1.2..1.65).contains(&ratio), "ratio {ratio}");
        }
    }
}
