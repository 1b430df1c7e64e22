//! Small reference codes and the bundled length-48 matrices.

use super::{qc_expand_circulant, read_alist, LinearCode, QcPolynomialMatrix};
use crate::error::{domain, Result};
use rand::Rng;

use crate::gf2::{self, weight_of, BitMatrix, XorBasis};
use crate::structure::{low_weight_span_words, span_min_weight, Budget};

const XQR48_ALIST: &str = include_str!("../../fixtures/xqr48.alist");
const QC48_EXPONENTS: &str = include_str!("../../fixtures/qc48.qc");

/// The [8,4,4] extended Hamming code with its standard parity-check matrix
/// (all-ones row followed by the three coordinate-bit rows).
pub fn hamming84() -> LinearCode {
    LinearCode::new(BitMatrix::from_strs(&["11111111", "00001111", "00110011", "01010101"]).expect("valid rows"))
}

/// The `[n,1]` repetition code, `H` with rows `e_0 + e_i`.
pub fn repetition(n: usize) -> LinearCode {
    assert!(n >= 2, "repetition code needs n >= 2");
    let mut h = BitMatrix::zeros(n - 1, n);
    for i in 1..n {
        h.set(i - 1, 0, true);
        h.set(i - 1, i, true);
    }
    LinearCode::new(h)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The extended quadratic-residue code of length `p + 1` for a prime
/// `p ≡ 7 (mod 8)`. Such a code is self-dual, so the returned `H` (a basis
/// in reduced echelon form) is also a generator matrix.
///
/// The length-`p` code is generated by one of the idempotents built from
/// the residues or non-residues; the one whose cyclic shifts span a space of
/// dimension `(p+1)/2` is used, and every word gets an overall parity bit.
pub fn extended_qr(p: usize) -> Result<LinearCode> {
    if !is_prime(p) || p % 8 != 7 {
        return domain(format!("extended QR construction needs a prime p = 7 mod 8, got {p}"));
    }
    let mut residue = vec![false; p];
    for x in 1..p {
        residue[x * x % p] = true;
    }
    let dim = p.div_ceil(2);
    let idempotents = [
        (0..p).map(|i| i != 0 && residue[i]).collect::<Vec<_>>(),
        (0..p).map(|i| i != 0 && !residue[i]).collect(),
        (0..p).map(|i| i == 0 || residue[i]).collect(),
        (0..p).map(|i| i == 0 || !residue[i]).collect(),
    ];
    for e in &idempotents {
        let mut g = BitMatrix::zeros(p, p + 1);
        for s in 0..p {
            let mut parity = false;
            for i in 0..p {
                if e[i] {
                    g.set(s, (i + s) % p, true);
                    parity ^= true;
                }
            }
            g.set(s, p, parity);
        }
        let basis = gf2::row_space_basis(&g);
        if basis.rows() == dim {
            return Ok(LinearCode::new(basis));
        }
    }
    domain(format!("no idempotent of length {p} spans dimension {dim}"))
}

/// A parity-check matrix of the same code made of minimum-weight dual
/// codewords.
///
/// Rows are picked greedily, each independent of the previous ones, keeping
/// column weights within `⌈rank·w/n⌉` where possible and minimizing the
/// largest overlap with rows already chosen, then the sum of squared
/// overlaps; remaining ties go to the lexicographically first word. The
/// result is then polished by seeded simulated annealing over single-row
/// swaps that keep full rank, lowering the spread
/// `Σ_j (colweight_j − rank·w/n)²` of the column weights.
pub fn sparse_form(code: &LinearCode, seed: u64, budget: &Budget) -> Result<LinearCode> {
    let h = code.h();
    let rank = code.rank();
    if rank == 0 {
        return Ok(LinearCode::new(BitMatrix::zeros(0, code.n())));
    }
    let d = span_min_weight(h, None, budget, "dual distance")?.weight;
    let words = low_weight_span_words(h, d, budget)?;
    let cap = (rank * d).div_ceil(code.n());
    let mut rows = sparse_attempt(h.stride(), code.n(), rank, &words, cap, budget)?;
    polish(&mut rows, &words, code.n(), (rank * d) as f64 / code.n() as f64, seed, budget)?;
    debug_assert!(rows.iter().all(|w| weight_of(w) == d));
    Ok(LinearCode::new(BitMatrix::from_packed_rows(code.n(), &rows)))
}

const ANNEAL_STEPS: u64 = 4_000_000;

/// Simulated annealing over single-row swaps that keep the rows
/// independent, on the spread `Σ_j (colweight_j − target)²`.
fn polish(rows: &mut [Vec<u64>], words: &[Vec<u64>], n: usize, target: f64, seed: u64, budget: &Budget) -> Result<()> {
    let supports: Vec<Vec<usize>> = words.iter().map(|w| gf2::support_of(w)).collect();
    let mut col_weight = vec![0i64; n];
    for r in rows.iter() {
        for j in gf2::support_of(r) {
            col_weight[j] += 1;
        }
    }
    let cost = |cw: &[i64]| cw.iter().map(|&c| (c as f64 - target).powi(2)).sum::<f64>();
    let floor = n as f64 * (target - target.floor()) * (target.ceil() - target);
    let mut current = cost(&col_weight);
    let mut rng = crate::rng::seeded(seed);
    let (t0, t1) = (2.0f64, 0.02f64);
    for step in 0..ANNEAL_STEPS {
        if current <= floor + 1e-9 {
            break;
        }
        if step % (1 << 16) == 0 {
            budget.check("sparse form")?;
        }
        let temp = t0 * (t1 / t0).powf(step as f64 / ANNEAL_STEPS as f64);
        let i = rng.random_range(0..rows.len());
        let wi = rng.random_range(0..words.len());
        let old = gf2::support_of(&rows[i]);
        // change of Σ (c − t)² when each touched column moves by ±1
        let mut delta = 0.0;
        let mut touched: Vec<(usize, i64)> = old.iter().map(|&j| (j, -1)).collect();
        for &j in &supports[wi] {
            match touched.iter_mut().find(|(k, _)| *k == j) {
                Some(e) => e.1 += 1,
                None => touched.push((j, 1)),
            }
        }
        for &(j, dv) in &touched {
            let c = col_weight[j] as f64 - target;
            delta += (c + dv as f64).powi(2) - c * c;
        }
        if delta > 0.0 && rng.random::<f64>() >= (-delta / temp).exp() {
            continue;
        }
        if rows.iter().any(|r| *r == words[wi]) {
            continue;
        }
        let mut basis = XorBasis::new(rows[i].len());
        for (k, r) in rows.iter().enumerate() {
            if k != i {
                basis.insert(r);
            }
        }
        if basis.contains(&words[wi]) {
            continue;
        }
        for &(j, dv) in &touched {
            col_weight[j] += dv;
        }
        rows[i] = words[wi].clone();
        current += delta;
    }
    Ok(())
}

fn sparse_attempt(
    stride: usize,
    n: usize,
    rank: usize,
    words: &[Vec<u64>],
    cap: usize,
    budget: &Budget,
) -> Result<Vec<Vec<u64>>> {
    let mut col_weight = vec![0usize; n];
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    let mut basis = XorBasis::new(stride);
    while chosen.len() < rank {
        budget.check("sparse form")?;
        let mut best: Option<((bool, usize, usize), &Vec<u64>)> = None;
        for w in words {
            if basis.contains(w) {
                continue;
            }
            let over_cap = gf2::support_of(w).iter().any(|&j| col_weight[j] >= cap);
            let overlaps = chosen
                .iter()
                .map(|c| c.iter().zip(w).map(|(a, b)| (a & b).count_ones() as usize).sum::<usize>());
            let (max, sq) = overlaps.fold((0, 0), |(m, s), o| (m.max(o), s + o * o));
            let key = (over_cap, max, sq);
            // words come in lexicographic order, so the first minimum wins ties
            if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                best = Some((key, w));
            }
        }
        let Some((_, w)) = best else {
            return domain("minimum-weight dual codewords do not span the dual code");
        };
        for j in gf2::support_of(w) {
            col_weight[j] += 1;
        }
        basis.insert(w);
        chosen.push(w.clone());
    }
    Ok(chosen)
}

/// Bundled [48,24,12] extended QR code in sparse form: 24 rows of weight 12.
pub fn xqr48() -> LinearCode {
    LinearCode::new(read_alist(XQR48_ALIST).expect("bundled alist is valid"))
}

/// Exponent matrix of the bundled (3,6)-regular QC code, lifting degree 8.
pub fn qc48_exponents() -> QcPolynomialMatrix {
    QcPolynomialMatrix::parse(QC48_EXPONENTS).expect("bundled exponent file is valid")
}

/// Bundled (3,6)-regular QC LDPC code of length 48 (circulant expansion of
/// [`qc48_exponents`]). Its `H` has rank 22, so `k = 26`.
pub fn qc48() -> LinearCode {
    qc_expand_circulant(&qc48_exponents()).expect("lifting exceeds memory")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{min_distance, same_row_space};

    #[test]
    fn hamming_shape() {
        let c = hamming84();
        assert_eq!((c.n(), c.k(), c.rank()), (8, 4, 4));
    }

    #[test]
    fn repetition_shape() {
        let c = repetition(5);
        assert_eq!(c.k(), 1);
        assert!(c.is_codeword(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn extended_qr_small_cases() {
        // p = 7 gives the [8,4,4] extended Hamming code
        let c = extended_qr(7).unwrap();
        assert_eq!((c.n(), c.k()), (8, 4));
        let d = min_distance(&c, None, &Budget::unlimited()).unwrap();
        assert_eq!((d.weight, d.multiplicity), (4, 14));
        // p = 23 gives the extended Golay code
        let g = extended_qr(23).unwrap();
        assert_eq!((g.n(), g.k()), (24, 12));
        let d = min_distance(&g, None, &Budget::unlimited()).unwrap();
        assert_eq!((d.weight, d.multiplicity), (8, 759));
        assert!(extended_qr(17).is_err());
        assert!(extended_qr(15).is_err());
    }

    #[test]
    fn sparse_form_of_golay() {
        let g = extended_qr(23).unwrap();
        let s = sparse_form(&g, 1, &Budget::unlimited()).unwrap();
        assert_eq!(s.r(), 12);
        assert_eq!(s.rank(), 12);
        assert!(s.h().row_weights().iter().all(|&w| w == 8));
        assert!(same_row_space(g.h(), s.h()));
    }

    #[test]
    fn bundled_xqr48() {
        let c = xqr48();
        assert_eq!((c.n(), c.r(), c.rank(), c.k()), (48, 24, 24, 24));
        assert!(c.h().row_weights().iter().all(|&w| w == 12));
        let reference = extended_qr(47).unwrap();
        assert!(same_row_space(reference.h(), c.h()));
    }

    #[test]
    fn bundled_qc48() {
        let q = qc48_exponents();
        assert_eq!((q.b(), q.c(), q.lifting()), (3, 6, 8));
        let c = qc48();
        assert_eq!((c.n(), c.r(), c.rank(), c.k()), (48, 24, 22, 26));
        let p = c.degree_profile();
        assert!(p.is_regular());
        assert_eq!(p.label(), "3,6");
        assert_eq!(crate::structure::girth(&c), Some(6));
    }
}
