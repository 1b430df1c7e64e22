use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{binomial, compose, g_poly, g_stop_poly, phi_poly, poly_power_coeffs};
use crate::error::{domain, parse, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    /// Codeword weights.
    Weight,
    /// Stopping-set sizes.
    Stopping,
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumKind::Weight => "weight",
            SpectrumKind::Stopping => "stopping",
        })
    }
}

impl FromStr for SpectrumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "weight" => Ok(SpectrumKind::Weight),
            "stopping" | "stop" => Ok(SpectrumKind::Stopping),
            _ => parse(format!("unknown spectrum kind {s:?}")),
        }
    }
}

/// Parameters of a Gallager-type ensemble of binary images of `q`-ary
/// `(J,K)`-regular codes of `q`-ary length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ensemble {
    pub j: usize,
    pub k: usize,
    pub q: u64,
    pub n: usize,
}

/// Exact nonnegative coefficients `S_0..S_{n_bits}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub kind: SpectrumKind,
    pub ensemble: Option<Ensemble>,
    coeffs: Vec<BigRational>,
}

impl SpectrumTable {
    pub fn new(kind: SpectrumKind, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("a spectrum needs at least the coefficient S_0");
        }
        if coeffs.iter().any(|c| c.is_negative()) {
            return domain("spectrum coefficients must be nonnegative");
        }
        Ok(SpectrumTable {
            kind,
            ensemble: None,
            coeffs,
        })
    }

    /// Spectrum of one code from integer counts.
    pub fn from_counts(kind: SpectrumKind, counts: &[u64]) -> Result<Self> {
        Self::new(kind, counts.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// Binary length.
    pub fn n_bits(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn get(&self, w: usize) -> &BigRational {
        &self.coeffs[w]
    }

    /// Smallest `w ≥ 1` with `S_w > 0`.
    pub fn first_nonzero(&self) -> Option<usize> {
        (1..self.coeffs.len()).find(|&w| !self.coeffs[w].is_zero())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
    }

    pub const CSV_HEADER: &'static str = "kind,w,s_w,s_w_exact";

    /// Rows `kind,w,s_w,s_w_exact`: a float with 17 significant digits and
    /// the exact rational `p/q` (or integer).
    pub fn to_csv_rows(&self) -> String {
        let mut out = String::new();
        for (w, c) in self.coeffs.iter().enumerate() {
            let approx = c.to_f64().unwrap_or(f64::INFINITY);
            out.push_str(&format!("{},{w},{approx:.16e},{c}\n", self.kind));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}", Self::CSV_HEADER, self.to_csv_rows())
    }

    /// Reads every spectrum in a CSV produced by [`Self::to_csv`] (one per
    /// kind, rows of a kind in increasing `w` starting at 0).
    pub fn parse_csv(text: &str) -> Result<Vec<SpectrumTable>> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty spectrum file".into()))?;
        if header != Self::CSV_HEADER {
            return parse(format!("spectrum header must be {:?}, got {header:?}", Self::CSV_HEADER));
        }
        let mut tables: Vec<(SpectrumKind, Vec<BigRational>)> = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            let [kind, w, _, exact] = fields[..] else {
                return parse(format!("spectrum row needs 4 fields: {line:?}"));
            };
            let kind: SpectrumKind = kind.parse()?;
            let w: usize = w.parse().map_err(|_| Error::Parse(format!("bad weight {w:?}")))?;
            let value = parse_rational(exact)?;
            let coeffs = match tables.iter_mut().find(|(k, _)| *k == kind) {
                Some((_, c)) => c,
                None => {
                    tables.push((kind, Vec::new()));
                    &mut tables.last_mut().expect("just pushed").1
                }
            };
            if w != coeffs.len() {
                return parse(format!("{kind} spectrum rows must have w = 0, 1, 2, ... in order"));
            }
            coeffs.push(value);
        }
        tables
            .into_iter()
            .map(|(kind, coeffs)| Self::new(kind, coeffs).map_err(|e| Error::Parse(e.to_string())))
            .collect()
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Exact ensemble-average weight or stopping-set spectrum
/// `E{A_w} = C(nm,w)^{1−J} N_w^J`, where `N_w` are the coefficients of
/// `(f(φ(s)))^{n/K}` and `f` is `g` (weights) or `g_stop` (stopping sets).
pub fn ensemble_avg_spectrum(j: usize, k: usize, q: u64, n: usize, kind: SpectrumKind) -> Result<SpectrumTable> {
    if j == 0 {
        return domain("the column degree J must be at least 1");
    }
    if k < 2 || n % k != 0 {
        return domain(format!("K = {k} must be at least 2 and divide n = {n}"));
    }
    if q < 2 || !q.is_power_of_two() {
        return domain(format!("q must be a power of two >= 2, got {q}"));
    }
    let m = q.trailing_zeros();
    let factor = match kind {
        SpectrumKind::Weight => g_poly(k, q)?,
        SpectrumKind::Stopping => g_stop_poly(k, q)?,
    };
    let per_check = compose(&factor, &phi_poly(m)?)?;
    let n_bits = n * m as usize;
    let strip = poly_power_coeffs(&per_check, n / k, n_bits)?;
    let coeffs = (0..=n_bits)
        .map(|w| {
            let nw = strip.coeff(w);
            if nw.is_zero() {
                return BigRational::zero();
            }
            let c = BigRational::from_integer(binomial(n_bits, w));
            // C^{1−J} N^J = N · (N / C)^{J−1}
            let ratio = &nw / &c;
            nw * num_traits::pow(ratio, j - 1)
        })
        .collect();
    let mut table = SpectrumTable::new(kind, coeffs)?;
    table.ensemble = Some(Ensemble { j, k, q, n });
    debug_assert!(table.coeffs[0] == BigRational::one());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn hand_value() {
        let s = ensemble_avg_spectrum(2, 2, 2, 4, SpectrumKind::Weight).unwrap();
        assert_eq!(s.n_bits(), 4);
        assert_eq!(*s.get(2), rat(2, 3));
        assert_eq!(*s.get(0), rat(1, 1));
    }

    #[test]
    fn zero_coefficient_is_one() {
        for (j, k, q, n) in [(3, 6, 2, 24), (2, 4, 4, 8), (3, 6, 16, 12)] {
            for kind in [SpectrumKind::Weight, SpectrumKind::Stopping] {
                let s = ensemble_avg_spectrum(j, k, q, n, kind).unwrap();
                assert_eq!(*s.get(0), rat(1, 1));
            }
        }
    }

    #[test]
    fn no_binary_stopping_sets_of_size_one() {
        let s = ensemble_avg_spectrum(3, 6, 2, 48, SpectrumKind::Stopping).unwrap();
        assert!(s.get(1).is_zero());
    }

    #[test]
    fn stopping_dominates_weight() {
        for (j, k, q, n) in [(3, 6, 2, 24), (2, 4, 4, 8), (3, 6, 16, 6)] {
            let w = ensemble_avg_spectrum(j, k, q, n, SpectrumKind::Weight).unwrap();
            let s = ensemble_avg_spectrum(j, k, q, n, SpectrumKind::Stopping).unwrap();
            for i in 0..=w.n_bits() {
                assert!(s.get(i) >= w.get(i), "w = {i}");
            }
        }
    }

    #[test]
    fn binary_weight_probabilities_are_probabilities() {
        let s = ensemble_avg_spectrum(1, 6, 2, 24, SpectrumKind::Weight).unwrap();
        for w in 0..=24 {
            let p = s.get(w) / BigRational::from_integer(binomial(24, w));
            assert!(p >= BigRational::zero() && p <= BigRational::one());
        }
    }

    #[test]
    fn csv_round_trip() {
        let a = ensemble_avg_spectrum(2, 4, 4, 8, SpectrumKind::Weight).unwrap();
        let b = ensemble_avg_spectrum(2, 4, 4, 8, SpectrumKind::Stopping).unwrap();
        let text = format!("{}\n{}", SpectrumTable::CSV_HEADER, a.to_csv_rows() + &b.to_csv_rows());
        let back = SpectrumTable::parse_csv(&text).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].coeffs(), a.coeffs());
        assert_eq!(back[1].coeffs(), b.coeffs());
        assert_eq!(back[1].kind, SpectrumKind::Stopping);
        assert!(SpectrumTable::parse_csv("kind,w\n").is_err());
        assert!(SpectrumTable::parse_csv(&format!("{}\nweight,1,0,0\n", SpectrumTable::CSV_HEADER)).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ensemble_avg_spectrum(3, 5, 2, 24, SpectrumKind::Weight).is_err());
        assert!(ensemble_avg_spectrum(3, 6, 3, 24, SpectrumKind::Weight).is_err());
        assert!(ensemble_avg_spectrum(0, 6, 2, 24, SpectrumKind::Weight).is_err());
    }
}
