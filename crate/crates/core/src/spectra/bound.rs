use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::spectrum::{SpectrumKind, SpectrumTable};
use crate::error::{domain, parse, Error, Result};

/// Bound value at one erasure probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPoint {
    pub eps: f64,
    /// `min(raw, 1)`.
    pub value: f64,
    pub raw: f64,
}

/// Natural log of a positive big integer, exact to float precision even when
/// the value is far outside the `f64` range.
fn ln_bigint(x: &BigInt) -> f64 {
    debug_assert!(x.sign() == Sign::Plus);
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_big(x: &BigRational) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

/// Exact coefficients `T_i = min{C(n,i), Σ_{w=d}^{i} S_w C(n−w, i−w)}`,
/// zero below `d`.
pub fn union_bound_terms(spectrum: &SpectrumTable, d: usize) -> Vec<BigRational> {
    let n = spectrum.n_bits();
    let s = spectrum.coeffs();
    // integer arithmetic over the common denominator of S_d..S_n
    let den = s[d.min(n + 1)..]
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut acc = vec![BigInt::zero(); n + 1];
    for (w, sw) in s.iter().enumerate().skip(d) {
        if sw.is_zero() {
            continue;
        }
        let a = sw.numer() * (&den / sw.denom());
        // a·C(n−w, j) for j = 0..n−w
        let mut c = BigInt::one();
        for j in 0..=n - w {
            acc[w + j] += &a * &c;
            c = c * BigInt::from(n - w - j) / BigInt::from(j + 1);
        }
    }
    let mut cap = BigInt::one();
    (0..=n)
        .map(|i| {
            let scaled_cap = &cap * &den;
            cap = &cap * BigInt::from(n - i) / BigInt::from(i + 1);
            if i < d {
                BigRational::zero()
            } else if acc[i] < scaled_cap {
                BigRational::new(acc[i].clone(), den.clone())
            } else {
                BigRational::from_integer(scaled_cap / &den)
            }
        })
        .collect()
}

/// `T · ε^i (1−ε)^{n−i}` for `0 < ε < 1`.
fn term(t: &BigRational, t_f64: f64, i: usize, n: usize, eps: f64) -> f64 {
    let tail = eps.powi(i as i32) * (1.0 - eps).powi((n - i) as i32);
    if t_f64.is_finite() && tail.is_normal() {
        t_f64 * tail
    } else {
        (ln_big(t) + i as f64 * eps.ln() + (n - i) as f64 * (-eps).ln_1p()).exp()
    }
}

/// Union-type upper bound on the BEC decoding failure probability
///
/// `P ≤ Σ_{i=d}^{n} min{C(n,i), Σ_{w=d}^{i} S_w C(n−w,i−w)} ε^i (1−ε)^{n−i}`.
///
/// With a weight spectrum this bounds ML decoding, with a stopping-set
/// spectrum it bounds BP decoding. `d` defaults to the first nonzero
/// coefficient past `S_0`; an all-zero spectrum gives the bound 0.
pub fn union_bound_bec(spectrum: &SpectrumTable, d: Option<usize>, eps_grid: &[f64]) -> Result<Vec<BoundPoint>> {
    if let Some(&bad) = eps_grid.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return domain(format!("erasure probability {bad} is outside [0, 1]"));
    }
    let n = spectrum.n_bits();
    let d = match d.or_else(|| spectrum.first_nonzero()) {
        Some(0) => return domain("the first index d of the bound must be at least 1"),
        Some(d) if d > n => return domain(format!("d = {d} exceeds the length {n}")),
        Some(d) => d,
        None => return Ok(eps_grid.iter().map(|&eps| BoundPoint { eps, value: 0.0, raw: 0.0 }).collect()),
    };
    let terms = union_bound_terms(spectrum, d);
    let as_f64: Vec<f64> = terms.iter().map(|t| t.to_f64().unwrap_or(f64::INFINITY)).collect();
    let points = eps_grid
        .iter()
        .map(|&eps| {
            let raw = if eps == 0.0 {
                0.0
            } else if eps == 1.0 {
                as_f64[n]
            } else {
                (d..=n)
                    .filter(|&i| !terms[i].is_zero())
                    .map(|i| term(&terms[i], as_f64[i], i, n, eps))
                    .sum()
            };
            BoundPoint {
                eps,
                value: raw.min(1.0),
                raw,
            }
        })
        .collect();
    Ok(points)
}

/// Approximate fraction of regular codes among RU draws,
/// `exp(−(K−1)(J−1)/2)`.
pub fn regular_fraction(j: usize, k: usize) -> f64 {
    (-((k as f64 - 1.0) * (j as f64 - 1.0)) / 2.0).exp()
}

/// Bounds for ML and BP on a shared ε grid.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundTable {
    pub eps: Vec<f64>,
    pub ml: Option<Vec<BoundPoint>>,
    pub bp: Option<Vec<BoundPoint>>,
}

impl BoundTable {
    pub const CSV_HEADER: &'static str = "eps,bound_ml,bound_bp,bound_ml_raw,bound_bp_raw";

    /// Uses the weight spectrum (if any) for ML and the stopping spectrum
    /// (if any) for BP.
    pub fn from_spectra(spectra: &[SpectrumTable], eps_grid: &[f64]) -> Result<Self> {
        let pick = |kind| spectra.iter().find(|s| s.kind == kind);
        if spectra.is_empty() {
            return domain("no spectrum given");
        }
        let ml = pick(SpectrumKind::Weight)
            .map(|s| union_bound_bec(s, None, eps_grid))
            .transpose()?;
        let bp = pick(SpectrumKind::Stopping)
            .map(|s| union_bound_bec(s, None, eps_grid))
            .transpose()?;
        Ok(BoundTable {
            eps: eps_grid.to_vec(),
            ml,
            bp,
        })
    }

    /// Missing columns are left empty.
    pub fn to_csv(&self) -> String {
        let cell = |col: &Option<Vec<BoundPoint>>, i: usize, raw: bool| match col {
            Some(points) if raw => format!("{:e}", points[i].raw),
            Some(points) => format!("{:e}", points[i].value),
            None => String::new(),
        };
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for (i, eps) in self.eps.iter().enumerate() {
            out.push_str(&format!(
                "{eps},{},{},{},{}\n",
                cell(&self.ml, i, false),
                cell(&self.bp, i, false),
                cell(&self.ml, i, true),
                cell(&self.bp, i, true)
            ));
        }
        out
    }
}

/// Parses an ε grid: comma-separated values and `start:step:stop` ranges.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
    };
    let mut out = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let pieces: Vec<&str> = part.split(':').collect();
        match pieces[..] {
            [v] => out.push(num(v)?),
            [a, step, b] => {
                let (a, step, b) = (num(a)?, num(step)?, num(b)?);
                if !(step > 0.0) || !a.is_finite() || !b.is_finite() {
                    return parse(format!("bad range {part:?}"));
                }
                let count = ((b - a) / step + 1e-9).floor();
                if count < 0.0 || count > 1e6 {
                    return parse(format!("bad range {part:?}"));
                }
                // a + i·step, rounded to 12 decimals so 0.1-style steps print cleanly
                out.extend((0..=count as usize).map(|i| ((a + i as f64 * step) * 1e12).round() / 1e12));
            }
            _ => return parse(format!("bad grid element {part:?}")),
        }
    }
    if out.is_empty() {
        return parse("empty grid");
    }
    Ok(out)
}
