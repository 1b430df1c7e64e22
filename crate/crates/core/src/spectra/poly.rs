//! Generating functions with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// A polynomial `Σ c_w s^w` over the rationals, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPoly {
    coeffs: Vec<BigRational>,
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl GenPoly {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        GenPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// The monomial `s`.
    pub fn identity() -> Self {
        Self::from_integers(&[0, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `s^w` (zero beyond the degree).
    pub fn coeff(&self, w: usize) -> BigRational {
        self.coeffs.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Product, keeping coefficients up to `max_deg`.
    pub fn mul_truncated(&self, other: &GenPoly, max_deg: usize) -> GenPoly {
        let deg = (self.degree() + other.degree()).min(max_deg);
        let mut out = vec![BigRational::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > deg {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        GenPoly::new(out)
    }

    pub fn mul(&self, other: &GenPoly) -> GenPoly {
        self.mul_truncated(other, self.degree() + other.degree())
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| match w {
                0 => format!("{c}"),
                1 => format!("({c})s"),
                _ => format!("({c})s^{w}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn check_q(q: u64) -> Result<u64> {
    if q < 2 || !q.is_power_of_two() {
        return domain(format!("q must be a power of two >= 2, got {q}"));
    }
    Ok(q)
}

/// `(1 + a s)^K` with `a = q − 1`, as exact coefficients `C(K,w) a^w`.
fn one_plus_power(k: usize, a: &BigInt) -> Vec<BigRational> {
    let mut pow = BigInt::one();
    (0..=k)
        .map(|w| {
            let c = BigRational::from_integer(binomial(k, w) * &pow);
            pow *= a;
            c
        })
        .collect()
}

/// Weight generating function of the `q`-ary words of length `K` satisfying
/// one check with nonzero coefficients: `((1+(q−1)s)^K + (q−1)(1−s)^K)/q`.
pub fn g_poly(k: usize, q: u64) -> Result<GenPoly> {
    if k < 2 {
        return domain(format!("check degree K must be at least 2, got {k}"));
    }
    let q = check_q(q)?;
    let a = BigInt::from(q - 1);
    let plus = one_plus_power(k, &a);
    let qr = BigRational::from_integer(BigInt::from(q));
    let ar = BigRational::from_integer(a);
    let coeffs = (0..=k)
        .map(|w| {
            let minus = BigRational::from_integer(binomial(k, w)) * if w % 2 == 0 { int(1) } else { int(-1) };
            (&plus[w] + &ar * minus) / &qr
        })
        .collect();
    Ok(GenPoly::new(coeffs))
}

/// Weight generating function of the `q`-ary words of length `K` whose
/// weight is not 1: `(1+(q−1)s)^K − K(q−1)s`.
pub fn g_stop_poly(k: usize, q: u64) -> Result<GenPoly> {
    if k < 2 {
        return domain(format!("check degree K must be at least 2, got {k}"));
    }
    let q = check_q(q)?;
    let mut coeffs = one_plus_power(k, &BigInt::from(q - 1));
    coeffs[1] = BigRational::zero();
    Ok(GenPoly::new(coeffs))
}

/// Average binary weight generating function of a uniformly drawn nonzero
/// `m`-bit symbol: `((1+s)^m − 1)/(2^m − 1)`.
pub fn phi_poly(m: u32) -> Result<GenPoly> {
    if m == 0 || m > 16 {
        return domain(format!("extension degree m must be in 1..=16, got {m}"));
    }
    let den = int((1i64 << m) - 1);
    let coeffs = (0..=m as usize)
        .map(|w| {
            if w == 0 {
                BigRational::zero()
            } else {
                BigRational::from_integer(binomial(m as usize, w)) / &den
            }
        })
        .collect();
    Ok(GenPoly::new(coeffs))
}

/// `outer(inner(s))`. The inner polynomial must have a zero constant term.
pub fn compose(outer: &GenPoly, inner: &GenPoly) -> Result<GenPoly> {
    if !inner.coeff(0).is_zero() {
        return domain("the inner polynomial of a composition must vanish at 0");
    }
    let max_deg = outer.degree() * inner.degree();
    // Horner: (((c_K) inner + c_{K−1}) inner + …) + c_0
    let mut acc = GenPoly::new(vec![outer.coeff(outer.degree())]);
    for c in outer.coeffs.iter().rev().skip(1) {
        acc = acc.mul_truncated(inner, max_deg);
        acc.coeffs[0] += c;
    }
    Ok(acc)
}

/// Coefficients of `p^M` up to degree `max_deg` by the power recurrence
/// `c_0 = p_0^M`, `c_w = (1/(w p_0)) Σ_{j=1}^{min(w,deg p)} ((M+1)j − w) p_j c_{w−j}`,
/// which follows from `p·(p^M)' = M·p'·p^M`.
pub fn poly_power_coeffs(p: &GenPoly, power: usize, max_deg: usize) -> Result<GenPoly> {
    let p0 = p.coeff(0);
    if p0.is_zero() {
        return domain("the power recurrence needs a nonzero constant term");
    }
    if power == 0 {
        return domain("the exponent must be at least 1");
    }
    let deg = max_deg.min(p.degree() * power);
    let mut c: Vec<BigRational> = Vec::with_capacity(deg + 1);
    c.push(num_traits::pow(p0.clone(), power));
    let m1 = (power + 1) as i64;
    for w in 1..=deg {
        let mut acc = BigRational::zero();
        for j in 1..=w.min(p.degree()) {
            let pj = &p.coeffs[j];
            if pj.is_zero() {
                continue;
            }
            let factor = m1 * j as i64 - w as i64;
            if factor != 0 {
                acc += int(factor) * pj * &c[w - j];
            }
        }
        c.push(acc / (int(w as i64) * &p0));
    }
    Ok(GenPoly::new(c))
}
