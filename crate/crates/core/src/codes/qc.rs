use std::fmt;

use super::LinearCode;
use crate::error::{domain, parse, Result};
use crate::gf2::BitMatrix;

/// An entry of a polynomial parity-check matrix: zero or the monomial `D^w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QcEntry {
    Zero,
    Monomial(usize),
}

/// `(c−b) × c` monomial parity-check matrix of a rate `b/c` parent
/// convolutional code, together with the lifting degree `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcPolynomialMatrix {
    b: usize,
    c: usize,
    lifting: usize,
    entries: Vec<Vec<QcEntry>>,
}

impl QcPolynomialMatrix {
    /// `entries` must have `c − b` rows of `c` entries; `lifting` must exceed
    /// the largest exponent.
    pub fn new(b: usize, c: usize, lifting: usize, entries: Vec<Vec<QcEntry>>) -> Result<Self> {
        if c <= b {
            return domain(format!("need c > b, got b={b} c={c}"));
        }
        if entries.len() != c - b || entries.iter().any(|r| r.len() != c) {
            return domain(format!("expected a {}x{c} entry array", c - b));
        }
        let q = QcPolynomialMatrix {
            b,
            c,
            lifting,
            entries,
        };
        if lifting <= q.memory() {
            return domain(format!("lifting degree {lifting} must exceed the syndrome memory {}", q.memory()));
        }
        Ok(q)
    }

    /// Convenience constructor from an exponent array, `-1` meaning zero.
    pub fn from_exponents(b: usize, c: usize, lifting: usize, exps: &[Vec<i64>]) -> Result<Self> {
        let entries = exps
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| match e {
                        -1 => Ok(QcEntry::Zero),
                        e if e >= 0 => Ok(QcEntry::Monomial(e as usize)),
                        e => domain(format!("invalid exponent {e}")),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(b, c, lifting, entries)
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn lifting(&self) -> usize {
        self.lifting
    }

    pub fn entries(&self) -> &[Vec<QcEntry>] {
        &self.entries
    }

    /// Syndrome memory: the largest exponent (0 when all entries are zero).
    pub fn memory(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .filter_map(|e| match e {
                QcEntry::Monomial(w) => Some(*w),
                QcEntry::Zero => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().flatten().filter(|e| **e != QcEntry::Zero).count()
    }

    /// Parses the exponent file format: a header line `b c M`, then `c − b`
    /// lines of `c` integers (`-1` for zero).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| crate::Error::Parse("empty QC exponent file".into()))?;
        let nums = parse_ints(header)?;
        let [b, c, m] = nums[..] else {
            return parse(format!("QC header must be `b c M`, got {header:?}"));
        };
        if b < 0 || c < 0 || m < 1 {
            return parse(format!("invalid QC header {header:?}"));
        }
        let (b, c, m) = (b as usize, c as usize, m as usize);
        let mut exps = Vec::new();
        for line in lines {
            let row = parse_ints(line)?;
            if row.len() != c {
                return parse(format!("QC row {:?} has {} entries, expected {c}", line, row.len()));
            }
            exps.push(row);
        }
        if c <= b || exps.len() != c - b {
            return parse(format!("QC file has {} rows, header implies {}", exps.len(), c.saturating_sub(b)));
        }
        Self::from_exponents(b, c, m, &exps).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

impl fmt::Display for QcPolynomialMatrix {
    /// Writes the exponent file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.b, self.c, self.lifting)?;
        for row in &self.entries {
            let line: Vec<String> = row
                .iter()
                .map(|e| match e {
                    QcEntry::Zero => "-1".to_string(),
                    QcEntry::Monomial(w) => w.to_string(),
                })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn parse_ints(line: &str) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| crate::Error::Parse(format!("not an integer: {t:?}"))))
        .collect()
}

/// Binary base matrix `B = H(D)|_{D=1}`.
pub fn base_matrix(q: &QcPolynomialMatrix) -> BitMatrix {
    let mut b = BitMatrix::zeros(q.c - q.b, q.c);
    for (i, row) in q.entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if let QcEntry::Monomial(_) = e {
                b.set(i, j, true);
            }
        }
    }
    b
}

/// Tailbiting expansion: `M` block rows of `(c−b) × c` blocks, where block row
/// `t` holds `H_w` (the coefficient of `D^w`) in block column `(t + w) mod M`.
pub fn qc_expand_tailbiting(q: &QcPolynomialMatrix) -> Result<LinearCode> {
    let lift = q.lifting;
    if lift <= q.memory() {
        return domain("lifting degree must exceed the syndrome memory");
    }
    let (rb, cb) = (q.c - q.b, q.c);
    let mut h = BitMatrix::zeros(lift * rb, lift * cb);
    for t in 0..lift {
        for (i, row) in q.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if let QcEntry::Monomial(w) = *e {
                    h.set(t * rb + i, ((t + w) % lift) * cb + j, true);
                }
            }
        }
    }
    Ok(LinearCode::new(h))
}

/// Circulant expansion: `D^w` becomes `P^w`, where `P` is the identity with
/// rows cyclically shifted one place to the right, and zero becomes the
/// `M × M` zero block.
pub fn qc_expand_circulant(q: &QcPolynomialMatrix) -> Result<LinearCode> {
    let lift = q.lifting;
    if lift <= q.memory() {
        return domain("lifting degree must exceed the syndrome memory");
    }
    let mut h = BitMatrix::zeros(lift * (q.c - q.b), lift * q.c);
    for (i, row) in q.entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if let QcEntry::Monomial(w) = *e {
                for t in 0..lift {
                    h.set(i * lift + t, j * lift + (t + w) % lift, true);
                }
            }
        }
    }
    Ok(LinearCode::new(h))
}
