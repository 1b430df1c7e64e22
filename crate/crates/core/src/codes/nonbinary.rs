use rand::Rng;

use super::{alist, LinearCode};
use crate::error::{domain, parse, Result};
use crate::gf2::{BitMatrix, GfField};
use crate::rng;

/// A binary base matrix whose ones carry nonzero GF(2^m) labels.
#[derive(Clone, Debug)]
pub struct NonbinaryLabeledMatrix {
    base: BitMatrix,
    // dense r × n, zero off the support
    labels: Vec<u32>,
    field: GfField,
}

impl NonbinaryLabeledMatrix {
    /// `labels` is dense row-major `rows × cols`; it must be nonzero exactly on
    /// the support of `base` and every label must be a field element.
    pub fn new(base: BitMatrix, labels: Vec<u32>, field: GfField) -> Result<Self> {
        if labels.len() != base.rows() * base.cols() {
            return domain("label array does not match base matrix shape");
        }
        for i in 0..base.rows() {
            for j in 0..base.cols() {
                let l = labels[i * base.cols() + j];
                if base.get(i, j) != (l != 0) {
                    return domain(format!("label at ({i},{j}) does not match the base support"));
                }
                if l >= field.q() {
                    return domain(format!("label {l:#x} is not an element of GF({})", field.q()));
                }
            }
        }
        Ok(NonbinaryLabeledMatrix { base, labels, field })
    }

    pub fn base(&self) -> &BitMatrix {
        &self.base
    }

    pub fn field(&self) -> &GfField {
        &self.field
    }

    pub fn label(&self, i: usize, j: usize) -> u32 {
        self.labels[i * self.base.cols() + j]
    }
}

/// Labels every one of `base` with an independent uniform element of
/// `{1, …, q−1}`.
pub fn random_labeling(base: &BitMatrix, field: &GfField, seed: u64) -> NonbinaryLabeledMatrix {
    let mut rng = rng::seeded(seed);
    let q = field.q();
    let mut labels = vec![0u32; base.rows() * base.cols()];
    for i in 0..base.rows() {
        for j in base.row_support(i) {
            labels[i * base.cols() + j] = rng.random_range(1..q);
        }
    }
    NonbinaryLabeledMatrix {
        base: base.clone(),
        labels,
        field: field.clone(),
    }
}

/// Binary image: each label `a` becomes the `m × m` matrix of `x ↦ a·x`, each
/// zero an `m × m` zero block. The result is `rm × nm`.
pub fn binary_image(l: &NonbinaryLabeledMatrix) -> LinearCode {
    let m = l.field.m() as usize;
    let (r, n) = (l.base.rows(), l.base.cols());
    let mut h = BitMatrix::zeros(r * m, n * m);
    for i in 0..r {
        for j in l.base.row_support(i) {
            let t = l.field.companion(l.label(i, j));
            for a in 0..m {
                for b in 0..m {
                    if t.get(a, b) {
                        h.set(i * m + a, j * m + b, true);
                    }
                }
            }
        }
    }
    LinearCode::new(h)
}

/// Label file: the base matrix in alist form, then a line `gf <m> <poly>`,
/// then one line per row listing that row's labels in hexadecimal, in the
/// same column order as the alist row list.
pub fn write_label_file(l: &NonbinaryLabeledMatrix) -> String {
    let mut out = alist::write_alist(&l.base);
    out.push_str(&format!("gf {} {:#x}\n", l.field.m(), l.field.poly()));
    for i in 0..l.base.rows() {
        let row: Vec<String> = l.base.row_support(i).iter().map(|&j| format!("{:x}", l.label(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_label_file(text: &str) -> Result<NonbinaryLabeledMatrix> {
    let lines: Vec<&str> = text.lines().collect();
    let gf_at = lines
        .iter()
        .position(|l| l.trim_start().starts_with("gf "))
        .ok_or_else(|| crate::Error::Parse("label file has no `gf` line".into()))?;
    let base = alist::read_alist(&lines[..gf_at].join("\n"))?;
    let gf: Vec<&str> = lines[gf_at].split_whitespace().collect();
    if gf.len() != 3 {
        return parse(format!("bad field line {:?}", lines[gf_at]));
    }
    let m: u32 = gf[1].parse().map_err(|_| crate::Error::Parse(format!("bad extension degree {:?}", gf[1])))?;
    let poly = u32::from_str_radix(gf[2].trim_start_matches("0x"), 16)
        .map_err(|_| crate::Error::Parse(format!("bad polynomial {:?}", gf[2])))?;
    let field = GfField::with_poly(m, poly).map_err(|e| crate::Error::Parse(e.to_string()))?;
    let rows: Vec<&str> = lines[gf_at + 1..].iter().copied().filter(|l| !l.trim().is_empty()).collect();
    if rows.len() != base.rows() {
        return parse(format!("expected {} label rows, found {}", base.rows(), rows.len()));
    }
    let mut labels = vec![0u32; base.rows() * base.cols()];
    for (i, line) in rows.iter().enumerate() {
        let support = base.row_support(i);
        let vals: Vec<&str> = line.split_whitespace().collect();
        if vals.len() != support.len() {
            return parse(format!("label row {i} has {} entries, expected {}", vals.len(), support.len()));
        }
        for (&j, v) in support.iter().zip(vals) {
            labels[i * base.cols() + j] =
                u32::from_str_radix(v, 16).map_err(|_| crate::Error::Parse(format!("bad hex label {v:?}")))?;
        }
    }
    NonbinaryLabeledMatrix::new(base, labels, field).map_err(|e| crate::Error::Parse(e.to_string()))
}
