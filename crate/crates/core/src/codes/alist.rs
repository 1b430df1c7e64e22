//! The alist sparse matrix format.
//!
//! ```text
//! n r
//! max_col_degree max_row_degree
//! <n column degrees>
//! <r row degrees>
//! <n lines: 1-based row indices of each column, zero-padded to max_col_degree>
//! <r lines: 1-based column indices of each row, zero-padded to max_row_degree>
//! ```

use crate::error::{parse, Result};
use crate::gf2::BitMatrix;

pub fn write_alist(h: &BitMatrix) -> String {
    let (r, n) = (h.rows(), h.cols());
    let row_lists: Vec<Vec<usize>> = (0..r).map(|i| h.row_support(i)).collect();
    let mut col_lists = vec![Vec::new(); n];
    for (i, row) in row_lists.iter().enumerate() {
        for &j in row {
            col_lists[j].push(i);
        }
    }
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);

    let mut out = String::new();
    out.push_str(&format!("{n} {r}\n{max_col} {max_row}\n"));
    out.push_str(&join(col_lists.iter().map(Vec::len)));
    out.push_str(&join(row_lists.iter().map(Vec::len)));
    for list in &col_lists {
        out.push_str(&padded(list, max_col));
    }
    for list in &row_lists {
        out.push_str(&padded(list, max_row));
    }
    out
}

fn join(it: impl Iterator<Item = usize>) -> String {
    let v: Vec<String> = it.map(|x| x.to_string()).collect();
    format!("{}\n", v.join(" "))
}

fn padded(list: &[usize], width: usize) -> String {
    // an all-zero matrix still gets one padding zero per line, since readers skip blank lines
    let width = width.max(1);
    let v: Vec<String> = list
        .iter()
        .map(|x| (x + 1).to_string())
        .chain(std::iter::repeat_n("0".to_string(), width - list.len()))
        .collect();
    format!("{}\n", v.join(" "))
}

/// Reads an alist matrix. Padding zeros are optional; the column and row
/// lists must describe the same set of ones.
pub fn read_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut next_nums = |what: &str| -> Result<Vec<usize>> {
        let line = lines
            .next()
            .ok_or_else(|| crate::Error::Parse(format!("alist ended before {what}")))?;
        line.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| crate::Error::Parse(format!("non-numeric token {t:?} in {what}")))
            })
            .collect()
    };
    let dims = next_nums("dimensions")?;
    let [n, r] = dims[..] else {
        return parse("first alist line must be `n r`");
    };
    if n == 0 {
        return parse("alist has zero columns");
    }
    let maxes = next_nums("maximum degrees")?;
    let [max_col, max_row] = maxes[..] else {
        return parse("second alist line must hold two maximum degrees");
    };
    let col_deg = next_nums("column degrees")?;
    let row_deg = next_nums("row degrees")?;
    if col_deg.len() != n || row_deg.len() != r {
        return parse("degree lists do not match the dimensions");
    }
    if col_deg.iter().any(|&d| d > max_col) || row_deg.iter().any(|&d| d > max_row) {
        return parse("a degree exceeds the declared maximum");
    }

    let mut from_cols = BitMatrix::zeros(r, n);
    for (j, &deg) in col_deg.iter().enumerate() {
        let list = next_nums("column lists")?;
        let idx = strip_padding(&list, deg, r, "column")?;
        for i in idx {
            from_cols.set(i, j, true);
        }
    }
    let mut from_rows = BitMatrix::zeros(r, n);
    for (i, &deg) in row_deg.iter().enumerate() {
        let list = next_nums("row lists")?;
        for j in strip_padding(&list, deg, n, "row")? {
            from_rows.set(i, j, true);
        }
    }
    if from_cols != from_rows {
        return parse("column lists and row lists disagree");
    }
    Ok(from_rows)
}

fn strip_padding(list: &[usize], deg: usize, bound: usize, what: &str) -> Result<Vec<usize>> {
    let (idx, pad) = list.split_at(deg.min(list.len()));
    if idx.len() != deg || pad.iter().any(|&p| p != 0) {
        return parse(format!("{what} list {list:?} does not match its degree {deg}"));
    }
    let mut out = Vec::with_capacity(deg);
    for &x in idx {
        if x == 0 || x > bound {
            return parse(format!("{what} index {x} out of range 1..={bound}"));
        }
        if out.contains(&(x - 1)) {
            return parse(format!("repeated index {x} in {what} list"));
        }
        out.push(x - 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HAMMING: &str = "8 4\n4 8\n1 2 2 3 2 3 3 4\n8 4 4 4\n1 0 0 0\n1 4 0 0\n1 3 0 0\n1 3 4 0\n1 2 0 0\n1 2 4 0\n1 2 3 0\n1 2 3 4\n1 2 3 4 5 6 7 8\n5 6 7 8 0 0 0 0\n3 4 7 8 0 0 0 0\n2 4 6 8 0 0 0 0\n";

    #[test]
    fn reads_and_writes_identically() {
        let h = read_alist(HAMMING).unwrap();
        assert_eq!(
            h,
            BitMatrix::from_strs(&["11111111", "00001111", "00110011", "01010101"]).unwrap()
        );
        assert_eq!(write_alist(&h), HAMMING);
    }

    #[test]
    fn accepts_unpadded_lists() {
        let text = "2 1\n1 2\n1 1\n2\n1\n1\n1 2\n";
        assert_eq!(read_alist(text).unwrap(), BitMatrix::from_strs(&["11"]).unwrap());
    }

    #[test]
    fn rejects_inconsistent_or_truncated() {
        assert!(read_alist("2 1\n1 2\n1 1\n2\n1\n1\n1 0\n").is_err());
        assert!(read_alist("2 1\n1 2\n1 1\n").is_err());
        assert!(read_alist("2 1\n1 2\n1 x\n2\n1\n1\n1 2\n").is_err());
        assert!(read_alist("2 1\n1 2\n1 1\n2\n3\n1\n1 2\n").is_err());
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn round_trip(rows in (1usize..10, 1usize..40).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
        })) {
            let h = BitMatrix::from_rows(&rows).unwrap();
            prop_assert_eq!(read_alist(&write_alist(&h)).unwrap(), h);
        }
    }
}
