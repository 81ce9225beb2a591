//! Canonical form by row/column permutations and sign changes only.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::intlin::IntMatrix;

/// Result of canonicalizing a reduced matrix into `[I_r, 0; 0, R; 0, 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// Size of the identity block.
    pub r: usize,
    /// The residual block, after matching the template when one was given.
    pub residual: IntMatrix,
    /// Whether the residual matched the template up to permutation and sign.
    pub matched: bool,
    /// Source row of each output row.
    pub row_order: Vec<usize>,
    /// Source column of each output column.
    pub col_order: Vec<usize>,
    pub row_signs: Vec<i8>,
    pub col_signs: Vec<i8>,
    pub matrix: IntMatrix,
}

struct Match {
    rows: Vec<usize>,
    cols: Vec<usize>,
    row_signs: Vec<i8>,
    col_signs: Vec<i8>,
}

fn signed(x: &BigInt, s: i8) -> BigInt {
    if s < 0 {
        -x
    } else {
        x.clone()
    }
}

/// Searches row/column permutations and signs taking `r` to `t`.
fn match_template(r: &IntMatrix, t: &IntMatrix) -> Option<Match> {
    if r.rows() != t.rows() || r.cols() != t.cols() {
        return None;
    }
    let (p, q) = (r.rows(), r.cols());
    for rows in (0..p).permutations(p) {
        for cols in (0..q).permutations(q) {
            let fits = (0..p).all(|i| {
                (0..q).all(|j| r.get(rows[i], cols[j]).abs() == t.get(i, j).abs())
            });
            if !fits {
                continue;
            }
            for mask in 0u32..(1 << (p + q)) {
                let sign = |k: usize| if mask >> k & 1 == 1 { -1i8 } else { 1 };
                let row_signs: Vec<i8> = (0..p).map(sign).collect();
                let col_signs: Vec<i8> = (0..q).map(|j| sign(p + j)).collect();
                let ok = (0..p).all(|i| {
                    (0..q).all(|j| {
                        signed(r.get(rows[i], cols[j]), row_signs[i] * col_signs[j]) == *t.get(i, j)
                    })
                });
                if ok {
                    return Some(Match {
                        rows,
                        cols,
                        row_signs,
                        col_signs,
                    });
                }
            }
        }
    }
    None
}

/// Reorders `m` as identity block, residual block, zeros. Isolated ±1
/// entries form the identity block; the remaining nonzero rows and columns
/// form the residual, matched against `template` when given.
pub fn canonical_form(m: &IntMatrix, template: Option<&IntMatrix>) -> CanonicalForm {
    let nz = |r: usize, c: usize| !m.get(r, c).is_zero();
    let row_count: Vec<usize> = (0..m.rows())
        .map(|r| (0..m.cols()).filter(|&c| nz(r, c)).count())
        .collect();
    let col_count: Vec<usize> = (0..m.cols())
        .map(|c| (0..m.rows()).filter(|&r| nz(r, c)).count())
        .collect();
    let mut pivots = Vec::new();
    for r in 0..m.rows() {
        if row_count[r] != 1 {
            continue;
        }
        let c = (0..m.cols()).find(|&c| nz(r, c)).expect("row has an entry");
        if col_count[c] == 1 && m.get(r, c).abs().is_one() {
            pivots.push((r, c));
        }
    }
    let prow: Vec<usize> = pivots.iter().map(|p| p.0).collect();
    let pcol: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let res_rows: Vec<usize> = (0..m.rows())
        .filter(|r| !prow.contains(r) && row_count[*r] > 0)
        .collect();
    let res_cols: Vec<usize> = (0..m.cols())
        .filter(|c| !pcol.contains(c) && col_count[*c] > 0)
        .collect();
    let raw = m.select(&res_rows, &res_cols);
    let found = template.and_then(|t| match_template(&raw, t));
    let matched = found.is_some();
    let found = found.unwrap_or_else(|| Match {
        rows: (0..res_rows.len()).collect(),
        cols: (0..res_cols.len()).collect(),
        row_signs: vec![1; res_rows.len()],
        col_signs: vec![1; res_cols.len()],
    });

    let mut row_order = prow.clone();
    let mut row_signs: Vec<i8> = pivots
        .iter()
        .map(|&(r, c)| if m.get(r, c).is_negative() { -1 } else { 1 })
        .collect();
    row_order.extend(found.rows.iter().map(|&i| res_rows[i]));
    row_signs.extend(&found.row_signs);
    for r in 0..m.rows() {
        if !row_order.contains(&r) {
            row_order.push(r);
            row_signs.push(1);
        }
    }
    let mut col_order = pcol.clone();
    let mut col_signs = vec![1i8; pcol.len()];
    col_order.extend(found.cols.iter().map(|&j| res_cols[j]));
    col_signs.extend(&found.col_signs);
    for c in 0..m.cols() {
        if !col_order.contains(&c) {
            col_order.push(c);
            col_signs.push(1);
        }
    }

    let mut matrix = IntMatrix::zeros(m.rows(), m.cols());
    for (i, &r) in row_order.iter().enumerate() {
        for (j, &c) in col_order.iter().enumerate() {
            let x = m.get(r, c);
            if !x.is_zero() {
                matrix.set(i, j, signed(x, row_signs[i] * col_signs[j]));
            }
        }
    }
    let r = pivots.len();
    let residual = matrix.select(
        &(r..r + res_rows.len()).collect::<Vec<_>>(),
        &(r..r + res_cols.len()).collect::<Vec<_>>(),
    );
    CanonicalForm {
        r,
        residual,
        matched,
        row_order,
        col_order,
        row_signs,
        col_signs,
        matrix,
    }
}

/// `[I_r, 0; 0, block; 0, 0]` of the given size.
pub fn display_matrix(rows: usize, cols: usize, r: usize, block: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(rows, cols);
    for k in 0..r {
        out.set(k, k, BigInt::one());
    }
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out.set(r + i, r + j, block.get(i, j).clone());
        }
    }
    out
}
