//! The presentation matrix M(a, b) assembled from its closed-form blocks.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{p1_weights, p2_row_labels, HookParams, WeightKind, WeightLabel};
use crate::error::{Error, Result};
use crate::intlin::IntMatrix;

/// A row or column of M: its weight block and the 1-based position inside
/// the block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub block: WeightKind,
    pub local: usize,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.block {
            WeightKind::U(_) | WeightKind::V(1) => write!(f, "{}", self.block),
            _ => write!(f, "{}[{}]", self.block, self.local),
        }
    }
}

/// Row and column positions of the blocks of M.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    b: usize,
}

impl Layout {
    pub fn new(b: usize) -> Self {
        Self { b }
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn rows(&self) -> usize {
        let b = self.b;
        (b - 2) * (1 + (b - 1) * (b - 2) / 2)
    }

    pub fn cols(&self) -> usize {
        1 + (self.b - 1) * (self.b - 1)
    }

    /// Height of a w-block, b − 2.
    pub fn height(&self) -> usize {
        self.b - 2
    }

    /// Width of a v_j block for j ≥ 2, b − 1.
    pub fn width(&self) -> usize {
        self.b - 1
    }

    /// Row of A(u_i).
    pub fn u(&self, i: usize) -> usize {
        debug_assert!((2..self.b).contains(&i));
        i - 2
    }

    fn w_block(&self, i: usize) -> usize {
        (2..i).map(|k| self.b - k).sum()
    }

    /// Row l (1-based) of the block of w_i.
    pub fn w(&self, i: usize, l: usize) -> usize {
        debug_assert!((2..self.b).contains(&i) && (1..=self.height()).contains(&l));
        self.height() * (1 + self.w_block(i)) + l - 1
    }

    /// Row l (1-based) of the block of w_{ij}.
    pub fn wij(&self, i: usize, j: usize, l: usize) -> usize {
        debug_assert!(2 <= i && i < j && j < self.b && (1..=self.height()).contains(&l));
        self.height() * (1 + self.w_block(i) + j - i) + l - 1
    }

    /// The column of v₁.
    pub fn v1(&self) -> usize {
        0
    }

    /// Column τ (1-based) of the block of v_j, j ≥ 2.
    pub fn v(&self, j: usize, tau: usize) -> usize {
        debug_assert!((2..=self.b).contains(&j) && (1..=self.width()).contains(&tau));
        1 + (j - 2) * self.width() + tau - 1
    }

    /// All rows of a weight block.
    pub fn row_block(&self, kind: WeightKind) -> Vec<usize> {
        match kind {
            WeightKind::U(i) => vec![self.u(i)],
            WeightKind::W(i) => (1..=self.height()).map(|l| self.w(i, l)).collect(),
            WeightKind::Wij(i, j) => (1..=self.height()).map(|l| self.wij(i, j, l)).collect(),
            WeightKind::V(_) => vec![],
        }
    }

    /// All columns of the block of v_j.
    pub fn col_block(&self, j: usize) -> Vec<usize> {
        if j == 1 {
            vec![self.v1()]
        } else {
            (1..=self.width()).map(|t| self.v(j, t)).collect()
        }
    }

    pub fn row_labels(&self) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.rows());
        for i in 2..self.b {
            out.push(Label {
                block: WeightKind::U(i),
                local: 1,
            });
        }
        for i in 2..self.b {
            let blocks = std::iter::once(WeightKind::W(i))
                .chain((i + 1..self.b).map(|j| WeightKind::Wij(i, j)));
            for block in blocks {
                out.extend((1..=self.height()).map(|local| Label { block, local }));
            }
        }
        out
    }

    pub fn col_labels(&self) -> Vec<Label> {
        let mut out = vec![Label {
            block: WeightKind::V(1),
            local: 1,
        }];
        for j in 2..=self.b {
            out.extend((1..=self.width()).map(|local| Label {
                block: WeightKind::V(j),
                local,
            }));
        }
        out
    }
}

/// An integer matrix whose rows and columns carry block labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledIntMatrix {
    pub params: HookParams,
    pub entries: IntMatrix,
    pub row_labels: Vec<Label>,
    pub col_labels: Vec<Label>,
}

impl LabeledIntMatrix {
    /// Wraps `entries` with the standard labels of M(a, b).
    pub fn with_standard_labels(params: HookParams, entries: IntMatrix) -> Result<Self> {
        let layout = Layout::new(params.b());
        if entries.rows() != layout.rows() || entries.cols() != layout.cols() {
            return Err(Error::Mismatch(format!(
                "{}x{} matrix for b={} (expected {}x{})",
                entries.rows(),
                entries.cols(),
                params.b(),
                layout.rows(),
                layout.cols()
            )));
        }
        Ok(Self {
            params,
            entries,
            row_labels: layout.row_labels(),
            col_labels: layout.col_labels(),
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }
}

fn width(b: usize, j: usize) -> usize {
    if j == 1 {
        1
    } else {
        b - 1
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_b(params: &HookParams) -> Result<usize> {
    let b = params.b();
    if b < 3 {
        return Err(Error::InvalidParams(format!(
            "the presentation matrix needs b ≥ 3, got {b}"
        )));
    }
    Ok(b)
}

fn out_of_range(what: &str) -> Error {
    Error::InvalidParams(format!("block index out of range: {what}"))
}

/// The (b−2)×(b−1) pattern with `diag` on the shifted diagonal and the
/// two-entry row `pair` in row `k` (1-based), columns k and k+1:
/// rows above k carry `diag` at (l, l), rows below at (l, l+1).
fn banded(b: usize, k: usize, diag: i64, pair: [i64; 2], sign: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(b - 2, b - 1);
    for l in 1..=b - 2 {
        match l.cmp(&k) {
            std::cmp::Ordering::Less => m.set(l - 1, l - 1, BigInt::from(sign * diag)),
            std::cmp::Ordering::Equal => {
                m.set(l - 1, l - 1, BigInt::from(sign * pair[0]));
                m.set(l - 1, l, BigInt::from(sign * pair[1]));
            }
            std::cmp::Ordering::Greater => m.set(l - 1, l, BigInt::from(sign * diag)),
        }
    }
    m
}

/// A(u_i, v_j).
pub fn block_a(i: usize, j: usize, params: &HookParams) -> Result<IntMatrix> {
    let b = check_b(params)?;
    if !(2..b).contains(&i) || !(1..=b).contains(&j) {
        return Err(out_of_range(&format!("A(u{i}, v{j})")));
    }
    let mut m = IntMatrix::zeros(1, width(b, j));
    if j == 1 {
        m.set(0, 0, BigInt::from(2 * sign(i + 1)));
    } else if j == i + 1 {
        m.set(0, 0, BigInt::from(params.a() + 1));
        for c in 2..b {
            m.set(0, c - 1, BigInt::from(if c == i { -2 } else { -1 }));
        }
    }
    Ok(m)
}

/// B(w_i, v_j).
pub fn block_b(i: usize, j: usize, params: &HookParams) -> Result<IntMatrix> {
    let b = check_b(params)?;
    if !(2..b).contains(&i) || !(1..=b).contains(&j) {
        return Err(out_of_range(&format!("B(w{i}, v{j})")));
    }
    Ok(if j == i {
        banded(b, i - 1, 3, [2, 1], sign(i + 1))
    } else if j == i + 1 {
        banded(b, i - 1, 3, [1, 2], sign(i + 1))
    } else {
        IntMatrix::zeros(b - 2, width(b, j))
    })
}

/// C(w_{ij}, v_h).
pub fn block_c(i: usize, j: usize, h: usize, params: &HookParams) -> Result<IntMatrix> {
    let b = check_b(params)?;
    if !(2 <= i && i < j && j < b) || !(1..=b).contains(&h) {
        return Err(out_of_range(&format!("C(w{i}_{j}, v{h})")));
    }
    Ok(if h == i {
        banded(b, j - 1, 2, [1, 1], sign(j + 1))
    } else if h == j + 1 {
        banded(b, i - 1, 2, [1, 1], sign(i + 1))
    } else {
        IntMatrix::zeros(b - 2, width(b, h))
    })
}

/// The block of M in row group `row` and column group v_j.
pub fn block(row: WeightKind, j: usize, params: &HookParams) -> Result<IntMatrix> {
    match row {
        WeightKind::U(i) => block_a(i, j, params),
        WeightKind::W(i) => block_b(i, j, params),
        WeightKind::Wij(i, k) => block_c(i, k, j, params),
        WeightKind::V(_) => Err(out_of_range("v is not a row group")),
    }
}

/// Assembles a labeled matrix from a function giving each block.
pub(crate) fn assemble<F>(params: &HookParams, mut block_at: F) -> Result<LabeledIntMatrix>
where
    F: FnMut(&WeightLabel, &WeightLabel) -> Result<IntMatrix>,
{
    let b = check_b(params)?;
    let layout = Layout::new(b);
    let mut m = IntMatrix::zeros(layout.rows(), layout.cols());
    let cols = p1_weights(params)?;
    for row in p2_row_labels(params)? {
        let rows = layout.row_block(row.kind);
        for col in &cols {
            let WeightKind::V(j) = col.kind else {
                unreachable!()
            };
            let blk = block_at(&row, col)?;
            let cidx = layout.col_block(j);
            if blk.rows() != rows.len() || blk.cols() != cidx.len() {
                return Err(Error::Model(format!(
                    "block ({}, {}) is {}x{}, expected {}x{}",
                    row.kind,
                    col.kind,
                    blk.rows(),
                    blk.cols(),
                    rows.len(),
                    cidx.len()
                )));
            }
            for (r, &gr) in rows.iter().enumerate() {
                for (c, &gc) in cidx.iter().enumerate() {
                    m.set(gr, gc, blk.get(r, c).clone());
                }
            }
        }
    }
    LabeledIntMatrix::with_standard_labels(*params, m)
}

/// M(a, b) from the closed-form blocks.
pub fn build_m(params: &HookParams) -> Result<LabeledIntMatrix> {
    assemble(params, |row, col| {
        let WeightKind::V(j) = col.kind else {
            unreachable!()
        };
        block(row.kind, j, params)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: usize, b: usize) -> HookParams {
        HookParams::new(a, b).unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn block_examples() {
        let q = p(5, 4);
        assert_eq!(block_a(2, 1, &q).unwrap(), m(&[&[-2]]));
        assert_eq!(block_a(3, 1, &q).unwrap(), m(&[&[2]]));
        assert!(block_a(3, 2, &q).unwrap().is_zero());
        assert_eq!(block_a(2, 3, &p(4, 3)).unwrap(), m(&[&[5, -2]]));
        assert_eq!(block_a(3, 4, &q).unwrap(), m(&[&[6, -1, -2]]));
        assert_eq!(block_b(2, 3, &q).unwrap(), m(&[&[-1, -2, 0], &[0, 0, -3]]));
        assert_eq!(block_b(2, 2, &p(3, 3)).unwrap(), m(&[&[-2, -1]]));
        assert!(block_b(2, 4, &p(5, 5)).unwrap().is_zero());
        let q5 = p(5, 5);
        assert_eq!(
            block_c(2, 3, 2, &q5).unwrap(),
            m(&[&[2, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 0, 2]])
        );
        assert_eq!(
            block_c(2, 3, 4, &q5).unwrap(),
            m(&[&[-1, -1, 0, 0], &[0, 0, -2, 0], &[0, 0, 0, -2]])
        );
        assert!(block_c(2, 3, 3, &q5).unwrap().is_zero());
        assert!(block_c(3, 3, 3, &q5).is_err());
        assert!(block_a(1, 1, &q5).is_err());
    }

    #[test]
    fn b3_literal() {
        for a in 2..=20 {
            let mm = build_m(&p(a, 3)).unwrap();
            let a = a as i64;
            assert_eq!(
                mm.entries,
                m(&[&[-2, 0, 0, a + 1, -2], &[0, -2, -1, -1, -2]])
            );
        }
    }

    #[test]
    fn shapes_and_alphabet() {
        let mm = build_m(&p(7, 7)).unwrap();
        assert_eq!((mm.rows(), mm.cols()), (80, 37));
        for b in 3..=10 {
            let q = p(b + 1, b);
            let mm = build_m(&q).unwrap();
            assert_eq!((mm.rows(), mm.cols()), (q.s(), q.t()));
            let allowed: Vec<BigInt> = [0, 1, -1, 2, -2, 3, -3, q.a() as i64 + 1]
                .iter()
                .map(|&x| BigInt::from(x))
                .collect();
            for r in 0..mm.rows() {
                for c in 0..mm.cols() {
                    assert!(allowed.contains(mm.entries.get(r, c)));
                }
            }
        }
    }

    #[test]
    fn block_supports() {
        let q = p(8, 7);
        let mm = build_m(&q).unwrap();
        let layout = Layout::new(7);
        for row in p2_row_labels(&q).unwrap() {
            let nonzero: Vec<usize> = (1..=7)
                .filter(|&j| {
                    layout.row_block(row.kind).iter().any(|&r| {
                        layout
                            .col_block(j)
                            .iter()
                            .any(|&c| !num_traits::Zero::is_zero(mm.entries.get(r, c)))
                    })
                })
                .collect();
            let expected = match row.kind {
                WeightKind::U(i) => vec![1, i + 1],
                WeightKind::W(i) => vec![i, i + 1],
                WeightKind::Wij(i, j) => vec![i, j + 1],
                WeightKind::V(_) => unreachable!(),
            };
            assert_eq!(nonzero, expected, "{}", row.kind);
        }
    }

    #[test]
    fn labels() {
        let l = Layout::new(5);
        let rows = l.row_labels();
        assert_eq!(rows.len(), l.rows());
        assert_eq!(rows[l.w(3, 2)].to_string(), "w3[2]");
        assert_eq!(rows[l.wij(2, 4, 3)].to_string(), "w2_4[3]");
        assert_eq!(rows[l.u(3)].to_string(), "u3");
        let cols = l.col_labels();
        assert_eq!(cols[l.v(4, 2)].to_string(), "v4[2]");
        assert_eq!(cols[l.v1()].to_string(), "v1");
    }
}
