//! Structural assertions about intermediate matrices.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::intlin::IntMatrix;
use crate::presentation::Layout;

/// Outcome of one named structural claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    /// Coordinates and values of the first violation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub(crate) type Check = std::result::Result<(), String>;

/// Collects claims for one stage.
#[derive(Default)]
pub(crate) struct Claims {
    pub list: Vec<Claim>,
}

impl Claims {
    pub fn push(&mut self, name: &str, outcome: Check) {
        self.list.push(Claim {
            name: name.to_string(),
            passed: outcome.is_ok(),
            detail: outcome.err(),
        });
    }
}

/// Read-only helpers over a matrix in the standard layout.
pub(crate) struct View<'a> {
    pub m: &'a IntMatrix,
    pub l: Layout,
}

impl<'a> View<'a> {
    pub fn new(m: &'a IntMatrix, l: Layout) -> Self {
        Self { m, l }
    }

    pub fn rname(&self, r: usize) -> String {
        self.l.row_labels()[r].to_string()
    }

    pub fn cname(&self, c: usize) -> String {
        self.l.col_labels()[c].to_string()
    }

    pub fn row_support(&self, r: usize) -> Vec<(usize, BigInt)> {
        (0..self.m.cols())
            .filter(|&c| !self.m.get(r, c).is_zero())
            .map(|c| (c, self.m.get(r, c).clone()))
            .collect()
    }

    pub fn col_support(&self, c: usize) -> Vec<(usize, BigInt)> {
        (0..self.m.rows())
            .filter(|&r| !self.m.get(r, c).is_zero())
            .map(|r| (r, self.m.get(r, c).clone()))
            .collect()
    }

    fn describe(&self, support: &[(usize, BigInt)], rows: bool) -> String {
        let parts: Vec<String> = support
            .iter()
            .map(|(k, x)| {
                let name = if rows { self.rname(*k) } else { self.cname(*k) };
                format!("{name}={x}")
            })
            .collect();
        format!("[{}]", parts.join(", "))
    }

    /// Row `r` has exactly the listed nonzero entries.
    pub fn row_is(&self, r: usize, expected: &[(usize, i64)]) -> Check {
        let mut want: Vec<(usize, BigInt)> = expected
            .iter()
            .filter(|(_, x)| *x != 0)
            .map(|&(c, x)| (c, BigInt::from(x)))
            .collect();
        want.sort_by_key(|(c, _)| *c);
        let got = self.row_support(r);
        if got == want {
            Ok(())
        } else {
            Err(format!(
                "row {}: found {}, expected {}",
                self.rname(r),
                self.describe(&got, false),
                self.describe(&want, false)
            ))
        }
    }

    /// Column `c` has exactly the listed nonzero entries.
    pub fn col_is(&self, c: usize, expected: &[(usize, i64)]) -> Check {
        let mut want: Vec<(usize, BigInt)> = expected
            .iter()
            .filter(|(_, x)| *x != 0)
            .map(|&(r, x)| (r, BigInt::from(x)))
            .collect();
        want.sort_by_key(|(r, _)| *r);
        let got = self.col_support(c);
        if got == want {
            Ok(())
        } else {
            Err(format!(
                "column {}: found {}, expected {}",
                self.cname(c),
                self.describe(&got, true),
                self.describe(&want, true)
            ))
        }
    }

    /// Entry `(r, c)` is the only nonzero of its row and of its column.
    pub fn isolated(&self, r: usize, c: usize, x: i64) -> Check {
        self.row_is(r, &[(c, x)])?;
        self.col_is(c, &[(r, x)])
    }

    /// The block on `rows × cols` equals `expected` (given row-major).
    pub fn block_is(&self, rows: &[usize], cols: &[usize], expected: &[Vec<BigInt>]) -> Check {
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if *self.m.get(r, c) != expected[i][j] {
                    return Err(format!(
                        "entry ({}, {}) is {}, expected {}",
                        self.rname(r),
                        self.cname(c),
                        self.m.get(r, c),
                        expected[i][j]
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Positions where two equally sized matrices differ.
pub(crate) fn changes(prev: &IntMatrix, next: &IntMatrix) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..prev.rows() {
        for c in 0..prev.cols() {
            if prev.get(r, c) != next.get(r, c) {
                out.push((r, c));
            }
        }
    }
    out
}

/// The changed positions are exactly `expected`, each holding `old` before
/// and zero after.
pub(crate) fn only_nulled(
    prev: &View<'_>,
    next: &IntMatrix,
    expected: &[(usize, usize, i64)],
) -> Check {
    let mut want: Vec<(usize, usize)> = expected.iter().map(|&(r, c, _)| (r, c)).collect();
    want.sort_unstable();
    let got = changes(prev.m, next);
    if got != want {
        let extra = got.iter().find(|p| !want.contains(p));
        let missing = want.iter().find(|p| !got.contains(p));
        let show = |p: Option<&(usize, usize)>| {
            p.map(|&(r, c)| format!("({}, {})", prev.rname(r), prev.cname(c)))
                .unwrap_or_else(|| "none".into())
        };
        return Err(format!(
            "{} changes against {} expected; unexpected {}, missing {}",
            got.len(),
            want.len(),
            show(extra),
            show(missing)
        ));
    }
    for &(r, c, old) in expected {
        if *prev.m.get(r, c) != BigInt::from(old) || !next.get(r, c).is_zero() {
            return Err(format!(
                "({}, {}) went {} -> {}, expected {} -> 0",
                prev.rname(r),
                prev.cname(c),
                prev.m.get(r, c),
                next.get(r, c),
                old
            ));
        }
    }
    Ok(())
}

/// Every changed position lies in one of `cols`.
pub(crate) fn changes_within_cols(prev: &View<'_>, next: &IntMatrix, cols: &[usize]) -> Check {
    match changes(prev.m, next).into_iter().find(|(_, c)| !cols.contains(c)) {
        None => Ok(()),
        Some((r, c)) => Err(format!(
            "unexpected change at ({}, {})",
            prev.rname(r),
            prev.cname(c)
        )),
    }
}

/// The row combination `Σ k·row` evaluated on `m`.
pub(crate) fn combine_rows(m: &IntMatrix, terms: &[(usize, i64)]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); m.cols()];
    for &(r, k) in terms {
        for (c, slot) in acc.iter_mut().enumerate() {
            let x = m.get(r, c);
            if !x.is_zero() {
                *slot += x * k;
            }
        }
    }
    acc
}

/// `(−1)^k`.
pub(crate) fn sgn(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Runs `f` over every item, stopping at the first violation.
pub(crate) fn all<I, F>(items: I, mut f: F) -> Check
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Check,
{
    items.into_iter().try_for_each(&mut f)
}
