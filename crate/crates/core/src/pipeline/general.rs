//! The ten reduction stages for b ≥ 6 (reused at b = 5) and their
//! structural checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::claims::{
    all, changes, changes_within_cols, combine_rows, only_nulled, sgn, Check, Claims, View,
};
use super::ops::{Combo, Pass};
use super::Ctx;
use crate::error::{Error, Result};
use crate::intlin::IntMatrix;

/// Column holding the isolated entry of row l of the w_i block.
pub(crate) fn pivot_col(c: &Ctx, i: usize, l: usize) -> usize {
    if l + 2 <= i {
        c.l.v(i, l)
    } else {
        c.l.v(i + 1, l + 1)
    }
}

/// All (i, l) with 2 ≤ i ≤ b−1, 1 ≤ l ≤ b−2, l ≠ i−1.
pub(crate) fn pivot_pairs(b: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 2..b {
        for l in 1..=b - 2 {
            if l + 1 != i {
                out.push((i, l));
            }
        }
    }
    out
}

fn block_check<F>(v: &View<'_>, rows: &[usize], cols: &[usize], f: F) -> Check
where
    F: Fn(usize, usize) -> i64,
{
    let expected: Vec<Vec<BigInt>> = (1..=rows.len())
        .map(|r| (1..=cols.len()).map(|c| BigInt::from(f(r, c))).collect())
        .collect();
    v.block_is(rows, cols, &expected)
}

fn zero_row(v: &View<'_>, r: usize) -> Check {
    v.row_is(r, &[])
}

fn combo_is(v: &View<'_>, what: &str, terms: &[(usize, i64)], expected: &[(usize, i64)]) -> Check {
    let row = combine_rows(v.m, terms);
    let mut want = vec![BigInt::zero(); v.m.cols()];
    for &(c, x) in expected {
        want[c] = BigInt::from(x);
    }
    match (0..row.len()).find(|&c| row[c] != want[c]) {
        None => Ok(()),
        Some(c) => Err(format!(
            "{what}: entry at {} is {}, expected {}",
            v.cname(c),
            row[c],
            want[c]
        )),
    }
}

/// Sign of the threes in the w_i block, (−1)^{i+1}.
fn eps(i: usize) -> i64 {
    sgn(i + 1)
}

fn rows_of_w(c: &Ctx, i: usize) -> Vec<usize> {
    (1..=c.b - 2).map(|l| c.l.w(i, l)).collect()
}

fn rows_of_wij(c: &Ctx, i: usize, j: usize) -> Vec<usize> {
    (1..=c.b - 2).map(|l| c.l.wij(i, j, l)).collect()
}

fn cols_of_v(c: &Ctx, j: usize) -> Vec<usize> {
    c.l.col_block(j)
}

// ---------------------------------------------------------------- D1

pub(crate) fn d1_pass(c: &Ctx) -> Pass {
    let (b, l) = (c.b, &c.l);
    let mut combos = Vec::new();
    for tau in 3..b {
        let mut k = Combo::new(l.v(2, tau));
        for j in 3..=tau {
            k = k.add(l.v(j, tau), sgn(j));
        }
        combos.push(k);
    }
    for r in 1..=b - 3 {
        let mut k = Combo::new(l.v(b, r));
        for j in r + 2..b {
            k = k.add(l.v(j, r), sgn(j + b));
        }
        combos.push(k);
    }
    Pass::cols(combos)
}

pub(crate) fn d1_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    let mut touched = cols_of_v(c, 2);
    touched.extend(cols_of_v(c, b));
    out.push(
        "column operations touch only the v2 and vb blocks",
        changes_within_cols(&pv, next, &touched),
    );
    out.push(
        "B(w2, v2) becomes -2E(1,1) - E(1,2)",
        block_check(&v, &rows_of_w(c, 2), &cols_of_v(c, 2), |r, s| {
            match (r, s) {
                (1, 1) => -2,
                (1, 2) => -1,
                _ => 0,
            }
        }),
    );
    out.push(
        "B(wi, v2) becomes -E(i-1,i) for 3 <= i <= b-1",
        all(3..b, |i| {
            block_check(&v, &rows_of_w(c, i), &cols_of_v(c, 2), |r, s| {
                if r == i - 1 && s == i {
                    -1
                } else {
                    0
                }
            })
        }),
    );
    out.push(
        "B(wi, vb) becomes (-1)^b E(i-1,i-1) for 2 <= i <= b-2",
        all(2..=b - 2, |i| {
            block_check(&v, &rows_of_w(c, i), &cols_of_v(c, b), |r, s| {
                if r == i - 1 && s == i - 1 {
                    sgn(b)
                } else {
                    0
                }
            })
        }),
    );
    out.push(
        "B(w(b-1), vb) becomes (-1)^b (E(b-2,b-2) + 2E(b-2,b-1))",
        block_check(&v, &rows_of_w(c, b - 1), &cols_of_v(c, b), |r, s| {
            match (r == b - 2, s) {
                (true, s) if s == b - 2 => sgn(b),
                (true, s) if s == b - 1 => 2 * sgn(b),
                _ => 0,
            }
        }),
    );
    out.push(
        "A(ui, v2) becomes (-1)^i [0 (i times), 1, ..., 1]",
        all(2..b, |i| {
            block_check(&v, &[l.u(i)], &cols_of_v(c, 2), |_, s| {
                if s > i {
                    sgn(i)
                } else {
                    0
                }
            })
        }),
    );
    out.push(
        "A(ui, vb) becomes (-1)^(i+1+b) [a+1, -1, ..., -1, 0, ..., 0] for 2 <= i <= b-2",
        all(2..=b - 2, |i| {
            let sign = sgn(i + 1 + b);
            block_check(&v, &[l.u(i)], &cols_of_v(c, b), |_, s| match s {
                1 => sign * (c.a as i64 + 1),
                s if s <= i - 1 => -sign,
                _ => 0,
            })
        }),
    );
    out.push(
        "rows of w2 and w(b-1) away from l = i-1 hold a single (-1)^(i+1)3",
        all([2, b - 1], |i| {
            all((1..=b - 2).filter(|&ll| ll + 1 != i), |ll| {
                let col = if i == 2 { l.v(3, ll + 1) } else { l.v(b - 1, ll) };
                v.row_is(l.w(i, ll), &[(col, 3 * eps(i))])
            })
        }),
    );
    out.push(
        "rows l >= j of w(2,j) hold a single -2 at v(j+1)[l+1]",
        all(3..=b - 2, |j| {
            all(j..=b - 2, |ll| {
                v.row_is(l.wij(2, j, ll), &[(l.v(j + 1, ll + 1), -2)])
            })
        }),
    );
    out.push(
        "rows l <= i-2 of w(i,b-1) hold a single (-1)^b 2 at vi[l]",
        all(3..b - 1, |i| {
            all(1..=i - 2, |ll| {
                v.row_is(l.wij(i, b - 1, ll), &[(l.v(i, ll), 2 * sgn(b))])
            })
        }),
    );
}

// ---------------------------------------------------------------- D2

pub(crate) fn d2_pass(c: &Ctx) -> Pass {
    let (b, l) = (c.b, &c.l);
    let mut combos = Vec::new();
    for i in 3..=b - 2 {
        for ll in (1..=b - 2).filter(|&ll| ll + 1 != i) {
            let mut k = Combo::new(l.w(i, ll));
            let hs: Vec<usize> = if ll + 2 <= i {
                (i + 1..b).collect()
            } else {
                (2..i).collect()
            };
            for h in hs {
                k = k.add(l.w(h, ll), 1);
            }
            combos.push(k);
        }
    }
    Pass::rows(combos)
}

fn threes_isolated_in_rows(c: &Ctx, v: &View<'_>) -> Check {
    all(pivot_pairs(c.b), |(i, ll)| {
        v.row_is(c.l.w(i, ll), &[(pivot_col(c, i, ll), 3 * eps(i))])
    })
}

pub(crate) fn d2_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    let mut nulled = Vec::new();
    for i in 3..=b - 2 {
        for ll in (1..=b - 2).filter(|&ll| ll + 1 != i) {
            let col = if ll + 2 <= i {
                l.v(i + 1, ll)
            } else {
                l.v(i, ll + 1)
            };
            nulled.push((l.w(i, ll), col, 3 * eps(i)));
        }
    }
    out.push(
        "row operations only null the second three in rows of wi, 3 <= i <= b-2",
        only_nulled(&pv, next, &nulled),
    );
    out.push(
        "each row l != i-1 of wi holds a single (-1)^(i+1)3 at its pivot column",
        threes_isolated_in_rows(c, &v),
    );
    out.push(
        "B(wi, vi) is (-1)^(i+1) [3I; 2 1; 0] for 3 <= i <= b-2",
        all(3..=b - 2, |i| {
            block_check(&v, &rows_of_w(c, i), &cols_of_v(c, i), |r, s| {
                let x = if r + 2 <= i && s == r {
                    3
                } else if r == i - 1 && s == i - 1 {
                    2
                } else if r == i - 1 && s == i {
                    1
                } else {
                    0
                };
                eps(i) * x
            })
        }),
    );
    out.push(
        "B(wi, v(i+1)) is (-1)^(i+1) [0; 1 2; 3I] for 3 <= i <= b-2",
        all(3..=b - 2, |i| {
            block_check(&v, &rows_of_w(c, i), &cols_of_v(c, i + 1), |r, s| {
                let x = if r == i - 1 && s == i - 1 {
                    1
                } else if r == i - 1 && s == i {
                    2
                } else if r >= i && s == r + 1 {
                    3
                } else {
                    0
                };
                eps(i) * x
            })
        }),
    );
}

// ---------------------------------------------------------------- D3

/// The D3 row combination for row l of w(2,b-1), including the target.
fn d3_corner_terms(c: &Ctx, ll: usize) -> Vec<(usize, i64)> {
    let (b, l) = (c.b, &c.l);
    if ll + 3 == b {
        vec![
            (l.wij(2, b - 1, b - 3), 1),
            (l.wij(2, b - 1, b - 2), 2),
            (l.wij(2, b - 2, b - 3), 2),
            (l.wij(2, b - 2, b - 2), 1),
            (l.w(b - 1, b - 2), 2 * sgn(b)),
        ]
    } else {
        vec![
            (l.wij(2, b - 1, ll), 1),
            (l.wij(2, b - 1, ll + 1), 1),
            (l.wij(2, ll + 1, ll), 2 * sgn(ll + b + 1)),
            (l.wij(ll + 2, b - 1, ll + 1), 2 * sgn(ll + 1)),
        ]
    }
}

pub(crate) fn d3_pass(c: &Ctx) -> Pass {
    let (b, l) = (c.b, &c.l);
    let mut combos = Vec::new();
    for j in 3..=b - 2 {
        for ll in 1..=j - 2 {
            combos.push(Combo::new(l.wij(2, j, ll)).add(l.wij(2, b - 1, ll), sgn(j + b)));
        }
    }
    for i in 3..=b - 2 {
        for j in i + 1..=b - 2 {
            for ll in 1..=b - 2 {
                let k = if ll + 2 <= j {
                    Combo::new(l.wij(i, j, ll)).add(l.wij(i, b - 1, ll), sgn(j + b))
                } else {
                    Combo::new(l.wij(i, j, ll)).add(l.wij(2, j, ll), sgn(i + 1))
                };
                combos.push(k);
            }
        }
    }
    for i in 3..b - 1 {
        for ll in i..=b - 2 {
            combos.push(Combo::new(l.wij(i, b - 1, ll)).add(l.wij(2, b - 1, ll), sgn(i + 1)));
        }
    }
    for ll in 2..=b - 3 {
        let terms = d3_corner_terms(c, ll);
        let mut k = Combo::new(terms[0].0);
        for &(r, x) in &terms[1..] {
            k = k.add(r, x);
        }
        combos.push(k);
    }
    Pass::rows(combos)
}

pub(crate) fn d3_pre_checks(c: &Ctx, prev: &IntMatrix, out: &mut Claims) {
    let v = View::new(prev, c.l);
    out.push(
        "the row combinations used on w(2,b-1) vanish before the third stage",
        all(2..=c.b - 3, |ll| {
            combo_is(
                &v,
                &format!("combination for row {ll} of w2_{}", c.b - 1),
                &d3_corner_terms(c, ll),
                &[],
            )
        }),
    );
}

/// (row, column block) pairs that the third stage must clear.
fn d3_nulled_blocks(c: &Ctx) -> Vec<(usize, usize)> {
    let b = c.b;
    let l = &c.l;
    let mut out = Vec::new();
    for i in 2..b {
        for j in i + 1..b {
            for ll in 1..=b - 2 {
                let r = l.wij(i, j, ll);
                let v2 = (i == 2 && j <= b - 2 && ll + 2 <= j)
                    || (i == 2 && j == b - 1 && (2..=b - 3).contains(&ll))
                    || (i >= 3 && i <= ll && ll < j);
                if v2 {
                    out.push((r, 2));
                }
                if i >= 3 && j <= b - 2 && ll + 2 <= j {
                    out.push((r, i));
                }
                if i >= 3 && j <= b - 2 && ll + 1 >= j {
                    out.push((r, j + 1));
                }
                let vb = (j <= b - 2 && ll + 1 >= i && ll + 2 <= j)
                    || (i == 2 && j == b - 1 && (2..=b - 3).contains(&ll))
                    || (i >= 3 && j == b - 1 && ll >= i);
                if vb {
                    out.push((r, b));
                }
            }
        }
    }
    out
}

pub(crate) fn d3_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    out.push(
        "every change made by the third stage is a nulling",
        all(changes(prev, next), |(r, col)| {
            if next.get(r, col).is_zero() {
                Ok(())
            } else {
                Err(format!(
                    "({}, {}) changed from {} to {}",
                    pv.rname(r),
                    pv.cname(col),
                    prev.get(r, col),
                    next.get(r, col)
                ))
            }
        }),
    );
    out.push(
        "the listed rows of the w(i,j) blocks are cleared in v2, vi, v(j+1) and vb",
        all(d3_nulled_blocks(c), |(r, j)| {
            all(cols_of_v(c, j), |col| {
                if next.get(r, col).is_zero() {
                    Ok(())
                } else {
                    Err(format!(
                        "({}, {}) is {}",
                        v.rname(r),
                        v.cname(col),
                        next.get(r, col)
                    ))
                }
            })
        }),
    );
    out.push(
        "C(w(2,j), v2) is (-1)^(j+1) (E(j-1,j-1) + E(j-1,j)) for 3 <= j <= b-2",
        all(3..=b - 2, |j| {
            block_check(&v, &rows_of_wij(c, 2, j), &cols_of_v(c, 2), |r, s| {
                if r == j - 1 && (s == j - 1 || s == j) {
                    sgn(j + 1)
                } else {
                    0
                }
            })
        }),
    );
    out.push(
        "C(w(2,b-1), v2) is (-1)^b (2E(1,1) + E(b-2,b-2) + E(b-2,b-1))",
        block_check(&v, &rows_of_wij(c, 2, b - 1), &cols_of_v(c, 2), |r, s| {
            let x = if r == 1 && s == 1 {
                2
            } else if r == b - 2 && (s == b - 2 || s == b - 1) {
                1
            } else {
                0
            };
            sgn(b) * x
        }),
    );
    out.push(
        "C(w(i,j), v2) vanishes for 3 <= i < j <= b-1",
        all(3..b, |i| {
            all(i + 1..b, |j| {
                block_check(&v, &rows_of_wij(c, i, j), &cols_of_v(c, 2), |_, _| 0)
            })
        }),
    );
    out.push(
        "C(w(i,j), vb) vanishes for 2 <= i < j <= b-2",
        all(2..=b - 2, |i| {
            all(i + 1..=b - 2, |j| {
                block_check(&v, &rows_of_wij(c, i, j), &cols_of_v(c, b), |_, _| 0)
            })
        }),
    );
    out.push(
        "C(w(2,b-1), vb) is -E(1,1) - E(1,2) - 2E(b-2,b-1)",
        block_check(&v, &rows_of_wij(c, 2, b - 1), &cols_of_v(c, b), |r, s| {
            match (r, s) {
                (1, 1) | (1, 2) => -1,
                (r, s) if r == b - 2 && s == b - 1 => -2,
                _ => 0,
            }
        }),
    );
    out.push(
        "C(w(i,b-1), vb) is (-1)^(i+1) (E(i-1,i-1) + E(i-1,i)) for 3 <= i <= b-2",
        all(3..b - 1, |i| {
            block_check(&v, &rows_of_wij(c, i, b - 1), &cols_of_v(c, b), |r, s| {
                if r == i - 1 && (s == i - 1 || s == i) {
                    sgn(i + 1)
                } else {
                    0
                }
            })
        }),
    );
    out.push(
        "each row l != i-1 of wi still holds a single (-1)^(i+1)3",
        threes_isolated_in_rows(c, &v),
    );
    let exempt = c.d4_deferred();
    out.push(
        "each pivot column has a row of some w(r,s) block with a single entry +-2 there",
        all(
            pivot_pairs(b)
                .into_iter()
                .filter(|p| !exempt.contains(p)),
            |(i, ll)| match select_gamma(c, next, pivot_col(c, i, ll), &[2, -2]) {
                Some(_) => Ok(()),
                None => Err(format!("no row for (i, l) = ({i}, {ll})")),
            },
        ),
    );
}

// ---------------------------------------------------------------- D4

/// The first row of a w(i,j) block whose only nonzero entry sits in column
/// `col` and has one of the `allowed` values.
pub(crate) fn select_gamma(c: &Ctx, m: &IntMatrix, col: usize, allowed: &[i64]) -> Option<usize> {
    let v = View::new(m, c.l);
    let (lo, hi) = (c.l.wij(2, 3, 1), c.l.rows());
    (lo..hi).find(|&r| {
        let s = v.row_support(r);
        s.len() == 1 && s[0].0 == col && allowed.iter().any(|&x| s[0].1 == BigInt::from(x))
    })
}

/// One D4 step: make the pivot a 1 using `gamma`, then clear its column.
pub(crate) fn d4_step(
    c: &Ctx,
    m: &IntMatrix,
    (i, ll): (usize, usize),
    gamma: usize,
) -> Result<Vec<Pass>> {
    let rho = c.l.w(i, ll);
    let col = pivot_col(c, i, ll);
    let here = m.get(rho, col);
    let g = m.get(gamma, col);
    let (k, rem) = (BigInt::from(1) - here).div_rem(g);
    if !rem.is_zero() {
        return Err(Error::StageCheck {
            stage: "D4".into(),
            claim: "pivot can be made a unit".into(),
            detail: format!("entry {here} cannot reach 1 using multiples of {g}"),
        });
    }
    let first = Pass::rows(vec![Combo::new(rho).add(gamma, k)]);
    let after = first.apply(m);
    let clear: Vec<Combo> = (0..m.rows())
        .filter(|&r| r != rho && !after.get(r, col).is_zero())
        .map(|r| Combo::new(r).add(rho, -after.get(r, col).clone()))
        .collect();
    Ok(vec![first, Pass::rows(clear)])
}

pub(crate) fn d4_checks(
    c: &Ctx,
    pairs: &[(usize, usize)],
    prev: &IntMatrix,
    next: &IntMatrix,
    full: bool,
    out: &mut Claims,
) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    let cols: Vec<usize> = pairs.iter().map(|&(i, ll)| pivot_col(c, i, ll)).collect();
    out.push(
        "changes stay inside the pivot columns",
        changes_within_cols(&pv, next, &cols),
    );
    out.push(
        "each treated row l of wi holds a single 1, alone in its column",
        all(pairs.iter().copied(), |(i, ll)| {
            v.isolated(l.w(i, ll), pivot_col(c, i, ll), 1)
        }),
    );
    if full {
        out.push(
            "the w rows hold exactly (b-2)(b-3) isolated 1s",
            {
                let w_rows: Vec<usize> = (2..b)
                    .flat_map(|i| (1..=b - 2).map(move |ll| (i, ll)))
                    .map(|(i, ll)| l.w(i, ll))
                    .collect();
                let n = w_rows
                    .iter()
                    .filter(|&&r| {
                        let s = v.row_support(r);
                        s.len() == 1 && s[0].1 == BigInt::from(1) && v.col_support(s[0].0).len() == 1
                    })
                    .count();
                if n == (b - 2) * (b - 3) {
                    Ok(())
                } else {
                    Err(format!("found {n}, expected {}", (b - 2) * (b - 3)))
                }
            },
        );
        out.push(
            "A(ui, v(i+1)) is a single -2 at position i for 2 <= i <= b-2",
            all(2..=b - 2, |i| {
                block_check(&v, &[l.u(i)], &cols_of_v(c, i + 1), |_, s| {
                    if s == i {
                        -2
                    } else {
                        0
                    }
                })
            }),
        );
    }
}

// ---------------------------------------------------------------- D5

fn d5_terms(c: &Ctx, i: usize) -> Vec<(usize, i64)> {
    let (b, l) = (c.b, &c.l);
    if i + 1 == b {
        vec![
            (l.w(b - 1, b - 2), 1),
            (l.u(b - 2), sgn(b)),
            (l.u(b - 1), sgn(b)),
        ]
    } else {
        vec![
            (l.w(i, i - 1), 1),
            (l.w(i + 1, i), 1),
            (l.wij(2, i + 1, i), sgn(i)),
            (l.wij(i, b - 1, i - 1), sgn(b + i)),
        ]
    }
}

fn pass_from_terms(list: Vec<Vec<(usize, i64)>>) -> Pass {
    Pass::rows(
        list.into_iter()
            .map(|terms| {
                let mut k = Combo::new(terms[0].0);
                for &(r, x) in &terms[1..] {
                    k = k.add(r, x);
                }
                k
            })
            .collect(),
    )
}

pub(crate) fn d5_pass(c: &Ctx) -> Pass {
    pass_from_terms((2..c.b).map(|i| d5_terms(c, i)).collect())
}

pub(crate) fn d5_pre_checks(c: &Ctx, prev: &IntMatrix, out: &mut Claims) {
    let v = View::new(prev, c.l);
    out.push(
        "the row combinations clearing row i-1 of wi vanish",
        all(2..c.b, |i| {
            combo_is(&v, &format!("combination for w{i}"), &d5_terms(c, i), &[])
        }),
    );
}

fn units_of_w_blocks(c: &Ctx, v: &View<'_>) -> Check {
    all(pivot_pairs(c.b), |(i, ll)| {
        v.isolated(c.l.w(i, ll), pivot_col(c, i, ll), 1)
    })
}

pub(crate) fn d5_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    let mut nulled = Vec::new();
    for i in 2..b {
        for (col, x) in pv.row_support(l.w(i, i - 1)) {
            let x: i64 = x.try_into().unwrap_or(i64::MAX);
            nulled.push((l.w(i, i - 1), col, x));
        }
    }
    out.push(
        "the only change is the nulling of row i-1 of each wi",
        only_nulled(&pv, next, &nulled),
    );
    out.push(
        "rows l != i-1 of wi keep their isolated unit",
        units_of_w_blocks(c, &v),
    );
    out.push(
        "row i-1 of each wi vanishes",
        all(2..b, |i| zero_row(&v, l.w(i, i - 1))),
    );
}

// ---------------------------------------------------------------- D6

fn d6_terms(c: &Ctx, i: usize) -> Vec<(usize, i64)> {
    let (b, l) = (c.b, &c.l);
    if i + 1 == b {
        let mut t = vec![(l.u(b - 1), 1)];
        for h in (2..=b - 2).filter(|h| (b - h) % 2 == 0) {
            t.push((l.wij(h, b - 1, h - 1), sgn(b - 1)));
        }
        t
    } else {
        vec![
            (l.u(i), 1),
            (l.u(i + 2), -1),
            (l.wij(2, i + 2, i + 1), 1),
            (l.wij(i + 1, b - 1, i), sgn(b)),
        ]
    }
}

pub(crate) fn d6_pass(c: &Ctx) -> Pass {
    let b = c.b;
    pass_from_terms(
        (2..=b - 3)
            .chain(std::iter::once(b - 1))
            .map(|i| d6_terms(c, i))
            .collect(),
    )
}

/// The row u(b-1) is driven to: v1 → (−1)^b 2; v_j → −2 at position j−1 when
/// j ≡ b mod 2; v_b → [ω, 0, …, 0, −2].
fn last_u_target(c: &Ctx) -> Vec<(usize, i64)> {
    let (b, l) = (c.b, &c.l);
    let mut t = vec![(l.v1(), 2 * sgn(b))];
    for j in (2..b).filter(|j| (b - j) % 2 == 0) {
        t.push((l.v(j, j - 1), -2));
    }
    t.push((l.v(b, 1), c.omega as i64));
    t.push((l.v(b, b - 1), -2));
    t
}

pub(crate) fn d6_pre_checks(c: &Ctx, prev: &IntMatrix, out: &mut Claims) {
    let v = View::new(prev, c.l);
    out.push(
        "the combinations clearing ui, 2 <= i <= b-3, vanish",
        all(2..=c.b - 3, |i| {
            combo_is(&v, &format!("combination for u{i}"), &d6_terms(c, i), &[])
        }),
    );
    out.push(
        "the combination for u(b-1) leaves (-1)^b 2, the -2 pattern and [omega, 0, ..., -2]",
        combo_is(
            &v,
            "combination for u(b-1)",
            &d6_terms(c, c.b - 1),
            &last_u_target(c),
        ),
    );
}

pub(crate) fn d6_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let v = View::new(next, *l);
    let rows: Vec<usize> = (2..=b - 3).chain([b - 1]).map(|i| l.u(i)).collect();
    out.push(
        "only the rows ui, i <= b-3, and u(b-1) change",
        all(changes(prev, next), |(r, col)| {
            if rows.contains(&r) {
                Ok(())
            } else {
                Err(format!("unexpected change at ({}, {})", v.rname(r), v.cname(col)))
            }
        }),
    );
    out.push(
        "ui vanishes for 2 <= i <= b-3",
        all(2..=b - 3, |i| zero_row(&v, l.u(i))),
    );
    out.push(
        "u(b-1) is (-1)^b 2 at v1, -2 at vj[j-1] for j = b mod 2, omega and -2 in vb",
        v.row_is(l.u(b - 1), &last_u_target(c)),
    );
}

// ---------------------------------------------------------------- D7

pub(crate) fn d7_pass(c: &Ctx) -> Pass {
    let (b, l) = (c.b, &c.l);
    let mut combos = Vec::new();
    for j in 3..b {
        let mut a = Combo::new(l.v(2, j));
        let mut d = Combo::new(l.v(j + 1, j));
        for tau in 2..j {
            let s = sgn(tau + j - 1);
            a = a.add(l.v(2, tau), -s);
            d = d.add(l.v(2, tau), sgn(j - 1) * 2 * s);
        }
        combos.push(a);
        combos.push(d);
    }
    Pass::cols(combos)
}

pub(crate) fn d7_pre_checks(c: &Ctx, prev: &IntMatrix, out: &mut Claims) {
    let l = &c.l;
    let v = View::new(prev, *l);
    out.push(
        "row j-1 of w(2,j) has exactly (-1)^(j+1), (-1)^(j+1), -2 in v2[j-1], v2[j], v(j+1)[j]",
        all(3..c.b, |j| {
            v.row_is(
                l.wij(2, j, j - 1),
                &[
                    (l.v(2, j - 1), sgn(j + 1)),
                    (l.v(2, j), sgn(j + 1)),
                    (l.v(j + 1, j), -2),
                ],
            )
        }),
    );
}

pub(crate) fn d7_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    let mut nulled = Vec::new();
    for j in 3..b {
        nulled.push((l.wij(2, j, j - 1), l.v(2, j), sgn(j + 1)));
        nulled.push((l.wij(2, j, j - 1), l.v(j + 1, j), -2));
    }
    out.push(
        "the only change is the nulling of two entries of row j-1 of each w(2,j)",
        only_nulled(&pv, next, &nulled),
    );
    out.push(
        "row j-1 of w(2,j) keeps an isolated (-1)^(j+1) at v2[j-1]",
        all(3..b, |j| v.isolated(l.wij(2, j, j - 1), l.v(2, j - 1), sgn(j + 1))),
    );
    out.push(
        "column v2[b-1] holds only (-1)^b in row u(b-2)",
        v.col_is(l.v(2, b - 1), &[(l.u(b - 2), sgn(b))]),
    );
}

// ---------------------------------------------------------------- D8

pub(crate) fn d8_pass(c: &Ctx) -> Pass {
    let (b, l) = (c.b, &c.l);
    let src = l.v(2, b - 1);
    let mut combos = vec![
        Combo::new(l.v1()).add(src, 2),
        Combo::new(l.v(b - 1, b - 2)).add(src, 2 * sgn(b)),
        Combo::new(l.v(b, 1)).add(src, BigInt::from(sgn(b)) * BigInt::from(c.a + 1)),
    ];
    for tau in 2..=b - 3 {
        combos.push(Combo::new(l.v(b, tau)).add(src, sgn(b - 1)));
    }
    Pass::cols(combos)
}

pub(crate) fn d8_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    let keep = l.v(2, b - 1);
    let nulled: Vec<(usize, usize, i64)> = pv
        .row_support(l.u(b - 2))
        .into_iter()
        .filter(|(col, _)| *col != keep)
        .map(|(col, x)| (l.u(b - 2), col, x.try_into().unwrap_or(i64::MAX)))
        .collect();
    out.push(
        "the only change is the nulling of u(b-2) away from v2[b-1]",
        only_nulled(&pv, next, &nulled),
    );
    out.push(
        "u(b-2) holds an isolated (-1)^b at v2[b-1]",
        v.isolated(l.u(b - 2), keep, sgn(b)),
    );
}

// ---------------------------------------------------------------- D9

pub(crate) fn d9_pass(c: &Ctx) -> Pass {
    let (b, l) = (c.b, &c.l);
    let mut combos = Vec::new();
    for i in 2..=b - 2 {
        let mut a = Combo::new(l.v(i, i - 1));
        let mut d = Combo::new(l.v(b, i - 1));
        for tau in i..=b - 2 {
            let s = sgn(tau + i);
            a = a.add(l.v(b, tau), sgn(b + i) * 2 * s);
            d = d.add(l.v(b, tau), -s);
        }
        combos.push(a);
        combos.push(d);
    }
    Pass::cols(combos)
}

pub(crate) fn d9_pre_checks(c: &Ctx, prev: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let v = View::new(prev, *l);
    out.push(
        "row i-1 of w(i,b-1) has exactly (-1)^b 2, (-1)^(i+1), (-1)^(i+1) in vi[i-1], vb[i-1], vb[i]",
        all(2..=b - 2, |i| {
            v.row_is(
                l.wij(i, b - 1, i - 1),
                &[
                    (l.v(i, i - 1), 2 * sgn(b)),
                    (l.v(b, i - 1), sgn(i + 1)),
                    (l.v(b, i), sgn(i + 1)),
                ],
            )
        }),
    );
}

pub(crate) fn d9_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    let mut nulled = Vec::new();
    for i in 2..=b - 2 {
        nulled.push((l.wij(i, b - 1, i - 1), l.v(i, i - 1), 2 * sgn(b)));
        nulled.push((l.wij(i, b - 1, i - 1), l.v(b, i - 1), sgn(i + 1)));
    }
    out.push(
        "the only change is the nulling of two entries of row i-1 of each w(i,b-1)",
        only_nulled(&pv, next, &nulled),
    );
    out.push(
        "row i-1 of w(i,b-1) keeps an isolated (-1)^(i+1) at vb[i]",
        all(2..=b - 2, |i| {
            v.isolated(l.wij(i, b - 1, i - 1), l.v(b, i), sgn(i + 1))
        }),
    );
    out.push(
        "column vb[1] holds only omega in row u(b-1)",
        v.col_is(l.v(b, 1), &[(l.u(b - 1), c.omega as i64)]),
    );
}

// ---------------------------------------------------------------- D10

pub(crate) fn d10_pass(c: &Ctx) -> Pass {
    let (b, l) = (c.b, &c.l);
    Pass::cols(
        (2..=b)
            .filter(|j| (b - j) % 2 == 0)
            .map(|j| Combo::new(l.v(j, j - 1)).add(l.v1(), sgn(b)))
            .collect(),
    )
}

pub(crate) fn d10_pre_checks(c: &Ctx, prev: &IntMatrix, out: &mut Claims) {
    let v = View::new(prev, c.l);
    out.push(
        "column v1 holds only (-1)^b 2 in row u(b-1)",
        v.col_is(c.l.v1(), &[(c.l.u(c.b - 1), 2 * sgn(c.b))]),
    );
}

/// Number of ±1 entries that are alone in both their row and column.
pub(crate) fn isolated_units(m: &IntMatrix) -> usize {
    let mut row_count = vec![0usize; m.rows()];
    let mut col_count = vec![0usize; m.cols()];
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                row_count[r] += 1;
                col_count[c] += 1;
            }
        }
    }
    let one = BigInt::from(1);
    let mut n = 0;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if row_count[r] == 1 && col_count[c] == 1 && (*x == one || *x == -&one) {
                n += 1;
            }
        }
    }
    n
}

pub(crate) fn d10_checks(c: &Ctx, prev: &IntMatrix, next: &IntMatrix, out: &mut Claims) {
    let (b, l) = (c.b, &c.l);
    let pv = View::new(prev, *l);
    let v = View::new(next, *l);
    let nulled: Vec<(usize, usize, i64)> = (2..=b)
        .filter(|j| (b - j) % 2 == 0)
        .map(|j| (l.u(b - 1), l.v(j, j - 1), -2))
        .collect();
    out.push(
        "the only change is the nulling of the -2 entries of u(b-1)",
        only_nulled(&pv, next, &nulled),
    );
    out.push(
        "final: ui vanishes for 2 <= i <= b-3",
        all(2..=b - 3, |i| zero_row(&v, l.u(i))),
    );
    out.push(
        "final: u(b-2) holds an isolated (-1)^b at v2[b-1]",
        v.isolated(l.u(b - 2), l.v(2, b - 1), sgn(b)),
    );
    out.push(
        "final: u(b-1) holds exactly (-1)^b 2 and omega, each alone in its column",
        v.row_is(
            l.u(b - 1),
            &[(l.v1(), 2 * sgn(b)), (l.v(b, 1), c.omega as i64)],
        )
        .and_then(|_| v.col_is(l.v1(), &[(l.u(b - 1), 2 * sgn(b))]))
        .and_then(|_| v.col_is(l.v(b, 1), &[(l.u(b - 1), c.omega as i64)])),
    );
    out.push(
        "final: rows l != i-1 of wi hold isolated units",
        units_of_w_blocks(c, &v),
    );
    out.push(
        "final: row i-1 of each wi vanishes",
        all(2..b, |i| zero_row(&v, l.w(i, i - 1))),
    );
    out.push(
        "final: row j-1 of w(2,j) holds an isolated (-1)^(j+1) at v2[j-1]",
        all(3..b, |j| v.isolated(l.wij(2, j, j - 1), l.v(2, j - 1), sgn(j + 1))),
    );
    out.push(
        "final: row i-1 of w(i,b-1) holds an isolated (-1)^(i+1) at vb[i]",
        all(2..=b - 2, |i| {
            v.isolated(l.wij(i, b - 1, i - 1), l.v(b, i), sgn(i + 1))
        }),
    );
    let want = b * (b - 3) + 1;
    let got = isolated_units(next);
    out.push(
        "final: b(b-3)+1 entries equal +-1 are alone in their row and column",
        if got == want {
            Ok(())
        } else {
            Err(format!("found {got}, expected {want}"))
        },
    );
}
