use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Smith normal form data: the diagonal and, optionally, unimodular
/// `U`, `V` with `U·A·V = diag(factors)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    #[serde(with = "super::decimal::list")]
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

/// Which transforms to accumulate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Transforms {
    pub left: bool,
    pub right: bool,
}

impl Transforms {
    pub const NONE: Self = Self {
        left: false,
        right: false,
    };
    pub const BOTH: Self = Self {
        left: true,
        right: true,
    };
    pub const RIGHT: Self = Self {
        left: false,
        right: true,
    };
}

/// Smith normal form of `a`. With `with_transforms`, the returned `U`, `V`
/// are checked to reproduce the diagonal.
pub fn snf(a: &IntMatrix, with_transforms: bool) -> Result<SnfResult> {
    let want = if with_transforms {
        Transforms::BOTH
    } else {
        Transforms::NONE
    };
    let (diag, u, v) = snf_parts(a, want);
    let factors = diag;
    let rank = factors.iter().filter(|d| !Zero::is_zero(*d)).count();
    let transforms = match (u, v) {
        (Some(u), Some(v)) => {
            let d = u.mul(a)?.mul(&v)?;
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let expected = if r == c {
                        factors[r].clone()
                    } else {
                        BigInt::zero()
                    };
                    if *d.get(r, c) != expected {
                        return Err(Error::Model(format!(
                            "U·A·V differs from the diagonal at ({r},{c})"
                        )));
                    }
                }
            }
            Some((u, v))
        }
        _ => None,
    };
    Ok(SnfResult {
        factors,
        rank,
        transforms,
    })
}

/// Diagonal of the Smith form plus whichever transforms were requested.
pub(crate) fn snf_parts(
    a: &IntMatrix,
    want: Transforms,
) -> (Vec<BigInt>, Option<IntMatrix>, Option<IntMatrix>) {
    // Small entries run in i64 with checked arithmetic; overflow restarts in
    // arbitrary precision.
    if a.max_abs_i64().is_some_and(|m| m < 1 << 40) {
        let rows: Vec<Vec<i64>> = a
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        if let Some(out) = Elim::<i64>::new(rows, a.cols(), want).run() {
            return out.into_big();
        }
    }
    Elim::<BigInt>::new(a.to_rows(), a.cols(), want)
        .run()
        .expect("arbitrary precision never overflows")
        .into_big()
}

trait Scalar: Clone + Sized {
    fn zero_val() -> Self;
    fn one_val() -> Self;
    fn eq_zero(&self) -> bool;
    fn lt_zero(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn neg(&self) -> Option<Self>;
    /// Truncating quotient.
    fn quot(&self, d: &Self) -> Self;
    fn divides(&self, x: &Self) -> bool;
    /// `self - q·x`.
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn add(&self, x: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero_val() -> Self {
        0
    }
    fn one_val() -> Self {
        1
    }
    fn eq_zero(&self) -> bool {
        *self == 0
    }
    fn lt_zero(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, x: &Self) -> bool {
        x % self == 0
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        q.checked_mul(*x).and_then(|p| self.checked_sub(p))
    }
    fn add(&self, x: &Self) -> Option<Self> {
        self.checked_add(*x)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero_val() -> Self {
        Zero::zero()
    }
    fn one_val() -> Self {
        One::one()
    }
    fn eq_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn lt_zero(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, x: &Self) -> bool {
        x.is_multiple_of(self)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn add(&self, x: &Self) -> Option<Self> {
        Some(self + x)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Elim<T> {
    a: Vec<Vec<T>>,
    m: usize,
    n: usize,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

struct ElimOut<T> {
    diag: Vec<T>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

impl<T: Scalar> ElimOut<T> {
    fn into_big(self) -> (Vec<BigInt>, Option<IntMatrix>, Option<IntMatrix>) {
        let conv = |rows: Vec<Vec<T>>| {
            let mut m = IntMatrix::zeros(rows.len(), rows.len());
            for (i, r) in rows.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    m.set(i, j, x.to_big());
                }
            }
            m
        };
        (
            self.diag.iter().map(T::to_big).collect(),
            self.u.map(conv),
            self.v.map(conv),
        )
    }
}

fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one_val() } else { T::zero_val() })
                .collect()
        })
        .collect()
}

impl<T: Scalar> Elim<T> {
    fn new(a: Vec<Vec<T>>, n: usize, want: Transforms) -> Self {
        let m = a.len();
        Self {
            a,
            m,
            n,
            u: want.left.then(|| identity(m)),
            v: want.right.then(|| identity(n)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i -= q·row_t, touching only columns listed in `support`.
    fn row_sub(&mut self, i: usize, t: usize, q: &T, support: &[usize]) -> Option<()> {
        for &j in support {
            let x = self.a[i][j].sub_mul(q, &self.a[t][j])?;
            self.a[i][j] = x;
        }
        if let Some(u) = &mut self.u {
            for j in 0..u[t].len() {
                if !u[t][j].eq_zero() {
                    let x = u[i][j].sub_mul(q, &u[t][j])?;
                    u[i][j] = x;
                }
            }
        }
        Some(())
    }

    /// col_j -= q·col_t, touching only rows listed in `support`.
    fn col_sub(&mut self, j: usize, t: usize, q: &T, support: &[usize]) -> Option<()> {
        for &i in support {
            let x = self.a[i][j].sub_mul(q, &self.a[i][t])?;
            self.a[i][j] = x;
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[t].eq_zero() {
                    let x = row[j].sub_mul(q, &row[t])?;
                    row[j] = x;
                }
            }
        }
        Some(())
    }

    fn row_add(&mut self, t: usize, i: usize) -> Option<()> {
        for j in 0..self.n {
            if !self.a[i][j].eq_zero() {
                let x = self.a[t][j].add(&self.a[i][j])?;
                self.a[t][j] = x;
            }
        }
        if let Some(u) = &mut self.u {
            for j in 0..u[i].len() {
                if !u[i][j].eq_zero() {
                    let x = u[t][j].add(&u[i][j])?;
                    u[t][j] = x;
                }
            }
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        for j in 0..self.n {
            let x = self.a[t][j].neg()?;
            self.a[t][j] = x;
        }
        if let Some(u) = &mut self.u {
            for x in u[t].iter_mut() {
                *x = x.neg()?;
            }
        }
        Some(())
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.eq_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| {
                    x.abs_cmp(&self.a[bi][bj]) == Ordering::Less
                }) {
                    best = Some((i, j));
                    if x.abs_cmp(&T::one_val()) == Ordering::Equal {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<ElimOut<T>> {
        let k = self.m.min(self.n);
        let mut t = 0;
        while t < k {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let row_support: Vec<usize> =
                    (t..self.n).filter(|&j| !self.a[t][j].eq_zero()).collect();
                for i in t + 1..self.m {
                    if !self.a[i][t].eq_zero() {
                        let q = self.a[i][t].quot(&self.a[t][t]);
                        self.row_sub(i, t, &q, &row_support)?;
                    }
                }
                let col_support: Vec<usize> =
                    (t..self.m).filter(|&i| !self.a[i][t].eq_zero()).collect();
                for j in t + 1..self.n {
                    if !self.a[t][j].eq_zero() {
                        let q = self.a[t][j].quot(&self.a[t][t]);
                        self.col_sub(j, t, &q, &col_support)?;
                    }
                }
                // Remainders left in the pivot row or column become the new pivot.
                let mut next: Option<(usize, usize)> = None;
                let mut consider = |i: usize, j: usize, a: &Vec<Vec<T>>| {
                    if !a[i][j].eq_zero()
                        && next.map_or(true, |(bi, bj)| {
                            a[i][j].abs_cmp(&a[bi][bj]) == Ordering::Less
                        })
                    {
                        next = Some((i, j));
                    }
                };
                for i in t + 1..self.m {
                    consider(i, t, &self.a);
                }
                for j in t + 1..self.n {
                    consider(t, j, &self.a);
                }
                if let Some((i, j)) = next {
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // Enforce the divisibility chain.
                let bad = (t + 1..self.m)
                    .find(|&i| (t + 1..self.n).any(|j| !self.a[t][t].divides(&self.a[i][j])));
                match bad {
                    Some(i) => self.row_add(t, i)?,
                    None => break,
                }
            }
            if self.a[t][t].lt_zero() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        let diag = (0..k)
            .map(|i| {
                if i < t {
                    self.a[i][i].clone()
                } else {
                    T::zero_val()
                }
            })
            .collect();
        Some(ElimOut {
            diag,
            u: self.u,
            v: self.v,
        })
    }
}
