//! Hook parameters, weight sequences and two-row standard tableaux.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::dpa::{DividedMonomial, TensorMonomial};
use crate::error::{Error, Result};

/// The pair (a, b) fixing λ = (a, 1^b) and μ = (a+1, b−1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HookParams {
    a: usize,
    b: usize,
}

impl HookParams {
    /// Requires a ≥ 1, b ≥ 2 and a+1 > b−1.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a < 1 {
            return Err(Error::InvalidParams(format!("a must be positive, got {a}")));
        }
        if b < 2 {
            return Err(Error::InvalidParams(format!(
                "b must be at least 2, got {b}"
            )));
        }
        if a + 1 <= b - 1 {
            return Err(Error::InvalidParams(format!(
                "need a+1 > b-1, got a={a}, b={b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// λ = (a, 1^b).
    pub fn lambda(&self) -> Composition {
        let mut parts = vec![self.a as u32];
        parts.extend(std::iter::repeat(1).take(self.b));
        Composition::new(parts)
    }

    /// μ = (a+1, b−1).
    pub fn mu(&self) -> (usize, usize) {
        (self.a + 1, self.b - 1)
    }

    /// r = a + b, the common degree.
    pub fn r(&self) -> usize {
        self.a + self.b
    }

    /// Number of rows of the presentation matrix, (b−2)(1 + C(b−1, 2)).
    pub fn s(&self) -> usize {
        if self.b < 2 {
            return 0;
        }
        (self.b - 2) * (1 + binomial(self.b - 1, 2))
    }

    /// Number of columns of the presentation matrix, 1 + (b−1)².
    pub fn t(&self) -> usize {
        1 + (self.b - 1) * (self.b - 1)
    }

    /// ω = a+2 for even b, a+1 for odd b.
    pub fn omega(&self) -> usize {
        if self.b % 2 == 0 {
            self.a + 2
        } else {
            self.a + 1
        }
    }
}

/// A finite sequence of non-negative integers; trailing zeros are ignored
/// by comparisons and hashing.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    fn trimmed(&self) -> &[u32] {
        let end = self
            .parts
            .iter()
            .rposition(|&p| p != 0)
            .map_or(0, |k| k + 1);
        &self.parts[..end]
    }

    /// Copy padded with zeros (or truncated of trailing zeros) to length `n`.
    pub fn padded(&self, n: usize) -> Result<Self> {
        let trimmed = self.trimmed();
        if trimmed.len() > n {
            return Err(Error::Mismatch(format!(
                "composition {self} does not fit in {n} parts"
            )));
        }
        let mut parts = trimmed.to_vec();
        parts.resize(n, 0);
        Ok(Self { parts })
    }
}

impl PartialEq for Composition {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Composition {}

impl Hash for Composition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.trimmed().cmp(other.trimmed())
    }
}

impl From<Vec<u32>> for Composition {
    fn from(parts: Vec<u32>) -> Self {
        Self::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Which summand of P₁ or P₂ a weight belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightKind {
    V(usize),
    U(usize),
    W(usize),
    Wij(usize, usize),
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKind::V(i) => write!(f, "v{i}"),
            WeightKind::U(i) => write!(f, "u{i}"),
            WeightKind::W(i) => write!(f, "w{i}"),
            WeightKind::Wij(i, j) => write!(f, "w{i}_{j}"),
        }
    }
}

/// A named weight together with its composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightLabel {
    pub kind: WeightKind,
    pub composition: Composition,
}

impl WeightLabel {
    /// Builds the composition for `kind` under `params`, validating indices.
    pub fn new(kind: WeightKind, params: &HookParams) -> Result<Self> {
        let (a, b) = (params.a() as u32, params.b());
        let bad = || Error::InvalidParams(format!("weight {kind} out of range for b={b}"));
        let parts = match kind {
            WeightKind::V(1) => {
                let mut p = vec![a + 1];
                p.extend(std::iter::repeat(1).take(b - 1));
                p
            }
            WeightKind::V(i) => {
                if i < 2 || i > b {
                    return Err(bad());
                }
                let mut p = vec![a];
                p.extend(std::iter::repeat(1).take(b - 1));
                p[i - 1] = 2;
                p
            }
            WeightKind::U(1) => {
                if b < 2 {
                    return Err(bad());
                }
                let mut p = vec![a + 2];
                p.extend(std::iter::repeat(1).take(b - 2));
                p
            }
            WeightKind::U(i) => {
                if i < 2 || i > b - 1 {
                    return Err(bad());
                }
                let mut p = vec![a + 1];
                p.extend(std::iter::repeat(1).take(b - 2));
                p[i - 1] = 2;
                p
            }
            WeightKind::W(i) => {
                if i < 2 || i > b - 1 {
                    return Err(bad());
                }
                let mut p = vec![a];
                p.extend(std::iter::repeat(1).take(b - 2));
                p[i - 1] = 3;
                p
            }
            WeightKind::Wij(i, j) => {
                if i < 2 || i >= j || j > b - 1 {
                    return Err(bad());
                }
                let mut p = vec![a];
                p.extend(std::iter::repeat(1).take(b - 2));
                p[i - 1] = 2;
                p[j - 1] = 2;
                p
            }
        };
        Ok(Self {
            kind,
            composition: Composition::new(parts),
        })
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

fn require_b3(params: &HookParams) -> Result<()> {
    if params.b() < 3 {
        return Err(Error::InvalidParams(format!(
            "b must be at least 3 here, got {}",
            params.b()
        )));
    }
    Ok(())
}

/// The weights v₁, …, v_b of the summands of P₁, in order.
pub fn p1_weights(params: &HookParams) -> Result<Vec<WeightLabel>> {
    require_b3(params)?;
    (1..=params.b())
        .map(|i| WeightLabel::new(WeightKind::V(i), params))
        .collect()
}

/// The row-block labels of the presentation matrix: u₂, …, u_{b−1}, then for
/// each i the group w_i, w_{i,i+1}, …, w_{i,b−1}.
pub fn p2_row_labels(params: &HookParams) -> Result<Vec<WeightLabel>> {
    require_b3(params)?;
    let b = params.b();
    let mut kinds: Vec<WeightKind> = (2..b).map(WeightKind::U).collect();
    for i in 2..b {
        kinds.push(WeightKind::W(i));
        kinds.extend((i + 1..b).map(|j| WeightKind::Wij(i, j)));
    }
    kinds
        .into_iter()
        .map(|k| WeightLabel::new(k, params))
        .collect()
}

/// A filling of a two-row shape with weakly increasing rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoRowTableau {
    pub row1: Vec<u32>,
    pub row2: Vec<u32>,
}

impl TwoRowTableau {
    pub fn shape(&self) -> (usize, usize) {
        (self.row1.len(), self.row2.len())
    }

    /// Strict columns and a partition shape.
    pub fn is_standard(&self) -> bool {
        self.row1.len() >= self.row2.len()
            && self.row1.windows(2).all(|w| w[0] <= w[1])
            && self.row2.windows(2).all(|w| w[0] <= w[1])
            && self
                .row1
                .iter()
                .zip(&self.row2)
                .all(|(above, below)| above < below)
    }

    /// X_T(1) ⊗ X_T(2) over an alphabet of size `n`.
    pub fn monomial(&self, n: usize) -> Result<TensorMonomial> {
        let count = |row: &[u32]| -> Result<DividedMonomial> {
            let mut e = vec![0u32; n];
            for &x in row {
                if x == 0 || x as usize > n {
                    return Err(Error::Mismatch(format!(
                        "entry {x} outside alphabet 1..={n}"
                    )));
                }
                e[x as usize - 1] += 1;
            }
            Ok(DividedMonomial::new(e))
        };
        Ok(TensorMonomial::new(vec![
            count(&self.row1)?,
            count(&self.row2)?,
        ]))
    }
}

impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |r: &[u32]| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "[{}]/[{}]", join(&self.row1), join(&self.row2))
    }
}

/// X_T for a tableau, over an alphabet of size `n`.
pub fn tableau_monomial(t: &TwoRowTableau, n: usize) -> Result<TensorMonomial> {
    t.monomial(n)
}

/// All standard tableaux of the given shape and content, ordered by the
/// first-row word.
pub fn standard_tableaux(
    shape: (usize, usize),
    content: &Composition,
) -> Result<Vec<TwoRowTableau>> {
    let (m1, m2) = shape;
    if m1 < m2 {
        return Err(Error::Mismatch(format!("({m1},{m2}) is not a partition")));
    }
    if (m1 + m2) as u32 != content.weight() {
        return Err(Error::Mismatch(format!(
            "shape ({m1},{m2}) has size {} but content {content} has weight {}",
            m1 + m2,
            content.weight()
        )));
    }
    let mut out = Vec::new();
    for top in row_splits(content.parts(), m1 as u32) {
        let bottom: Vec<u32> = content
            .parts()
            .iter()
            .zip(&top)
            .map(|(c, t)| c - t)
            .collect();
        let t = TwoRowTableau {
            row1: expand(&top),
            row2: expand(&bottom),
        };
        if t.is_standard() {
            out.push(t);
        }
    }
    out.sort_by(|x, y| x.row1.cmp(&y.row1));
    Ok(out)
}

/// All vectors `c` with `0 ≤ c ≤ bound` componentwise and total `total`.
pub(crate) fn row_splits(bound: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(bound: &[u32], k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == bound.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: u32 = bound[k + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for x in lo..=bound[k].min(left) {
            cur.push(x);
            go(bound, k + 1, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(
        bound,
        0,
        total,
        &mut Vec::with_capacity(bound.len()),
        &mut out,
    );
    out
}

fn expand(counts: &[u32]) -> Vec<u32> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(k, &c)| std::iter::repeat(k as u32 + 1).take(c as usize))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec())
    }

    #[test]
    fn hook_params_derived_values() {
        let p = HookParams::new(7, 7).unwrap();
        assert_eq!(p.mu(), (8, 6));
        assert_eq!(p.r(), 14);
        assert_eq!((p.s(), p.t()), (80, 37));
        assert_eq!(p.omega(), 8);
        assert_eq!(HookParams::new(8, 8).unwrap().omega(), 10);
        assert_eq!(p.lambda().weight(), 14);
        assert!(HookParams::new(1, 4).is_err());
        assert!(HookParams::new(2, 4).is_err());
        assert!(HookParams::new(3, 1).is_err());
        assert!(HookParams::new(0, 2).is_err());
        assert!(HookParams::new(3, 4).is_ok());
    }

    #[test]
    fn p1_weights_small() {
        let p = HookParams::new(3, 3).unwrap();
        let w: Vec<_> = p1_weights(&p)
            .unwrap()
            .into_iter()
            .map(|l| l.composition)
            .collect();
        assert_eq!(
            w,
            vec![comp(&[4, 1, 1]), comp(&[3, 2, 1]), comp(&[3, 1, 2])]
        );
        let p = HookParams::new(3, 4).unwrap();
        let w: Vec<_> = p1_weights(&p)
            .unwrap()
            .into_iter()
            .map(|l| l.composition)
            .collect();
        assert_eq!(
            w,
            vec![
                comp(&[4, 1, 1, 1]),
                comp(&[3, 2, 1, 1]),
                comp(&[3, 1, 2, 1]),
                comp(&[3, 1, 1, 2])
            ]
        );
    }

    #[test]
    fn p2_rows_layout() {
        let kinds = |a, b| -> Vec<WeightKind> {
            p2_row_labels(&HookParams::new(a, b).unwrap())
                .unwrap()
                .into_iter()
                .map(|l| l.kind)
                .collect()
        };
        use WeightKind::*;
        assert_eq!(kinds(3, 4), vec![U(2), U(3), W(2), Wij(2, 3), W(3)]);
        assert_eq!(kinds(3, 3), vec![U(2), W(2)]);
        for b in 3..=12 {
            let p = HookParams::new(b, b).unwrap();
            let rows: usize = p2_row_labels(&p)
                .unwrap()
                .iter()
                .map(|l| if matches!(l.kind, U(_)) { 1 } else { b - 2 })
                .sum();
            assert_eq!(rows, p.s());
            assert_eq!(p1_weights(&p).unwrap().len(), b);
            assert_eq!(1 + (b - 1) * (b - 1), p.t());
        }
    }

    #[test]
    fn weights_sum_to_r() {
        let p = HookParams::new(9, 6).unwrap();
        for l in p1_weights(&p)
            .unwrap()
            .iter()
            .chain(&p2_row_labels(&p).unwrap())
        {
            assert_eq!(l.composition.weight() as usize, p.r());
        }
        let u1 = WeightLabel::new(WeightKind::U(1), &p).unwrap();
        assert_eq!(u1.composition, comp(&[11, 1, 1, 1, 1]));
        let w = WeightLabel::new(WeightKind::Wij(2, 4), &p).unwrap();
        assert_eq!(w.composition, comp(&[9, 2, 1, 2, 1]));
    }

    #[test]
    fn composition_equality_ignores_trailing_zeros() {
        assert_eq!(comp(&[1, 2, 0, 0]), comp(&[1, 2]));
        assert_ne!(comp(&[1, 0, 2]), comp(&[1, 2]));
        assert_eq!(comp(&[3, 1]).padded(4).unwrap().parts(), &[3, 1, 0, 0]);
        assert!(comp(&[3, 1, 1]).padded(2).is_err());
    }

    #[test]
    fn standard_tableaux_examples() {
        let t = standard_tableaux((4, 2), &comp(&[4, 1, 1])).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(
            (t[0].row1.clone(), t[0].row2.clone()),
            (vec![1, 1, 1, 1], vec![2, 3])
        );

        let t = standard_tableaux((3, 2), &comp(&[2, 2, 1])).unwrap();
        let rows: Vec<_> = t.iter().map(|x| (x.row1.clone(), x.row2.clone())).collect();
        assert_eq!(
            rows,
            vec![(vec![1, 1, 2], vec![2, 3]), (vec![1, 1, 3], vec![2, 2])]
        );

        let p = HookParams::new(5, 4).unwrap();
        let u1 = WeightLabel::new(WeightKind::U(1), &p).unwrap();
        let mu = p.mu();
        assert!(standard_tableaux(mu, &u1.composition).unwrap().is_empty());
        assert!(standard_tableaux((3, 2), &comp(&[2, 2])).is_err());
    }

    #[test]
    fn tableau_monomials() {
        let t = TwoRowTableau {
            row1: vec![1, 1, 1, 1],
            row2: vec![2, 3],
        };
        let m = t.monomial(3).unwrap();
        assert_eq!(m.factors()[0].exponents(), &[4, 0, 0]);
        assert_eq!(m.factors()[1].exponents(), &[0, 1, 1]);
        let t = TwoRowTableau {
            row1: vec![1, 1, 2],
            row2: vec![2, 3],
        };
        let m = t.monomial(3).unwrap();
        assert_eq!(m.factors()[0].exponents(), &[2, 1, 0]);
        assert_eq!(m.factors()[1].exponents(), &[0, 1, 1]);
        assert_eq!(m.profile().parts(), &[3, 2]);
    }

    /// Counts per weight family match the basis sizes used for the matrix.
    #[test]
    fn standard_counts_per_family() {
        for b in 3..=7 {
            for a in b - 1..=b + 3 {
                let p = HookParams::new(a, b).unwrap();
                for l in p1_weights(&p)
                    .unwrap()
                    .iter()
                    .chain(&p2_row_labels(&p).unwrap())
                {
                    let n = standard_tableaux(p.mu(), &l.composition).unwrap().len();
                    let expected = match l.kind {
                        WeightKind::V(1) | WeightKind::U(_) => 1,
                        WeightKind::V(_) => b - 1,
                        WeightKind::W(_) | WeightKind::Wij(..) => b - 2,
                    };
                    assert_eq!(n, expected, "{} at a={a} b={b}", l.kind);
                }
            }
        }
    }

    /// The row-1 word order agrees with the subscript order: the single
    /// non-1 entry of row 1 increases along the list.
    #[test]
    fn ordering_matches_subscripts() {
        let p = HookParams::new(6, 6).unwrap();
        for l in p1_weights(&p)
            .unwrap()
            .iter()
            .chain(&p2_row_labels(&p).unwrap())
        {
            let ts = standard_tableaux(p.mu(), &l.composition).unwrap();
            let extra: Vec<u32> = ts
                .iter()
                .filter_map(|t| t.row1.iter().copied().find(|&x| x != 1))
                .collect();
            let expected: Vec<u32> = match l.kind {
                WeightKind::V(i) if i >= 2 => (2..=6).collect(),
                WeightKind::W(_) | WeightKind::Wij(..) => (2..=5).collect(),
                _ => vec![],
            };
            assert_eq!(extra, expected, "{}", l.kind);
        }
    }

    #[test]
    fn brute_force_agreement() {
        // Every filling of the shape, filtered by standardness.
        fn brute(shape: (usize, usize), content: &[u32]) -> Vec<TwoRowTableau> {
            let n = shape.0 + shape.1;
            let letters = expand(content);
            let mut out = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != shape.0 {
                    continue;
                }
                let mut r1 = vec![];
                let mut r2 = vec![];
                for (k, &x) in letters.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        r1.push(x)
                    } else {
                        r2.push(x)
                    }
                }
                let t = TwoRowTableau { row1: r1, row2: r2 };
                if t.is_standard() && seen.insert(t.clone()) {
                    out.push(t);
                }
            }
            out.sort_by(|x, y| x.row1.cmp(&y.row1));
            out
        }
        for (shape, content) in [
            ((4, 3), vec![3, 2, 1, 1]),
            ((5, 3), vec![2, 2, 2, 2]),
            ((3, 3), vec![2, 1, 2, 1]),
            ((6, 2), vec![4, 1, 3]),
        ] {
            assert_eq!(
                standard_tableaux(shape, &comp(&content)).unwrap(),
                brute(shape, &content)
            );
        }
    }
}
