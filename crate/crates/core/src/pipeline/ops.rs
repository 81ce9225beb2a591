//! Simultaneous row and column passes over an integer matrix.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::intlin::{bareiss_det, IntMatrix};

/// `target ← target + Σ c·src`, every source read from the pass input.
#[derive(Clone, Debug)]
pub(crate) struct Combo {
    pub target: usize,
    pub terms: Vec<(usize, BigInt)>,
}

impl Combo {
    pub fn new(target: usize) -> Self {
        Self {
            target,
            terms: Vec::new(),
        }
    }

    pub fn add(mut self, src: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if !c.is_zero() {
            self.terms.push((src, c));
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Axis {
    Rows,
    Cols,
}

/// A set of combos applied at once against a frozen snapshot.
#[derive(Clone, Debug)]
pub(crate) struct Pass {
    pub axis: Axis,
    pub combos: Vec<Combo>,
}

impl Pass {
    pub fn rows(combos: Vec<Combo>) -> Self {
        Self {
            axis: Axis::Rows,
            combos,
        }
    }

    pub fn cols(combos: Vec<Combo>) -> Self {
        Self {
            axis: Axis::Cols,
            combos,
        }
    }

    pub fn apply(&self, m: &IntMatrix) -> IntMatrix {
        let mut out = m.clone();
        match self.axis {
            Axis::Rows => {
                for combo in &self.combos {
                    for c in 0..m.cols() {
                        let mut acc = m.get(combo.target, c).clone();
                        for (src, k) in &combo.terms {
                            let x = m.get(*src, c);
                            if !x.is_zero() {
                                acc += k * x;
                            }
                        }
                        out.set(combo.target, c, acc);
                    }
                }
            }
            Axis::Cols => {
                for combo in &self.combos {
                    for r in 0..m.rows() {
                        let mut acc = m.get(r, combo.target).clone();
                        for (src, k) in &combo.terms {
                            let x = m.get(r, *src);
                            if !x.is_zero() {
                                acc += k * x;
                            }
                        }
                        out.set(r, combo.target, acc);
                    }
                }
            }
        }
        out
    }

    /// Whether the transform is invertible over ℤ. Untouched lines carry the
    /// identity, so only the target-by-target minor matters.
    pub fn is_unimodular(&self) -> bool {
        let targets: Vec<usize> = self.combos.iter().map(|c| c.target).collect();
        let mut sorted = targets.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != targets.len() {
            return false;
        }
        let n = targets.len();
        let mut t = vec![vec![BigInt::zero(); n]; n];
        for (a, combo) in self.combos.iter().enumerate() {
            t[a][a] = BigInt::one();
            for (src, k) in &combo.terms {
                if let Some(b) = targets.iter().position(|x| x == src) {
                    t[a][b] += k;
                }
            }
        }
        bareiss_det(t).abs().is_one()
    }
}
