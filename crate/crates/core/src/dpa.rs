//! Divided power algebra arithmetic: monomials, products, comultiplication
//! components and tensor elements.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{row_splits, Composition};
use crate::error::{Error, Result};

/// 1^{(e₁)} 2^{(e₂)} ⋯ n^{(eₙ)}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DividedMonomial {
    exps: Vec<u32>,
}

impl DividedMonomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    /// The unit 1 over an alphabet of size `n`.
    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// `letter^{(d)}` with `letter` counted from 1.
    pub fn power(n: usize, letter: usize, d: u32) -> Self {
        let mut exps = vec![0; n];
        if d > 0 {
            exps[letter - 1] = d;
        }
        Self { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn alphabet(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

impl fmt::Display for DividedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (k, &e) in self.exps.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "{}", k + 1)?,
                _ => write!(f, "{}^({e})", k + 1)?,
            }
            any = true;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Product of divided monomials: coefficient ∏ C(x_k + y_k, x_k).
pub fn mono_product(x: &DividedMonomial, y: &DividedMonomial) -> Result<(BigInt, DividedMonomial)> {
    if x.alphabet() != y.alphabet() {
        return Err(Error::Mismatch(format!(
            "alphabet sizes {} and {} differ",
            x.alphabet(),
            y.alphabet()
        )));
    }
    let mut coeff = BigInt::one();
    let mut exps = Vec::with_capacity(x.alphabet());
    for (&p, &q) in x.exps.iter().zip(&y.exps) {
        if p > 0 && q > 0 {
            coeff *= binomial(BigInt::from(p + q), BigInt::from(p));
        }
        exps.push(p + q);
    }
    Ok((coeff, DividedMonomial::new(exps)))
}

/// An ordered tensor product of divided monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorMonomial {
    factors: Vec<DividedMonomial>,
}

impl TensorMonomial {
    pub fn new(factors: Vec<DividedMonomial>) -> Self {
        Self { factors }
    }

    pub fn factors(&self) -> &[DividedMonomial] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<DividedMonomial> {
        self.factors
    }

    /// Degrees of the factors, zeros included.
    pub fn profile(&self) -> Composition {
        Composition::new(self.degrees())
    }

    fn degrees(&self) -> Vec<u32> {
        self.factors.iter().map(DividedMonomial::degree).collect()
    }

    /// Coordinatewise sum of the exponent vectors.
    pub fn weight(&self) -> Vec<u32> {
        let n = self.factors.first().map_or(0, DividedMonomial::alphabet);
        let mut w = vec![0; n];
        for f in &self.factors {
            for (acc, e) in w.iter_mut().zip(&f.exps) {
                *acc += e;
            }
        }
        w
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// 1^{(α₁)} ⊗ 2^{(α₂)} ⊗ ⋯ over an alphabet of size `n`.
pub fn canonical_monomial(alpha: &Composition, n: usize) -> Result<TensorMonomial> {
    if alpha.len() > n {
        return Err(Error::Mismatch(format!("{alpha} has more than {n} parts")));
    }
    let factors = alpha
        .parts()
        .iter()
        .enumerate()
        .map(|(k, &d)| DividedMonomial::power(n, k + 1, d))
        .collect();
    Ok(TensorMonomial::new(factors))
}

/// A homogeneous integer combination of tensor monomials sharing one
/// factor-degree profile and one total weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpaElement {
    profile: Vec<u32>,
    terms: BTreeMap<TensorMonomial, BigInt>,
}

impl DpaElement {
    pub fn zero(profile: Vec<u32>) -> Self {
        Self {
            profile,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: TensorMonomial) -> Self {
        Self::from_term(m, BigInt::one())
    }

    pub fn from_term(m: TensorMonomial, c: BigInt) -> Self {
        let mut e = Self::zero(m.degrees());
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    /// Degrees of the tensor factors, zeros included.
    pub fn profile(&self) -> &[u32] {
        &self.profile
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of their monomials.
    pub fn terms(&self) -> impl Iterator<Item = (&TensorMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &TensorMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total weight, or `None` for the zero element.
    pub fn weight(&self) -> Option<Vec<u32>> {
        self.terms.keys().next().map(TensorMonomial::weight)
    }

    /// Adds `c · m`, enforcing homogeneity.
    pub fn add_term(&mut self, m: TensorMonomial, c: BigInt) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if m.degrees() != self.profile {
            return Err(Error::Mismatch(format!(
                "term {m} has profile {:?}, element has {:?}",
                m.degrees(),
                self.profile
            )));
        }
        if let Some(w) = self.weight() {
            if m.weight() != w {
                return Err(Error::Mismatch(format!(
                    "term {m} breaks weight homogeneity"
                )));
            }
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    /// `self + c · other`.
    pub fn add_scaled(&mut self, other: &DpaElement, c: &BigInt) -> Result<()> {
        if other.profile != self.profile {
            return Err(Error::Mismatch(format!(
                "profiles {:?} and {:?} differ",
                self.profile, other.profile
            )));
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c)?;
        }
        Ok(())
    }

    pub fn scaled(&self, c: &BigInt) -> DpaElement {
        let mut out = Self::zero(self.profile.clone());
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        }
        out
    }

    /// Applies `local` to the factors in `positions` of every term, splicing
    /// the factors of its output in their place. `local_profile` is the
    /// factor-degree profile the local map produces.
    pub fn apply_at<F>(
        &self,
        positions: Range<usize>,
        local_profile: &[u32],
        local: F,
    ) -> Result<DpaElement>
    where
        F: Fn(&[DividedMonomial]) -> Result<DpaElement>,
    {
        if positions.start > positions.end || positions.end > self.profile.len() {
            return Err(Error::Mismatch(format!(
                "positions {positions:?} invalid for {} factors",
                self.profile.len()
            )));
        }
        let mut profile = self.profile[..positions.start].to_vec();
        profile.extend_from_slice(local_profile);
        profile.extend_from_slice(&self.profile[positions.end..]);
        let mut out = DpaElement::zero(profile);
        for (m, c) in &self.terms {
            let f = m.factors();
            let image = local(&f[positions.clone()])?;
            if image.profile() != local_profile {
                return Err(Error::Mismatch(format!(
                    "local map produced profile {:?}, expected {local_profile:?}",
                    image.profile()
                )));
            }
            for (piece, x) in image.terms() {
                let mut factors = f[..positions.start].to_vec();
                factors.extend_from_slice(piece.factors());
                factors.extend_from_slice(&f[positions.end..]);
                out.add_term(TensorMonomial::new(factors), x * c)?;
            }
        }
        Ok(out)
    }

    /// Multiplies factors together: output factor `g` is the product of the
    /// input factors listed in `groups[g]`. Every input factor must appear in
    /// exactly one group.
    pub fn regroup(&self, groups: &[Vec<usize>]) -> Result<DpaElement> {
        let n = self.profile.len();
        let mut seen = vec![false; n];
        for &k in groups.iter().flatten() {
            if k >= n || seen[k] {
                return Err(Error::Mismatch(format!(
                    "bad regrouping {groups:?} of {n} factors"
                )));
            }
            seen[k] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Mismatch(format!(
                "regrouping {groups:?} drops factors"
            )));
        }
        let profile = groups
            .iter()
            .map(|g| g.iter().map(|&k| self.profile[k]).sum())
            .collect();
        let mut out = DpaElement::zero(profile);
        let alphabet = self.alphabet();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut factors = Vec::with_capacity(groups.len());
            for g in groups {
                let mut acc = DividedMonomial::one(alphabet);
                for &k in g {
                    let (x, prod) = mono_product(&acc, &m.factors()[k])?;
                    coeff *= x;
                    acc = prod;
                }
                factors.push(acc);
            }
            out.add_term(TensorMonomial::new(factors), coeff)?;
        }
        Ok(out)
    }

    /// Splits factor `pos` by the (p, q) component of the diagonal.
    pub fn split_factor(&self, pos: usize, p: u32, q: u32) -> Result<DpaElement> {
        self.apply_at(pos..pos + 1, &[p, q], |f| delta_split(&f[0], p, q))
    }

    fn alphabet(&self) -> usize {
        self.terms
            .keys()
            .next()
            .and_then(|m| m.factors().first())
            .map_or(0, DividedMonomial::alphabet)
    }
}

impl fmt::Display for DpaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·[{m}]")?;
        }
        Ok(())
    }
}

/// The (p, q) component of the diagonal: the sum of u ⊗ v over all exponent
/// splits u + v = x with |u| = p, |v| = q.
pub fn delta_split(x: &DividedMonomial, p: u32, q: u32) -> Result<DpaElement> {
    if p + q != x.degree() {
        return Err(Error::Mismatch(format!(
            "cannot split {x} of degree {} into ({p},{q})",
            x.degree()
        )));
    }
    let mut out = DpaElement::zero(vec![p, q]);
    for u in row_splits(x.exponents(), p) {
        let v: Vec<u32> = x.exponents().iter().zip(&u).map(|(e, k)| e - k).collect();
        out.add_term(
            TensorMonomial::new(vec![DividedMonomial::new(u), DividedMonomial::new(v)]),
            BigInt::one(),
        )?;
    }
    Ok(out)
}
