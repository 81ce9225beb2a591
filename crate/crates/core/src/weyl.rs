//! Weight spaces of two-row Weyl modules and straightening into the
//! standard basis.
//!
//! K_μ is modelled as the cokernel of the maps
//! D_{μ₁+k} ⊗ D_{μ₂−k} → D_{μ₁} ⊗ D_{μ₂}, x ⊗ y ↦ Σ x₍₁₎ ⊗ x₍₂₎·y (k = 1..μ₂),
//! where x₍₁₎ ⊗ x₍₂₎ runs over the (μ₁, k) component of the diagonal. Each
//! weight space is reduced once by exact linear algebra to a matrix sending
//! a monomial vector to its coordinates in the standard basis.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{row_splits, standard_tableaux, Composition, TwoRowTableau};
use crate::dpa::{DividedMonomial, DpaElement, TensorMonomial};
use crate::error::{Error, Result};
use crate::intlin::{snf_parts, IntMatrix, Transforms};

/// Relation generators of D_μ in weight α coming from D_{μ₁+k} ⊗ D_{μ₂−k}.
pub fn box_relations_of_order(
    mu: (usize, usize),
    alpha: &Composition,
    k: usize,
) -> Result<Vec<DpaElement>> {
    let (m1, m2) = mu;
    if k == 0 || k > m2 {
        return Err(Error::Mismatch(format!("order {k} outside 1..={m2}")));
    }
    let mut out = Vec::new();
    for top in row_splits(alpha.parts(), (m1 + k) as u32) {
        let bottom: Vec<u32> = alpha.parts().iter().zip(&top).map(|(c, t)| c - t).collect();
        let gen = DpaElement::from_monomial(TensorMonomial::new(vec![
            DividedMonomial::new(top),
            DividedMonomial::new(bottom),
        ]));
        let image = gen
            .split_factor(0, m1 as u32, k as u32)?
            .regroup(&[vec![0], vec![1, 2]])?;
        out.push(image);
    }
    Ok(out)
}

/// All relation generators of D_μ in weight α, orders k = 1..μ₂.
pub fn box_relations(mu: (usize, usize), alpha: &Composition) -> Result<Vec<DpaElement>> {
    let (m1, m2) = mu;
    if m1 < m2 || m2 == 0 {
        return Err(Error::Mismatch(format!(
            "need μ₁ ≥ μ₂ ≥ 1, got ({m1},{m2})"
        )));
    }
    let mut out = Vec::new();
    for k in 1..=m2 {
        out.extend(box_relations_of_order(mu, alpha, k)?);
    }
    Ok(out)
}

/// The weight space (K_μ)_α with its standard basis and reduction data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeylWeightSpace {
    shape: (usize, usize),
    content: Composition,
    monomial_basis: Vec<TensorMonomial>,
    standard: Vec<TwoRowTableau>,
    /// k × N matrix: monomial coordinates ↦ standard coordinates.
    reduction: IntMatrix,
    #[serde(skip)]
    index: HashMap<TensorMonomial, usize>,
}

impl WeylWeightSpace {
    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn content(&self) -> &Composition {
        &self.content
    }

    pub fn monomial_basis(&self) -> &[TensorMonomial] {
        &self.monomial_basis
    }

    pub fn standard(&self) -> &[TwoRowTableau] {
        &self.standard
    }

    /// Rank of the weight space, i.e. the number of standard tableaux.
    pub fn rank(&self) -> usize {
        self.standard.len()
    }

    fn with_index(mut self) -> Self {
        self.index = self
            .monomial_basis
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        self
    }

    /// Coordinates of `v` in the standard basis.
    pub fn straighten(&self, v: &DpaElement) -> Result<Vec<BigInt>> {
        if v.profile() != [self.shape.0 as u32, self.shape.1 as u32] {
            return Err(Error::Mismatch(format!(
                "element of profile {:?} in weight space of shape {:?}",
                v.profile(),
                self.shape
            )));
        }
        let mut out = vec![BigInt::zero(); self.rank()];
        for (m, c) in v.terms() {
            let &col = self.index.get(m).ok_or_else(|| {
                Error::Mismatch(format!("monomial {m} is not of weight {}", self.content))
            })?;
            for (r, acc) in out.iter_mut().enumerate() {
                let x = self.reduction.get(r, col);
                if !x.is_zero() {
                    *acc += x * c;
                }
            }
        }
        Ok(out)
    }

    /// X_T for a tableau of this weight space's shape and content.
    pub fn tableau_element(&self, t: &TwoRowTableau) -> Result<DpaElement> {
        Ok(DpaElement::from_monomial(t.monomial(self.content.len())?))
    }
}

/// Builds (K_μ)_α. The alphabet is `alpha.len()`; pad `alpha` to the
/// alphabet the elements to be straightened live over.
pub fn weight_space(mu: (usize, usize), alpha: &Composition) -> Result<WeylWeightSpace> {
    let (m1, m2) = mu;
    if m1 < m2 {
        return Err(Error::Mismatch(format!("({m1},{m2}) is not a partition")));
    }
    if (m1 + m2) as u32 != alpha.weight() {
        return Err(Error::Mismatch(format!(
            "|μ| = {} but α = {alpha} has weight {}",
            m1 + m2,
            alpha.weight()
        )));
    }
    let monomial_basis: Vec<TensorMonomial> = row_splits(alpha.parts(), m1 as u32)
        .into_iter()
        .map(|top| {
            let bottom = alpha.parts().iter().zip(&top).map(|(c, t)| c - t).collect();
            TensorMonomial::new(vec![
                DividedMonomial::new(top),
                DividedMonomial::new(bottom),
            ])
        })
        .collect();
    let n = monomial_basis.len();
    let index: HashMap<TensorMonomial, usize> = monomial_basis
        .iter()
        .enumerate()
        .map(|(k, m)| (m.clone(), k))
        .collect();

    let relations = if m2 == 0 {
        Vec::new()
    } else {
        box_relations(mu, alpha)?
    };
    let mut rel = IntMatrix::zeros(relations.len(), n);
    for (r, e) in relations.iter().enumerate() {
        for (m, c) in e.terms() {
            let col = *index.get(m).ok_or_else(|| {
                Error::Model(format!("relation term {m} outside the weight space"))
            })?;
            *rel.get_mut(r, col) += c;
        }
    }

    // rel·V is diagonal with unimodular V, so the last N − rank columns of V
    // are functionals whose common kernel is the relation lattice, provided
    // every nonzero invariant factor is 1.
    let (diag, _, v) = snf_parts(&rel, Transforms::RIGHT);
    let v = v.expect("right transform requested");
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    if let Some(d) = diag.iter().find(|d| !d.is_zero() && !d.is_one()) {
        return Err(Error::Model(format!(
            "weight space μ={mu:?}, α={alpha} has torsion (invariant factor {d})"
        )));
    }
    let standard = standard_tableaux(mu, alpha)?;
    let k = standard.len();
    if n - rank != k {
        return Err(Error::Model(format!(
            "weight space μ={mu:?}, α={alpha}: quotient rank {} but {k} standard tableaux",
            n - rank
        )));
    }
    let mut p0 = IntMatrix::zeros(k, n);
    for r in 0..k {
        for c in 0..n {
            p0.set(r, c, v.get(c, rank + r).clone());
        }
    }
    let std_cols: Vec<usize> = standard
        .iter()
        .map(|t| {
            let m = t.monomial(alpha.len())?;
            index
                .get(&m)
                .copied()
                .ok_or_else(|| Error::Model(format!("tableau {t} outside the weight space")))
        })
        .collect::<Result<_>>()?;
    let all_rows: Vec<usize> = (0..k).collect();
    let t = p0.select(&all_rows, &std_cols);
    let (tdiag, tu, tv) = snf_parts(&t, Transforms::BOTH);
    if tdiag.iter().any(|d| !d.is_one()) {
        return Err(Error::Model(format!(
            "standard tableaux do not form a basis of μ={mu:?}, α={alpha}"
        )));
    }
    let t_inv = tv.expect("requested").mul(&tu.expect("requested"))?;
    let reduction = t_inv.mul(&p0)?;
    if !rel.mul(&reduction.transpose())?.is_zero() {
        return Err(Error::Model(
            "reduction does not vanish on relations".into(),
        ));
    }
    Ok(WeylWeightSpace {
        shape: mu,
        content: alpha.clone(),
        monomial_basis,
        standard,
        reduction,
        index,
    })
}

type CacheKey = ((usize, usize), Vec<u32>);

/// A build-once, read-many store of weight spaces, optionally persisted to a
/// directory as JSON.
#[derive(Debug, Default)]
pub struct WeightSpaceCache {
    spaces: RwLock<HashMap<CacheKey, Arc<WeylWeightSpace>>>,
    dir: Option<PathBuf>,
}

impl WeightSpaceCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A cache that also reads and writes `dir`.
    pub fn with_dir(dir: impl AsRef<Path>) -> Result<Self> {
        std::fs::create_dir_all(dir.as_ref())?;
        Ok(Self {
            spaces: RwLock::default(),
            dir: Some(dir.as_ref().to_path_buf()),
        })
    }

    pub fn len(&self) -> usize {
        self.spaces.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, mu: (usize, usize), alpha: &Composition) -> Result<Arc<WeylWeightSpace>> {
        let key = (mu, alpha.parts().to_vec());
        if let Some(ws) = self.spaces.read().expect("cache lock").get(&key) {
            return Ok(ws.clone());
        }
        let ws = Arc::new(match self.load(&key)? {
            Some(ws) => ws,
            None => {
                let ws = weight_space(mu, alpha)?;
                self.store(&key, &ws)?;
                ws
            }
        });
        let mut map = self.spaces.write().expect("cache lock");
        Ok(map.entry(key).or_insert(ws).clone())
    }

    fn path(&self, key: &CacheKey) -> Option<PathBuf> {
        let parts: Vec<String> = key.1.iter().map(u32::to_string).collect();
        self.dir.as_ref().map(|d| {
            d.join(format!(
                "ws_{}_{}_{}.json",
                key.0 .0,
                key.0 .1,
                parts.join("-")
            ))
        })
    }

    fn load(&self, key: &CacheKey) -> Result<Option<WeylWeightSpace>> {
        let Some(path) = self.path(key) else {
            return Ok(None);
        };
        if !path.exists() {
            return Ok(None);
        }
        let ws: WeylWeightSpace = serde_json::from_slice(&std::fs::read(&path)?)?;
        if ws.shape != key.0 || ws.content.parts() != key.1.as_slice() {
            return Err(Error::Model(format!(
                "cache file {} holds another space",
                path.display()
            )));
        }
        Ok(Some(ws.with_index()))
    }

    fn store(&self, key: &CacheKey, ws: &WeylWeightSpace) -> Result<()> {
        if let Some(path) = self.path(key) {
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, serde_json::to_vec(ws)?)?;
            std::fs::rename(tmp, path)?;
        }
        Ok(())
    }
}
