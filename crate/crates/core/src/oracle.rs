//! Independent derivation of M(a, b) from the divided power algebra: the
//! components of d₂, the Hom-basis maps, and straightening.
//!
//! Entry (row weight ρ, column σ_{j,l}) is the standard-basis coordinate
//! vector of σ_{j,l} applied to the v_j-component of d₂ evaluated at the
//! canonical monomial of ρ.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    p1_weights, p2_row_labels, Composition, HookParams, WeightKind, WeightLabel,
};
use crate::dpa::{canonical_monomial, DpaElement};
use crate::error::{Error, Result};
use crate::intlin::IntMatrix;
use crate::presentation::{assemble, LabeledIntMatrix};
use crate::weyl::WeightSpaceCache;

/// One component of d₂: a signed diagonal split of a single factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct D2Component {
    pub sign: i64,
    /// 0-based factor that is split.
    pub position: usize,
    pub split: (u32, u32),
}

impl D2Component {
    pub fn apply(&self, x: &DpaElement) -> Result<DpaElement> {
        Ok(x.split_factor(self.position, self.split.0, self.split.1)?
            .scaled(&BigInt::from(self.sign)))
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The component of d₂ from the summand of weight `source` to that of
/// weight `target`.
pub fn d2_summand(
    source: &WeightLabel,
    target: &WeightLabel,
    params: &HookParams,
) -> Result<D2Component> {
    let a = params.a() as u32;
    let WeightKind::V(k) = target.kind else {
        return Err(unlisted(source, target));
    };
    let comp = |sign, position, split| {
        Some(D2Component {
            sign,
            position,
            split,
        })
    };
    let found = match source.kind {
        WeightKind::U(1) if k == 1 => comp(1, 0, (a + 1, 1)),
        WeightKind::U(1) if k == 2 => comp(1, 0, (a, 2)),
        WeightKind::U(i) if i >= 2 && k == i + 1 => comp(1, 0, (a, 1)),
        WeightKind::U(i) if i >= 2 && k == 1 => comp(sign(i + 1), i - 1, (1, 1)),
        WeightKind::W(i) if k == i => comp(sign(i + 1), i - 1, (2, 1)),
        WeightKind::W(i) if k == i + 1 => comp(sign(i + 1), i - 1, (1, 2)),
        WeightKind::Wij(i, j) if k == j + 1 => comp(sign(i + 1), i - 1, (1, 1)),
        WeightKind::Wij(i, j) if k == i => comp(sign(j + 1), j - 1, (1, 1)),
        _ => None,
    };
    let c = found.ok_or_else(|| unlisted(source, target))?;
    // The split must land exactly on the target weight.
    let mut parts = source.composition.parts().to_vec();
    parts.splice(c.position..=c.position, [c.split.0, c.split.1]);
    if Composition::new(parts) != target.composition {
        return Err(Error::Model(format!(
            "d2 component {source} → {target} misses its target"
        )));
    }
    Ok(c)
}

fn unlisted(source: &WeightLabel, target: &WeightLabel) -> Error {
    Error::UnlistedSummand {
        source_label: source.to_string(),
        target: target.to_string(),
    }
}

/// The tableau-shaped map behind σ and π: with `letter = None`, factor 0
/// stays in row 1 and all other factors are multiplied into row 2; with
/// `Some(l)`, one unit of factor l−1 joins row 1 (splitting it first when its
/// degree exceeds 1).
pub fn tableau_map(x: &DpaElement, letter: Option<usize>) -> Result<DpaElement> {
    let n = x.profile().len();
    let Some(l) = letter else {
        return x.regroup(&[vec![0], (1..n).collect()]);
    };
    if l < 2 || l > n {
        return Err(Error::Mismatch(format!("subscript {l} outside 2..={n}")));
    }
    let d = x.profile()[l - 1];
    let (y, m) = match d {
        0 => return Err(Error::Mismatch(format!("factor {l} is empty"))),
        1 => (x.clone(), n),
        _ => (x.split_factor(l - 1, 1, d - 1)?, n + 1),
    };
    let rest: Vec<usize> = (1..m).filter(|&k| k != l - 1).collect();
    y.regroup(&[vec![0, l - 1], rest])
}

/// σ₁ (j = 1) or σ_{j,l} applied to an element of profile v_j.
pub fn sigma_eval(j: usize, l: usize, x: &DpaElement, params: &HookParams) -> Result<DpaElement> {
    let v = WeightLabel::new(WeightKind::V(j), params)?;
    if x.profile() != v.composition.parts() {
        return Err(Error::Mismatch(format!(
            "σ on {} needs profile {}, got {:?}",
            v.kind,
            v.composition,
            x.profile()
        )));
    }
    if j == 1 {
        tableau_map(x, None)
    } else {
        tableau_map(x, Some(l))
    }
}

/// Number of basis maps out of a P₁ or P₂ summand.
fn basis_size(kind: WeightKind, b: usize) -> usize {
    match kind {
        WeightKind::V(1) | WeightKind::U(_) => 1,
        WeightKind::V(_) => b - 1,
        WeightKind::W(_) | WeightKind::Wij(..) => b - 2,
    }
}

/// The subscript of the c-th (0-based) basis map, or `None` for σ₁ / π_i.
fn subscript(kind: WeightKind, c: usize) -> Option<usize> {
    match kind {
        WeightKind::V(1) | WeightKind::U(_) => None,
        _ => Some(c + 2),
    }
}

fn padded(label: &WeightLabel, b: usize) -> Result<Composition> {
    label.composition.padded(b)
}

fn check_weight(x: &DpaElement, label: &WeightLabel, b: usize) -> Result<()> {
    if let Some(w) = x.weight() {
        if Composition::new(w) != padded(label, b)? {
            return Err(Error::Model(format!(
                "intermediate element left the weight of {label}"
            )));
        }
    }
    Ok(())
}

/// The block of M in row group `row` and column group `col`, derived from
/// first principles.
pub fn oracle_block(
    row: &WeightLabel,
    col: &WeightLabel,
    params: &HookParams,
    cache: &WeightSpaceCache,
) -> Result<IntMatrix> {
    let b = params.b();
    let WeightKind::V(j) = col.kind else {
        return Err(Error::Mismatch(format!("{col} is not a column group")));
    };
    let height = basis_size(row.kind, b);
    let width = basis_size(col.kind, b);
    let mut out = IntMatrix::zeros(height, width);
    let component = match d2_summand(row, col, params) {
        Ok(c) => c,
        Err(Error::UnlistedSummand { .. }) => return Ok(out),
        Err(e) => return Err(e),
    };
    let start = DpaElement::from_monomial(canonical_monomial(&row.composition, b)?);
    let image = component.apply(&start)?;
    check_weight(&image, row, b)?;
    let ws = cache.get(params.mu(), &padded(row, b)?)?;
    if ws.rank() != height {
        return Err(Error::Model(format!(
            "weight space of {row} has rank {}, expected {height}",
            ws.rank()
        )));
    }
    for c in 0..width {
        let y = sigma_eval(j, subscript(col.kind, c).unwrap_or(0), &image, params)?;
        check_weight(&y, row, b)?;
        for (r, x) in ws.straighten(&y)?.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Ok(out)
}

/// M(a, b) derived from first principles.
pub fn oracle_m(params: &HookParams, cache: &WeightSpaceCache) -> Result<LabeledIntMatrix> {
    assemble(params, |row, col| oracle_block(row, col, params, cache))
}

/// Result of checking that each Hom-basis map evaluates to its standard
/// tableau.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every σ and π basis map on its canonical monomial and checks
/// that it straightens to the matching unit vector; also checks that the
/// weight space of u₁ vanishes.
pub fn phi_basis_check(params: &HookParams, cache: &WeightSpaceCache) -> Result<PhiReport> {
    let b = params.b();
    let mut report = PhiReport::default();
    let labels = p1_weights(params)?
        .into_iter()
        .chain(p2_row_labels(params)?);
    for label in labels {
        let ws = cache.get(params.mu(), &padded(&label, b)?)?;
        let size = basis_size(label.kind, b);
        if ws.rank() != size {
            report
                .failures
                .push(format!("{label}: rank {} instead of {size}", ws.rank()));
            continue;
        }
        let x = DpaElement::from_monomial(canonical_monomial(&label.composition, b)?);
        for c in 0..size {
            report.checked += 1;
            let y = tableau_map(&x, subscript(label.kind, c))?;
            let coords = ws.straighten(&y)?;
            let unit = coords
                .iter()
                .enumerate()
                .all(|(k, v)| if k == c { v.is_one() } else { v.is_zero() });
            if !unit {
                report.failures.push(format!(
                    "{label}: basis map {} straightens to {coords:?}",
                    c + 1
                ));
            }
        }
    }
    let u1 = WeightLabel::new(WeightKind::U(1), params)?;
    report.checked += 1;
    let rank = cache.get(params.mu(), &padded(&u1, b)?)?.rank();
    if rank != 0 {
        report
            .failures
            .push(format!("u1: weight space has rank {rank}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::build_m;

    fn p(a: usize, b: usize) -> HookParams {
        HookParams::new(a, b).unwrap()
    }

    fn label(kind: WeightKind, q: &HookParams) -> WeightLabel {
        WeightLabel::new(kind, q).unwrap()
    }

    #[test]
    fn d2_components() {
        let q = p(6, 5);
        let c = d2_summand(
            &label(WeightKind::W(3), &q),
            &label(WeightKind::V(3), &q),
            &q,
        )
        .unwrap();
        assert_eq!(
            c,
            D2Component {
                sign: 1,
                position: 2,
                split: (2, 1)
            }
        );
        let c = d2_summand(
            &label(WeightKind::U(2), &q),
            &label(WeightKind::V(1), &q),
            &q,
        )
        .unwrap();
        assert_eq!(
            c,
            D2Component {
                sign: -1,
                position: 1,
                split: (1, 1)
            }
        );
        let c = d2_summand(
            &label(WeightKind::Wij(2, 3), &q),
            &label(WeightKind::V(2), &q),
            &q,
        )
        .unwrap();
        assert_eq!(c.sign, 1);
        assert!(matches!(
            d2_summand(
                &label(WeightKind::U(2), &q),
                &label(WeightKind::V(2), &q),
                &q
            ),
            Err(Error::UnlistedSummand { .. })
        ));
        let u1 = label(WeightKind::U(1), &q);
        assert!(d2_summand(&u1, &label(WeightKind::V(1), &q), &q).is_ok());
        assert!(d2_summand(&u1, &label(WeightKind::V(2), &q), &q).is_ok());
    }

    #[test]
    fn d2_on_canonical_monomial() {
        let q = p(6, 5);
        let w3 = label(WeightKind::W(3), &q);
        let x = DpaElement::from_monomial(canonical_monomial(&w3.composition, 5).unwrap());
        let c = d2_summand(&w3, &label(WeightKind::V(3), &q), &q).unwrap();
        let y = c.apply(&x).unwrap();
        assert_eq!(y.len(), 1);
        assert_eq!(y.profile(), &[6, 1, 2, 1, 1]);
        assert_eq!(y.terms().next().unwrap().1, &BigInt::one());
        assert_eq!(y.weight().unwrap(), vec![6, 1, 3, 1, 0]);
    }

    #[test]
    fn sigma_recipes() {
        let q = p(4, 4);
        let b = 4;
        // σ₁ on the canonical monomial of v₁ is X_{S₁}.
        let v1 = label(WeightKind::V(1), &q);
        let x = DpaElement::from_monomial(canonical_monomial(&v1.composition, b).unwrap());
        let y = sigma_eval(1, 0, &x, &q).unwrap();
        let s1 = crate::combinatorics::standard_tableaux(q.mu(), &v1.composition).unwrap();
        assert_eq!(y, DpaElement::from_monomial(s1[0].monomial(b).unwrap()));
        // The coefficient a+1 from merging 1^{(a)} with 1.
        let u2 = label(WeightKind::U(2), &q);
        let v3 = label(WeightKind::V(3), &q);
        let x = DpaElement::from_monomial(canonical_monomial(&u2.composition, b).unwrap());
        let y = d2_summand(&u2, &v3, &q).unwrap().apply(&x).unwrap();
        let z = sigma_eval(3, 2, &y, &q).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z.terms().next().unwrap().1, &BigInt::from(5));
        // Coefficient 2 from i·i = 2 i^{(2)}, with sign (−1)^{i+1}.
        let y = d2_summand(&u2, &v1, &q).unwrap().apply(&x).unwrap();
        let z = sigma_eval(1, 0, &y, &q).unwrap();
        assert_eq!(z.terms().next().unwrap().1, &BigInt::from(-2));
        assert!(sigma_eval(2, 2, &x, &q).is_err());
    }

    #[test]
    fn oracle_blocks_small() {
        let q = p(3, 3);
        let cache = WeightSpaceCache::new();
        let blk = |r, c| oracle_block(&label(r, &q), &label(c, &q), &q, &cache).unwrap();
        assert_eq!(
            blk(WeightKind::U(2), WeightKind::V(1)),
            IntMatrix::from_i64(&[[-2]]).unwrap()
        );
        assert_eq!(
            blk(WeightKind::W(2), WeightKind::V(2)),
            IntMatrix::from_i64(&[[-2, -1]]).unwrap()
        );
        assert!(blk(WeightKind::U(2), WeightKind::V(2)).is_zero());
    }

    #[test]
    fn oracle_matches_closed_form_small() {
        let cache = WeightSpaceCache::new();
        for (a, b) in [(3, 3), (3, 4), (5, 4), (4, 5)] {
            let q = p(a, b);
            assert_eq!(
                oracle_m(&q, &cache).unwrap(),
                build_m(&q).unwrap(),
                "a={a} b={b}"
            );
        }
    }

    #[test]
    fn phi_basis_small() {
        let cache = WeightSpaceCache::new();
        for (a, b) in [(3, 3), (4, 5), (5, 4)] {
            let r = phi_basis_check(&p(a, b), &cache).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.checked > 0);
        }
    }
}
