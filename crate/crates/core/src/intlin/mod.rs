//! Exact integer linear algebra: Smith normal form, a gcd-of-minors
//! cross-check, and torsion of cokernels.

pub mod decimal;
mod matrix;
mod minors;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use matrix::IntMatrix;
pub use minors::{minors_invariants, DEFAULT_MINORS_CAP};
pub use snf::{snf, SnfResult};
pub(crate) use matrix::bareiss_det;
pub(crate) use snf::{snf_parts, Transforms};

/// A finite abelian group ⊕ ℤ/dᵢ given by its invariant-factor chain.
/// The trivial group has an empty chain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtGroup {
    #[serde(with = "decimal::list")]
    pub torsion_orders: Vec<BigInt>,
}

impl ExtGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// ℤ/n, or the trivial group when n = 1.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        if n.is_one() {
            Self::trivial()
        } else {
            Self {
                torsion_orders: vec![n],
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion_orders.is_empty()
    }

    /// Group order.
    pub fn order(&self) -> BigInt {
        self.torsion_orders.iter().product()
    }
}

impl fmt::Display for ExtGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.torsion_orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .torsion_orders
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Torsion of the cokernel: the invariant factors greater than 1.
pub fn torsion(result: &SnfResult) -> ExtGroup {
    ExtGroup {
        torsion_orders: result
            .factors
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(f: &[i64]) -> SnfResult {
        let factors: Vec<BigInt> = f.iter().map(|&x| BigInt::from(x)).collect();
        let rank = f.iter().filter(|&&x| x != 0).count();
        SnfResult {
            factors,
            rank,
            transforms: None,
        }
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion(&result(&[1, 2])), ExtGroup::cyclic(2));
        assert!(torsion(&result(&[1, 1, 1, 0, 0])).is_trivial());
        assert_eq!(
            torsion(&result(&[1, 1, 1, 1, 1, 6, 0, 0])).to_string(),
            "Z_6"
        );
        assert_eq!(torsion(&result(&[2, 4, 0])).to_string(), "Z_2 + Z_4");
        assert_eq!(ExtGroup::trivial().to_string(), "0");
        assert_eq!(ExtGroup::cyclic(1), ExtGroup::trivial());
    }
}
