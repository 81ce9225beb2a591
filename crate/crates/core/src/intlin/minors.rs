use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{bareiss_det, IntMatrix};
use crate::error::{Error, Result};

/// Default bound on min(rows, cols) for [`minors_invariants`].
pub const DEFAULT_MINORS_CAP: usize = 8;

/// Invariant factors from gcds of minors: dₖ = δₖ / δₖ₋₁ where δₖ is the gcd
/// of all k×k minors. Stops at the first vanishing δₖ, so only nonzero
/// factors are returned. Brute force; refuses matrices whose smaller side
/// exceeds `size_cap`.
pub fn minors_invariants(a: &IntMatrix, size_cap: usize) -> Result<Vec<BigInt>> {
    let k_max = a.rows().min(a.cols());
    if k_max > size_cap {
        return Err(Error::CapExceeded {
            size: k_max,
            cap: size_cap,
        });
    }
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=k_max {
        let mut g = BigInt::zero();
        for rows in subsets(a.rows(), k) {
            for cols in subsets(a.cols(), k) {
                let minor = bareiss_det(a.select(&rows, &cols).to_rows());
                g = g.gcd(&minor);
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
