//! Property tests for the exact linear algebra and the divided power algebra.

mod common;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use weylext::dpa::{delta_split, mono_product, DividedMonomial, DpaElement, TensorMonomial};
use weylext::intlin::{minors_invariants, snf, torsion, IntMatrix, DEFAULT_MINORS_CAP};

use common::{model_delta, model_monomial, model_mul, model_of};

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_i64(&rows).unwrap())
    })
}

fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = DividedMonomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(DividedMonomial::new)
}

fn nonzero(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().filter(|d| !d.is_zero()).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_is_a_valid_decomposition(a in matrix(5, 7, 12)) {
        let res = snf(&a, true).unwrap();
        let (u, v) = res.transforms.clone().unwrap();
        let d = u.mul(&a).unwrap().mul(&v).unwrap();
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let want = if r == c { res.factors[r].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(r, c), &want);
            }
        }
        prop_assert_eq!(u.det().unwrap().abs(), BigInt::from(1));
        prop_assert_eq!(v.det().unwrap().abs(), BigInt::from(1));
        let nz = nonzero(&res.factors);
        prop_assert_eq!(nz.len(), res.rank);
        for w in nz.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(minors_invariants(&a, DEFAULT_MINORS_CAP).unwrap(), nz);
    }

    #[test]
    fn torsion_ignores_unit_factors(a in matrix(4, 6, 9)) {
        let res = snf(&a, false).unwrap();
        let g = torsion(&res);
        let big: Vec<BigInt> = res.factors.iter().filter(|d| **d > BigInt::from(1)).cloned().collect();
        prop_assert_eq!(g.torsion_orders, big);
    }

    #[test]
    fn snf_handles_large_entries(a in matrix(4, 4, i64::MAX / 4)) {
        let res = snf(&a, true).unwrap();
        prop_assert_eq!(nonzero(&res.factors), minors_invariants(&a, DEFAULT_MINORS_CAP).unwrap());
    }

    #[test]
    fn product_matches_polynomial_model(x in monomial(4, 6), y in monomial(4, 6)) {
        let (c, m) = mono_product(&x, &y).unwrap();
        let e = DpaElement::from_term(TensorMonomial::new(vec![m]), c);
        prop_assert_eq!(model_of(&e), model_mul(&model_monomial(&x), &model_monomial(&y)));
    }

    #[test]
    fn split_matches_polynomial_model(x in monomial(3, 5), frac in 0.0f64..=1.0) {
        let d = x.degree();
        let p = ((d as f64) * frac).floor() as u32;
        let e = delta_split(&x, p, d - p).unwrap();
        prop_assert_eq!(model_of(&e), model_delta(&model_monomial(&x), &[p, d - p]));
        let (counit, rest) = (delta_split(&x, 0, d).unwrap(), delta_split(&x, d, 0).unwrap());
        prop_assert_eq!(counit.len(), 1);
        prop_assert_eq!(rest.len(), 1);
    }

    #[test]
    fn split_rejects_wrong_degrees(x in monomial(3, 4)) {
        let d = x.degree();
        prop_assert!(delta_split(&x, d + 1, 0).is_err());
        prop_assert!(delta_split(&x, 0, d + 1).is_err());
    }
}
