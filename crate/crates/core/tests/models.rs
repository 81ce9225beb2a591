//! The Weyl model, the oracle matrix and the Ext² driver on worked examples.

use num_bigint::BigInt;

use weylext::combinatorics::{standard_tableaux, Composition, HookParams, TwoRowTableau};
use weylext::dpa::{DividedMonomial, DpaElement, TensorMonomial};
use weylext::ext::{compute_ext2, predicted_ext2, verify_range, MatrixSource, SweepOptions};
use weylext::intlin::ExtGroup;
use weylext::oracle::{oracle_m, phi_basis_check};
use weylext::presentation::build_m;
use weylext::weyl::{weight_space, WeightSpaceCache};

fn tensor(top: Vec<u32>, bottom: Vec<u32>) -> DpaElement {
    DpaElement::from_monomial(TensorMonomial::new(vec![
        DividedMonomial::new(top),
        DividedMonomial::new(bottom),
    ]))
}

#[test]
fn straightening_in_the_weight_of_u2() {
    let ws = weight_space((3, 3), &Composition::new(vec![3, 2, 1])).unwrap();
    assert_eq!(ws.rank(), 1);
    assert_eq!(
        ws.standard()[0],
        TwoRowTableau {
            row1: vec![1, 1, 1],
            row2: vec![2, 2, 3]
        }
    );
    let two = ws.straighten(&tensor(vec![2, 1, 0], vec![1, 1, 1])).unwrap();
    assert_eq!(two, vec![BigInt::from(-2)]);
    let one = ws.straighten(&tensor(vec![2, 0, 1], vec![1, 2, 0])).unwrap();
    assert_eq!(one, vec![BigInt::from(-1)]);
}

#[test]
fn standard_tableaux_straighten_to_units() {
    let alpha = Composition::new(vec![2, 2, 1, 1]);
    let ws = weight_space((4, 2), &alpha).unwrap();
    let tableaux = standard_tableaux((4, 2), &alpha).unwrap();
    assert_eq!(ws.standard(), tableaux.as_slice());
    for (k, t) in tableaux.iter().enumerate() {
        let e = ws.tableau_element(t).unwrap();
        let v = ws.straighten(&e).unwrap();
        for (j, x) in v.iter().enumerate() {
            assert_eq!(*x, BigInt::from(i32::from(j == k)));
        }
    }
}

#[test]
fn vanishing_weight_space() {
    for (a, b) in [(3, 3), (5, 4), (6, 6)] {
        let mut u1 = vec![a as u32 + 2];
        u1.extend(std::iter::repeat(1).take(b - 2));
        let ws = weight_space((a + 1, b - 1), &Composition::new(u1)).unwrap();
        assert_eq!(ws.rank(), 0);
    }
}

#[test]
fn oracle_examples() {
    let cache = WeightSpaceCache::new();
    for (a, b) in [(3, 3), (3, 4), (4, 5)] {
        let p = HookParams::new(a, b).unwrap();
        let o = oracle_m(&p, &cache).unwrap();
        assert_eq!(o, build_m(&p).unwrap(), "(a={a}, b={b})");
        assert_eq!((o.rows(), o.cols()), (p.s(), p.t()));
    }
    let report = phi_basis_check(&HookParams::new(4, 5).unwrap(), &cache).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.checked > 0);
}

#[test]
fn persistent_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let p = HookParams::new(4, 4).unwrap();
    let first = oracle_m(&p, &WeightSpaceCache::with_dir(dir.path()).unwrap()).unwrap();
    let stored = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(stored > 0);
    let second = oracle_m(&p, &WeightSpaceCache::with_dir(dir.path()).unwrap()).unwrap();
    assert_eq!(first, second);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), stored);
}

#[test]
fn ext2_examples() {
    assert_eq!(predicted_ext2(3, 3).unwrap(), ExtGroup::cyclic(2));
    assert_eq!(predicted_ext2(4, 5).unwrap(), ExtGroup::cyclic(3));
    assert!(predicted_ext2(4, 3).unwrap().is_trivial());
    assert_eq!(predicted_ext2(8, 4).unwrap(), ExtGroup::cyclic(6));
    assert_eq!(compute_ext2(3, 3, MatrixSource::ClosedForm).unwrap(), ExtGroup::cyclic(2));
    assert_eq!(compute_ext2(8, 4, MatrixSource::Oracle).unwrap(), ExtGroup::cyclic(6));
    assert!(compute_ext2(5, 2, MatrixSource::Oracle).unwrap().is_trivial());
    assert!(compute_ext2(1, 4, MatrixSource::ClosedForm).is_err());
    assert!(predicted_ext2(3, 1).is_err());
}

#[test]
fn sweep_examples() {
    let opts = SweepOptions {
        workers: Some(2),
        ..SweepOptions::default()
    };
    let report = verify_range(3..=6, 0..=12, &opts).unwrap();
    assert!(report.passed);
    assert!(report.rows.iter().all(|r| r.a + 1 > r.b - 1 && r.a <= 12));
    assert_eq!(report.rows.first().map(|r| (r.a, r.b)), Some((2, 3)));
    assert_eq!(report.rows.len(), 11 + 10 + 9 + 8);

    let full = SweepOptions {
        pipeline: true,
        oracle: true,
        ..SweepOptions::default()
    };
    let one = verify_range(7..=7, 7..=7, &full).unwrap();
    let row = &one.rows[0];
    assert!(one.passed);
    assert_eq!(row.computed, ExtGroup::cyclic(2));
    assert_eq!(row.predicted, ExtGroup::cyclic(2));
    assert_eq!(row.pipeline, Some(ExtGroup::cyclic(2)));
    assert_eq!(row.oracle, Some(ExtGroup::cyclic(2)));
    assert_eq!(row.pipeline_checks, Some(true));

    let empty = verify_range(5..=4, 0..=10, &opts).unwrap();
    assert!(empty.rows.is_empty() && empty.passed);
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let run = |workers| {
        verify_range(3..=8, 0..=15, &SweepOptions { workers: Some(workers), ..SweepOptions::default() }).unwrap()
    };
    assert_eq!(run(1), run(4));
}
