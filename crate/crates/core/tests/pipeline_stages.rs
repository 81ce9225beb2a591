use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use weylext::combinatorics::{HookParams, WeightKind};
use weylext::intlin::{snf, IntMatrix};
use weylext::pipeline::{
    apply_stage, canonical_form, check_stage, expected_display, reduce, select_gamma, stage_plan,
    PipelineOptions,
};
use weylext::presentation::{build_m, Layout, LabeledIntMatrix};

fn params(a: usize, b: usize) -> HookParams {
    HookParams::new(a, b).unwrap()
}

fn factors(m: &IntMatrix) -> Vec<BigInt> {
    snf(m, false).unwrap().factors
}

/// Runs the stages of `plan` in order, returning every intermediate matrix.
fn run(m: LabeledIntMatrix, plan: &[&str]) -> Vec<LabeledIntMatrix> {
    let mut out = vec![m];
    for stage in plan {
        let next = apply_stage(out.last().unwrap(), stage).unwrap();
        out.push(next);
    }
    out
}

#[test]
fn d1_touches_only_v2_and_vb_columns() {
    let p = params(7, 7);
    let m = build_m(&p).unwrap();
    let next = apply_stage(&m, "D1").unwrap();
    let layout = Layout::new(7);
    let allowed: Vec<usize> = layout.col_block(2).into_iter().chain(layout.col_block(7)).collect();
    for c in 0..m.cols() {
        if !allowed.contains(&c) {
            assert_eq!(m.entries.column(c), next.entries.column(c), "column {c} changed");
        }
    }
    assert_ne!(m.entries, next.entries);
    assert_eq!(factors(&m.entries), factors(&next.entries));
}

#[test]
fn d1_block_of_w2_at_v2() {
    let m = apply_stage(&build_m(&params(7, 7)).unwrap(), "D1").unwrap();
    let layout = Layout::new(7);
    let block = m.entries.select(&layout.row_block(WeightKind::W(2)), &layout.col_block(2));
    let mut expected = IntMatrix::zeros(5, 6);
    expected.set(0, 0, BigInt::from(-2));
    expected.set(0, 1, BigInt::from(-1));
    assert_eq!(block, expected);
}

#[test]
fn stagewise_application_matches_reduce() {
    for (a, b) in [(7, 7), (9, 8), (6, 6), (5, 5), (4, 4)] {
        let p = params(a, b);
        let plan = stage_plan(b);
        let mats = run(build_m(&p).unwrap(), &plan);
        let trace = reduce(&p, &PipelineOptions { strict: true, keep_matrices: true }).unwrap();
        assert_eq!(trace.stages.len(), plan.len());
        let base = factors(&mats[0].entries);
        for (k, (stage, rec)) in plan.iter().zip(&trace.stages).enumerate() {
            assert_eq!(rec.id, *stage);
            assert_eq!(rec.matrix.as_ref().unwrap(), &mats[k + 1].entries, "(a={a}, b={b}) {stage}");
            assert_eq!(factors(&mats[k + 1].entries), base, "(a={a}, b={b}) {stage}");
            let claims = check_stage(stage, &mats[k], &mats[k + 1]).unwrap();
            assert!(claims.iter().all(|c| c.passed), "(a={a}, b={b}) {stage}: {claims:?}");
        }
    }
}

#[test]
fn check_stage_rejects_a_tampered_output() {
    let p = params(7, 7);
    let m = build_m(&p).unwrap();
    let mut next = apply_stage(&m, "D2").unwrap();
    let x = next.entries.get(0, 0) + 1;
    next.entries.set(0, 0, x);
    let claims = check_stage("D2", &m, &next).unwrap();
    assert!(claims.iter().any(|c| !c.passed));
}

#[test]
fn unknown_stage_is_an_error() {
    let m = build_m(&params(7, 7)).unwrap();
    assert!(apply_stage(&m, "D12").is_err());
    assert!(apply_stage(&m, "F4.1").is_err());
}

#[test]
fn gamma_exists_for_every_pivot_at_7_7() {
    let p = params(7, 7);
    let mats = run(build_m(&p).unwrap(), &["D1", "D2", "D3"]);
    let m3 = mats.last().unwrap();
    for i in 2..7 {
        for l in 1..=5 {
            let g = select_gamma(m3, i, l);
            if l + 1 == i {
                assert!(g.is_none());
            } else {
                let g = g.unwrap_or_else(|| panic!("no pivot row for (i={i}, l={l})"));
                assert!(matches!(g.block, WeightKind::Wij(..) | WeightKind::W(_)), "{g}");
            }
        }
    }
}

#[test]
fn d4_leaves_isolated_units() {
    let p = params(7, 7);
    let mats = run(build_m(&p).unwrap(), &["D1", "D2", "D3", "D4"]);
    let m = &mats[4].entries;
    let layout = Layout::new(7);
    for i in 2..7 {
        for l in (1..=5).filter(|&l| l + 1 != i) {
            let r = layout.w(i, l);
            let units: Vec<usize> = (0..m.cols()).filter(|&c| m.get(r, c).is_one()).collect();
            assert!(!units.is_empty(), "row w{i}[{l}] has no unit");
            let c = units[0];
            let col_nonzero = (0..m.rows()).filter(|&k| !m.get(k, c).is_zero()).count();
            let row_nonzero = (0..m.cols()).filter(|&k| !m.get(r, k).is_zero()).count();
            assert_eq!((row_nonzero, col_nonzero), (1, 1), "w{i}[{l}]");
        }
    }
}

#[test]
fn d10_unit_count() {
    for (a, b) in [(7, 7), (8, 9)] {
        let plan = stage_plan(b);
        let k = plan.iter().position(|s| *s == "D10").unwrap();
        let mats = run(build_m(&params(a, b)).unwrap(), &plan[..=k]);
        let m = &mats.last().unwrap().entries;
        let isolated = (0..m.rows())
            .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
            .filter(|&(r, c)| {
                m.get(r, c).abs().is_one()
                    && (0..m.cols()).filter(|&k| !m.get(r, k).is_zero()).count() == 1
                    && (0..m.rows()).filter(|&k| !m.get(k, c).is_zero()).count() == 1
            })
            .count();
        assert_eq!(isolated, b * (b - 3) + 1, "(a={a}, b={b})");
    }
}

#[test]
fn documented_final_forms() {
    let t = reduce(&params(7, 7), &PipelineOptions::default()).unwrap();
    assert_eq!(t.r, 29);
    assert_eq!(t.final_block, IntMatrix::from_i64(&[[2, 8]]).unwrap());
    let mut want = vec![BigInt::one(); 29];
    want.push(BigInt::from(2));
    want.extend(std::iter::repeat(BigInt::zero()).take(7));
    assert_eq!(t.factors, want);

    let t = reduce(&params(6, 7), &PipelineOptions::default()).unwrap();
    assert_eq!(t.final_block, IntMatrix::from_i64(&[[2, 7]]).unwrap());
    assert!(t.group.is_trivial());

    let t = reduce(&params(8, 8), &PipelineOptions::default()).unwrap();
    assert_eq!(t.final_block, IntMatrix::from_i64(&[[2, 10]]).unwrap());
    assert_eq!(t.group.to_string(), "Z_2");

    for (a, b) in [(3, 4), (5, 5)] {
        let t = reduce(&params(a, b), &PipelineOptions::default()).unwrap();
        let (r, block) = expected_display(&params(a, b)).unwrap();
        assert_eq!((t.r, &t.final_block), (r, &block));
    }
}

#[test]
fn b3_is_direct() {
    let t = reduce(&params(3, 3), &PipelineOptions { strict: true, keep_matrices: false }).unwrap();
    assert!(t.direct);
    assert!(t.stages.is_empty());
    assert_eq!(t.group.to_string(), "Z_2");
}

#[test]
fn canonical_form_of_final_matrix_is_stable() {
    let p = params(9, 8);
    let t = reduce(&p, &PipelineOptions::default()).unwrap();
    let (r, block) = expected_display(&p).unwrap();
    let cf = canonical_form(&t.final_matrix.entries, Some(&block));
    assert_eq!(cf.r, r);
    assert!(cf.matched);
    assert_eq!(cf.residual, block);
}

#[test]
fn final_snf_matches_for_seeded_cells() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let b = rng.gen_range(7..=9);
        let a = rng.gen_range(b - 1..=b + 12);
        let p = params(a, b);
        let t = reduce(&p, &PipelineOptions::default()).unwrap();
        assert!(t.passed(), "(a={a}, b={b}): {:?}", t.failures());
        assert_eq!(factors(&t.final_matrix.entries), factors(&build_m(&p).unwrap().entries));
    }
}
