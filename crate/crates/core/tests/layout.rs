use num_bigint::BigInt;

use weylext::combinatorics::{p1_weights, p2_row_labels, standard_tableaux, HookParams, WeightKind};
use weylext::presentation::{block_a, block_b, block_c, build_m, Layout};

fn params(a: usize, b: usize) -> HookParams {
    HookParams::new(a, b).unwrap()
}

#[test]
fn block_sizes_add_up() {
    for b in 3..=12 {
        let p = params(b + 1, b);
        let v = p1_weights(&p).unwrap();
        assert_eq!(v.len(), b);
        let cols: usize = v.iter().map(|w| if w.kind == WeightKind::V(1) { 1 } else { b - 1 }).sum();
        assert_eq!(cols, p.t());
        let rows: usize = p2_row_labels(&p)
            .unwrap()
            .iter()
            .map(|w| if matches!(w.kind, WeightKind::U(_)) { 1 } else { b - 2 })
            .sum();
        assert_eq!(rows, p.s());
        let m = build_m(&p).unwrap();
        assert_eq!((m.rows(), m.cols()), (p.s(), p.t()));
        assert_eq!((Layout::new(b).rows(), Layout::new(b).cols()), (p.s(), p.t()));
        for w in v.iter().chain(&p2_row_labels(&p).unwrap()) {
            assert_eq!(w.composition.weight() as usize, p.r());
        }
    }
}

#[test]
fn standard_bases_have_the_expected_sizes() {
    for b in 3..=8 {
        let p = params(b, b);
        let mu = p.mu();
        for w in p1_weights(&p).unwrap().into_iter().chain(p2_row_labels(&p).unwrap()) {
            let n = standard_tableaux(mu, &w.composition).unwrap().len();
            let want = match w.kind {
                WeightKind::V(1) | WeightKind::U(_) => 1,
                WeightKind::V(_) => b - 1,
                WeightKind::W(_) | WeightKind::Wij(..) => b - 2,
            };
            assert_eq!(n, want, "{} at b={b}", w.kind);
        }
    }
}

#[test]
fn entries_come_from_the_block_alphabet() {
    for b in 3..=9 {
        for a in [b - 1, b + 4] {
            let m = build_m(&params(a, b)).unwrap();
            let allowed: Vec<BigInt> = [-3i64, -2, -1, 0, 1, 2, 3, a as i64 + 1].map(BigInt::from).to_vec();
            for r in 0..m.rows() {
                assert!(m.entries.row(r).iter().all(|x| allowed.contains(x)), "(a={a}, b={b})");
            }
        }
    }
    let m = build_m(&params(7, 7)).unwrap();
    assert_eq!((m.rows(), m.cols()), (80, 37));
}

#[test]
fn blocks_land_where_the_layout_says() {
    let p = params(6, 5);
    let m = build_m(&p).unwrap();
    let layout = Layout::new(5);
    for i in 2..5 {
        for j in 1..=5 {
            let got = m.entries.select(&layout.row_block(WeightKind::U(i)), &layout.col_block(j));
            assert_eq!(got, block_a(i, j, &p).unwrap(), "A({i},{j})");
            let got = m.entries.select(&layout.row_block(WeightKind::W(i)), &layout.col_block(j));
            assert_eq!(got, block_b(i, j, &p).unwrap(), "B({i},{j})");
            for h in i + 1..5 {
                let got = m.entries.select(&layout.row_block(WeightKind::Wij(i, h)), &layout.col_block(j));
                assert_eq!(got, block_c(i, h, j, &p).unwrap(), "C({i},{h},{j})");
            }
        }
    }
}
