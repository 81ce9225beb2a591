//! The dedicated operations for b = 4 and b = 5.

use num_bigint::BigInt;

use super::ops::{Combo, Pass};
use super::Ctx;

/// b = 4, second stage: rows of w2, w3 and u3 against the first-stage matrix.
pub(crate) fn b4_f2(c: &Ctx) -> Pass {
    let l = &c.l;
    Pass::rows(vec![
        Combo::new(l.w(2, 1))
            .add(l.w(3, 2), 1)
            .add(l.wij(2, 3, 1), 1)
            .add(l.wij(2, 3, 2), 1),
        Combo::new(l.w(3, 2)).add(l.u(2), 1).add(l.u(3), 1),
        Combo::new(l.u(3)).add(l.wij(2, 3, 1), -1),
    ])
}

pub(crate) fn b4_f3(c: &Ctx) -> Pass {
    let l = &c.l;
    Pass::cols(vec![
        Combo::new(l.v(2, 1)).add(l.v(4, 2), 2),
        Combo::new(l.v(2, 3)).add(l.v(2, 2), -1),
        Combo::new(l.v(4, 1)).add(l.v(4, 2), -1),
        Combo::new(l.v(4, 3)).add(l.v(2, 2), 2),
    ])
}

pub(crate) fn b4_f4(c: &Ctx) -> Pass {
    let l = &c.l;
    let a1 = BigInt::from(c.a + 1);
    let theta = [-a1.clone(), BigInt::from(2), BigInt::from(1)];
    let mut combos = vec![Combo::new(l.v1()).add(l.v(2, 3), 2).add(l.v(2, 1), 1)];
    for (t, th) in theta.into_iter().enumerate() {
        combos.push(Combo::new(l.v(3, t + 1)).add(l.v(2, 3), th));
    }
    combos.push(Combo::new(l.v(4, 1)).add(l.v(2, 3), a1));
    combos.push(Combo::new(l.v(4, 3)).add(l.v(2, 1), -1));
    Pass::cols(combos)
}

pub(crate) fn b4_f5(c: &Ctx) -> Pass {
    let l = &c.l;
    Pass::rows(vec![Combo::new(l.w(2, 2))
        .add(l.w(2, 1), 3)
        .add(l.w(3, 1), 1)])
}

pub(crate) fn b4_f6(c: &Ctx) -> Pass {
    let l = &c.l;
    Pass::cols(vec![Combo::new(l.v(3, 1)).add(l.v(3, 3), 1)])
}

/// b = 5, eleventh stage.
pub(crate) fn b5_f11(c: &Ctx) -> Pass {
    let l = &c.l;
    Pass::rows(vec![
        Combo::new(l.u(2)).add(l.wij(3, 4, 3), -1),
        Combo::new(l.u(3)).add(l.w(4, 3), 1),
        Combo::new(l.w(2, 1)).add(l.w(3, 2), -1),
        Combo::new(l.w(2, 2))
            .add(l.w(2, 3), 1)
            .add(l.wij(3, 4, 3), -3),
        Combo::new(l.w(2, 3))
            .add(l.w(4, 1), 1)
            .add(l.wij(2, 3, 1), -3)
            .add(l.w(3, 2), -3)
            .add(l.wij(3, 4, 3), -3),
        Combo::new(l.w(4, 2))
            .add(l.w(4, 1), 1)
            .add(l.wij(2, 3, 1), -3),
        Combo::new(l.w(4, 3)).add(l.wij(2, 3, 1), 1),
    ])
}

/// b = 5, twelfth stage.
pub(crate) fn b5_f12(c: &Ctx) -> Pass {
    let l = &c.l;
    Pass::cols(vec![
        Combo::new(l.v(3, 3)).add(l.v(3, 4), -1),
        Combo::new(l.v(4, 1))
            .add(l.v(4, 2), -1)
            .add(l.v(3, 3), 1)
            .add(l.v(3, 4), -1),
        Combo::new(l.v(4, 2)).add(l.v(3, 3), -1).add(l.v(3, 4), 1),
    ])
}
