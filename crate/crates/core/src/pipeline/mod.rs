//! Explicit reduction of M(a, b) to canonical form by unimodular row and
//! column passes, with structural checks after every stage.
//!
//! Every pass reads a frozen copy of its input and writes a fresh matrix.
//! The pivot stage (D4) is the exception: it is a chain of elementary steps,
//! one per pivot, each reading the result of the previous one.

mod canonical;
mod claims;
mod general;
mod ops;
mod small;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use canonical::{canonical_form, display_matrix, CanonicalForm};
pub use claims::Claim;

use crate::combinatorics::HookParams;
use crate::error::{Error, Result};
use crate::intlin::{snf, torsion, ExtGroup, IntMatrix};
use crate::presentation::{build_m, Label, LabeledIntMatrix, Layout};
use claims::Claims;
use general::*;
use ops::Pass;

/// Shared per-run data.
pub(crate) struct Ctx {
    pub a: usize,
    pub b: usize,
    pub omega: usize,
    pub l: Layout,
}

impl Ctx {
    fn new(p: &HookParams) -> Self {
        Self {
            a: p.a(),
            b: p.b(),
            omega: p.omega(),
            l: Layout::new(p.b()),
        }
    }

    /// Pivots postponed to the second half of the split pivot stage (b = 6).
    pub fn d4_deferred(&self) -> Vec<(usize, usize)> {
        if self.b == 6 {
            vec![(2, 3), (5, 2)]
        } else {
            Vec::new()
        }
    }

    /// Whether the structural claims for the general stages apply.
    fn general_checks(&self) -> bool {
        self.b >= 6
    }
}

/// How a run reacts to a failed check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    /// Abort on the first failed claim.
    pub strict: bool,
    /// Keep every intermediate matrix in the trace.
    pub keep_matrices: bool,
}

/// One stage of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub id: String,
    /// Number of simultaneous passes the stage applied.
    pub passes: usize,
    pub unimodular: bool,
    /// The stage output has the same invariant factors as M.
    pub snf_preserved: bool,
    /// SHA-256 of the stage output.
    pub hash: String,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<IntMatrix>,
}

impl StageRecord {
    pub fn passed(&self) -> bool {
        self.unimodular && self.snf_preserved && self.claims.iter().all(|c| c.passed)
    }

    fn first_failure(&self) -> Option<(String, String)> {
        if !self.unimodular {
            return Some(("unimodular".into(), "a pass is not invertible over Z".into()));
        }
        if !self.snf_preserved {
            return Some(("invariant factors preserved".into(), "SNF changed".into()));
        }
        self.claims.iter().find(|c| !c.passed).map(|c| {
            (
                c.name.clone(),
                c.detail.clone().unwrap_or_default(),
            )
        })
    }
}

/// Full record of a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub a: usize,
    pub b: usize,
    /// b = 3 is reduced by a direct SNF, without stages.
    pub direct: bool,
    pub stages: Vec<StageRecord>,
    /// Invariant factors of M.
    #[serde(with = "crate::intlin::decimal::list")]
    pub factors: Vec<BigInt>,
    /// Size of the identity block of the canonical form.
    pub r: usize,
    /// Residual block beside the identity, e.g. `[2, ω]`.
    pub final_block: IntMatrix,
    /// The canonical matrix with its rows and columns relabeled.
    pub final_matrix: LabeledIntMatrix,
    pub group: ExtGroup,
}

impl PipelineTrace {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(StageRecord::passed)
    }

    /// Names of all failed claims, prefixed by stage.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for s in &self.stages {
            if !s.unimodular {
                out.push(format!("{}: not unimodular", s.id));
            }
            if !s.snf_preserved {
                out.push(format!("{}: invariant factors changed", s.id));
            }
            for c in s.claims.iter().filter(|c| !c.passed) {
                out.push(format!(
                    "{}: {} ({})",
                    s.id,
                    c.name,
                    c.detail.as_deref().unwrap_or("")
                ));
            }
        }
        out
    }
}

/// Content hash of a matrix: SHA-256 over its decimal entries.
pub fn matrix_hash(m: &IntMatrix) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}x{};", m.rows(), m.cols()));
    for r in 0..m.rows() {
        for x in m.row(r) {
            h.update(x.to_string());
            h.update(",");
        }
        h.update(";");
    }
    hex::encode(h.finalize())
}

/// Stage ids run for a given `b`, in order. Empty for b = 3.
pub fn stage_plan(b: usize) -> Vec<&'static str> {
    match b {
        0..=3 => Vec::new(),
        4 => vec!["F1", "F2", "F3", "F4", "F5", "F6", "F7"],
        5 => vec![
            "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9", "F10", "F11", "F12", "F13",
        ],
        6 => vec![
            "D1", "D2", "D3", "F4.1", "F4.2", "D5", "D6", "D7", "D8", "D9", "D10", "D11",
        ],
        _ => vec!["D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11"],
    }
}

type PreCheck = fn(&Ctx, &IntMatrix, &mut Claims);
type PostCheck = fn(&Ctx, &IntMatrix, &IntMatrix, &mut Claims);

enum Step {
    Fixed {
        passes: Vec<Pass>,
        pre: Option<PreCheck>,
        post: Option<PostCheck>,
    },
    Pivot {
        pairs: Vec<(usize, usize)>,
        fixed: Vec<((usize, usize), usize)>,
        full: bool,
    },
    Canonical,
}

fn fixed(pass: Pass, pre: Option<PreCheck>, post: Option<PostCheck>) -> Step {
    Step::Fixed {
        passes: vec![pass],
        pre,
        post,
    }
}

fn plain(pass: Pass) -> Step {
    fixed(pass, None, None)
}

fn pivot(pairs: Vec<(usize, usize)>, full: bool) -> Step {
    Step::Pivot {
        pairs,
        fixed: Vec::new(),
        full,
    }
}

/// Translates a stage id into its operation for the current `b`.
fn step(c: &Ctx, id: &str) -> Result<Step> {
    let b = c.b;
    let unknown = || Error::Model(format!("no stage {id} for b = {b}"));
    if !stage_plan(b).contains(&id) {
        return Err(unknown());
    }
    Ok(match (b, id) {
        (4, "F1") | (5, "F1") => plain(d1_pass(c)),
        (4, "F2") => plain(small::b4_f2(c)),
        (4, "F3") => plain(small::b4_f3(c)),
        (4, "F4") => plain(small::b4_f4(c)),
        (4, "F5") => plain(small::b4_f5(c)),
        (4, "F6") => plain(small::b4_f6(c)),
        (4, "F7") | (5, "F13") | (_, "D11") => Step::Canonical,
        (5, "F2") => plain(d2_pass(c)),
        (5, "F3") => plain(d3_pass(c)),
        (5, "F4") => pivot(pivot_pairs(5).into_iter().filter(|p| p.0 == 3).collect(), false),
        (5, "F5") => plain(d5_pass(c)),
        (5, "F6") => plain(d6_pass(c)),
        (5, "F7") => plain(d7_pass(c)),
        (5, "F8") => plain(d8_pass(c)),
        (5, "F9") => plain(d9_pass(c)),
        (5, "F10") => plain(d10_pass(c)),
        (5, "F11") => plain(small::b5_f11(c)),
        (5, "F12") => plain(small::b5_f12(c)),
        (_, "D1") => fixed(d1_pass(c), None, Some(d1_checks)),
        (_, "D2") => fixed(d2_pass(c), None, Some(d2_checks)),
        (_, "D3") => fixed(d3_pass(c), Some(d3_pre_checks), Some(d3_checks)),
        (_, "D4") => pivot(pivot_pairs(b), true),
        (6, "F4.1") => {
            let deferred = c.d4_deferred();
            pivot(
                pivot_pairs(b)
                    .into_iter()
                    .filter(|p| !deferred.contains(p))
                    .collect(),
                false,
            )
        }
        (6, "F4.2") => Step::Pivot {
            pairs: c.d4_deferred(),
            fixed: vec![((2, 3), c.l.wij(3, 4, 3)), ((5, 2), c.l.wij(3, 4, 2))],
            full: false,
        },
        (_, "D5") => fixed(d5_pass(c), Some(d5_pre_checks), Some(d5_checks)),
        (_, "D6") => fixed(d6_pass(c), Some(d6_pre_checks), Some(d6_checks)),
        (_, "D7") => fixed(d7_pass(c), Some(d7_pre_checks), Some(d7_checks)),
        (_, "D8") => fixed(d8_pass(c), None, Some(d8_checks)),
        (_, "D9") => fixed(d9_pass(c), Some(d9_pre_checks), Some(d9_checks)),
        (_, "D10") => fixed(d10_pass(c), Some(d10_pre_checks), Some(d10_checks)),
        _ => return Err(unknown()),
    })
}

struct Outcome {
    matrix: IntMatrix,
    passes: usize,
    unimodular: bool,
    claims: Claims,
}

fn pivot_rows(
    c: &Ctx,
    id: &str,
    m: &IntMatrix,
    pairs: &[(usize, usize)],
    fixed: &[((usize, usize), usize)],
) -> Result<Vec<usize>> {
    pairs
        .iter()
        .map(|&pair| {
            let row = match fixed.iter().find(|(p, _)| *p == pair) {
                Some(&(_, r)) => Some(r),
                None => general::select_gamma(c, m, pivot_col(c, pair.0, pair.1), &[2, -2]),
            };
            row.ok_or_else(|| Error::StageCheck {
                stage: id.to_string(),
                claim: "a w(r,s) row with a single +-2 exists for every pivot".into(),
                detail: format!("none for (i, l) = {pair:?}"),
            })
        })
        .collect()
}

fn pivot_checks(
    c: &Ctx,
    pairs: &[(usize, usize)],
    fixed: &[((usize, usize), usize)],
    full: bool,
    start: &IntMatrix,
    end: &IntMatrix,
    claims: &mut Claims,
) {
    if !fixed.is_empty() {
        let v = claims::View::new(start, c.l);
        claims.push(
            "the deferred pivots use rows with a single +-1 in the pivot column",
            claims::all(fixed.iter(), |&((i, ll), r)| {
                let col = pivot_col(c, i, ll);
                let s = v.row_support(r);
                let one = BigInt::from(1);
                if s.len() == 1 && s[0].0 == col && (s[0].1 == one || s[0].1 == -&one) {
                    Ok(())
                } else {
                    Err(format!("row {} does not qualify", v.rname(r)))
                }
            }),
        );
    }
    d4_checks(c, pairs, start, end, full, claims);
    if !fixed.is_empty() {
        // Both halves together must leave every pivot isolated.
        let v = claims::View::new(end, c.l);
        claims.push(
            "each row l != i-1 of wi holds a single 1, alone in its column",
            claims::all(pivot_pairs(c.b), |(i, ll)| {
                v.isolated(c.l.w(i, ll), pivot_col(c, i, ll), 1)
            }),
        );
    }
}

fn canonical_claims(cf: &CanonicalForm, m: &IntMatrix, r: usize, template: &IntMatrix, claims: &mut Claims) {
    claims.push(
        "identity block has the expected size",
        if cf.r == r {
            Ok(())
        } else {
            Err(format!("r = {}, expected {r}", cf.r))
        },
    );
    claims.push(
        "residual block matches the expected display up to permutation and sign",
        if cf.matched {
            Ok(())
        } else {
            Err(format!("residual is {:?}", cf.residual.to_rows()))
        },
    );
    let display = display_matrix(m.rows(), m.cols(), r, template);
    claims.push(
        "canonical matrix equals the expected display entrywise",
        if cf.matrix == display {
            Ok(())
        } else {
            Err("entries differ".into())
        },
    );
}

/// Runs one stage on `m`, with its claims when `checks` is set.
fn execute(c: &Ctx, params: &HookParams, id: &str, m: &IntMatrix, checks: bool) -> Result<(Outcome, Option<CanonicalForm>)> {
    let mut claims = Claims::default();
    let checks = checks && c.general_checks();
    match step(c, id)? {
        Step::Fixed { passes, pre, post } => {
            if let (true, Some(f)) = (checks, pre) {
                f(c, m, &mut claims);
            }
            let mut next = m.clone();
            let mut unimodular = true;
            for p in &passes {
                unimodular &= p.is_unimodular();
                next = p.apply(&next);
            }
            if let (true, Some(f)) = (checks, post) {
                f(c, m, &next, &mut claims);
            }
            Ok((
                Outcome {
                    matrix: next,
                    passes: passes.len(),
                    unimodular,
                    claims,
                },
                None,
            ))
        }
        Step::Pivot { pairs, fixed, full } => {
            let gammas = pivot_rows(c, id, m, &pairs, &fixed)?;
            let mut next = m.clone();
            let mut passes = 0;
            let mut unimodular = true;
            for (&pair, &gamma) in pairs.iter().zip(&gammas) {
                for p in d4_step(c, &next, pair, gamma)? {
                    unimodular &= p.is_unimodular();
                    next = p.apply(&next);
                    passes += 1;
                }
            }
            if checks {
                pivot_checks(c, &pairs, &fixed, full, m, &next, &mut claims);
            }
            Ok((
                Outcome {
                    matrix: next,
                    passes,
                    unimodular,
                    claims,
                },
                None,
            ))
        }
        Step::Canonical => {
            let (r, template) = expected_display(params).expect("b >= 4");
            let cf = canonical_form(m, Some(&template));
            canonical_claims(&cf, m, r, &template, &mut claims);
            Ok((
                Outcome {
                    matrix: cf.matrix.clone(),
                    passes: 1,
                    unimodular: true,
                    claims,
                },
                Some(cf),
            ))
        }
    }
}

fn check_params(prev: &LabeledIntMatrix) -> Result<Ctx> {
    let ctx = Ctx::new(&prev.params);
    if prev.rows() != ctx.l.rows() || prev.cols() != ctx.l.cols() {
        return Err(Error::Model(format!(
            "matrix is {}x{}, layout for b = {} is {}x{}",
            prev.rows(),
            prev.cols(),
            ctx.b,
            ctx.l.rows(),
            ctx.l.cols()
        )));
    }
    Ok(ctx)
}

/// Applies one stage to the output of the preceding stage. Labels are kept
/// in the standard layout, including after canonicalization; use
/// [`reduce`] for the relabeled final matrix.
pub fn apply_stage(prev: &LabeledIntMatrix, stage: &str) -> Result<LabeledIntMatrix> {
    let ctx = check_params(prev)?;
    let (out, _) = execute(&ctx, &prev.params, stage, &prev.entries, false)?;
    Ok(LabeledIntMatrix {
        entries: out.matrix,
        ..prev.clone()
    })
}

/// Evaluates the structural claims of `stage`, whose input was `prev` and
/// output `next`. Pre-stage identities are evaluated on `prev`.
pub fn check_stage(stage: &str, prev: &LabeledIntMatrix, next: &LabeledIntMatrix) -> Result<Vec<Claim>> {
    let ctx = check_params(prev)?;
    let (out, _) = execute(&ctx, &prev.params, stage, &prev.entries, true)?;
    let mut claims = out.claims.list;
    claims.push(Claim {
        name: "output equals the stage applied to its input".into(),
        passed: out.matrix == next.entries,
        detail: (out.matrix != next.entries).then(|| "matrices differ".into()),
    });
    Ok(claims)
}

/// Pivot row chosen for making row l of w_i a unit: the first row with a
/// single nonzero, equal to ±2, in the pivot column.
pub fn select_gamma(m: &LabeledIntMatrix, i: usize, l: usize) -> Option<Label> {
    let ctx = Ctx::new(&m.params);
    let b = ctx.b;
    if !(2..b).contains(&i) || !(1..=b.saturating_sub(2)).contains(&l) || l + 1 == i {
        return None;
    }
    general::select_gamma(&ctx, &m.entries, pivot_col(&ctx, i, l), &[2, -2])
        .map(|r| m.row_labels[r].clone())
}

fn block(rows: &[&[BigInt]]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular")
}

/// Expected residual block and identity size for the canonical form.
pub fn expected_display(params: &HookParams) -> Option<(usize, IntMatrix)> {
    let (a, b) = (params.a(), params.b());
    let n = |x: usize| BigInt::from(x);
    let z = BigInt::from(0);
    match b {
        4 => Some((
            4,
            block(&[
                &[n(2), n(a + 2), z.clone()],
                &[z.clone(), z.clone(), n(3)],
                &[z.clone(), z, n(a + 1)],
            ]),
        )),
        5 => Some((
            10,
            block(&[
                &[n(2), n(a + 1), z.clone()],
                &[z.clone(), z.clone(), n(3)],
                &[z.clone(), z, n(a + 2)],
            ]),
        )),
        b if b >= 6 => Some((b * (b - 3) + 1, block(&[&[n(2), n(params.omega())]]))),
        _ => None,
    }
}

fn relabel(
    params: &HookParams,
    cf: &CanonicalForm,
    rows: &[Label],
    cols: &[Label],
) -> LabeledIntMatrix {
    LabeledIntMatrix {
        params: *params,
        entries: cf.matrix.clone(),
        row_labels: cf.row_order.iter().map(|&r| rows[r].clone()).collect(),
        col_labels: cf.col_order.iter().map(|&c| cols[c].clone()).collect(),
    }
}

/// Runs the reduction appropriate to `b` and returns its trace.
pub fn reduce(params: &HookParams, opts: &PipelineOptions) -> Result<PipelineTrace> {
    let m0 = build_m(params)?;
    let base = snf(&m0.entries, false)?;
    let ctx = Ctx::new(params);
    let b = ctx.b;
    if b < 4 {
        let cf = canonical_form(&m0.entries, None);
        return Ok(PipelineTrace {
            a: params.a(),
            b,
            direct: true,
            stages: Vec::new(),
            group: torsion(&base),
            factors: base.factors,
            r: cf.r,
            final_block: cf.residual.clone(),
            final_matrix: relabel(params, &cf, &m0.row_labels, &m0.col_labels),
        });
    }
    let mut m = m0.entries.clone();
    let mut stages = Vec::new();
    let mut cf = None;
    for id in stage_plan(b) {
        let (out, canon) = execute(&ctx, params, id, &m, true)?;
        let rec = StageRecord {
            id: id.to_string(),
            passes: out.passes,
            unimodular: out.unimodular,
            snf_preserved: snf(&out.matrix, false)?.factors == base.factors,
            hash: matrix_hash(&out.matrix),
            claims: out.claims.list,
            matrix: opts.keep_matrices.then(|| out.matrix.clone()),
        };
        if opts.strict {
            if let Some((claim, detail)) = rec.first_failure() {
                return Err(Error::StageCheck {
                    stage: id.to_string(),
                    claim,
                    detail,
                });
            }
        }
        stages.push(rec);
        m = out.matrix;
        cf = canon.or(cf);
    }
    let cf = cf.expect("plans end in canonicalization");
    let final_snf = snf(&cf.matrix, false)?;
    Ok(PipelineTrace {
        a: params.a(),
        b,
        direct: false,
        group: torsion(&final_snf),
        factors: base.factors,
        r: cf.r,
        final_block: cf.residual.clone(),
        final_matrix: relabel(params, &cf, &m0.row_labels, &m0.col_labels),
        stages,
    })
}
