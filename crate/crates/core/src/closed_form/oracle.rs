//! Enumeration oracles for the closed forms.
//!
//! Character sums are summed term by term in `Z[ζ_p]`; point counts are
//! counted directly. Nothing here uses a closed form, the case tag, or the
//! Gauss sum constants.

use serde::Serialize;
use thiserror::Error;

use crate::code::count_nb;
use crate::cyclotomic::CycAccumulator;
use crate::field::{FieldCtx, FieldElem, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("character sum {0} is not a rational integer")]
    NotRational(String),
}

/// Which quantity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaQuery {
    /// `Σ_{y ≠ 0} Σ_x ζ^{y Tr(x² + x)}`.
    Lemma8,
    /// `B(b) = Σ_{y,z ≠ 0} Σ_x ζ^{Tr(y x² + y x + b z x)}`.
    Lemma9 { b: FieldElem },
    /// `|{x : Tr(x²) = 0, Tr(x) = a}|`.
    Lemma10 { a: u32 },
    /// `(|N(0,0̄)|, |N(0̄,0̄)|, |N(0̄,0)|)`.
    Lemma11,
    /// `|{x : Tr(x) ≠ 0, Tr(x)² = m Tr(x²)}|`.
    Lemma12,
    /// `|N_b|`.
    Nb { b: FieldElem },
    /// `|{x : Tr(x²) = c}|`.
    Lemma16 { c: u32 },
    /// `|{x : Tr(x²) = c, Tr(x) = 0}|`.
    Lemma17 { c: u32 },
}

impl LemmaQuery {
    pub fn id(&self) -> &'static str {
        match self {
            LemmaQuery::Lemma8 => "lemma8",
            LemmaQuery::Lemma9 { .. } => "lemma9",
            LemmaQuery::Lemma10 { .. } => "lemma10",
            LemmaQuery::Lemma11 => "lemma11",
            LemmaQuery::Lemma12 => "lemma12",
            LemmaQuery::Nb { .. } => "nb",
            LemmaQuery::Lemma16 { .. } => "lemma16",
            LemmaQuery::Lemma17 { .. } => "lemma17",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum LemmaValue {
    Scalar(i128),
    Triple([i128; 3]),
}

/// Evaluates `query` over `F_{p^m}` built with the default modulus, subject
/// to the size cap.
pub fn oracle_for(p: u32, m: u32, max_q: u64, query: LemmaQuery) -> Result<LemmaValue, OracleError> {
    let ctx = FieldCtx::new(p, m, max_q)?;
    oracle(&ctx, query)
}

fn rational(acc: CycAccumulator) -> Result<i128, OracleError> {
    let v = acc.finish();
    v.to_integer().map(i128::from).ok_or_else(|| OracleError::NotRational(v.to_string()))
}

fn count(ctx: &FieldCtx, pred: impl Fn(FieldElem) -> bool) -> i128 {
    ctx.elements().filter(|&x| pred(x)).count() as i128
}

pub fn oracle(ctx: &FieldCtx, query: LemmaQuery) -> Result<LemmaValue, OracleError> {
    let p = ctx.p();
    let tr = |x: FieldElem| ctx.trace(x);
    let tr_sq = |x: FieldElem| ctx.trace(ctx.square(x));
    Ok(match query {
        LemmaQuery::Lemma8 => {
            let mut by_trace = vec![0i64; p as usize];
            for x in ctx.elements() {
                by_trace[tr(ctx.add(ctx.square(x), x)) as usize] += 1;
            }
            let mut acc = CycAccumulator::new(p);
            for y in 1..p as u64 {
                for (t, &n) in by_trace.iter().enumerate() {
                    acc.add_term(y * t as u64, n);
                }
            }
            LemmaValue::Scalar(rational(acc)?)
        }
        LemmaQuery::Lemma9 { b } => {
            // joint[a][e] = #{x : Tr(x² + x) = a, Tr(bx) = e}
            let pu = p as usize;
            let mut joint = vec![0i64; pu * pu];
            for x in ctx.elements() {
                let a = tr(ctx.add(ctx.square(x), x)) as usize;
                let e = tr(ctx.mul(b, x)) as usize;
                joint[a * pu + e] += 1;
            }
            let mut acc = CycAccumulator::new(p);
            for y in 1..p as u64 {
                for z in 1..p as u64 {
                    for (idx, &n) in joint.iter().enumerate().filter(|(_, &n)| n != 0) {
                        let (a, e) = ((idx / pu) as u64, (idx % pu) as u64);
                        acc.add_term(y * a + z * e, n);
                    }
                }
            }
            LemmaValue::Scalar(rational(acc)?)
        }
        LemmaQuery::Lemma10 { a } => LemmaValue::Scalar(count(ctx, |x| tr_sq(x) == 0 && tr(x) == a % p)),
        LemmaQuery::Lemma11 => {
            let mut out = [0i128; 3];
            for x in ctx.elements() {
                match (tr_sq(x) == 0, tr(x) == 0) {
                    (true, false) => out[0] += 1,
                    (false, false) => out[1] += 1,
                    (false, true) => out[2] += 1,
                    (true, true) => {}
                }
            }
            LemmaValue::Triple(out)
        }
        LemmaQuery::Lemma12 => {
            let m = (ctx.m() % p) as u64;
            LemmaValue::Scalar(count(ctx, |x| {
                let t = tr(x) as u64;
                t != 0 && (t * t) % p as u64 == m * tr_sq(x) as u64 % p as u64
            }))
        }
        LemmaQuery::Nb { b } => LemmaValue::Scalar(count_nb(ctx, b) as i128),
        LemmaQuery::Lemma16 { c } => LemmaValue::Scalar(count(ctx, |x| tr_sq(x) == c % p)),
        LemmaQuery::Lemma17 { c } => LemmaValue::Scalar(count(ctx, |x| tr_sq(x) == c % p && tr(x) == 0)),
    })
}
