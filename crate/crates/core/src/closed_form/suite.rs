//! Every closed form against its oracle, over every parameter value that
//! occurs for a given field.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::oracle::{oracle, LemmaQuery, LemmaValue, OracleError};
use super::{
    classify, lemma10_n0a, lemma11_counts, lemma12_v, lemma16_uc, lemma17_vc, lemma8_value, lemma9_b,
    lemma_nb_predicted, BClass, CaseTag, ClosedFormError,
};
use crate::field::{FieldCtx, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub closed: LemmaValue,
    pub oracle: LemmaValue,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl LemmaCheck {
    fn new(id: &str, params: &[(&str, i64)], closed: LemmaValue, oracle: LemmaValue) -> Self {
        LemmaCheck {
            id: id.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            closed,
            matches: closed == oracle,
            oracle,
        }
    }
}

/// Coarse partition of `F_q*` by the trace data of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClassKey {
    /// `Tr(b²) = 0`, `Tr(b) ≠ 0`.
    SquareZeroTraceNonzero,
    /// `Tr(b²) = 0`, `Tr(b) = 0`.
    BothZero,
    /// `Tr(b²) ≠ 0`, `Tr(b) = 0`.
    SquareNonzeroTraceZero,
    /// Both nonzero and `Tr(b)² = m Tr(b²)`.
    BothNonzeroOnConic,
    /// Both nonzero and `Tr(b)² ≠ m Tr(b²)`.
    BothNonzeroOffConic,
}

impl ClassKey {
    pub fn of(cls: BClass) -> Self {
        match (cls.t2 == 0, cls.t1 == 0) {
            (true, false) => ClassKey::SquareZeroTraceNonzero,
            (true, true) => ClassKey::BothZero,
            (false, true) => ClassKey::SquareNonzeroTraceZero,
            (false, false) if cls.disc => ClassKey::BothNonzeroOnConic,
            (false, false) => ClassKey::BothNonzeroOffConic,
        }
    }
}

/// `(class, predicted size, enumerated size)` for every [`ClassKey`],
/// counting nonzero `b` only. The predicted sizes come from the point-count
/// lemmas and add up to `q - 1` by construction.
pub fn class_census(ctx: &FieldCtx) -> Result<Vec<(ClassKey, i128, i128)>, ClosedFormError> {
    let (p, m) = (ctx.p(), ctx.m());
    let [zero_nz, nz_nz, nz_zero] = lemma11_counts(p, m)?;
    let on_conic = if classify(p, m).p_divides_m() { 0 } else { lemma12_v(p, m)? };
    let predicted = [
        (ClassKey::SquareZeroTraceNonzero, zero_nz),
        (ClassKey::BothZero, lemma10_n0a(p, m, 0)? - 1),
        (ClassKey::SquareNonzeroTraceZero, nz_zero),
        (ClassKey::BothNonzeroOnConic, on_conic),
        (ClassKey::BothNonzeroOffConic, nz_nz - on_conic),
    ];
    let mut actual: BTreeMap<ClassKey, i128> = BTreeMap::new();
    for b in ctx.nonzero_elements() {
        *actual.entry(ClassKey::of(BClass::of(ctx, b))).or_insert(0) += 1;
    }
    Ok(predicted.into_iter().map(|(k, v)| (k, v, actual.get(&k).copied().unwrap_or(0))).collect())
}

fn scalar(v: i128) -> LemmaValue {
    LemmaValue::Scalar(v)
}

/// Runs every lemma evaluator that applies to the case of `ctx` against its
/// oracle. The `b`-dependent lemmas are checked for every nonzero `b`, one
/// report entry per realized `(Tr(b²), Tr(b))` class.
pub fn lemma_suite(ctx: &FieldCtx) -> Result<Vec<LemmaCheck>, SuiteError> {
    let (p, m) = (ctx.p(), ctx.m());
    let tag = classify(p, m);
    let mut out = Vec::new();

    out.push(LemmaCheck::new("lemma8", &[], scalar(lemma8_value(p, m)?), oracle(ctx, LemmaQuery::Lemma8)?));

    let mut classes: BTreeMap<BClass, Vec<FieldElem>> = BTreeMap::new();
    for b in ctx.nonzero_elements() {
        classes.entry(BClass::of(ctx, b)).or_default().push(b);
    }
    for (id, closed_fn) in
        [("lemma9", lemma9_b as fn(u32, u32, BClass) -> Result<i128, ClosedFormError>), ("nb", lemma_nb_predicted)]
    {
        for (cls, members) in &classes {
            let closed = scalar(closed_fn(p, m, *cls)?);
            let values: Vec<LemmaValue> = members
                .par_iter()
                .map(|&b| {
                    let q = if id == "lemma9" { LemmaQuery::Lemma9 { b } } else { LemmaQuery::Nb { b } };
                    oracle(ctx, q)
                })
                .collect::<Result<_, _>>()?;
            // Report the first disagreeing member if there is one.
            let (rep, value) =
                members.iter().zip(&values).find(|(_, v)| **v != closed).unwrap_or((&members[0], &values[0]));
            out.push(LemmaCheck::new(
                id,
                &[
                    ("t2", cls.t2 as i64),
                    ("t1", cls.t1 as i64),
                    ("disc", cls.disc as i64),
                    ("b", rep.index() as i64),
                    ("members", members.len() as i64),
                ],
                closed,
                *value,
            ));
        }
    }

    for a in 0..p {
        out.push(LemmaCheck::new(
            "lemma10",
            &[("a", a as i64)],
            scalar(lemma10_n0a(p, m, a)?),
            oracle(ctx, LemmaQuery::Lemma10 { a })?,
        ));
    }
    out.push(LemmaCheck::new(
        "lemma11",
        &[],
        LemmaValue::Triple(lemma11_counts(p, m)?),
        oracle(ctx, LemmaQuery::Lemma11)?,
    ));
    if !tag.p_divides_m() {
        out.push(LemmaCheck::new("lemma12", &[], scalar(lemma12_v(p, m)?), oracle(ctx, LemmaQuery::Lemma12)?));
    }
    if !tag.is_even() {
        for c in 0..p {
            out.push(LemmaCheck::new(
                "lemma16",
                &[("c", c as i64)],
                scalar(lemma16_uc(p, m, c)?),
                oracle(ctx, LemmaQuery::Lemma16 { c })?,
            ));
        }
    }
    if tag == CaseTag::OddDivides {
        for c in 1..p {
            out.push(LemmaCheck::new(
                "lemma17",
                &[("c", c as i64)],
                scalar(lemma17_vc(p, m, c)?),
                oracle(ctx, LemmaQuery::Lemma17 { c })?,
            ));
        }
    }
    for (i, (_, predicted, actual)) in class_census(ctx)?.into_iter().enumerate() {
        out.push(LemmaCheck::new("classes", &[("class", i as i64)], scalar(predicted), scalar(actual)));
    }
    Ok(out)
}
