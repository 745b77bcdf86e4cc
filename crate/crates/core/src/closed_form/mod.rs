//! Closed-form values of the character sums, point counts and weight
//! distributions attached to `D = {x ≠ 0 : Tr(x² + x) = 0}`.
//!
//! Everything is evaluated in exact rational arithmetic over `i128` after
//! the Gauss sum constants are reduced to integers: `G` for even `m`, the
//! product `GḠ` for odd `m`. Negative powers of `p` must cancel; when they do
//! not, the evaluator reports [`ClosedFormError::NonIntegral`] instead of
//! rounding.

mod oracle;
mod suite;
mod tables;

use num_rational::Ratio;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::field::{is_odd_prime, legendre, FieldCtx, FieldElem};

pub use oracle::{oracle, oracle_for, LemmaQuery, LemmaValue, OracleError};
pub use suite::{class_census, lemma_suite, ClassKey, LemmaCheck, SuiteError};
pub use tables::{predicted_distribution, predicted_length, table5_rows, table_rows, PredictedDistribution};

pub(crate) type Rat = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("extension degree must be at least 1")]
    DegreeTooSmall,
    #[error("p^m too large for exact 128-bit evaluation")]
    Overflow,
    #[error("formula requires even m (got m={0})")]
    OddM(u32),
    #[error("formula requires odd m (got m={0})")]
    EvenM(u32),
    #[error("formula requires p ∤ m")]
    PDividesM,
    #[error("formula not defined for this case: {0}")]
    BadCase(&'static str),
    #[error("non-integral value for {what}: {value}")]
    NonIntegral { what: &'static str, value: String },
    #[error("negative multiplicity {value} for weight {weight}")]
    NegativeMultiplicity { weight: i128, value: i128 },
}

/// The four `(m mod 2, p | m)` regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseTag {
    /// `2 | m` and `p | m`.
    EvenDivides,
    /// `2 | m` and `p ∤ m`.
    EvenCoprime,
    /// `2 ∤ m` and `p | m`.
    OddDivides,
    /// `2 ∤ m` and `p ∤ m`.
    OddCoprime,
}

impl CaseTag {
    pub fn is_even(self) -> bool {
        matches!(self, CaseTag::EvenDivides | CaseTag::EvenCoprime)
    }

    pub fn p_divides_m(self) -> bool {
        matches!(self, CaseTag::EvenDivides | CaseTag::OddDivides)
    }

    /// Index (1–4) of the weight table for this case.
    pub fn theorem(self) -> u8 {
        match self {
            CaseTag::EvenDivides => 1,
            CaseTag::EvenCoprime => 2,
            CaseTag::OddDivides => 3,
            CaseTag::OddCoprime => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::EvenDivides => "EvenDivides",
            CaseTag::EvenCoprime => "EvenCoprime",
            CaseTag::OddDivides => "OddDivides",
            CaseTag::OddCoprime => "OddCoprime",
        }
    }
}

pub fn classify(p: u32, m: u32) -> CaseTag {
    match (m.is_multiple_of(2), m.is_multiple_of(p)) {
        (true, true) => CaseTag::EvenDivides,
        (true, false) => CaseTag::EvenCoprime,
        (false, true) => CaseTag::OddDivides,
        (false, false) => CaseTag::OddCoprime,
    }
}

/// Whether the closed forms apply to degree `m` (they need `m > 2`). The
/// tables are still evaluated below that.
pub fn within_hypothesis(m: u32) -> bool {
    m > 2
}

/// Degrees for which `w_min / w_max > (p-1)/p` is asserted for the family.
pub fn ss_ratio_claimed(p: u32, m: u32) -> bool {
    match classify(p, m) {
        CaseTag::EvenDivides => m >= 4,
        CaseTag::EvenCoprime => m >= 6,
        CaseTag::OddDivides | CaseTag::OddCoprime => m >= 5,
    }
}

/// Cases for which the dual code is asserted to have minimum distance 2.
/// This is not true for every member; compare
/// [`crate::code::DefiningSet::dual_distance_two`].
pub fn dual_distance_two_claimed(p: u32, m: u32) -> bool {
    matches!(classify(p, m), CaseTag::EvenCoprime | CaseTag::OddCoprime)
}

fn neg_one_pow(e: u64) -> i128 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check_params(p: u32, m: u32) -> Result<(), ClosedFormError> {
    if !is_odd_prime(p as u64) {
        return Err(ClosedFormError::NotOddPrime(p));
    }
    if m < 1 {
        return Err(ClosedFormError::DegreeTooSmall);
    }
    // Keep p^{m+2} well inside i64 so every product below fits in i128.
    match (p as u128).checked_pow(m + 2) {
        Some(v) if v < 1 << 62 => Ok(()),
        _ => Err(ClosedFormError::Overflow),
    }
}

/// `G = -(-1)^{m(p-1)/4} p^{m/2}` for even `m`.
pub fn g_even(p: u32, m: u32) -> Result<i128, ClosedFormError> {
    check_params(p, m)?;
    if !m.is_multiple_of(2) {
        return Err(ClosedFormError::OddM(m));
    }
    let e = m as u64 * (p as u64 - 1) / 4;
    Ok(-neg_one_pow(e) * (p as i128).pow(m / 2))
}

/// `GḠ = (-1)^{(m+1)(p-1)/4} p^{(m+1)/2}` for odd `m`.
pub fn g_gbar_odd(p: u32, m: u32) -> Result<i128, ClosedFormError> {
    check_params(p, m)?;
    if m.is_multiple_of(2) {
        return Err(ClosedFormError::EvenM(m));
    }
    let e = (m as u64 + 1) * (p as u64 - 1) / 4;
    Ok(neg_one_pow(e) * (p as i128).pow(m.div_ceil(2)))
}

/// Per-`(p, m)` constants shared by every formula.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Consts {
    pub p: u32,
    pub m: u32,
    pub tag: CaseTag,
    /// `G`, meaningful for even `m`.
    pub g: i128,
    /// `GḠ`, meaningful for odd `m`.
    pub gg: i128,
}

impl Consts {
    pub fn new(p: u32, m: u32) -> Result<Self, ClosedFormError> {
        check_params(p, m)?;
        let tag = classify(p, m);
        let (g, gg) = if tag.is_even() { (g_even(p, m)?, 0) } else { (0, g_gbar_odd(p, m)?) };
        Ok(Consts { p, m, tag, g, gg })
    }

    /// `p^e` for any integer `e`.
    pub fn pw(&self, e: i64) -> Rat {
        let base = Rat::from_integer(self.p as i128);
        if e >= 0 {
            base.pow(e as i32)
        } else {
            Rat::one() / base.pow((-e) as i32)
        }
    }

    /// Quadratic character of the prime field, `η̄(a)`.
    pub fn eta(&self, a: i64) -> i128 {
        legendre(a, self.p) as i128
    }

    pub fn r(&self, v: i128) -> Rat {
        Rat::from_integer(v)
    }

    /// `η̄(-m)`, the Legendre symbol `(-m / p)`.
    pub fn eta_neg_m(&self) -> i128 {
        self.eta(-(self.m as i64))
    }

    /// `G Ḡ² = η̄(-1) p G` for even `m`.
    pub fn g_gbar_sq(&self) -> Rat {
        self.r(self.eta(-1) * self.p as i128 * self.g)
    }

    pub fn g_rat(&self) -> Rat {
        self.r(self.g)
    }

    pub fn gg_rat(&self) -> Rat {
        self.r(self.gg)
    }

    pub fn pm1(&self) -> Rat {
        self.r(self.p as i128 - 1)
    }
}

pub(crate) fn integral(value: Rat, what: &'static str) -> Result<i128, ClosedFormError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(ClosedFormError::NonIntegral { what, value: value.to_string() })
    }
}

/// The trace data of `b` that selects a case in the character-sum lemmas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BClass {
    /// `Tr(b²)`.
    pub t2: u32,
    /// `Tr(b)`.
    pub t1: u32,
    /// `Tr(b)² = m · Tr(b²)` in `F_p`.
    pub disc: bool,
}

impl BClass {
    pub fn new(p: u32, m: u32, t2: u32, t1: u32) -> Self {
        let p64 = p as u64;
        let lhs = (t1 as u64 * t1 as u64) % p64;
        let rhs = (m as u64 % p64) * t2 as u64 % p64;
        BClass { t2, t1, disc: lhs == rhs }
    }

    pub fn of(ctx: &FieldCtx, b: FieldElem) -> Self {
        Self::new(ctx.p(), ctx.m(), ctx.trace(ctx.square(b)), ctx.trace(b))
    }
}

/// `Σ_{y ∈ F_p*} Σ_{x ∈ F_q} ζ_p^{y Tr(x² + x)}`.
pub fn lemma8_value(p: u32, m: u32) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    Ok(match k.tag {
        CaseTag::EvenDivides => (p as i128 - 1) * k.g,
        CaseTag::EvenCoprime => -k.g,
        CaseTag::OddDivides => 0,
        CaseTag::OddCoprime => k.eta_neg_m() * k.gg,
    })
}

/// `n₀ = |D| + 1 = p^{m-1} + p^{-1} · lemma8`.
pub fn predicted_n0(p: u32, m: u32) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    integral(k.pw(m as i64 - 1) + k.r(lemma8_value(p, m)?) / k.r(p as i128), "n0")
}

/// `B = Σ_{y,z ∈ F_p*} Σ_{x ∈ F_q} χ₁(y x² + y x + b z x)` for `b ≠ 0`, by the
/// trace class of `b`.
///
/// For odd `m`, `p ∤ m`, `Tr(b²) ≠ 0`, `Tr(b) = 0` the value is
/// `-(η̄(-Tr(b²)) + η̄(-m)) GḠ`, the same expression as the generic
/// `Tr(b) ≠ 0` line; the enumeration oracle agrees on every grid entry.
pub fn lemma9_b(p: u32, m: u32, cls: BClass) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    let pm1 = p as i128 - 1;
    let t2 = cls.t2 as i64;
    let t1 = cls.t1 as i64;
    let mi = m as i64;
    let g = k.g;
    let gg = k.gg;
    let ggsq = integral(k.g_gbar_sq(), "GḠ²")?;
    let eta_nm = k.eta_neg_m();
    Ok(match (t2 != 0, t1 != 0, k.tag) {
        // Tr(b²) ≠ 0, Tr(b) = 0
        (true, false, CaseTag::EvenDivides) => -pm1 * g,
        (true, false, CaseTag::EvenCoprime) => k.eta(mi * t2) * ggsq + g,
        (true, false, CaseTag::OddDivides) => k.eta(-t2) * pm1 * gg,
        (true, false, CaseTag::OddCoprime) => -(k.eta(-t2) + eta_nm) * gg,
        // Tr(b²) ≠ 0, Tr(b) ≠ 0
        (true, true, CaseTag::EvenDivides) => k.eta(-1) * ggsq - pm1 * g,
        (true, true, CaseTag::EvenCoprime) if cls.disc => g,
        (true, true, CaseTag::EvenCoprime) => k.eta(mi * t2 - t1 * t1) * ggsq + g,
        (true, true, CaseTag::OddDivides) => -k.eta(-t2) * gg,
        (true, true, CaseTag::OddCoprime) if cls.disc => (k.eta(-t2) * pm1 - eta_nm) * gg,
        (true, true, CaseTag::OddCoprime) => -(k.eta(-t2) + eta_nm) * gg,
        // Tr(b²) = 0, Tr(b) ≠ 0
        (false, true, CaseTag::EvenDivides) => -pm1 * g,
        (false, true, CaseTag::EvenCoprime) => g,
        (false, true, CaseTag::OddDivides) => 0,
        (false, true, CaseTag::OddCoprime) => -eta_nm * gg,
        // Tr(b²) = 0, Tr(b) = 0
        (false, false, CaseTag::EvenDivides) => pm1 * pm1 * g,
        (false, false, CaseTag::EvenCoprime) => -pm1 * g,
        (false, false, CaseTag::OddDivides) => 0,
        (false, false, CaseTag::OddCoprime) => eta_nm * pm1 * gg,
    })
}

/// `|N(0, a)| = |{x : Tr(x²) = 0, Tr(x) = a}|`.
pub fn lemma10_n0a(p: u32, m: u32, a: u32) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    let base = k.pw(m as i64 - 2);
    let v = if !a.is_multiple_of(p) {
        match k.tag {
            CaseTag::EvenDivides | CaseTag::OddDivides => base,
            CaseTag::EvenCoprime => base + k.pw(-1) * k.g_rat(),
            CaseTag::OddCoprime => base - k.pw(-2) * k.r(k.eta_neg_m()) * k.gg_rat(),
        }
    } else {
        match k.tag {
            CaseTag::EvenDivides => base + k.pw(-1) * k.pm1() * k.g_rat(),
            CaseTag::EvenCoprime | CaseTag::OddDivides => base,
            CaseTag::OddCoprime => base + k.pw(-2) * k.r(k.eta_neg_m()) * k.pm1() * k.gg_rat(),
        }
    };
    integral(v, "|N(0,a)|")
}

/// `(|N(0,0̄)|, |N(0̄,0̄)|, |N(0̄,0)|)`: points with
/// (`Tr(x²) = 0`, `Tr(x) ≠ 0`), (`Tr(x²) ≠ 0`, `Tr(x) ≠ 0`),
/// (`Tr(x²) ≠ 0`, `Tr(x) = 0`).
pub fn lemma11_counts(p: u32, m: u32) -> Result<[i128; 3], ClosedFormError> {
    let k = Consts::new(p, m)?;
    let base = k.pw(m as i64 - 2);
    let pm1 = k.pm1();
    let eta_nm = k.r(k.eta_neg_m());
    let (zero_nz, nz_nz) = match k.tag {
        CaseTag::EvenDivides | CaseTag::OddDivides => (pm1 * base, pm1 * pm1 * base),
        CaseTag::EvenCoprime => (pm1 * (base + k.pw(-1) * k.g_rat()), pm1 * pm1 * base - pm1 * k.pw(-1) * k.g_rat()),
        CaseTag::OddCoprime => {
            (pm1 * (base - k.pw(-2) * eta_nm * k.gg_rat()), pm1 * pm1 * base + pm1 * k.pw(-2) * eta_nm * k.gg_rat())
        }
    };
    let nz_zero = match k.tag {
        CaseTag::EvenDivides => pm1 * base - k.pw(-1) * pm1 * k.g_rat(),
        CaseTag::EvenCoprime | CaseTag::OddDivides => pm1 * base,
        CaseTag::OddCoprime => pm1 * base - k.pw(-2) * eta_nm * pm1 * k.gg_rat(),
    };
    Ok([integral(zero_nz, "|N(0,0̄)|")?, integral(nz_nz, "|N(0̄,0̄)|")?, integral(nz_zero, "|N(0̄,0)|")?])
}

/// `|V| = |{x : Tr(x) ≠ 0, Tr(x)² = m Tr(x²)}|`, for `p ∤ m`.
pub fn lemma12_v(p: u32, m: u32) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    if k.tag.p_divides_m() {
        return Err(ClosedFormError::PDividesM);
    }
    let pm1 = k.pm1();
    let base = pm1 * k.pw(m as i64 - 2);
    let v = if k.tag.is_even() { base } else { base + k.pw(-2) * k.r(k.eta_neg_m()) * pm1 * pm1 * k.gg_rat() };
    integral(v, "|V|")
}

/// Predicted `|N_b|` for `b ≠ 0`, one formula family per case.
pub fn lemma_nb_predicted(p: u32, m: u32, cls: BClass) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    let base = k.pw(m as i64 - 2);
    let pm1 = k.pm1();
    let t2z = cls.t2 == 0;
    let t1z = cls.t1 == 0;
    let v = match k.tag {
        CaseTag::EvenDivides => {
            let sgn = k.r(neg_one_pow(m as u64 * (p as u64 - 1) / 4));
            let h = k.pw((m as i64 - 2) / 2);
            match (t2z, t1z) {
                (true, false) | (false, true) => base,
                (true, true) => base - sgn * pm1 * h,
                (false, false) => base - sgn * h,
            }
        }
        CaseTag::EvenCoprime => {
            let t2 = cls.t2 as i64;
            let t1 = cls.t1 as i64;
            if t2z && t1z {
                base - k.pw(-1) * k.g_rat()
            } else if t2z || cls.disc {
                base
            } else {
                let arg = m as i64 * t2 - t1 * t1;
                base + k.pw(-2) * k.r(k.eta(arg)) * k.g_gbar_sq()
            }
        }
        CaseTag::OddDivides => {
            if t2z {
                base
            } else {
                let e = k.r(k.eta(cls.t2 as i64));
                let s = k.pw(-2) * k.r(k.eta(-1)) * k.gg_rat();
                if t1z {
                    base + e * pm1 * s
                } else {
                    base - e * s
                }
            }
        }
        CaseTag::OddCoprime => {
            let eta_nm = k.r(k.eta_neg_m());
            match (t2z, t1z) {
                (true, false) => base,
                (true, true) => base + k.pw(-1) * eta_nm * k.gg_rat(),
                (false, _) if cls.disc => base + k.pw(-2) * eta_nm * pm1 * k.gg_rat(),
                (false, _) => base - k.pw(-2) * k.r(k.eta(-(cls.t2 as i64))) * k.gg_rat(),
            }
        }
    };
    integral(v, "|N_b|")
}

/// `|N_b|` through the generic identity
/// `|N_b| = p^{m-2} + p^{-2} (lemma8 + B)`.
pub fn nb_from_character_sums(p: u32, m: u32, cls: BClass) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    let sum = k.r(lemma8_value(p, m)? + lemma9_b(p, m, cls)?);
    integral(k.pw(m as i64 - 2) + k.pw(-2) * sum, "|N_b|")
}

/// `u_c = |{x : Tr(x²) = c}| = p^{m-1} + p^{-1} η̄(-1) η̄(c) GḠ` for odd `m`.
pub fn lemma16_uc(p: u32, m: u32, c: u32) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    if k.tag.is_even() {
        return Err(ClosedFormError::EvenM(m));
    }
    let v = k.pw(m as i64 - 1) + k.pw(-1) * k.r(k.eta(-1) * k.eta(c as i64)) * k.gg_rat();
    integral(v, "u_c")
}

/// `v_c = |{x : Tr(x²) = c, Tr(x) = 0}| = p^{m-2} + p^{-1} η̄(-1) η̄(c) GḠ`
/// for odd `m`, `p | m`, `c ≠ 0`.
pub fn lemma17_vc(p: u32, m: u32, c: u32) -> Result<i128, ClosedFormError> {
    let k = Consts::new(p, m)?;
    if k.tag != CaseTag::OddDivides {
        return Err(ClosedFormError::BadCase("v_c needs odd m with p | m"));
    }
    if c.is_multiple_of(p) {
        return Err(ClosedFormError::BadCase("v_c needs c ≠ 0"));
    }
    let v = k.pw(m as i64 - 2) + k.pw(-1) * k.r(k.eta(-1) * k.eta(c as i64)) * k.gg_rat();
    integral(v, "v_c")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(classify(3, 6), CaseTag::EvenDivides);
        assert_eq!(classify(3, 4), CaseTag::EvenCoprime);
        assert_eq!(classify(5, 3), CaseTag::OddCoprime);
        assert_eq!(classify(3, 3), CaseTag::OddDivides);
        assert_eq!(classify(5, 5).theorem(), 3);
        assert!(!within_hypothesis(2));
    }

    #[test]
    fn gauss_constants() {
        assert_eq!(g_even(3, 6), Ok(27));
        assert_eq!(g_even(3, 4), Ok(-9));
        assert_eq!(g_even(3, 2), Ok(3));
        assert_eq!(g_even(3, 3), Err(ClosedFormError::OddM(3)));
        assert_eq!(g_gbar_odd(3, 5), Ok(-27));
        assert_eq!(g_gbar_odd(5, 3), Ok(25));
        assert_eq!(g_gbar_odd(3, 3), Ok(9));
        assert_eq!(g_gbar_odd(3, 4), Err(ClosedFormError::EvenM(4)));
        assert_eq!(g_even(3, 80), Err(ClosedFormError::Overflow));
        assert_eq!(g_even(9, 2), Err(ClosedFormError::NotOddPrime(9)));
    }

    #[test]
    fn lemma_values() {
        assert_eq!(lemma8_value(3, 6), Ok(54));
        assert_eq!(lemma8_value(3, 3), Ok(0));
        assert_eq!(lemma8_value(3, 5), Ok(-27));
        assert_eq!(lemma9_b(3, 4, BClass::new(3, 4, 0, 1)), Ok(-9));
        assert_eq!(lemma9_b(3, 6, BClass::new(3, 6, 0, 0)), Ok(108));
        assert_eq!(lemma10_n0a(3, 6, 1), Ok(81));
        assert_eq!(lemma10_n0a(3, 4, 0), Ok(9));
        assert_eq!(lemma10_n0a(3, 5, 0), Ok(21));
        assert_eq!(lemma11_counts(3, 6).unwrap()[2], 144);
        assert_eq!(lemma11_counts(3, 4).unwrap()[0], 12);
        assert_eq!(lemma12_v(3, 4), Ok(18));
        assert_eq!(lemma12_v(3, 5), Ok(42));
        assert_eq!(lemma12_v(5, 3), Ok(4));
        assert_eq!(lemma12_v(3, 3), Err(ClosedFormError::PDividesM));
        assert_eq!(lemma16_uc(3, 3, 0), Ok(9));
        assert_eq!(lemma16_uc(3, 3, 1), Ok(6));
        assert_eq!(lemma16_uc(5, 3, 2), Ok(20));
        assert_eq!(lemma16_uc(3, 4, 1), Err(ClosedFormError::EvenM(4)));
        assert_eq!(lemma17_vc(3, 3, 1), Ok(0));
        assert_eq!(lemma17_vc(3, 3, 2), Ok(6));
        assert!(matches!(lemma17_vc(3, 5, 1), Err(ClosedFormError::BadCase(_))));
    }

    #[test]
    fn nb_predictions() {
        assert_eq!(lemma_nb_predicted(3, 6, BClass::new(3, 6, 0, 0)), Ok(99));
        // p = m = 3, Tr(b²) = 1 (a square), Tr(b) ≠ 0.
        assert_eq!(lemma_nb_predicted(3, 3, BClass::new(3, 3, 1, 1)), Ok(4));
        assert_eq!(lemma_nb_predicted(3, 5, BClass::new(3, 5, 0, 0)), Ok(18));
        assert_eq!(lemma_nb_predicted(3, 4, BClass::new(3, 4, 0, 0)), Ok(12));
        assert_eq!(lemma_nb_predicted(3, 3, BClass::new(3, 3, 0, 2)), Ok(3));
    }

    #[test]
    fn nb_lemmas_agree_with_character_sum_identity() {
        for (p, m) in [(3, 3), (3, 4), (3, 5), (3, 6), (3, 8), (5, 3), (5, 4), (5, 5), (7, 3), (7, 4), (11, 3)] {
            for t2 in 0..p {
                for t1 in 0..p {
                    let cls = BClass::new(p, m, t2, t1);
                    if t2 == 0 && t1 == 0 {
                        continue;
                    }
                    assert_eq!(lemma_nb_predicted(p, m, cls), nb_from_character_sums(p, m, cls), "p={p} m={m} {cls:?}");
                }
            }
            let zero = BClass::new(p, m, 0, 0);
            assert_eq!(lemma_nb_predicted(p, m, zero), nb_from_character_sums(p, m, zero));
        }
    }
}
