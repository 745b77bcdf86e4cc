//! Exact arithmetic in `Z[ζ_p]`.
//!
//! A [`CycInt`] stores `p` integer coefficients of `1, ζ, …, ζ^{p-1}`. The
//! spanning set is redundant by one relation (`1 + ζ + … + ζ^{p-1} = 0`), so
//! values are kept in the unique representative whose constant coefficient
//! is zero. Equality of values is then equality of vectors.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::field::{FieldCtx, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("operands live in Z[ζ_{0}] and Z[ζ_{1}]")]
    PrimeMismatch(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("cyclotomic coefficient overflowed i64")
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt { p, coeffs: vec![0; p as usize] }
    }

    /// Builds from raw coefficients of `ζ^0 … ζ^{p-1}` and canonicalizes.
    pub fn from_coeffs(p: u32, mut coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), p as usize, "expected {p} coefficients");
        let c0 = coeffs[0];
        if c0 != 0 {
            for c in &mut coeffs {
                *c = checked(c.checked_sub(c0));
            }
        }
        CycInt { p, coeffs }
    }

    /// The rational integer `n`.
    pub fn from_int(p: u32, n: i64) -> Self {
        let mut coeffs = vec![0; p as usize];
        coeffs[0] = n;
        Self::from_coeffs(p, coeffs)
    }

    /// `ζ_p^t`.
    pub fn root(p: u32, t: u32) -> Self {
        assert!(t < p, "exponent {t} out of range for p={p}");
        let mut coeffs = vec![0; p as usize];
        coeffs[t as usize] = 1;
        Self::from_coeffs(p, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical coefficients; index 0 is always zero.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, when it is one.
    ///
    /// In canonical form an integer `n` has every non-constant coefficient
    /// equal to `-n`.
    pub fn to_integer(&self) -> Option<i64> {
        let c = self.coeffs[1];
        self.coeffs[1..].iter().all(|&x| x == c).then(|| checked(c.checked_neg()))
    }

    fn same_ring(&self, other: &Self) -> Result<(), CyclotomicError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CyclotomicError::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| checked(a.checked_add(*b))).collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, n: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|c| checked(c.checked_mul(n))).collect();
        CycInt { p: self.p, coeffs }
    }

    /// Product: convolution of exponents modulo `p`, then canonicalization.
    pub fn mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.same_ring(other)?;
        let p = self.p as usize;
        let mut out = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = (i + j) % p;
                out[k] = checked(out[k].checked_add(checked(a.checked_mul(b))));
            }
        }
        Ok(Self::from_coeffs(self.p, out))
    }

    /// Complex value with `ζ_p = exp(2πi/p)`.
    pub fn embed_complex(&self) -> Complex64 {
        let p = self.p as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / p))
            .sum()
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let coef = if mag == 1 { String::new() } else { format!("{mag}·") };
            write!(f, "{sign}{coef}ζ^{k}")?;
            first = false;
        }
        Ok(())
    }
}

/// Accumulates `Σ weight · ζ^{exponent}` without canonicalizing each term.
#[derive(Debug, Clone)]
pub struct CycAccumulator {
    p: u32,
    coeffs: Vec<i64>,
}

impl CycAccumulator {
    pub fn new(p: u32) -> Self {
        CycAccumulator { p, coeffs: vec![0; p as usize] }
    }

    #[inline]
    pub fn add_term(&mut self, exponent: u64, weight: i64) {
        let k = (exponent % self.p as u64) as usize;
        self.coeffs[k] = checked(self.coeffs[k].checked_add(weight));
    }

    pub fn finish(self) -> CycInt {
        CycInt::from_coeffs(self.p, self.coeffs)
    }
}

/// `G(η, χ_1) = Σ_{x ≠ 0} η(x) ζ_p^{Tr(x)}`, summed exactly.
pub fn gauss_sum_exact(ctx: &FieldCtx) -> CycInt {
    let mut acc = CycAccumulator::new(ctx.p());
    for (idx, eta) in ctx.quad_char_table().into_iter().enumerate().skip(1) {
        acc.add_term(ctx.trace(FieldElem(idx as u32)) as u64, eta as i64);
    }
    acc.finish()
}

/// One of the four units of `Z[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Unit {
    /// `i^k`.
    pub fn i_pow(k: u64) -> Unit {
        match k % 4 {
            0 => Unit::One,
            1 => Unit::I,
            2 => Unit::MinusOne,
            _ => Unit::MinusI,
        }
    }

    fn quarter_turns(self) -> u64 {
        match self {
            Unit::One => 0,
            Unit::I => 1,
            Unit::MinusOne => 2,
            Unit::MinusI => 3,
        }
    }

    pub fn times(self, other: Unit) -> Unit {
        Unit::i_pow(self.quarter_turns() + other.quarter_turns())
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Unit::One => Complex64::new(1.0, 0.0),
            Unit::I => Complex64::new(0.0, 1.0),
            Unit::MinusOne => Complex64::new(-1.0, 0.0),
            Unit::MinusI => Complex64::new(0.0, -1.0),
        }
    }
}

/// A Gauss sum value in closed form: `unit · p^{half_exponent / 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedGauss {
    pub p: u32,
    pub unit: Unit,
    pub half_exponent: u32,
}

impl ClosedGauss {
    pub fn to_complex(&self) -> Complex64 {
        let modulus = (self.p as f64).powf(self.half_exponent as f64 / 2.0);
        self.unit.to_complex() * modulus
    }

    /// The value as an integer, when `half_exponent` is even and the unit real.
    pub fn to_integer(&self) -> Option<i64> {
        if !self.half_exponent.is_multiple_of(2) {
            return None;
        }
        let mag = (self.p as i64).pow(self.half_exponent / 2);
        match self.unit {
            Unit::One => Some(mag),
            Unit::MinusOne => Some(-mag),
            _ => None,
        }
    }
}

impl fmt::Display for ClosedGauss {
    /// Renders e.g. `+3`, `-9`, `+i·√3`, `-i·5·√5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.unit {
            Unit::One | Unit::I => '+',
            Unit::MinusOne | Unit::MinusI => '-',
        };
        let imag = matches!(self.unit, Unit::I | Unit::MinusI);
        let whole = (self.p as u64).pow(self.half_exponent / 2);
        let root = self.half_exponent % 2 == 1;
        write!(f, "{sign}")?;
        if imag {
            write!(f, "i·")?;
        }
        match (whole, root) {
            (1, true) => write!(f, "√{}", self.p),
            (w, true) => write!(f, "{w}·√{}", self.p),
            (w, false) => write!(f, "{w}"),
        }
    }
}

/// Explicit value of the quadratic Gauss sum of `F_{p^m}`:
/// `(-1)^{m-1} · i^{(p-1)² m / 4} · √(p^m)`. For `m = 1` this is the prime
/// field sum.
pub fn gauss_closed(p: u32, m: u32) -> ClosedGauss {
    let quarter = ((p as u64 - 1).pow(2) / 4) * m as u64;
    let sign = if (m - 1).is_multiple_of(2) { Unit::One } else { Unit::MinusOne };
    ClosedGauss { p, unit: sign.times(Unit::i_pow(quarter)), half_exponent: m }
}
