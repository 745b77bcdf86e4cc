//! The defining set `D = {x ≠ 0 : Tr(x² + x) = 0}`, the trace code it
//! defines, and exact weight distributions by enumeration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldCtx, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("field of size {q} exceeds the enumeration cap of {max_q}")]
    FieldTooLarge { q: u64, max_q: u64 },
    #[error("distribution has no nonzero weight")]
    EmptyDistribution,
}

/// `D` in ascending canonical index order, together with the membership mask
/// of the full solution set `{x : Tr(x² + x) = 0}` (which also contains 0).
#[derive(Debug, Clone)]
pub struct DefiningSet<'a> {
    ctx: &'a FieldCtx,
    elements: Vec<FieldElem>,
    solutions: Vec<bool>,
}

impl<'a> DefiningSet<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Self {
        let solutions: Vec<bool> = ctx.elements().map(|x| ctx.trace(ctx.add(ctx.square(x), x)) == 0).collect();
        let elements = ctx.nonzero_elements().filter(|x| solutions[x.0 as usize]).collect();
        DefiningSet { ctx, elements, solutions }
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn elements(&self) -> &[FieldElem] {
        &self.elements
    }

    /// Code length `n = |D|`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `n₀ = |D| + 1`.
    pub fn n0(&self) -> u64 {
        self.elements.len() as u64 + 1
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        !x.is_zero() && self.solutions[x.0 as usize]
    }

    /// `c_b = (Tr(b d_1), …, Tr(b d_n))`.
    pub fn codeword(&self, b: FieldElem) -> Vec<u32> {
        self.elements.iter().map(|&d| self.ctx.trace(self.ctx.mul(b, d))).collect()
    }

    /// Hamming weight of `c_b`, counted coordinate by coordinate.
    pub fn hamming_weight(&self, b: FieldElem) -> u64 {
        self.elements.iter().filter(|&&d| self.ctx.trace(self.ctx.mul(b, d)) != 0).count() as u64
    }

    /// `|N_b| = |{x ∈ F_q : Tr(x² + x) = 0, Tr(bx) = 0}|` in one pass over
    /// `F_q`, using the cached solution mask.
    pub fn count_nb(&self, b: FieldElem) -> u64 {
        self.ctx.elements().filter(|x| self.solutions[x.0 as usize] && self.ctx.trace(self.ctx.mul(b, *x)) == 0).count()
            as u64
    }

    /// `wt(c_b) = n₀ - |N_b|`.
    pub fn weight_of(&self, b: FieldElem) -> u64 {
        self.n0() - self.count_nb(b)
    }

    /// True iff two coordinates are proportional, `d_i = λ d_j` with
    /// `λ ∈ F_p* \ {1}`. Since `0 ∉ D` the dual has no weight-one word, so this
    /// decides whether the dual distance is exactly 2.
    pub fn dual_distance_two(&self) -> bool {
        let p = self.ctx.p() as i64;
        self.elements.iter().any(|&d| (2..p).any(|lambda| self.contains(self.ctx.mul(self.ctx.from_prime(lambda), d))))
    }

    /// Export of `D`: one element per line as its coefficient vector
    /// `c0,c1,…,c_{m-1}`, low degree first.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for &d in &self.elements {
            let coeffs: Vec<String> = self.ctx.coeffs(d).iter().map(u32::to_string).collect();
            out.push_str(&coeffs.join(","));
            out.push('\n');
        }
        out
    }
}

/// `|N_b|` straight from the definition, without any cached state.
pub fn count_nb(ctx: &FieldCtx, b: FieldElem) -> u64 {
    ctx.elements().filter(|&x| ctx.trace(ctx.add(ctx.square(x), x)) == 0 && ctx.trace(ctx.mul(b, x)) == 0).count()
        as u64
}

/// Weight → multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WeightDistribution(BTreeMap<u64, u64>);

impl WeightDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, weight: u64, count: u64) {
        if count > 0 {
            *self.0.entry(weight).or_insert(0) += count;
        }
    }

    pub fn merge(mut self, other: WeightDistribution) -> Self {
        for (w, a) in other.0 {
            self.add(w, a);
        }
        self
    }

    pub fn get(&self, weight: u64) -> u64 {
        self.0.get(&weight).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&w, &a)| (w, a))
    }

    /// Rows with positive weight, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.iter().filter(|&(w, _)| w > 0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.nonzero().map(|(w, _)| w).next()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.nonzero().map(|(w, _)| w).last()
    }

    pub fn rows(&self) -> Vec<[u64; 2]> {
        self.iter().map(|(w, a)| [w, a]).collect()
    }

    /// `1+44x^18+30x^21+6x^24`.
    pub fn enumerator_string(&self) -> String {
        let mut out = String::new();
        for (w, a) in self.iter() {
            if !out.is_empty() {
                out.push('+');
            }
            if w == 0 {
                write!(out, "{a}").unwrap();
            } else {
                write!(out, "{a}x^{w}").unwrap();
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `weight,multiplicity` CSV, ascending, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,multiplicity\n");
        for (w, a) in self.iter() {
            writeln!(out, "{w},{a}").unwrap();
        }
        out
    }
}

impl FromIterator<(u64, u64)> for WeightDistribution {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut d = WeightDistribution::new();
        for (w, a) in iter {
            d.add(w, a);
        }
        d
    }
}

/// Weight distribution of `C_D` over all `q` messages `b`, via
/// `wt(c_b) = n₀ - |N_b|`. Per-`b` work runs in parallel; partial maps are
/// merged by addition, so the result does not depend on scheduling.
pub fn brute_weight_distribution(ds: &DefiningSet<'_>, max_q: u64) -> Result<WeightDistribution, CodeError> {
    let q = ds.ctx().q() as u64;
    if q > max_q {
        return Err(CodeError::FieldTooLarge { q, max_q });
    }
    let ctx = ds.ctx();
    Ok((0..ctx.q())
        .into_par_iter()
        .fold(WeightDistribution::new, |mut acc, b| {
            acc.add(ds.weight_of(FieldElem(b)), 1);
            acc
        })
        .reduce(WeightDistribution::new, WeightDistribution::merge))
}

/// First two power moments for a code with no identically-zero coordinate:
/// `Σ_{w>0} A_w = p^m - 1` and `Σ w A_w = p^{m-1}(p-1) n`.
pub fn power_moment_check(dist: &WeightDistribution, p: u32, m: u32, n: u64) -> (bool, bool) {
    let q = (p as u128).pow(m);
    let count: u128 = dist.nonzero().map(|(_, a)| a as u128).sum();
    let first: u128 = dist.nonzero().map(|(w, a)| w as u128 * a as u128).sum();
    let expected = (p as u128).pow(m - 1) * (p as u128 - 1) * n as u128;
    (count == q - 1, first == expected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SsRatio {
    pub wmin: u64,
    pub wmax: u64,
    /// `wmin / wmax > (p - 1) / p`, decided by cross-multiplication.
    pub passes: bool,
}

pub fn secret_sharing_ratio(dist: &WeightDistribution, p: u32) -> Result<SsRatio, CodeError> {
    let wmin = dist.min_nonzero_weight().ok_or(CodeError::EmptyDistribution)?;
    let wmax = dist.max_weight().ok_or(CodeError::EmptyDistribution)?;
    let passes = wmin as u128 * p as u128 > wmax as u128 * (p as u128 - 1);
    Ok(SsRatio { wmin, wmax, passes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_MAX_Q;

    fn ctx(p: u32, m: u32) -> FieldCtx {
        FieldCtx::new(p, m, DEFAULT_MAX_Q).unwrap()
    }

    #[test]
    fn defining_set_sizes() {
        assert_eq!(DefiningSet::new(&ctx(3, 3)).len(), 8);
        assert_eq!(DefiningSet::new(&ctx(3, 4)).len(), 29);
        assert_eq!(DefiningSet::new(&ctx(3, 2)).len(), 1);
    }

    #[test]
    fn codeword_paths_agree() {
        let c = ctx(3, 4);
        let ds = DefiningSet::new(&c);
        assert!(ds.codeword(FieldElem::ZERO).iter().all(|&v| v == 0));
        assert_eq!(ds.weight_of(FieldElem::ZERO), 0);
        assert_eq!(ds.count_nb(FieldElem::ZERO), ds.n0());
        for b in c.elements() {
            let word = ds.codeword(b);
            let zeros = word.iter().filter(|&&v| v == 0).count() as u64;
            assert_eq!(ds.hamming_weight(b) + zeros, ds.len() as u64);
            assert_eq!(ds.hamming_weight(b), ds.weight_of(b));
            assert_eq!(ds.count_nb(b), count_nb(&c, b));
        }
    }

    #[test]
    fn small_distribution_and_enumerator() {
        let c = ctx(3, 3);
        let ds = DefiningSet::new(&c);
        let dist = brute_weight_distribution(&ds, DEFAULT_MAX_Q).unwrap();
        assert_eq!(dist.enumerator_string(), "1+6x^4+6x^5+8x^6+6x^7");
        assert_eq!(dist.total(), 27);
        assert_eq!(dist.to_csv(), "weight,multiplicity\n0,1\n4,6\n5,6\n6,8\n7,6\n");
        assert_eq!(brute_weight_distribution(&ds, 10), Err(CodeError::FieldTooLarge { q: 27, max_q: 10 }));
        let ss = secret_sharing_ratio(&dist, 3).unwrap();
        assert_eq!((ss.wmin, ss.wmax, ss.passes), (4, 7, false));
    }

    #[test]
    fn enumerator_edge_cases() {
        let zero: WeightDistribution = [(0, 1)].into_iter().collect();
        assert_eq!(zero.enumerator_string(), "1");
        assert_eq!(secret_sharing_ratio(&zero, 3), Err(CodeError::EmptyDistribution));
        let single: WeightDistribution = [(0, 1), (5, 1)].into_iter().collect();
        assert_eq!(single.enumerator_string(), "1+1x^5");
        assert!(secret_sharing_ratio(&single, 7).unwrap().passes);
    }

    #[test]
    fn moments() {
        let d: WeightDistribution = [(0, 1), (18, 44), (21, 30), (24, 6)].into_iter().collect();
        assert_eq!(power_moment_check(&d, 3, 4, 29), (true, true));
        let trivial: WeightDistribution = [(0, 1)].into_iter().collect();
        assert!(!power_moment_check(&trivial, 3, 1, 0).0);
        let t5: WeightDistribution = [(0, 1), (14, 36), (15, 24), (16, 60), (19, 4)].into_iter().collect();
        assert_eq!(power_moment_check(&t5, 5, 3, 19), (true, true));
    }

    #[test]
    fn dual_distance() {
        assert!(DefiningSet::new(&ctx(3, 4)).dual_distance_two());
        assert!(DefiningSet::new(&ctx(3, 5)).dual_distance_two());
        // F_9: D is a single point.
        assert!(!DefiningSet::new(&ctx(3, 2)).dual_distance_two());
    }

    #[test]
    fn export_format() {
        let c = ctx(3, 2);
        let ds = DefiningSet::new(&c);
        let text = ds.export();
        assert_eq!(text.lines().count(), 1);
        let coeffs: Vec<u32> = text.trim().split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(coeffs.len(), 2);
        assert!(ds.contains(c.from_coeffs(&coeffs)));
    }
}
