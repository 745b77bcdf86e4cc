use std::collections::BTreeMap;

use serde::Serialize;

use super::{integral, CaseTag, ClosedFormError, Consts, Rat};
use crate::code::WeightDistribution;

/// Predicted parameters and nonzero-weight rows for `C_D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedDistribution {
    pub case: CaseTag,
    pub length: u64,
    pub dimension: u32,
    /// `(weight, multiplicity)`, ascending by weight, every multiplicity ≥ 1.
    /// The zero codeword is not included.
    pub rows: Vec<(u64, u64)>,
}

impl PredictedDistribution {
    /// The full distribution with the zero codeword re-added.
    pub fn with_zero(&self) -> WeightDistribution {
        std::iter::once((0, 1)).chain(self.rows.iter().copied()).collect()
    }

    pub fn total(&self) -> u64 {
        self.rows.iter().map(|&(_, a)| a).sum()
    }
}

/// Closed-form code length.
pub fn predicted_length(p: u32, m: u32) -> Result<u64, ClosedFormError> {
    let k = Consts::new(p, m)?;
    let top = k.pw(m as i64 - 1);
    let one = k.r(1);
    let n = match k.tag {
        CaseTag::EvenDivides => top - one + k.pw(-1) * k.pm1() * k.g_rat(),
        CaseTag::EvenCoprime => top - k.pw(-1) * k.g_rat() - one,
        CaseTag::OddDivides => top - one,
        CaseTag::OddCoprime => top + k.pw(-1) * k.r(k.eta_neg_m()) * k.gg_rat() - one,
    };
    let n = integral(n, "length")?;
    u64::try_from(n).map_err(|_| ClosedFormError::NegativeMultiplicity { weight: -1, value: n })
}

/// Raw `(weight, multiplicity)` rows of the weight table for the case of
/// `(p, m)`, evaluated exactly, before merging or pruning. Rows with
/// multiplicity zero are kept.
pub fn table_rows(p: u32, m: u32) -> Result<Vec<(i128, i128)>, ClosedFormError> {
    let k = Consts::new(p, m)?;
    let pm1 = k.pm1();
    let base = pm1 * k.pw(m as i64 - 2);
    let half = Rat::new(1, 2);
    let rows: Vec<(Rat, Rat)> = match k.tag {
        CaseTag::EvenDivides => {
            let g = k.g_rat();
            let pg = k.pw(-1) * g;
            vec![
                (base, k.pw(m as i64 - 2) - k.r(1) + pm1 * pg),
                (base + pm1 * pg, k.r(2) * base - pm1 * pg),
                (base + (pm1 - k.r(1)) * pg, pm1 * base),
            ]
        }
        CaseTag::EvenCoprime => {
            let g = k.g_rat();
            let pg = k.pw(-1) * g;
            let p = k.r(p as i128);
            vec![
                (base - pg, pm1 * (k.r(2) * k.pw(m as i64 - 2) + pg)),
                (base, half * pm1 * (k.pw(m as i64 - 1) - g) + k.pw(m as i64 - 2) - k.r(1)),
                (base - k.r(2) * pg, half * (p * p - k.r(3) * p + k.r(2)) * (k.pw(m as i64 - 2) + pg)),
            ]
        }
        CaseTag::OddDivides => {
            let h = k.pw((m as i64 - 3) / 2);
            let sq = half * pm1 * pm1 * k.pw(m as i64 - 2);
            let hi = k.pw((m as i64 - 1) / 2);
            vec![
                (base, k.pw(m as i64 - 1) - k.r(1)),
                (base + h, sq),
                (base - h, sq),
                (base - pm1 * h, half * pm1 * (k.pw(m as i64 - 2) + hi)),
                (base + pm1 * h, half * pm1 * (k.pw(m as i64 - 2) - hi)),
            ]
        }
        CaseTag::OddCoprime => {
            let s = k.r(k.eta_neg_m());
            let gg = k.gg_rat();
            let p = k.r(p as i128);
            let pm2 = k.pw(m as i64 - 2);
            vec![
                (base + k.pw(-1) * s * gg, pm1 * (pm2 - k.pw(-2) * s * gg)),
                (base, pm2 + k.pw(-2) * s * pm1 * gg - k.r(1)),
                (base + s * k.pw(-2) * pm1 * gg, half * pm1 * (k.pw(m as i64 - 1) - s * k.pw(-1) * gg)),
                (base + s * k.pw(-2) * (p + k.r(1)) * gg, half * pm1 * (p - k.r(2)) * (pm2 - s * k.pw(-2) * gg)),
                (base + k.pw(-2) * s * gg, pm1 * pm2 + k.pw(-2) * s * pm1 * pm1 * gg),
            ]
        }
    };
    rows.into_iter().map(|(w, a)| Ok((integral(w, "table weight")?, integral(a, "table multiplicity")?))).collect()
}

/// The four-row table for `m = 3`, `p ≡ 2 (mod 3)`, written out directly.
pub fn table5_rows(p: u32) -> Vec<(u64, u64)> {
    let p = p as u64;
    let mut rows = vec![
        (p * p - 2 * p, p * p - 1),
        (p * p - 2 * p + 1, p * (p * p - 1) / 2),
        (p * p - 2 * p - 1, (p - 2) * (p * p - 1) / 2),
        (p * p - p - 1, p - 1),
    ];
    rows.sort_unstable();
    rows
}

/// Evaluates the weight table for `(p, m)`: rows whose weights coincide are
/// merged, rows with multiplicity zero are dropped. For `m = 3`,
/// `p ≡ 2 (mod 3)` the base-weight row vanishes this way, which yields the
/// four-weight table.
pub fn predicted_distribution(p: u32, m: u32) -> Result<PredictedDistribution, ClosedFormError> {
    let case = super::classify(p, m);
    let length = predicted_length(p, m)?;
    let mut merged: BTreeMap<i128, i128> = BTreeMap::new();
    for (w, a) in table_rows(p, m)? {
        if a < 0 || w < 0 {
            return Err(ClosedFormError::NegativeMultiplicity { weight: w, value: a });
        }
        *merged.entry(w).or_insert(0) += a;
    }
    let rows = merged.into_iter().filter(|&(_, a)| a > 0).map(|(w, a)| (w as u64, a as u64)).collect();
    Ok(PredictedDistribution { case, length, dimension: m, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(p: u32, m: u32) -> Vec<(u64, u64)> {
        predicted_distribution(p, m).unwrap().rows
    }

    #[test]
    fn lengths() {
        assert_eq!(predicted_length(3, 6), Ok(260));
        assert_eq!(predicted_length(3, 4), Ok(29));
        assert_eq!(predicted_length(3, 3), Ok(8));
        assert_eq!(predicted_length(5, 5), Ok(624));
        assert_eq!(predicted_length(3, 5), Ok(71));
        assert_eq!(predicted_length(5, 3), Ok(19));
        assert_eq!(predicted_length(3, 2), Ok(1));
    }

    #[test]
    fn worked_examples() {
        assert_eq!(rows(3, 6), vec![(162, 98), (171, 324), (180, 306)]);
        assert_eq!(rows(3, 4), vec![(18, 44), (21, 30), (24, 6)]);
        assert_eq!(rows(3, 3), vec![(4, 6), (5, 6), (6, 8), (7, 6)]);
        assert_eq!(rows(5, 5), vec![(480, 300), (495, 1000), (500, 624), (505, 1000), (520, 200)]);
        assert_eq!(rows(3, 5), vec![(42, 30), (45, 60), (48, 90), (51, 42), (54, 20)]);
        assert_eq!(rows(5, 3), vec![(14, 36), (15, 24), (16, 60), (19, 4)]);
    }

    #[test]
    fn four_weight_degeneration() {
        for p in [5u32, 11, 17, 23, 29] {
            assert_eq!(rows(p, 3), table5_rows(p), "p={p}");
        }
        for p in [7u32, 13, 19] {
            assert_eq!(rows(p, 3).len(), 5, "p={p}");
        }
    }

    #[test]
    fn totals_and_integrality() {
        for p in [3u32, 5, 7, 11, 13] {
            for m in 3..=9 {
                let Ok(d) = predicted_distribution(p, m) else {
                    panic!("p={p} m={m}");
                };
                let q = (p as u64).pow(m);
                assert_eq!(d.total(), q - 1, "p={p} m={m}");
                let first: u128 = d.rows.iter().map(|&(w, a)| w as u128 * a as u128).sum();
                let expect = (p as u128).pow(m - 1) * (p as u128 - 1) * d.length as u128;
                assert_eq!(first, expect, "p={p} m={m}");
            }
        }
    }

    #[test]
    fn boundary_m2() {
        // F_9: n = 1, so two nonzero messages give the zero word.
        let d = predicted_distribution(3, 2).unwrap();
        assert_eq!(d.with_zero().rows(), vec![[0, 3], [1, 6]]);
    }
}
