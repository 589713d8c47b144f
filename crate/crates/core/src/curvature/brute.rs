//! Exhaustive oracle: every admissible `Gamma`, each minimized exactly.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::{
    check_dims, minimize_f_given_gamma, CurvatureValue, GammaShape, Normalization, SimplexPoint,
};
use crate::{Error, Result};

/// Default cap on the number of `(p-1)`-subsets the oracle may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceReport {
    /// Global minimum of `F`, working normalization.
    pub value: CurvatureValue,
    /// Subsets visited, admissible or not.
    pub subsets_visited: u64,
    /// Admissible shapes (at most `m - 1` first-column cells).
    pub admissible: u64,
    /// Distinct `(first column, row counts)` profiles that were minimized.
    pub profiles: usize,
    /// First shape in enumeration order attaining the minimum.
    pub best: GammaShape,
    pub argmin: SimplexPoint,
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1u32), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Minimum of `F` over all admissible `(p-1)`-subsets, unnormalized.
pub fn brute_force_min_f(n: u32, m: u32, p: u32, budget: u64) -> Result<BruteForceReport> {
    check_dims(n, m, p)?;
    let cells: Vec<(u32, u32)> = (1..=m).cartesian_product(1..=n).collect();
    let needed = binomial(cells.len() as u64, u64::from(p - 1));
    if needed > BigInt::from(budget) {
        return Err(Error::Resource {
            needed: needed.to_string(),
            budget,
        });
    }

    // F only sees which rows carry a first-column cell and the row counts
    // b_i, so minimize once per profile.
    let mut memo: HashMap<(Vec<bool>, Vec<u32>), (BigRational, SimplexPoint)> = HashMap::new();
    let mut best: Option<(BigRational, GammaShape, SimplexPoint)> = None;
    let mut visited = 0u64;
    let mut admissible = 0u64;
    for subset in cells.iter().copied().combinations(p as usize - 1) {
        visited += 1;
        if subset.iter().filter(|&&(_, j)| j == 1).count() as u32 >= m {
            continue;
        }
        admissible += 1;
        let gamma = GammaShape::new(n, m, subset)?;
        let key = (
            (1..=m).map(|i| gamma.in_first_column(i)).collect(),
            gamma.off_column_counts(),
        );
        let (value, argmin) = memo
            .entry(key)
            .or_insert_with(|| {
                let found = minimize_f_given_gamma(&gamma);
                (found.value, found.argmin)
            })
            .clone();
        if best.as_ref().is_none_or(|(v, _, _)| value < *v) {
            best = Some((value, gamma, argmin));
        }
    }
    let (value, best, argmin) = best.ok_or_else(|| Error::domain("no admissible shape"))?;
    Ok(BruteForceReport {
        value: CurvatureValue {
            n,
            m,
            p,
            value,
            normalization: Normalization::CnmEqualsNPlusOne,
        },
        subsets_visited: visited,
        admissible,
        profiles: memo.len(),
        best,
        argmin,
    })
}

/// `C_p((B^n)^m)` with `C_{nm} = 1`, from the exhaustive minimum.
pub fn brute_force_cp(n: u32, m: u32, p: u32, budget: u64) -> Result<CurvatureValue> {
    Ok(brute_force_min_f(n, m, p, budget)?.value.normalized())
}
