//! Permutation actions of `S_m` on `(C^n)^m` and the extension conditions
//! for the quotient singularities.
//!
//! A permutation of cycle type `(r_1, ..., r_t)` acting on `(C^n)^m` by
//! permuting the factors has eigenvalues `zeta^(j r / r_k)` for every cycle
//! `k` and every `0 <= j < r_k`, each repeated `n` times, where `r` is the
//! order of the permutation and `zeta = exp(2 i pi / r)`. Conjugate elements
//! share their exponents, so every check below runs over cycle types.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Conjugacy class of `S_m`, recorded as the non-increasing list of cycle
/// lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    /// Builds a cycle type from cycle lengths in any order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyInput(
                "a cycle type needs at least one part".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::domain("cycle lengths must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn identity(m: u32) -> Result<Self> {
        Self::new(vec![1; m as usize])
    }

    /// The class `(2, 1, ..., 1)` of `S_m`.
    pub fn transposition(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain("S_1 has no transposition"));
        }
        let mut parts = vec![1; m as usize - 1];
        parts[0] = 2;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `m` of `S_m`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Order of any permutation in the class: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.parts
            .iter()
            .fold(1u64, |acc, &p| acc.lcm(&u64::from(p)))
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `m`, in decreasing lexicographic order: `(m)` first,
/// the identity `(1, ..., 1)` last.
pub fn enumerate_cycle_types(m: u32) -> Result<Vec<CycleType>> {
    if m == 0 {
        return Err(Error::EmptyInput(
            "S_0 has no conjugacy classes to enumerate".into(),
        ));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    partitions_into(m, m, &mut current, &mut out);
    Ok(out)
}

fn partitions_into(rest: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<CycleType>) {
    if rest == 0 {
        out.push(CycleType {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=rest.min(max_part)).rev() {
        current.push(part);
        partitions_into(rest - part, part, current, out);
        current.pop();
    }
}

/// Residues `a in [0, r-1]` with multiplicities, for a linear action of
/// order `r` diagonalised as `z_i -> zeta^(a_i) z_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentMultiset {
    order: u64,
    entries: BTreeMap<u64, u64>,
}

impl ExponentMultiset {
    pub fn new(order: u64, entries: BTreeMap<u64, u64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("the order of an action is positive"));
        }
        if let Some(&a) = entries.keys().find(|&&a| a >= order) {
            return Err(Error::domain(format!(
                "residue {a} is not below the order {order}"
            )));
        }
        let entries = entries.into_iter().filter(|&(_, mult)| mult > 0).collect();
        Ok(ExponentMultiset { order, entries })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn multiplicity(&self, residue: u64) -> u64 {
        self.entries.get(&residue).copied().unwrap_or(0)
    }

    /// Number of coordinates, counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `(residue, multiplicity)` pairs in increasing residue order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&a, &mult)| (a, mult))
    }

    /// Sum of all residues with multiplicity.
    pub fn sum(&self) -> u64 {
        self.iter().map(|(a, mult)| a * mult).sum()
    }
}

/// Exponents of a permutation of the given cycle type acting on `(C^n)^m`.
pub fn exponents_on_product(ct: &CycleType, n: u32) -> Result<ExponentMultiset> {
    if n == 0 {
        return Err(Error::domain("the factor dimension n must be positive"));
    }
    let r = ct.order();
    let mut entries = BTreeMap::new();
    for &len in ct.parts() {
        let step = r / u64::from(len);
        for j in 0..u64::from(len) {
            *entries.entry(j * step).or_insert(0) += u64::from(n);
        }
    }
    ExponentMultiset::new(r, entries)
}

/// Sum of all exponents of the action, by direct summation over
/// [`exponents_on_product`].
pub fn sigma_sum(ct: &CycleType, n: u32) -> Result<u64> {
    Ok(exponents_on_product(ct, n)?.sum())
}

/// `(n/2) r sum_k (r_k - 1)` evaluated exactly; `n r sum_k (r_k - 1)` is
/// always even, so the division is exact.
pub fn sigma_closed_form(ct: &CycleType, n: u32) -> u64 {
    let excess: u64 = ct.parts().iter().map(|&p| u64::from(p) - 1).sum();
    u64::from(n) * ct.order() * excess / 2
}

/// Smallest possible sum of `d` exponents taken at distinct coordinates.
pub fn min_d_sum(ex: &ExponentMultiset, d: u64) -> Result<u64> {
    let total = ex.total();
    if d > total {
        return Err(Error::domain(format!(
            "cannot pick {d} coordinates out of {total}"
        )));
    }
    let mut remaining = d;
    let mut sum = 0;
    for (a, mult) in ex.iter() {
        if remaining == 0 {
            break;
        }
        let take = mult.min(remaining);
        sum += a * take;
        remaining -= take;
    }
    Ok(sum)
}

/// Parameters of the conditions `(I_{x,d})` (`alpha = 0`) and
/// `(I'_{x,d,alpha})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionParams {
    d: u32,
    alpha: BigRational,
}

impl ConditionParams {
    pub fn new(d: u32, alpha: BigRational) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("d must be at least 1"));
        }
        if alpha.is_negative() {
            return Err(Error::domain("alpha must be non-negative"));
        }
        Ok(ConditionParams { d, alpha })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }
}

/// A failing conjugacy class together with the numbers that fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub cycle_type: CycleType,
    pub order: u64,
    /// Smallest sum of `d` exponents.
    pub min_sum: u64,
    /// `r (1 - alpha)`, the bound that `min_sum` falls short of.
    pub required: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    /// Lexicographically smallest violating class, when the condition fails.
    pub witness: Option<Violation>,
    /// Number of non-identity classes examined.
    pub classes_checked: usize,
}

/// Decides whether every non-identity element of `S_m` acting on
/// `(C^n)^m` satisfies `a_{i_1} + ... + a_{i_d} >= r (1 - alpha)`.
pub fn check_condition(m: u32, n: u32, params: &ConditionParams) -> Result<ConditionReport> {
    if n == 0 {
        return Err(Error::domain("the factor dimension n must be positive"));
    }
    let coords = u64::from(n) * u64::from(m);
    if u64::from(params.d) > coords {
        return Err(Error::domain(format!(
            "d = {} exceeds the dimension n*m = {coords}",
            params.d
        )));
    }
    let one_minus_alpha = BigRational::one() - &params.alpha;
    let mut violators = Vec::new();
    let mut classes_checked = 0;
    for ct in enumerate_cycle_types(m)? {
        if ct.is_identity() {
            continue;
        }
        classes_checked += 1;
        let ex = exponents_on_product(&ct, n)?;
        let min_sum = min_d_sum(&ex, u64::from(params.d))?;
        let required = BigRational::from_integer(BigInt::from(ex.order())) * &one_minus_alpha;
        if BigRational::from_integer(BigInt::from(min_sum)) < required {
            violators.push(Violation {
                order: ex.order(),
                cycle_type: ct,
                min_sum,
                required,
            });
        }
    }
    let witness = violators
        .into_iter()
        .min_by(|a, b| a.cycle_type.parts().cmp(b.cycle_type.parts()));
    Ok(ConditionReport {
        holds: witness.is_none(),
        witness,
        classes_checked,
    })
}

/// `n(m-1) + 2 - alpha (n-2)(m-2)/2`: from this many coordinates on, the
/// condition `(I'_{x,d,alpha})` holds at every point of `X^m`.
pub fn lemcrit_threshold(n: u32, m: u32, alpha: &BigRational) -> Result<BigRational> {
    if n < 2 || m < 2 {
        return Err(Error::domain(
            "the threshold is stated for n >= 2 and m >= 2",
        ));
    }
    if alpha.is_negative() || *alpha > BigRational::one() {
        return Err(Error::domain("alpha must lie in [0, 1]"));
    }
    let n = BigInt::from(n);
    let m = BigInt::from(m);
    let base = BigRational::from_integer(&n * (&m - 1) + 2);
    let correction = alpha * BigRational::new((&n - 2) * (&m - 2), BigInt::from(2));
    Ok(base - correction)
}

/// Convenience wrapper: the first integer `d` covered by
/// [`lemcrit_threshold`].
pub fn lemcrit_min_d(n: u32, m: u32, alpha: &BigRational) -> Result<u32> {
    let t = lemcrit_threshold(n, m, alpha)?;
    let d = crate::rational::ceil(&t);
    if d <= BigInt::zero() {
        return Ok(1);
    }
    u32::try_from(d).map_err(|_| Error::domain("threshold out of range"))
}

/// Smallest `d` at which the condition holds for every non-identity class,
/// together with the classes that force it. `None` when even `d = n*m`
/// fails. Sums of the smallest exponents grow with `d`, so the condition
/// holds for every larger `d` as well.
pub fn exact_min_d(m: u32, n: u32, alpha: &BigRational) -> Result<Option<(u32, Vec<CycleType>)>> {
    if n == 0 {
        return Err(Error::domain("the factor dimension n must be positive"));
    }
    let one_minus_alpha = BigRational::one() - alpha;
    let mut best = 1u32;
    let mut forcing: Vec<CycleType> = Vec::new();
    for ct in enumerate_cycle_types(m)? {
        if ct.is_identity() {
            continue;
        }
        let ex = exponents_on_product(&ct, n)?;
        let required = BigRational::from_integer(BigInt::from(ex.order())) * &one_minus_alpha;
        let holds_at = |d: u64| {
            min_d_sum(&ex, d).map(|sum| BigRational::from_integer(BigInt::from(sum)) >= required)
        };
        let mut found = None;
        for d in 1..=ex.total() {
            if holds_at(d)? {
                found = Some(d as u32);
                break;
            }
        }
        let Some(d) = found else { return Ok(None) };
        if d > best {
            best = d;
            forcing.clear();
        }
        if d == best {
            forcing.push(ct);
        }
    }
    Ok(Some((best, forcing)))
}
